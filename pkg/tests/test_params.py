from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, strategies as st

from drgmotion import catalog
from drgmotion.errors import InvalidArray, NonIntegralDistanceDegree, NonIntegralP
from drgmotion.params import (
    IntersectionArray,
    cocktail_party_array,
    derive_parameters,
    distance_degrees,
    feasibility_report,
    hamming_array,
    intersection_tensor,
    johnson_array,
    parse_array,
)


def test_petersen_table(petersen):
    t = derive_parameters(petersen)
    assert t.kdist == (1, 3, 6)
    assert (t.n, t.lam, t.mu, t.q) == (10, 0, 1, 1)


def test_johnson_5_2_table():
    t = derive_parameters(IntersectionArray((6, 2), (1, 4)))
    assert t.kdist == (1, 6, 3)
    assert (t.n, t.lam, t.mu) == (10, 3, 4)


def test_cube_table():
    t = derive_parameters(IntersectionArray((3, 2, 1), (1, 2, 3)))
    assert t.kdist == (1, 3, 3, 1)
    assert t.n == 8
    assert t.a == (0, 0, 0, 0)


def test_petersen_tensor_entries(petersen):
    p = intersection_tensor(petersen)
    assert p[2][2][2] == 3
    assert p[2][1][1] == 1


def test_tensor_identity_slice():
    for e in catalog.entries():
        p = intersection_tensor(e.array)
        d = e.array.d
        for s in range(d + 1):
            for i in range(d + 1):
                assert p[s][i][0] == (1 if i == s else 0)
                assert p[s][0][i] == (1 if i == s else 0)


def test_generators():
    assert johnson_array(5, 2) == IntersectionArray((6, 2), (1, 4))
    assert hamming_array(2, 3) == IntersectionArray((4, 2), (1, 2))
    arr = cocktail_party_array(3)
    assert arr == IntersectionArray((4, 1), (1, 4))
    assert derive_parameters(arr).n == 6


@pytest.mark.parametrize("call", [lambda: johnson_array(4, 2), lambda: hamming_array(0, 3),
                                  lambda: hamming_array(2, 1), lambda: cocktail_party_array(1)])
def test_generator_domain(call):
    with pytest.raises(ValueError):
        call()


def test_feasibility_examples(petersen):
    assert feasibility_report(petersen) == []
    names = [v.name for v in feasibility_report(IntersectionArray((5, 4), (1, 3)))]
    assert names == ["NonIntegralDistanceDegree"]
    names = [v.name for v in feasibility_report(IntersectionArray((3, 3), (1, 1)))]
    assert "MultiplicityNotIntegral" in names


def test_feasibility_negative_a():
    names = [v.name for v in feasibility_report(IntersectionArray((3, 2), (1, 4)))]
    assert "NegativeA" in names


def test_derive_rejects_nonintegral_k():
    with pytest.raises(NonIntegralDistanceDegree):
        derive_parameters(IntersectionArray((5, 4), (1, 3)))


def test_parse_array_json_and_errors():
    assert parse_array('{"b": [3, 2], "c": [1, 1]}') == IntersectionArray((3, 2), (1, 1))
    assert str(parse_array({"b": [3, 2], "c": [1, 1]})) == "{3,2;1,1}"
    for bad in ['{"b": [3], "c": [1]}', '{"b": [3, 2], "c": [1]}', '{"b": [3, 2], "c": [2, 1]}',
                '{"b": [3, 0], "c": [1, 1]}', "not json", '{"b": [3, 2.5], "c": [1, 1]}']:
        with pytest.raises(InvalidArray):
            parse_array(bad)


def test_catalog_is_feasible():
    for e in catalog.entries():
        assert feasibility_report(e.array) == [], e.id


def test_distance_degrees_exact():
    ks = distance_degrees(IntersectionArray((5, 4), (1, 3)))
    assert ks[2] == Fraction(20, 3)


# -- properties ------------------------------------------------------------

johnson_params = st.integers(2, 5).flatmap(lambda d: st.tuples(st.integers(2 * d + 1, 2 * d + 12), st.just(d)))
hamming_params = st.tuples(st.integers(1, 6), st.integers(2, 9))


@given(johnson_params)
def test_johnson_vertex_count(md):
    m, d = md
    t = derive_parameters(johnson_array(m, d))
    assert t.n == comb(m, d)
    assert sum(t.kdist) == t.n


@given(hamming_params)
def test_hamming_vertex_count(dm):
    d, m = dm
    t = derive_parameters(hamming_array(d, m))
    assert t.n == m ** d
    assert sum(t.kdist) == t.n


@given(st.one_of(johnson_params.map(lambda p: johnson_array(*p)),
                 hamming_params.map(lambda p: hamming_array(*p)),
                 st.integers(2, 12).map(cocktail_party_array)))
def test_tensor_row_sums(arr):
    t = derive_parameters(arr)
    d = arr.d
    for s in range(d + 1):
        for i in range(d + 1):
            assert sum(t.p[s][i][j] for j in range(d + 1)) == t.kdist[i]
            for j in range(d + 1):
                assert t.p[s][i][j] >= 0
                # p^s_{ij} k_s = p^i_{sj} k_i
                assert t.p[s][i][j] * t.kdist[s] == t.p[i][s][j] * t.kdist[i]


def test_nonintegral_p_detected():
    # k values integral but a product coefficient is fractional
    arr = IntersectionArray((4, 3, 2), (1, 1, 2))
    try:
        intersection_tensor(arr)
    except (NonIntegralP, NonIntegralDistanceDegree):
        pass
    names = [v.name for v in feasibility_report(arr)]
    assert names, "an infeasible array should report something"
