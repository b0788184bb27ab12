from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from drgmotion import catalog
from drgmotion.errors import PremiseViolated
from drgmotion.motion import (
    GeometricCandidate,
    MotionBound,
    analyze,
    classify_primitive,
    delsarte_clique_bound,
    distinguishing_numbers,
    distinguishing_transfer,
    gamma_d,
    geometricity_check,
    m_d,
    metsch_lines,
    motion_from_distinguishing,
    primitive_distinguish_bound,
    spectral_motion_bound,
    structural_inequalities,
)
from drgmotion.params import (
    IntersectionArray,
    cocktail_party_array,
    derive_parameters,
    hamming_array,
    johnson_array,
)
from drgmotion.spectrum import eigen_spectrum
from drgmotion.tradeoff import remark_eps, remark_eta


def _table(arr):
    return derive_parameters(arr)


def test_distinguishing_examples(petersen):
    assert distinguishing_numbers(_table(petersen)) == ([6, 6], 6)
    assert distinguishing_numbers(_table(cocktail_party_array(3)))[1] == 2
    assert motion_from_distinguishing(6) == 6


def test_distinguishing_at_least_two():
    for e in catalog.entries():
        dvals, dmin = distinguishing_numbers(_table(e.array))
        assert min(dvals) == dmin >= 2


def test_distinguishing_transfer(petersen):
    assert distinguishing_transfer([6, 6], 2)
    assert distinguishing_transfer(distinguishing_numbers(_table(johnson_array(5, 2)))[0], 2)
    assert not distinguishing_transfer([2, 10], 2)


def test_spectral_bound_examples(petersen):
    assert spectral_motion_bound(_table(petersen), eigen_spectrum(petersen)) == pytest.approx(0)
    h = hamming_array(2, 3)
    assert spectral_motion_bound(_table(h), eigen_spectrum(h)) == pytest.approx(0)
    j = johnson_array(30, 3)
    t = _table(j)
    b = spectral_motion_bound(t, eigen_spectrum(j))
    assert 0 < b <= t.n


def test_primitive_distinguish_examples(petersen):
    assert primitive_distinguish_bound(hamming_array(3, 3), F(1, 3), 1) == 3
    assert primitive_distinguish_bound(petersen, F(1, 3), 1) == F(10, 6)
    with pytest.raises(PremiseViolated):
        primitive_distinguish_bound(petersen, 1, 1)
    with pytest.raises(PremiseViolated):
        primitive_distinguish_bound(petersen, F(1, 3), 2)


def test_structural_examples(petersen):
    led = {e.name: e for e in structural_inequalities(_table(petersen))}
    first = led["k-mu<=2(k-lambda)"]
    assert (first.lhs, first.rhs, first.holds) == (2, 6, True)
    assert not led["k-lambda<=2(k-mu)"].applies or _table(petersen).a[2] != 0
    cube = {e.name: e for e in structural_inequalities(_table(hamming_array(3, 2)))}
    assert cube["a_2=0=>lambda=0"].applies and cube["a_2=0=>lambda=0"].holds


@given(st.one_of(
    st.tuples(st.integers(2, 6), st.integers(2, 30)).map(lambda p: hamming_array(*p)),
    st.integers(2, 5).flatmap(lambda d: st.integers(2 * d + 1, 2 * d + 40).map(lambda m: johnson_array(m, d))),
    st.integers(2, 30).map(cocktail_party_array),
))
def test_structural_never_violated(arr):
    assert not [e.name for e in structural_inequalities(_table(arr)) if e.violated]


def test_metsch_examples():
    r = metsch_lines(28, 28, 4, 3, 81)
    assert r.applies and r.line_size_threshold == 24 and r.max_lines_per_vertex == 3
    assert not metsch_lines(0, 28, 4, 3, 81).applies
    # 2k equal to the cap 196: strict inequality fails
    assert not metsch_lines(28, 28, 4, 3, 98).applies
    assert metsch_lines(28, 28, 4, 3, 97).applies


def test_geometricity_examples(petersen):
    assert geometricity_check(_table(johnson_array(30, 3))) == 3
    assert geometricity_check(_table(johnson_array(8, 3))) is None
    assert geometricity_check(_table(petersen)) is None


def test_delsarte_examples(petersen):
    assert delsarte_clique_bound(eigen_spectrum(petersen), 3) == pytest.approx(2.5)
    assert delsarte_clique_bound(eigen_spectrum(johnson_array(5, 2)), 6) == pytest.approx(4)
    cube = hamming_array(3, 2)
    assert delsarte_clique_bound(eigen_spectrum(cube), 3) == pytest.approx(2)


def test_m_d_values():
    assert m_d(3) == 85
    assert m_d(4) == 320
    assert m_d(5) == 1049
    assert m_d(2) == 20


def test_gamma_d_is_minimum():
    g = gamma_d(3)
    eps, eta = remark_eps(3), remark_eta(3)
    assert g == min(eps / 3, (eta ** 3 / 3) ** 2 / 7, eta / 10)


def test_classifier_h33_case_a():
    res = classify_primitive(hamming_array(3, 3))
    assert res.path == "a"
    assert isinstance(res.verdict, MotionBound)
    assert res.verdict.gamma == remark_eps(3) / 3
    assert res.eta_at_most_one_seventh


def test_classifier_geometric_candidate_huge():
    arr = johnson_array(3 * 10 ** 18, 3)
    res = classify_primitive(arr)
    assert res.path == "d"
    assert res.verdict == GeometricCandidate(3)
    assert eigen_spectrum(arr).theta_min >= -3 - 1e-6


def test_classifier_needs_d3(petersen):
    with pytest.raises(PremiseViolated):
        classify_primitive(petersen)


def test_analyze_report(petersen):
    rep = analyze(petersen)
    names = {b["name"]: b for b in rep.bounds}
    assert names["distinguishing"]["value"] == 6
    assert names["spectral"]["value"] == pytest.approx(0)
    assert names["spectral"]["informative"] is False
    assert rep.violations == []
    assert rep.to_json()["dmin"] == 6


def test_analyze_bounds_at_most_n():
    for e in catalog.entries():
        rep = analyze(e.array)
        for b in rep.bounds:
            if "value" in b:
                assert b["value"] <= rep.n


def test_geometric_candidate_eigenvalue_consistency():
    for e in catalog.entries():
        if e.array.d < 3:
            continue
        res = classify_primitive(e.array)
        if isinstance(res.verdict, GeometricCandidate):
            assert eigen_spectrum(e.array).theta_min >= -res.verdict.m - 1e-6


def test_noninteger_array_type():
    with pytest.raises(ValueError):
        IntersectionArray((3, 2), (1,))
