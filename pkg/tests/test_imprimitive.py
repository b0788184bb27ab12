from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from drgmotion import catalog
from drgmotion.errors import (
    DiameterTwo,
    NonIntegralDistanceDegree,
    NotAntipodal,
    NotBipartite,
    PremiseViolated,
)
from drgmotion.imprimitive import (
    antip3_analysis,
    bip3_analysis,
    bip_antip4_analysis,
    bipartite_d4_bound,
    bipartite_motion_bound,
    compose_imprimitive,
    cover_lookup,
    detect,
    folded_array,
    gamma_prime,
    halved_array,
    identify_family,
    imprimitive_report,
    is_antipodal,
    reduction_chain,
    reduction_motion_transfer,
)
from drgmotion.motion import FamilyException, MotionBound
from drgmotion.params import IntersectionArray, cocktail_party_array, derive_parameters, hamming_array
from drgmotion.spectrum import eigen_spectrum

CUBE = hamming_array(3, 2)
HEAWOOD = IntersectionArray((3, 2, 2), (1, 1, 3))
ICOSAHEDRON = IntersectionArray((5, 2, 1), (1, 2, 5))
OCTAGON = IntersectionArray((2, 1, 1, 1), (1, 1, 1, 2))
K2 = IntersectionArray((3,), (1,))
QUADRANGLE = IntersectionArray((2, 1), (1, 2))


def test_detect(petersen):
    p = detect(CUBE)
    assert p.is_bipartite and p.is_antipodal and p.r == 2
    p = detect(petersen)
    assert not p.is_bipartite and not p.is_antipodal and p.primitive_by_smith
    p = detect(HEAWOOD)
    assert p.is_bipartite and not p.is_antipodal


def test_halved(petersen):
    assert halved_array(CUBE) == K2
    assert halved_array(OCTAGON) == QUADRANGLE
    assert halved_array(HEAWOOD) == IntersectionArray((6,), (1,))
    with pytest.raises(NotBipartite):
        halved_array(petersen)


def test_folded(petersen):
    assert folded_array(CUBE) == (K2, 2)
    assert folded_array(ICOSAHEDRON) == (IntersectionArray((5,), (1,)), 2)
    assert folded_array(OCTAGON) == (QUADRANGLE, 2)
    with pytest.raises(NotAntipodal):
        folded_array(petersen)
    with pytest.raises(DiameterTwo):
        folded_array(cocktail_party_array(3))


def test_reduction_chain(petersen):
    chain = reduction_chain(CUBE)
    assert chain[0] == ("halve", K2)
    assert reduction_chain(HEAWOOD) == [("halve", IntersectionArray((6,), (1,)))]
    assert reduction_chain(petersen) == []
    assert reduction_chain(cocktail_party_array(3)) == [("fold", IntersectionArray((2,), (1,)))]


def test_cover_index_integral_on_catalog():
    for e in catalog.entries():
        if is_antipodal(e.array) and e.array.d >= 3:
            _, r = folded_array(e.array)
            assert isinstance(r, int) and r >= 2


def test_bip3():
    v = bip3_analysis(HEAWOOD)
    assert isinstance(v.verdict, MotionBound)
    assert v.verdict.gamma == F(1, 12) and v.verdict.bound == pytest.approx(14 / 12)
    assert v.params["n"] == 14
    assert v.params["second_eigenvalue"] == pytest.approx(2 ** 0.5)
    v = bip3_analysis(CUBE)
    assert isinstance(v.verdict, FamilyException)
    with pytest.raises(NotBipartite):
        bip3_analysis(ICOSAHEDRON)


def test_antip3():
    v = antip3_analysis(ICOSAHEDRON)
    assert v.verdict.gamma == F(4, 27)
    assert v.floor == F(1, 13)
    assert v.verdict.bound >= float(v.floor) * 12
    # the cube is K_{4,4} minus a perfect matching, so it takes the exception route
    assert isinstance(antip3_analysis(CUBE).verdict, FamilyException)


def test_antip3_equal_large_r():
    # lambda = mu = 1, r = 4, k = 5: the Case-3 n/6 formula
    arr = IntersectionArray((5, 3, 1), (1, 1, 5))
    v = antip3_analysis(arr)
    assert v.verdict.gamma == F(1, 6)


def test_bip_antip4():
    v = bip_antip4_analysis(OCTAGON)
    assert v.params["m"] == 2 and v.params["mu"] == 1
    assert v.verdict.bound == pytest.approx(2)
    assert v.floor == F(3, 20) and v.verdict.bound >= 0.15 * 8
    spec = eigen_spectrum(OCTAGON)
    want = {2: 1, 2 ** 0.5: 2, 0: 2, -(2 ** 0.5): 2, -2: 1}
    assert all(abs(a - b) < 1e-9 for a, b in zip(spec.eigenvalues, want))
    assert spec.multiplicities == tuple(want.values())
    four_cube = bip_antip4_analysis(hamming_array(4, 2))
    assert four_cube.params["m"] == 2 and four_cube.params["mu"] == 2
    # integral k_i force mu | k, so a non-conforming array fails integrality first
    with pytest.raises(NonIntegralDistanceDegree):
        bip_antip4_analysis(IntersectionArray((6, 5, 2, 1), (1, 4, 5, 6)))
    with pytest.raises(PremiseViolated):
        bip_antip4_analysis(HEAWOOD)
    v = bip_antip4_analysis(IntersectionArray((3, 2, 2, 1), (1, 1, 2, 3)))
    assert (v.params["m"], v.params["n"]) == (3, 18)


bip3_params = st.integers(2, 40).flatmap(
    lambda k: st.sampled_from([mu for mu in range(1, k) if k * (k - 1) % mu == 0]).map(lambda mu: (k, mu)))


@given(bip3_params)
def test_bip3_shape_identity(kmu):
    k, mu = kmu
    arr = IntersectionArray((k, k - 1, k - mu), (1, mu, k))
    v = bip3_analysis(arr)
    assert v.params["n"] == 2 + 2 * k * (k - 1) // mu
    assert isinstance(v.verdict, FamilyException) == (mu == k - 1)


def test_bipartite_spectral_bound(petersen):
    for arr, want in [(HEAWOOD, 14 * (3 - 2 ** 0.5 - 1) / 6), (OCTAGON, 8 * (2 - 2 ** 0.5 - 1) / 4), (CUBE, 0.0)]:
        assert bipartite_motion_bound(derive_parameters(arr), eigen_spectrum(arr)) == pytest.approx(want)
    with pytest.raises(NotBipartite):
        bipartite_motion_bound(derive_parameters(petersen), eigen_spectrum(petersen))


def test_gamma_prime():
    assert gamma_prime(4) == F(1, 8 ** 13)
    assert gamma_prime(5) == F(1, 10 ** 15)
    assert all(gamma_prime(d + 1) < gamma_prime(d) for d in range(4, 12))


def test_bipartite_d4():
    res = bipartite_d4_bound(hamming_array(5, 2))
    assert res.gamma == gamma_prime(5)
    assert res.bound == gamma_prime(5) * 32


def test_transfers_and_covers():
    assert reduction_motion_transfer(F(1, 13), "fold") == F(1, 13)
    assert reduction_motion_transfer(F(1, 13), "halve") == F(1, 26)
    assert "no distance-regular antipodal covers" in cover_lookup("johnson", (7, 3))
    assert cover_lookup("hamming", (2, 2)) == "covered by the octagon"
    assert identify_family(QUADRANGLE) == ("hamming", (2, 2))
    assert identify_family(cocktail_party_array(4)) == ("cocktail-party", (4,))


def test_composition_routes():
    assert compose_imprimitive(ICOSAHEDRON).route == ["antip3"]
    assert compose_imprimitive(OCTAGON).route == ["bip-antip4"]
    assert compose_imprimitive(HEAWOOD).route == ["bip3"]
    res = compose_imprimitive(hamming_array(5, 2))
    assert not res.conditional


def test_report_keys():
    rep = imprimitive_report(OCTAGON)
    assert {"profile", "analyses", "composition", "family"} <= set(rep)
    assert "bip_antip4" in rep["analyses"]


@given(st.integers(2, 9))
def test_hypercube_quotients_integral(d):
    arr = hamming_array(d, 2)
    prof = detect(arr)
    assert prof.is_bipartite and prof.is_antipodal and prof.r == 2
    h = halved_array(arr)
    assert derive_parameters(h).n * 2 == 2 ** d
    if d >= 3:
        f, r = folded_array(arr)
        assert derive_parameters(f).n * r == 2 ** d
