"""Acceptance criteria 1-9, one PASS/FAIL line each.

Under pytest each line is printed inline next to its test (no ``-s``
needed); ``python3 tests/test_acceptance.py`` prints just the nine lines.
"""
from __future__ import annotations

import math
import sys
from fractions import Fraction as F

import pytest

from drgmotion import catalog
from drgmotion.errors import TheoremViolation
from drgmotion.imprimitive import (
    bip3_analysis,
    detect,
    folded_array,
    halved_array,
)
from drgmotion.motion import GeometricCandidate, classify_primitive, m_d
from drgmotion.oracle import (
    adjacency_spectrum,
    automorphisms,
    build_named,
    check_distance_regular,
    distinguishing_exact,
    empirical_p,
    folded_graph,
    halved_graph,
)
from drgmotion.params import IntersectionArray, derive_parameters, hamming_array, johnson_array
from drgmotion.spectrum import eigen_spectrum
from drgmotion.tradeoff import (
    be_sequence,
    closed_form_bounds,
    eps_delta,
    eps_lower_bound,
    expansion_check,
    fe_sequence,
    remark_eta,
    spectral_gap_dichotomy,
    tradeoff_check,
)
from drgmotion.verify import lower_bounds

try:
    from helpers import ostrowski_trials
except ImportError:  # run as a script from the repo root
    sys.path.insert(0, __file__.rsplit("/", 1)[0])
    from helpers import ostrowski_trials

DELTA = F(1, 9)
TOL = 1e-6


def _spectra_equal(a, b, tol=TOL) -> bool:
    return (len(a.eigenvalues) == len(b.eigenvalues)
            and all(abs(x - y) <= tol for x, y in zip(a.eigenvalues, b.eigenvalues))
            and a.multiplicities == b.multiplicities)


def _spectrum_is(spec, want: dict, tol=TOL) -> bool:
    pairs = sorted(want.items(), reverse=True)
    return (len(spec.eigenvalues) == len(pairs)
            and all(abs(v - w) <= tol and m == wm
                    for v, m, (w, wm) in zip(spec.eigenvalues, spec.multiplicities, pairs)))


def _small_graphs():
    for e in catalog.entries(with_builder=True):
        g = e.build()
        if g.n <= 64:
            yield e, g


# -- criteria --------------------------------------------------------------

def criterion_1():
    checked, bad = 0, []
    for e in catalog.entries():
        arr = e.array
        for j in range(arr.d - 1):
            if arr.b_at(j) <= arr.c_at(j + 1):
                continue
            for s in range(1, j + 2):
                checked += 1
                if not tradeoff_check(arr, j, s).holds:
                    bad.append((e.id, j, s))
    spot = tradeoff_check(IntersectionArray((6, 4, 2), (1, 2, 3)), 0, 1)
    spot_ok = spot.lhs == F(10, 6) and spot.rhs == F(1, 5)
    ok = not bad and spot_ok and checked > 0
    return ok, f"{checked} (j,s) checks, {len(bad)} violations; H(3,3) j=0 s=1 lhs={spot.lhs} rhs={spot.rhs}"


def criterion_2():
    bad = []
    count = 0
    for e, g in _small_graphs():
        count += 1
        got = check_distance_regular(g).array
        if got != e.array:
            bad.append(f"{e.id}: array {got}")
            continue
        if empirical_p(g, e.array) != derive_parameters(e.array).p:
            bad.append(f"{e.id}: p-tensor")
    return not bad, f"{count} graphs, mismatches: {bad or 'none'}"


def criterion_3():
    bad = []
    for e, g in _small_graphs():
        if not _spectra_equal(adjacency_spectrum(g), eigen_spectrum(e.array)):
            bad.append(e.id)
    j52 = _spectrum_is(eigen_spectrum(johnson_array(5, 2)), {6: 1, 1: 4, -2: 5})
    h23 = _spectrum_is(eigen_spectrum(hamming_array(2, 3)), {4: 1, 1: 4, -2: 4})
    return not bad and j52 and h23, f"mismatched graphs: {bad or 'none'}; J(5,2) {j52}, H(2,3) {h23}"


def criterion_4():
    alpha = fe_sequence(DELTA, 21)
    beta = be_sequence(DELTA, alpha)
    bad = []
    for j in range(1, 21):
        lb = closed_form_bounds(DELTA, j, 3)
        if alpha[j] < F(lb["alpha_lb"]):
            bad.append(f"alpha_{j}")
        if beta[j + 2] < F(lb["beta_lb"]):
            bad.append(f"beta_{j + 2}")
    exact = alpha[1] == F(4, 9) and alpha[2] == F(32, 153)
    for d in range(3, 9):
        if eps_delta(d, DELTA) < eps_lower_bound(d, DELTA):
            bad.append(f"eps_delta({d})")
    return not bad and exact, f"failures: {bad or 'none'}; alpha_1={alpha[1]}, alpha_2={alpha[2]}"


def criterion_5():
    violations = []
    for e in catalog.entries():
        spec = eigen_spectrum(e.array)
        for fn in (spectral_gap_dichotomy, expansion_check):
            try:
                fn(e.array, spectrum=spec)
            except TheoremViolation as exc:
                violations.append(f"{e.id}/{fn.__name__}: {exc}")
    eta3 = float(remark_eta(3))
    eta_ok = abs(eta3 - 0.01461) <= 1e-4
    return not violations and eta_ok, f"TheoremViolation count {len(violations)}; eta(3) = {eta3:.6f}"


def criterion_6():
    bad, count, names = [], 0, set()
    motions = {}
    for e, g in _small_graphs():
        aut = automorphisms(g)
        motions[e.id] = aut.motion
        table = derive_parameters(e.array)
        for name, value in lower_bounds(e, table, eigen_spectrum(e.array)):
            count += 1
            names.add(name)
            if value > aut.motion + 1e-9:
                bad.append(f"{e.id}:{name}={value:.4g}>{aut.motion}")
    required = {"distinguishing", "spectral", "bipartite-spectral", "bip3", "antip3-floor",
                "bip-antip4-floor", "primitive-distinguish"}
    missing = required - names
    pet = distinguishing_exact(build_named("petersen")).dmin
    anchors = (motions.get("petersen") == 6 and pet == 6 and motions.get("cocktail-party-3") == 2
               and motions.get("octagon") == 6)
    ok = not bad and not missing and anchors
    return ok, (f"{count} bound checks, exceeding: {bad or 'none'}, kinds missing: {sorted(missing) or 'none'}; "
                f"motion(Petersen)={motions.get('petersen')}, D_min={pet}, "
                f"motion(K_3x2)={motions.get('cocktail-party-3')}, motion(C_8)={motions.get('octagon')}")


def criterion_7():
    problems = []
    cube = catalog.get("cube").array
    prof = detect(cube)
    if not (prof.is_bipartite and prof.is_antipodal and prof.r == 2):
        problems.append("cube profile")

    def concrete(gid, op):
        g = build_named(*catalog.get(gid).builder)
        return check_distance_regular(op(g)).array

    k4, k6 = IntersectionArray((3,), (1,)), IntersectionArray((5,), (1,))
    quad = IntersectionArray((2, 1), (1, 2))
    cases = [
        ("cube halved", halved_array(cube), concrete("cube", halved_graph), k4),
        ("cube folded", folded_array(cube)[0], concrete("cube", folded_graph), k4),
        ("octagon halved", halved_array(catalog.get("octagon").array), concrete("octagon", halved_graph), quad),
        ("octagon folded", folded_array(catalog.get("octagon").array)[0], concrete("octagon", folded_graph), quad),
        ("icosahedron folded", folded_array(catalog.get("icosahedron").array)[0],
         concrete("icosahedron", folded_graph), k6),
        ("heawood halved", halved_array(catalog.get("heawood").array), concrete("heawood", halved_graph),
         IntersectionArray((6,), (1,))),
    ]
    for name, formula, graph, want in cases:
        if not formula == graph == want:
            problems.append(f"{name}: formula {formula}, graph {graph}")
    if folded_array(catalog.get("octagon").array)[1] != 2:
        problems.append("octagon r")
    heawood_n = bip3_analysis(catalog.get("heawood").array).params["n"]
    if heawood_n != 14:
        problems.append(f"heawood n={heawood_n}")
    r2 = math.sqrt(2)
    if not _spectrum_is(eigen_spectrum(catalog.get("octagon").array), {2: 1, r2: 2, 0: 2, -r2: 2, -2: 1}):
        problems.append("octagon spectrum")
    return not problems, f"problems: {problems or 'none'}; Heawood n = {heawood_n}"


def criterion_8():
    worst, failures, count = 0.0, 0, 0
    for _, radius, bound in ostrowski_trials(200):
        count += 1
        if radius > bound + 1e-9:
            failures += 1
        if bound > 0:
            worst = max(worst, radius / bound)
    return failures == 0 and count == 200, f"{count} pairs, {failures} failures, max radius/bound {worst:.3g}"


def criterion_9():
    arr = catalog.get("johnson-30-3").array
    res = classify_primitive(arr)
    theta = eigen_spectrum(arr).theta_min
    md = m_d(3)
    verdict_ok = res.verdict == GeometricCandidate(3)
    theta_ok = abs(theta + 3) <= TOL
    ok = verdict_ok and theta_ok and md == 85
    if isinstance(res.verdict, GeometricCandidate):
        shown = f"GeometricCandidate({res.verdict.m})"
    else:
        shown = f"MotionBound(gamma={float(res.verdict.gamma):.4g}, case={res.verdict.case})"
    return ok, (f"verdict {shown} via path {res.path} (want GeometricCandidate(3)); "
                f"theta_min = {theta:.9g}; m_d(3) = {md}")


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
            criterion_6, criterion_7, criterion_8, criterion_9]


def _line(i: int, ok: bool, detail: str) -> str:
    return f"criterion {i}: {'PASS' if ok else 'FAIL'} - {detail}"


@pytest.mark.parametrize("index", range(1, len(CRITERIA) + 1))
def test_criterion(index, capsys):
    ok, detail = CRITERIA[index - 1]()
    with capsys.disabled():
        print("\n" + _line(index, ok, detail))
    assert ok, detail


def main() -> int:
    failed = 0
    for i, fn in enumerate(CRITERIA, 1):
        ok, detail = fn()
        failed += not ok
        print(_line(i, ok, detail))
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
