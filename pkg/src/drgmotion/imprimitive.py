"""Bipartite and antipodal distance-regular graphs.

Detection, halved and folded arrays, the reduction to a primitive graph,
the diameter-3 and diameter-4 analyses and the conditional composition of
motion bounds for the imprimitive case.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .errors import (
    DiameterTwo,
    NonIntegral,
    NotAntipodal,
    NotBipartite,
    PremiseViolated,
    ShapeViolation,
    TheoremViolation,
)
from .motion import FamilyException, MotionBound, distinguishing_numbers, structural_inequalities
from .params import (
    IntersectionArray,
    derive_parameters,
    hamming_array,
    johnson_array,
)
from .spectrum import eigen_spectrum

SPECTRUM_TOL = 1e-6


@dataclass(frozen=True)
class ImprimitivityProfile:
    is_bipartite: bool
    is_antipodal: bool
    r: int | None
    t: int
    halved: IntersectionArray | None = None
    folded: IntersectionArray | None = None
    reduction_chain: tuple = ()

    @property
    def primitive_by_smith(self) -> bool:
        """Neither bipartite nor antipodal, hence primitive when k > 2."""
        return not (self.is_bipartite or self.is_antipodal)

    def to_json(self) -> dict:
        return {
            "is_bipartite": self.is_bipartite,
            "is_antipodal": self.is_antipodal,
            "r": self.r,
            "t": self.t,
            "halved": self.halved.to_json() if self.halved else None,
            "folded": self.folded.to_json() if self.folded else None,
            "reduction_chain": [{"operation": op, "array": a.to_json()} for op, a in self.reduction_chain],
        }


def is_bipartite(arr: IntersectionArray) -> bool:
    return all(arr.b_at(i) + arr.c_at(i) == arr.k for i in range(arr.d + 1))


def is_antipodal(arr: IntersectionArray) -> bool:
    d, t = arr.d, arr.d // 2
    return d >= 2 and all(arr.b_at(i) == arr.c_at(d - i) for i in range(d) if i != t)


def cover_index(arr: IntersectionArray) -> Fraction:
    t = arr.d // 2
    return 1 + Fraction(arr.b_at(t), arr.c_at(arr.d - t))


def detect(arr: IntersectionArray) -> ImprimitivityProfile:
    bip, antip = is_bipartite(arr), is_antipodal(arr)
    r = None
    if antip:
        rf = cover_index(arr)
        r = int(rf) if rf.denominator == 1 else None
    halved = halved_array(arr) if bip and arr.d >= 2 else None
    folded = None
    if antip and arr.d >= 3 and r is not None:
        folded = folded_array(arr)[0]
    chain = tuple(reduction_chain(arr)) if arr.k > 2 else ()
    return ImprimitivityProfile(bip, antip, r, arr.d // 2, halved, folded, chain)


def _exact(num: int, den: int, what: str) -> int:
    if num % den:
        raise NonIntegral(f"{what} = {num}/{den} is not an integer")
    return num // den


def halved_array(arr: IntersectionArray, profile: ImprimitivityProfile | None = None) -> IntersectionArray:
    bip = profile.is_bipartite if profile else is_bipartite(arr)
    if not bip:
        raise NotBipartite(f"{arr} is not bipartite")
    d = arr.d
    if d < 2:
        raise PremiseViolated("halving needs d >= 2")
    mu = arr.c_at(2)
    t = d // 2
    b = tuple(_exact(arr.b_at(2 * i) * arr.b_at(2 * i + 1), mu, f"b_{2 * i}b_{2 * i + 1}/mu") for i in range(t))
    c = tuple(_exact(arr.c_at(2 * i + 1) * arr.c_at(2 * i + 2), mu, f"c_{2 * i + 1}c_{2 * i + 2}/mu") for i in range(t))
    return IntersectionArray(b, c)


def folded_array(arr: IntersectionArray, profile: ImprimitivityProfile | None = None) -> tuple[IntersectionArray, int]:
    antip = profile.is_antipodal if profile else is_antipodal(arr)
    if not antip:
        raise NotAntipodal(f"{arr} is not antipodal")
    d = arr.d
    if d == 2:
        raise DiameterTwo("the folded graph of an antipodal diameter-2 graph is complete")
    t = d // 2
    rf = cover_index(arr)
    if rf.denominator != 1:
        raise NonIntegral(f"cover index r = {rf}")
    r = int(rf)
    gamma = r if d == 2 * t else 1
    b = tuple(arr.b_at(i) for i in range(t))
    c = tuple(arr.c_at(i) for i in range(1, t)) + (gamma * arr.c_at(t),)
    return IntersectionArray(b, c), r


def _complete_quotient(arr: IntersectionArray) -> IntersectionArray:
    """Fold an antipodal diameter-2 array (complete multipartite) to its complete quotient."""
    table = derive_parameters(arr)
    r = int(cover_index(arr))
    size = table.n // r
    return IntersectionArray((size - 1,), (1,))


def reduction_chain(arr: IntersectionArray) -> list[tuple[str, IntersectionArray]]:
    """Halve and/or fold (at most once each) until a primitive array remains."""
    if arr.k <= 2:
        raise PremiseViolated("reduction needs k > 2")
    bip, antip = is_bipartite(arr), is_antipodal(arr)
    chain: list[tuple[str, IntersectionArray]] = []
    if bip:
        half = halved_array(arr)
        chain.append(("halve", half))
        if antip and arr.d % 2 == 0:
            # halved graph is antipodal, fold it too
            if half.d == 2:
                chain.append(("fold", _complete_quotient(half)))
            elif half.d >= 3:
                chain.append(("fold", folded_array(half)[0]))
    elif antip:
        chain.append(("fold", _complete_quotient(arr) if arr.d == 2 else folded_array(arr)[0]))
    return chain


# --------------------------------------------------------------------------
# diameter-3 and diameter-4 analyses

@dataclass(frozen=True)
class ImprimitiveVerdict:
    verdict: MotionBound | FamilyException
    floor: Fraction | None  # the guaranteed fraction for the whole class
    params: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"verdict": self.verdict.to_json(),
                "floor": float(self.floor) if self.floor is not None else None,
                "params": {k: (float(v) if isinstance(v, Fraction) else v) for k, v in self.params.items()}}


def _spectrum_matches(arr, expected: list[tuple[float, int]]) -> bool:
    spec = eigen_spectrum(arr)
    got = sorted(zip(spec.eigenvalues, spec.multiplicities))
    want = sorted(expected)
    return len(got) == len(want) and all(
        abs(g[0] - w[0]) <= SPECTRUM_TOL and g[1] == w[1] for g, w in zip(got, want))


def bip3_analysis(arr: IntersectionArray) -> ImprimitiveVerdict:
    """Bipartite diameter 3: K_{k+1,k+1} minus a matching, or motion >= n/12."""
    if not is_bipartite(arr):
        raise NotBipartite(f"{arr} is not bipartite")
    if arr.d != 3:
        raise PremiseViolated(f"need d = 3, got {arr.d}")
    k, mu = arr.k, arr.c_at(2)
    table = derive_parameters(arr)
    n = table.n
    if arr.b != (k, k - 1, k - mu) or arr.c != (1, mu, k):
        raise ShapeViolation(f"{arr} is not of the form {{k,k-1,k-mu;1,mu,k}}")
    if Fraction(n) != 2 + Fraction(2 * k * (k - 1), mu):
        raise ShapeViolation(f"n = {n} != 2 + 2k(k-1)/mu")
    root = math.sqrt(k - mu)
    if not _spectrum_matches(arr, [(k, 1), (-k, 1), (root, n // 2 - 1), (-root, n // 2 - 1)]):
        raise ShapeViolation("spectrum is not {k, -k, +-sqrt(k-mu)}")
    params = {"n": n, "k": k, "mu": mu, "k_3": table.kdist[3], "second_eigenvalue": root}
    if table.kdist[3] == 1:
        return ImprimitiveVerdict(FamilyException("cocktail-party", "complete bipartite graph minus a perfect matching"),
                                  None, params)
    return ImprimitiveVerdict(MotionBound(Fraction(1, 12), "bip3", n), Fraction(1, 12), params)


def _values_match(arr, expected: list[float]) -> bool:
    vals = sorted(eigen_spectrum(arr).eigenvalues)
    want = sorted(expected)
    return len(vals) == len(want) and all(abs(g - w) <= SPECTRUM_TOL for g, w in zip(vals, want))


def _isqrt_exact(x: int) -> int | None:
    if x < 0:
        return None
    s = math.isqrt(x)
    return s if s * s == x else None


def antip3_analysis(arr: IntersectionArray) -> ImprimitiveVerdict:
    """Antipodal diameter 3: the cocktail-party exception or motion >= n/13."""
    if not is_antipodal(arr):
        raise NotAntipodal(f"{arr} is not antipodal")
    if arr.d != 3:
        raise PremiseViolated(f"need d = 3, got {arr.d}")
    table = derive_parameters(arr)
    k, lam, mu, n = table.k, table.lam, table.mu, table.n
    rf = cover_index(arr)
    if rf.denominator != 1 or rf < 2:
        raise ShapeViolation(f"cover index r = {rf}")
    r = int(rf)
    if n != r * (k + 1):
        raise ShapeViolation(f"n = {n} != r(k+1) = {r * (k + 1)}")
    floor = Fraction(1, 13)

    if lam == mu:
        if k != r * mu + 1:
            raise ShapeViolation("lambda = mu but k != r mu + 1")
        rk = math.sqrt(k)
        if not _values_match(arr, [k, rk, -1, -rk]):
            raise ShapeViolation("spectrum is not {k, sqrt k, -1, -sqrt k}")
        params = {"r": r, "k": k, "mu": mu}
        frac = Fraction(1, 6) if r >= 4 else Fraction(4, 27)
        return ImprimitiveVerdict(MotionBound(frac, "antip3-equal", n), floor, params)

    # lambda - mu = t - m and k = m t, so m solves m^2 + (lambda-mu)m - k = 0
    delta = lam - mu
    disc = _isqrt_exact(delta * delta + 4 * k)
    if disc is None or (disc - delta) % 2:
        raise ShapeViolation("k = m t has no integral solution with t - m = lambda - mu")
    m = (disc - delta) // 2
    t = m + delta
    if m < 2 or t < 1 or m * t != k or mu * r != (m - 1) * (t + 1):
        raise ShapeViolation(f"(m, t, r) = ({m}, {t}, {r}) violates mu r = (m-1)(t+1)")
    mt, mm = Fraction(m * (r - 1) * (k + 1), m + t), Fraction(t * (r - 1) * (k + 1), m + t)
    if mt.denominator != 1 or mm.denominator != 1:
        raise ShapeViolation("eigenvalue multiplicities are not integral")
    if not _spectrum_matches(arr, [(k, 1), (t, int(mt)), (-1, k), (-m, int(mm))]):
        raise ShapeViolation("spectrum is not {k, t, -1, -m}")
    params = {"m": m, "t": t, "r": r, "k": k, "lambda": lam, "mu": mu}
    if t > m:
        if m >= 3 and r >= 3:
            frac, case = Fraction(1, 9), "antip3-t>m-spectral"
        elif r == 2 and m >= 4:
            frac, case = Fraction(1, 9), "antip3-t>m-spectral"
        elif r == 2 and m == 3:
            frac, case = Fraction(1, 3), "antip3-t>m-distinguishing"
        else:  # m = 2
            frac, case = Fraction(1, 13), "antip3-t>m-m2"
        return ImprimitiveVerdict(MotionBound(frac, case, n), floor, params)
    if t == 1:
        return ImprimitiveVerdict(FamilyException("cocktail-party", "complete bipartite graph minus a perfect matching"),
                                  None, params)
    if r >= 4:
        frac, case = Fraction(1, 8), "antip3-m>t-spectral"
    else:
        frac, case = Fraction(1, 12), "antip3-m>t-distinguishing"
    return ImprimitiveVerdict(MotionBound(frac, case, n), floor, params)


def bip_antip4_analysis(arr: IntersectionArray) -> ImprimitiveVerdict:
    """Bipartite antipodal diameter 4: motion >= 0.15 n."""
    if not (is_bipartite(arr) and is_antipodal(arr)):
        raise PremiseViolated(f"{arr} is not both bipartite and antipodal")
    if arr.d != 4:
        raise PremiseViolated(f"need d = 4, got {arr.d}")
    table = derive_parameters(arr)
    k, mu, n = table.k, table.mu, table.n
    if k % mu:
        raise ShapeViolation(f"k = {k} is not a multiple of mu = {mu}")
    m = k // mu
    if m < 2 or n != 2 * m * m * mu:
        raise ShapeViolation(f"n = {n} != 2 m^2 mu with m = {m}")
    want = (m * mu, m * mu - 1, (m - 1) * mu, 1), (1, mu, m * mu - 1, m * mu)
    if (arr.b, arr.c) != want:
        raise ShapeViolation(f"{arr} is not {{m mu, m mu-1, (m-1)mu, 1; 1, mu, m mu-1, m mu}}")
    rk = math.sqrt(k)
    if not _spectrum_matches(arr, [(k, 1), (-k, 1), (rk, (m - 1) * k), (-rk, (m - 1) * k), (0, 2 * k - 2)]):
        raise ShapeViolation("spectrum is not {+-k, +-sqrt k, 0}")
    eq1 = Fraction(m - 1, m * m)
    eq2 = (k - rk - mu) / (2 * k)
    frac = max(float(eq1), eq2)
    params = {"m": m, "mu": mu, "n": n, "distinguishing_fraction": eq1, "spectral_fraction": eq2,
              "preferred": "distinguishing" if m <= 4 else "spectral"}
    return ImprimitiveVerdict(MotionBound(frac, "bip-antip4", n), Fraction(3, 20), params)


def bipartite_motion_bound(table, spec) -> float:
    """n(k - |second eigenvalue| - q)/(2k) for bipartite graphs."""
    if not is_bipartite(table.array):
        raise NotBipartite(f"{table.array} is not bipartite")
    k = table.k
    return table.n * (k - abs(spec.second_largest) - table.q) / (2 * k)


def gamma_prime(d: int) -> Fraction:
    return Fraction(1, (2 * d) ** (2 * d + 5))


@dataclass(frozen=True)
class BipartiteD4Result:
    gamma: Fraction
    bound: Fraction
    ledger: dict

    def to_json(self) -> dict:
        return {"gamma": float(self.gamma), "bound": float(self.bound),
                "ledger": {k: (float(v) if isinstance(v, Fraction) else v) for k, v in self.ledger.items()}}


def bipartite_d4_bound(arr: IntersectionArray) -> BipartiteD4Result:
    """gamma'_d n for bipartite d >= 4 with a primitive halved graph (attested)."""
    if not is_bipartite(arr):
        raise PremiseViolated(f"{arr} is not bipartite")
    d, k = arr.d, arr.k
    if d < 4:
        raise PremiseViolated(f"need d >= 4, got {d}")
    n = derive_parameters(arr).n
    g = gamma_prime(d)
    eps = Fraction(1, (2 * d) ** (d + 2))
    t = d // 2

    def c(i):
        return arr.c_at(i) if i <= d else k

    ledger: dict = {"eps": eps, "t_floor": t, "t_ceil": -(-d // 2)}
    js = [j for j in range(1, t + 1) if c(2 * j - 1) <= eps * k and c(2 * j + 1) >= eps * k]
    if not js:
        ledger["case"] = "no split index (c_1 > eps k)"
    else:
        j = js[0]
        ledger["j"] = j
        if arr.b_at(2 * j + 1) <= eps * k:
            if j == 1:
                cands = [Fraction(1, 3 * s * 2 ** s) for s in (t, -(-d // 2))]
                ledger.update(case="1", halved_fraction=min(cands), candidates=str([str(x) for x in cands]))
            else:
                ledger.update(case="2", halved_fraction=Fraction(1, 3))
        else:
            ledger.update(case="3", halved_fraction=eps ** 2 / t)
        # halving costs a factor 2 in the fraction
        ledger["graph_fraction"] = ledger["halved_fraction"] / 2
        if ledger["graph_fraction"] < g:
            raise TheoremViolation(f"case fraction {ledger['graph_fraction']} below gamma'_d = {g}")
    return BipartiteD4Result(g, g * n, ledger)


# --------------------------------------------------------------------------
# transfers along the reduction and the composition

def reduction_motion_transfer(alpha, operation: str) -> Fraction:
    """Fraction guaranteed on X given fraction alpha on its folded/halved graph."""
    alpha = Fraction(alpha)
    if operation == "fold":
        return alpha
    if operation == "halve":
        # the halved graph has n/2 vertices
        return alpha / 2
    raise ValueError(f"unknown operation {operation!r}")


_COVER_FACTS = {
    "hamming": "H(d,s) has no distance-regular antipodal covers except H(2,2), covered by the octagon",
    "johnson": "J(s,d), d >= 2, has no distance-regular antipodal covers",
    "johnson-complement": "complement of J(s,2), s >= 8, has no distance-regular antipodal covers",
    "hamming-complement": "complement of H(2,s), s >= 4, has no distance-regular antipodal covers",
}


def cover_lookup(family: str, params: tuple) -> str:
    if family == "hamming" and params == (2, 2):
        return "covered by the octagon"
    return _COVER_FACTS.get(family, "no cover fact recorded")


def identify_family(arr: IntersectionArray) -> tuple[str, tuple] | None:
    """Recognize Johnson, Hamming and cocktail-party arrays by their closed forms."""
    d, k = arr.d, arr.k
    if k % d == 0 and k // d >= 1:
        s = k // d + 1
        if s >= 2 and arr == hamming_array(d, s):
            return "hamming", (d, s)
    if d >= 2 and k % d == 0:
        s = k // d + d
        if s >= 2 * d + 1 and arr == johnson_array(s, d):
            return "johnson", (s, d)
    # checked after Hamming so that the quadrangle is reported as H(2,2)
    if d == 2 and arr.b[1] == 1 and arr.c == (1, k) and k % 2 == 0:
        return "cocktail-party", ((k + 2) // 2,)
    # K_{m,m} minus a perfect matching: {m-1, m-2, 1; 1, m-2, m-1}
    if d == 3 and arr.b == (k, k - 1, 1) and arr.c == (1, k - 1, k):
        return "cocktail-party", (k + 1,)
    return None


@dataclass(frozen=True)
class CompositionResult:
    verdict: MotionBound | FamilyException | None
    route: list
    conditional: bool
    note: str = ""

    def to_json(self) -> dict:
        return {"verdict": self.verdict.to_json() if self.verdict else None,
                "route": self.route, "conditional": self.conditional, "note": self.note}


def compose_imprimitive(arr: IntersectionArray,
                        primitive_fraction: Callable[[IntersectionArray], Fraction | None] | None = None
                        ) -> CompositionResult:
    """Motion fraction for a diameter >= 3 graph, following the imprimitive decision tree.

    ``primitive_fraction`` supplies a fraction for primitive graphs (for
    instance an assumed constant for geometric graphs).  Results that depend
    on it are marked conditional.
    """
    d = arr.d
    fam = identify_family(arr)
    if fam is not None and not is_bipartite(arr) and not is_antipodal(arr):
        return CompositionResult(FamilyException(fam[0], str(fam[1])), ["family"], False)
    if d < 3:
        return CompositionResult(None, [], False, "needs d >= 3")
    n = derive_parameters(arr).n
    bip, antip = is_bipartite(arr), is_antipodal(arr)

    def bound(frac, case, route, conditional=False):
        return CompositionResult(MotionBound(frac, case, n), route, conditional)

    if not bip and not antip:
        if primitive_fraction is None:
            return CompositionResult(None, ["primitive"], True, "primitive: no primitive bound supplied")
        f = primitive_fraction(arr)
        if f is None:
            return CompositionResult(None, ["primitive"], True, "primitive bound unavailable")
        return bound(f, "primitive", ["primitive"], True)
    if bip and d == 3:
        v = bip3_analysis(arr)
        return CompositionResult(v.verdict, ["bip3"], False)
    if bip and not antip:
        return bound(gamma_prime(d), "bipartite-d>=4", ["halve"])
    if bip and antip and d == 4:
        v = bip_antip4_analysis(arr)
        return CompositionResult(v.verdict, ["bip-antip4"], False)
    if bip and antip and d % 2 == 0:
        folded, _ = folded_array(arr)
        frac = min(gamma_prime(d // 2), Fraction(1, 12))
        return bound(reduction_motion_transfer(frac, "fold"), "bip-antip-even", ["fold", str(folded)])
    # antipodal and (odd diameter or not bipartite): the folded graph is primitive
    if d == 3:
        v = antip3_analysis(arr)
        return CompositionResult(v.verdict, ["antip3"], False)
    folded, _ = folded_array(arr)
    ffam = identify_family(folded)
    fn = derive_parameters(folded).n
    if ffam is not None and ffam[0] in _COVER_FACTS:
        fact = cover_lookup(*ffam)
        if fn >= 29:
            return CompositionResult(FamilyException("impossible-cover", f"{ffam[0]}{ffam[1]}: {fact}"),
                                     ["fold", str(folded)], False)
        return bound(Fraction(1, 14), "small-classical-cover", ["fold", str(folded)])
    if fn <= 28:
        return bound(Fraction(1, 14), "small-folded", ["fold", str(folded)])
    if primitive_fraction is None:
        return CompositionResult(None, ["fold", str(folded)], True, "folded graph primitive: no bound supplied")
    f = primitive_fraction(folded)
    if f is None:
        return CompositionResult(None, ["fold", str(folded)], True, "primitive bound unavailable")
    return bound(reduction_motion_transfer(min(f, Fraction(1, 8)), "fold"), "antipodal-fold",
                 ["fold", str(folded)], True)


def imprimitive_report(arr: IntersectionArray) -> dict:
    """Everything the imprimitive analysis can say about one array."""
    prof = detect(arr)
    out = {"profile": prof.to_json()}
    table = derive_parameters(arr)
    spec = eigen_spectrum(arr)
    if prof.is_bipartite:
        out["bipartite_motion_bound"] = bipartite_motion_bound(table, spec)
    analyses = {}
    for name, fn, ok in (
        ("bip3", bip3_analysis, prof.is_bipartite and arr.d == 3),
        ("antip3", antip3_analysis, prof.is_antipodal and arr.d == 3),
        ("bip_antip4", bip_antip4_analysis, prof.is_bipartite and prof.is_antipodal and arr.d == 4),
    ):
        if ok:
            try:
                analyses[name] = fn(arr).to_json()
            except ShapeViolation as exc:
                analyses[name] = {"error": "ShapeViolation", "detail": str(exc)}
    if prof.is_bipartite and arr.d >= 4:
        analyses["bipartite_d4"] = bipartite_d4_bound(arr).to_json()
    out["analyses"] = analyses
    if arr.d >= 3:
        out["composition"] = compose_imprimitive(arr).to_json()
    fam = identify_family(arr)
    out["family"] = {"name": fam[0], "params": list(fam[1])} if fam else None
    # keep these for cross-reference in the text report
    out["dmin"] = distinguishing_numbers(table)[1]
    out["structural_violations"] = [e.name for e in structural_inequalities(table) if e.violated]
    return out
