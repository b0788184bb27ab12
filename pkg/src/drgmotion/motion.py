"""Motion (minimal degree) lower bounds for distance-regular graphs.

The tools are the distinguishing numbers D(i), the spectral mixing bound,
structural inequalities between lambda, mu and k, Metsch's geometricity
criterion and the primitive-case classifier.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import mpmath

from .errors import PremiseViolated, TheoremViolation
from .params import IntersectionArray, ParameterTable, derive_parameters
from .spectrum import Spectrum, eigen_spectrum
from .tradeoff import (
    DEFAULT_DELTA,
    DichotomyVerdict,
    as_fraction,
    remark_eps,
    remark_eta,
    spectral_gap_dichotomy,
)


# --------------------------------------------------------------------------
# verdict values shared with the imprimitive module

@dataclass(frozen=True)
class MotionBound:
    """motion(X) >= gamma * n."""

    gamma: Fraction | float
    case: str
    n: int | None = None

    @property
    def bound(self) -> float | None:
        return None if self.n is None else float(self.gamma) * self.n

    def to_json(self) -> dict:
        out = {"kind": "MotionBound", "gamma": float(self.gamma), "case": self.case}
        if self.n is not None:
            out["bound"] = self.bound
        return out


@dataclass(frozen=True)
class GeometricCandidate:
    m: int

    def to_json(self) -> dict:
        return {"kind": "GeometricCandidate", "m": self.m}


@dataclass(frozen=True)
class FamilyException:
    """The graph belongs to a family for which no linear bound is claimed."""

    family: str
    detail: str = ""

    def to_json(self) -> dict:
        return {"kind": "FamilyException", "family": self.family, "detail": self.detail}


# --------------------------------------------------------------------------
# distinguishing numbers

def distinguishing_numbers(table: ParameterTable) -> tuple[list[int], int]:
    """D(1)..D(d) and D_min.

    A vertex fails to distinguish a pair at distance i exactly when it sits
    at the same distance t >= 1 from both, which happens p^i_{t,t} times.
    """
    d, n, p = table.d, table.n, table.p
    dvals = [n - sum(p[i][t][t] for t in range(1, d + 1)) for i in range(1, d + 1)]
    return dvals, min(dvals)


def motion_from_distinguishing(dmin: int) -> int:
    return dmin


def distinguishing_transfer(dvals: list[int], d: int) -> bool:
    """D(j) <= d * D(i) for all i, j; guaranteed when the graph is primitive."""
    return max(dvals) <= d * min(dvals)


def spectral_motion_bound(table: ParameterTable, spec: Spectrum) -> float:
    """n(k - xi - q)/k; non-positive values carry no information."""
    k = table.k
    return table.n * (k - spec.xi - table.q) / k


def primitive_distinguish_bound(arr: IntersectionArray, alpha, j: int,
                                table: ParameterTable | None = None) -> Fraction:
    """alpha * n / d when b_j, c_{j+1} >= alpha k (graph attested primitive).

    ``j = 0`` is accepted: the argument only needs a_t <= (1-alpha)k for
    every t >= 1, which c_t >= c_1 >= alpha k already gives.
    """
    alpha = as_fraction(alpha)
    d, k = arr.d, arr.k
    if not 0 <= j <= d - 1:
        raise PremiseViolated(f"need 0 <= j <= d-1, got {j}")
    if alpha <= 0:
        raise PremiseViolated("alpha must be positive")
    if arr.b_at(j) < alpha * k:
        raise PremiseViolated(f"b_{j} = {arr.b_at(j)} < alpha*k = {alpha * k}")
    if arr.c_at(j + 1) < alpha * k:
        raise PremiseViolated(f"c_{j + 1} = {arr.c_at(j + 1)} < alpha*k = {alpha * k}")
    table = table or derive_parameters(arr)
    bound = alpha * table.n / d
    _, dmin = distinguishing_numbers(table)
    if bound > dmin:
        raise TheoremViolation(f"alpha n/d = {bound} exceeds D_min = {dmin}")
    return bound


# --------------------------------------------------------------------------
# structural inequalities

@dataclass(frozen=True)
class LedgerEntry:
    name: str
    applies: bool
    holds: bool | None
    lhs: object = None
    rhs: object = None
    note: str = ""

    @property
    def violated(self) -> bool:
        return self.applies and self.holds is False

    def to_json(self) -> dict:
        def conv(x):
            if isinstance(x, Fraction):
                return float(x)
            return x
        return {"name": self.name, "applies": self.applies, "holds": self.holds,
                "lhs": conv(self.lhs), "rhs": conv(self.rhs), "note": self.note,
                "status": "TheoremViolation" if self.violated else ("ok" if self.applies else "inapplicable")}


def structural_inequalities(table: ParameterTable) -> list[LedgerEntry]:
    d, k, lam, mu = table.d, table.k, table.lam, table.mu
    a2 = table.a[2] if d >= 2 else 0
    out = [
        LedgerEntry("k-mu<=2(k-lambda)", d >= 2, k - mu <= 2 * (k - lam), k - mu, 2 * (k - lam)),
        LedgerEntry("k-lambda<=2(k-mu)", d >= 2 and a2 != 0,
                    (k - lam <= 2 * (k - mu)) if a2 != 0 else None, k - lam, 2 * (k - mu),
                    "" if a2 != 0 else "needs a_2 != 0"),
    ]
    dvals, dmin = distinguishing_numbers(table)
    out.append(LedgerEntry("D_min>=k-mu", d >= 2, dmin >= k - mu, dmin, k - mu))

    # bounds in terms of r = (n-1)/k; irrational roots evaluated at 50 digits
    with mpmath.workdps(50):
        r = mpmath.mpf(table.n - 1) / k
        root = mpmath.root(r / d, d - 1) if d >= 2 else mpmath.mpf(0)
        cap_min = k / (1 + min((r - 1) / (d - 1), root))
        cap_mu = k * max((d - 1) / (r - 1), 1 / root)
        out.append(LedgerEntry("min(lambda,mu)<k/(1+min(...))", d >= 2, min(lam, mu) < cap_min,
                               min(lam, mu), float(cap_min), "r = (n-1)/k"))
        out.append(LedgerEntry("mu<k*max(...)", d >= 2, mu < cap_mu, mu, float(cap_mu), "r = (n-1)/k"))
    cap = Fraction((d - 1) * k, d)
    out.append(LedgerEntry("min(lambda,mu)<=(d-1)k/d", d >= 3,
                           min(lam, mu) <= cap if d >= 3 else None, min(lam, mu), cap,
                           "" if d >= 3 else "needs d >= 3"))
    gate = d >= 3 and a2 == 0
    out.append(LedgerEntry("a_2=0=>lambda=0", gate, (lam == 0) if gate else None, lam, 0,
                           "" if gate else "needs d >= 3 and a_2 = 0"))
    return out


# --------------------------------------------------------------------------
# geometricity

@dataclass(frozen=True)
class MetschResult:
    applies: bool
    line_size_threshold: int
    max_lines_per_vertex: int

    def to_json(self) -> dict:
        return {"applies": self.applies, "line_size_threshold": self.line_size_threshold,
                "max_lines_per_vertex": self.max_lines_per_vertex}


def metsch_lines(lambda1: int, lambda2: int, mu: int, m: int, k: int) -> MetschResult:
    """Metsch's clique-geometry criterion for the given common-neighbour bounds."""
    positive = min(lambda1, lambda2, mu, m, k) > 0 and lambda1 <= lambda2
    cond3 = 2 * lambda1 - lambda2 > (2 * m - 1) * (mu - 1) - 1
    cond4 = 2 * k < 2 * (m + 1) * (lambda1 + 1) - m * (m + 1) * (mu - 1)
    threshold = lambda1 + 2 - (m - 1) * (mu - 1)
    return MetschResult(positive and cond3 and cond4, threshold, m)


def geometric_m(table: ParameterTable) -> int:
    """The m with (m-1)(lambda+1) < k <= m(lambda+1)."""
    return -(-table.k // (table.lam + 1))


def geometricity_check(table: ParameterTable) -> int | None:
    """m if the sufficient condition lambda >= m(m+1)mu/2 certifies geometricity."""
    m = geometric_m(table)
    if m >= 2 and 2 * table.lam >= m * (m + 1) * table.mu:
        return m
    return None


def delsarte_clique_bound(spec: Spectrum, k: int) -> float:
    theta = spec.theta_min
    if theta >= 0:
        raise PremiseViolated("need a negative smallest eigenvalue")
    return 1 - k / theta


# --------------------------------------------------------------------------
# constants of the classifier

def m_d(d: int) -> int:
    """floor(5 d^(log2 d + 1)), with the floor resolved exactly."""
    if d < 2:
        raise PremiseViolated(f"need d >= 2, got {d}")
    if d & (d - 1) == 0:
        a = d.bit_length() - 1
        return 5 * 2 ** (a * (a + 1))
    dps = 40
    while True:
        with mpmath.workdps(dps):
            v = 5 * mpmath.power(d, mpmath.log(d, 2) + 1)
            f = mpmath.floor(v)
            if v - f > mpmath.mpf(10) ** (-dps // 2) and f + 1 - v > mpmath.mpf(10) ** (-dps // 2):
                return int(f)
        dps *= 2
        if dps > 10_000:  # d^(log2 d) is irrational unless d is a power of two
            raise ArithmeticError(f"could not resolve floor for d={d}")


def gamma_d(d: int, eps=None, eta=None) -> Fraction:
    eps = remark_eps(d) if eps is None else as_fraction(eps)
    eta = remark_eta(d) if eta is None else as_fraction(eta)
    return min(eps / d, (eta ** 3 / d) ** (d - 1) / 7, eta / 10)


@dataclass(frozen=True)
class ClassifierResult:
    verdict: MotionBound | GeometricCandidate
    gamma_d: Fraction
    m_d: int
    eps: Fraction
    eta: Fraction
    eta_at_most_one_seventh: bool
    dichotomy: DichotomyVerdict
    path: str

    def to_json(self) -> dict:
        return {"verdict": self.verdict.to_json(), "gamma_d": float(self.gamma_d), "m_d": self.m_d,
                "eps": float(self.eps), "eta": float(self.eta),
                "eta_at_most_one_seventh": self.eta_at_most_one_seventh,
                "path": self.path, "dichotomy": self.dichotomy.to_json()}


def classify_primitive(arr: IntersectionArray, delta=DEFAULT_DELTA,
                       spectrum: Spectrum | None = None) -> ClassifierResult:
    """Replay the primitive-case decision tree (graph attested primitive, d >= 3)."""
    d = arr.d
    if d < 3:
        raise PremiseViolated(f"classifier needs d >= 3, got {d}")
    table = derive_parameters(arr)
    spec = spectrum or eigen_spectrum(arr)
    eps, eta = remark_eps(d), remark_eta(d)
    k, lam, mu, n = table.k, table.lam, table.mu, table.n
    dich = spectral_gap_dichotomy(arr, delta, spec, eps, eta)
    common = dict(gamma_d=gamma_d(d, eps, eta), m_d=m_d(d), eps=eps, eta=eta,
                  eta_at_most_one_seventh=eta <= Fraction(1, 7), dichotomy=dich)

    if dich.branch == "ExpandingIndex":
        primitive_distinguish_bound(arr, eps, dich.index, table)
        return ClassifierResult(MotionBound(eps / d, "Primitive-distinguish", n), path="a", **common)
    if mu > eta ** 3 * k:
        return ClassifierResult(MotionBound((eta ** 3 / d) ** (d - 1) / 7, "Mu-large", n), path="b", **common)
    if lam < Fraction(9, 10) * eta * k:
        bound = spectral_motion_bound(table, spec)
        if bound < float(eta / 10) * n * (1 - 1e-9):
            raise TheoremViolation(f"spectral bound {bound} below eta n/10")
        return ClassifierResult(MotionBound(eta / 10, "Spectral", n), path="c", **common)
    m = geometric_m(table)
    if 2 * lam < m * (m + 1) * mu:
        raise TheoremViolation(f"lambda={lam} < m(m+1)mu/2 with m={m}")
    if m > common["m_d"]:
        raise TheoremViolation(f"m={m} exceeds m_d={common['m_d']}")
    if spec.theta_min < -m - 1e-9 * max(1.0, k):
        raise TheoremViolation(f"theta_min={spec.theta_min} < -{m}")
    return ClassifierResult(GeometricCandidate(m), path="d", **common)


# --------------------------------------------------------------------------
# report

@dataclass
class MotionReport:
    array: IntersectionArray
    n: int
    dvals: list[int]
    dmin: int
    spectral_bound: float
    combinatorial_bound: int
    structural: list[LedgerEntry]
    bounds: list[dict] = field(default_factory=list)
    classifier: ClassifierResult | None = None
    classifier_note: str = ""

    @property
    def violations(self) -> list[str]:
        return [e.name for e in self.structural if e.violated]

    def to_json(self) -> dict:
        return {
            "array": self.array.to_json(),
            "n": self.n,
            "dvals": self.dvals,
            "dmin": self.dmin,
            "spectral_bound": self.spectral_bound,
            "spectral_informative": self.spectral_bound > 0,
            "combinatorial_bound": self.combinatorial_bound,
            "bounds": self.bounds,
            "structural": [e.to_json() for e in self.structural],
            "classifier": self.classifier.to_json() if self.classifier else None,
            "classifier_note": self.classifier_note,
        }


def analyze(arr: IntersectionArray, primitive: bool = True, delta=DEFAULT_DELTA,
            spectrum: Spectrum | None = None) -> MotionReport:
    table = derive_parameters(arr)
    spec = spectrum if spectrum is not None else eigen_spectrum(arr)
    dvals, dmin = distinguishing_numbers(table)
    sb = spectral_motion_bound(table, spec)
    rep = MotionReport(arr, table.n, dvals, dmin, sb, motion_from_distinguishing(dmin),
                       structural_inequalities(table))
    rep.bounds.append({"name": "distinguishing", "value": dmin, "informative": True})
    rep.bounds.append({"name": "spectral", "value": sb, "informative": sb > 0})
    if primitive:
        rep.bounds.append({"name": "distinguishing-transfer", "holds": distinguishing_transfer(dvals, arr.d)})
        if arr.d >= 3:
            rep.classifier = classify_primitive(arr, delta, spec)
            v = rep.classifier.verdict
            if isinstance(v, MotionBound):
                rep.bounds.append({"name": f"classifier-{v.case}", "value": v.bound,
                                   "informative": v.bound > 0})
        else:
            rep.classifier_note = "classifier needs d >= 3"
    else:
        rep.classifier_note = "not attested primitive"
    return rep


__all__ = [
    "MotionBound", "GeometricCandidate", "FamilyException", "distinguishing_numbers",
    "motion_from_distinguishing", "distinguishing_transfer", "spectral_motion_bound",
    "primitive_distinguish_bound", "structural_inequalities", "LedgerEntry", "metsch_lines",
    "MetschResult", "geometric_m", "geometricity_check", "delsarte_clique_bound", "m_d",
    "gamma_d", "classify_primitive", "ClassifierResult", "MotionReport", "analyze",
]
