"""Growth-induced tradeoff, forward/backward expansion sequences and the
spectral-gap dichotomy for distance-regular graphs.

Sequences and compatibility are exact rationals.  The irrational
``eps ** (1/(d+1))`` condition is decided exactly by raising the other side
to the power ``d+1`` instead.  The explicit constants that involve
``log2 d`` are evaluated with mpmath and carried as Fractions.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil, floor

import mpmath

from .errors import DomainError, NoFeasibleEps, PremiseViolated, TheoremViolation
from .params import IntersectionArray, derive_parameters, distance_degrees
from .spectrum import Spectrum, eigen_spectrum

DEFAULT_DELTA = Fraction(1, 9)
_DPS = 60


def mpf_to_fraction(x) -> Fraction:
    x = mpmath.mpf(x)
    if x == 0:
        return Fraction(0)
    man, exp = x.man_exp
    return Fraction(int(man)) * Fraction(2) ** int(exp)


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, mpmath.mpf):
        return mpf_to_fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    return Fraction(x)


def remark_eps(d: int) -> Fraction:
    """200^-(d+1) * d^-((d+1)(log2 d + 3)), the explicit compatible epsilon."""
    with mpmath.workdps(_DPS):
        d_ = mpmath.mpf(d)
        v = mpmath.power(200, -(d + 1)) * mpmath.power(d_, -(d + 1) * (mpmath.log(d_, 2) + 3))
        return mpf_to_fraction(v)


def remark_eta(d: int) -> Fraction:
    """(1/4) * d^-(1 + log2 d), the explicit spectral-gap constant."""
    with mpmath.workdps(_DPS):
        d_ = mpmath.mpf(d)
        return mpf_to_fraction(mpmath.power(d_, -(1 + mpmath.log(d_, 2))) / 4)


# --------------------------------------------------------------------------
# growth-induced tradeoff

@dataclass(frozen=True)
class TradeoffResult:
    j: int
    s: int
    lhs: Fraction
    rhs: Fraction
    holds: bool
    diagnostics: dict | None = None


def _inv_b_sum(arr: IntersectionArray, upto: int) -> Fraction:
    return sum((Fraction(1, arr.b[t - 1]) for t in range(1, upto + 1)), Fraction(0))


def tradeoff_check(arr: IntersectionArray, j: int, s: int, diagnostics: bool = False) -> TradeoffResult:
    d = arr.d
    if not 0 <= j <= d - 2:
        raise PremiseViolated(f"need 0 <= j <= d-2, got j={j}, d={d}")
    if not 1 <= s <= j + 1:
        raise PremiseViolated(f"need 1 <= s <= j+1, got s={s}, j={j}")
    bj, cj1 = arr.b_at(j), arr.c_at(j + 1)
    if bj <= cj1:
        raise PremiseViolated(f"need b_{j} > c_{j + 1}, got {bj} <= {cj1}")
    big_c = Fraction(bj, cj1)
    lhs = (arr.b_at(j + 1) * (_inv_b_sum(arr, s) + _inv_b_sum(arr, j + 2 - s))
           + arr.c_at(j + 2) * _inv_b_sum(arr, j + 1))
    rhs = 1 - 4 / (big_c - 1)
    diag = _tradeoff_diagnostics(arr, j, s, big_c) if diagnostics else None
    return TradeoffResult(j, s, lhs, rhs, lhs >= rhs, diag)


def _tradeoff_diagnostics(arr, j, s, big_c):
    """Exact counts in the distance-<=(j+1) graph Y and the bounds used on them."""
    table = derive_parameters(arr)
    p, ks = table.p, table.kdist
    inner = range(1, j + 2)

    def lam_y(i):
        return sum(p[i][r][t] for r in inner for t in inner)

    mu_y = sum(p[j + 2][r][t] for r in inner for t in inner)
    k_y = sum(ks[1:j + 2])
    kj1 = ks[j + 1]
    out = {"k_Y": k_y, "mu_Y": mu_y}
    mu_bound = kj1 * (2 / (big_c - 1) + arr.c_at(j + 2) * _inv_b_sum(arr, j + 1))
    out["mu_Y_bound"] = mu_bound
    out["mu_Y_bound_holds"] = mu_y <= mu_bound
    for i in sorted({s, j + 2 - s}):
        lam = lam_y(i)
        lb = kj1 * (1 - arr.b_at(j + 1) * _inv_b_sum(arr, i)) - p[i][j + 1][0]
        out[f"lambda_Y_{i}"] = lam
        out[f"lambda_Y_{i}_bound"] = lb
        out[f"lambda_Y_{i}_bound_holds"] = lam >= lb
    # common-neighbour triangle inequality in Y for dist(u,v)=s, dist(u,w)=j+2-s
    out["triangle_holds"] = lam_y(s) + lam_y(j + 2 - s) <= k_y + mu_y
    return out


# --------------------------------------------------------------------------
# FE / BE sequences and compatibility

def fe_sequence(delta, upto: int) -> list[Fraction]:
    """alpha_0..alpha_upto of the forward-expansion sequence."""
    delta = as_fraction(delta)
    if not 0 < delta < 1:
        raise DomainError(f"delta must lie in (0,1), got {delta}")
    alpha = [Fraction(1)]
    for j in range(upto):
        hi, lo = ceil((j + 2) / 2), floor((j + 2) / 2)
        alpha.append((1 - delta) / (recip_sum(alpha, hi) + recip_sum(alpha, lo)))
    return alpha


def recip_sum(alpha: list[Fraction], count: int) -> Fraction:
    """sum_{t=1}^{count} 1/alpha_{t-1}."""
    return sum((1 / a for a in alpha[:count]), Fraction(0))


def be_sequence(delta, alpha: list[Fraction]) -> dict[int, Fraction]:
    """beta_j = (1-delta) / sum_{t=0}^{j-2} 1/alpha_t for j = 2..len(alpha)+1."""
    delta = as_fraction(delta)
    out = {}
    acc = Fraction(0)
    for t, a in enumerate(alpha):
        acc += 1 / a
        out[t + 2] = (1 - delta) / acc
    return out


def compatibility_clauses(eps, delta, j: int, alpha: list[Fraction], d: int) -> tuple[bool, bool]:
    eps = as_fraction(eps)
    delta = as_fraction(delta)
    if j >= len(alpha):
        raise DomainError(f"alpha has {len(alpha)} terms, need index {j}")
    if eps <= 0:
        return False, False
    aj = alpha[j]
    if aj - eps <= 0:
        first = False
    else:
        first = (aj - 5 * eps) / (aj - eps) - 2 * eps * recip_sum(alpha, j + 1) > 1 - delta
    beta = (1 - delta) / recip_sum(alpha, j + 1)
    # 2(d+2)^2 eps^(1/(d+1)) <= beta*delta, raised to the power d+1
    second = eps <= (beta * delta / (2 * (d + 2) ** 2)) ** (d + 1)
    return first, second


def is_compatible(eps, delta, j: int, alpha: list[Fraction], d: int) -> bool:
    return all(compatibility_clauses(eps, delta, j, alpha, d))


def eps_delta(d: int, delta=DEFAULT_DELTA, tol: float = 1e-9, max_iter: int = 200) -> Fraction:
    """Bisection estimate of the supremum of (delta, d)-compatible epsilons.

    The returned value is compatible, while ``value * (1 + tol)`` is not.
    """
    if d < 2:
        raise DomainError(f"need d >= 2, got {d}")
    delta = as_fraction(delta)
    alpha = fe_sequence(delta, d - 2)
    j = d - 2

    def ok(e):
        return is_compatible(e, delta, j, alpha, d)

    hi = Fraction(1)
    beta = (1 - delta) / recip_sum(alpha, j + 1)
    lo = (beta * delta / (2 * (d + 2) ** 2)) ** (d + 1)
    for _ in range(4000):
        if ok(lo):
            break
        hi, lo = lo, lo / 2
    else:
        raise NoFeasibleEps(f"no compatible epsilon found for d={d}, delta={delta}")
    if ok(hi):  # cannot happen for hi = 1, kept for the halving branch
        raise NoFeasibleEps("upper bracket unexpectedly compatible")
    with mpmath.workdps(_DPS):
        for _ in range(max_iter):
            if hi <= lo * (1 + Fraction(tol)):
                break
            mid = mpf_to_fraction(mpmath.sqrt(mpmath.mpf(lo.numerator) / lo.denominator
                                              * mpmath.mpf(hi.numerator) / hi.denominator))
            if not lo < mid < hi:
                mid = (lo + hi) / 2
            if ok(mid):
                lo = mid
            else:
                hi = mid
    return lo


@dataclass(frozen=True)
class ExpansionProfile:
    delta: Fraction
    alpha: list[Fraction]
    beta: dict[int, Fraction]
    eps: Fraction
    eta: Fraction


def expansion_profile(d: int, delta=DEFAULT_DELTA) -> ExpansionProfile:
    """FE/BE sequences for diameter d with the bisected EPS and the proof's eta."""
    delta = as_fraction(delta)
    alpha = fe_sequence(delta, d - 1)
    beta = be_sequence(delta, alpha)
    eta = (1 - delta) * min(alpha[d - 1], beta[d])
    return ExpansionProfile(delta, alpha, beta, eps_delta(d, delta), eta)


# --------------------------------------------------------------------------
# the three-case proposition and the dichotomy

@dataclass(frozen=True)
class CaseResult:
    case: str  # BothLarge | SpectralGapCase | ForwardCase
    j: int
    value: Fraction | None = None  # beta_{j+2} or alpha_{j+1}
    detail: str = ""


def case_analysis(arr: IntersectionArray, delta, j: int, alpha: list[Fraction], eps,
                  spectrum: Spectrum | None = None) -> CaseResult:
    """Decide which of the three cases holds at level j, re-verifying its claim."""
    delta, eps = as_fraction(delta), as_fraction(eps)
    d, k = arr.d, arr.k
    if not 0 <= j <= d - 2:
        raise PremiseViolated(f"need 0 <= j <= d-2, got {j}")
    if len(alpha) <= j:
        raise PremiseViolated(f"alpha must have at least {j + 1} terms")
    if any(alpha[t + 1] >= alpha[t] for t in range(j)) or any(a <= 0 for a in alpha[: j + 1]):
        raise PremiseViolated("alpha must be positive and decreasing")
    if not is_compatible(eps, delta, j, alpha, d):
        raise PremiseViolated(f"eps={float(eps):.3e} is not (delta, {j}, alpha, {d})-compatible")
    if arr.c_at(j + 1) > eps * k:
        raise PremiseViolated(f"need c_{j + 1} <= eps*k")
    for i in range(j + 1):
        if arr.b_at(i) < alpha[i] * k:
            raise PremiseViolated(f"need b_{i} >= alpha_{i} * k")

    b1, c2 = arr.b_at(j + 1), arr.c_at(j + 2)
    if b1 >= eps * k and c2 >= eps * k:
        return CaseResult("BothLarge", j)
    if c2 <= eps * k:
        a_next = (1 - delta) / (recip_sum(alpha, ceil((j + 2) / 2)) + recip_sum(alpha, floor((j + 2) / 2)))
        if b1 < a_next * k:
            raise TheoremViolation(f"forward case at j={j}: b_{j + 1}={b1} < alpha_{j + 1} k = {float(a_next * k)}")
        return CaseResult("ForwardCase", j, a_next, f"b_{j + 1} >= alpha_{j + 1} k")
    beta = (1 - delta) / recip_sum(alpha, j + 1)
    spec = spectrum or eigen_spectrum(arr)
    bound = k * (1 - (1 - delta) * beta)
    if spec.xi > float(bound) * (1 + 1e-12) + 1e-9:
        raise TheoremViolation(f"spectral-gap case at j={j}: xi={spec.xi} > {float(bound)}")
    return CaseResult("SpectralGapCase", j, beta, f"xi={spec.xi:.6g} <= {float(bound):.6g}")


@dataclass(frozen=True)
class DichotomyVerdict:
    branch: str  # ExpandingIndex | SpectralGap
    index: int | None
    eps: Fraction
    eta: Fraction
    xi: float
    k: int
    case_trace: list = field(default_factory=list)
    eps_compatible: bool = True
    indices: tuple = ()  # every i with b_i, c_{i+1} >= eps k; index is the one the proof picks

    def to_json(self) -> dict:
        out = {"branch": self.branch, "eps": float(self.eps), "eta": float(self.eta),
               "xi_over_k": self.xi / self.k, "eps_compatible": self.eps_compatible,
               "case_trace": [t if isinstance(t, str) else {"j": t.j, "case": t.case} for t in self.case_trace]}
        if self.index is not None:
            out["index"] = self.index
            out["indices"] = list(self.indices)
        return out


def spectral_gap_dichotomy(arr: IntersectionArray, delta=DEFAULT_DELTA,
                           spectrum: Spectrum | None = None,
                           eps=None, eta=None) -> DichotomyVerdict:
    """Either some b_i, c_{i+1} >= eps k, or xi <= k(1 - eta) (verified)."""
    d, k = arr.d, arr.k
    if d < 2:
        raise DomainError("need diameter >= 2")
    delta = as_fraction(delta)
    eps = remark_eps(d) if eps is None else as_fraction(eps)
    eta = remark_eta(d) if eta is None else as_fraction(eta)
    spec = spectrum or eigen_spectrum(arr)
    alpha = fe_sequence(delta, d - 1)
    compatible = is_compatible(eps, delta, d - 2, alpha, d)

    # the index with c_i <= eps k < c_{i+1}, using c_0 = 0 and c_{d+1} = k
    i0 = next(i for i in range(d + 1) if arr.c_at(i) <= eps * k < arr.c_at(i + 1)) \
        if eps * k < k else d
    trace = []
    for j in range(0, min(i0 - 1, d - 1)):
        try:
            trace.append(case_analysis(arr, delta, j, alpha, eps, spec))
        except PremiseViolated as exc:
            trace.append(f"j={j}: premise not met ({exc})")
            break

    hits = tuple(i for i in range(d) if arr.b_at(i) >= eps * k and arr.c_at(i + 1) >= eps * k)
    if hits:
        hit = i0 if i0 in hits else hits[0]
        return DichotomyVerdict("ExpandingIndex", hit, eps, eta, spec.xi, k, trace, compatible, hits)
    if spec.xi > float(k * (1 - eta)) * (1 + 1e-12):
        raise TheoremViolation(f"no expanding index and xi={spec.xi} > k(1-eta)={float(k * (1 - eta))}")
    return DichotomyVerdict("SpectralGap", None, eps, eta, spec.xi, k, trace, compatible)


@dataclass(frozen=True)
class ExpansionReport:
    dominant: int
    k_t: int
    n: int
    eps: Fraction  # dominant-distance threshold eps/(1+eps)
    eta: Fraction
    premise_met: bool
    xi_over_k: float
    holds: bool | None  # None when the premise fails

    def to_json(self) -> dict:
        return {"dominant": self.dominant, "k_t": self.k_t, "n": self.n,
                "eps": float(self.eps), "eta": float(self.eta),
                "premise_met": self.premise_met, "xi_over_k": self.xi_over_k,
                "holds": self.holds}


def expansion_check(arr: IntersectionArray, spectrum: Spectrum | None = None,
                    eps=None, eta=None) -> ExpansionReport:
    """Dominant distance => spectral expander, asserted against the spectrum."""
    d, k = arr.d, arr.k
    base = remark_eps(d) if eps is None else as_fraction(eps)
    eta = remark_eta(d) if eta is None else as_fraction(eta)
    small = base / (1 + base)
    ks = distance_degrees(arr)
    n = sum(ks)
    t = max(range(1, d + 1), key=lambda i: ks[i])
    spec = spectrum or eigen_spectrum(arr)
    premise = ks[t] >= (1 - small) * n
    holds = None
    if premise:
        holds = spec.xi <= float(k * (1 - eta)) * (1 + 1e-12)
        if not holds:
            raise TheoremViolation(f"k_{t} >= (1-eps)n but xi={spec.xi} > k(1-eta)")
    return ExpansionReport(t, int(ks[t]), int(n), small, eta, premise, spec.xi / k, holds)


# --------------------------------------------------------------------------
# closed-form lower bounds

def _down(x) -> float:
    import math
    return math.nextafter(float(x), 0.0)


def closed_form_bounds(delta, j: int, d: int) -> dict[str, float]:
    """Explicit lower bounds on alpha_j, beta_{j+2} and EPS_delta(d), rounded down."""
    delta = as_fraction(delta)
    if not 0 < delta <= Fraction(1, 9) or j < 1 or d < 3:
        raise DomainError(f"need 0 < delta <= 1/9, j >= 1, d >= 3 (got {delta}, {j}, {d})")
    with mpmath.workdps(_DPS):
        dl = mpmath.mpf(delta.numerator) / delta.denominator
        jj, dd = mpmath.mpf(j), mpmath.mpf(d)
        decay = mpmath.power(jj, -mpmath.log(jj, 2))
        alpha_lb = (1 - dl) ** 2 / 2 * decay
        beta_lb = (1 - dl) ** 3 / (2 * (jj + 1)) * decay
        eps_lb = (dl / 22) ** (d + 1) * mpmath.power(dd, -(d + 1) * (3 + mpmath.log(dd, 2)))
        return {"alpha_lb": _down(alpha_lb), "beta_lb": _down(beta_lb), "eps_lb": _down(eps_lb)}


def eps_lower_bound(d: int, delta=DEFAULT_DELTA) -> Fraction:
    """The same EPS lower bound as an exact-ish Fraction (60 significant digits)."""
    delta = as_fraction(delta)
    with mpmath.workdps(_DPS):
        dl = mpmath.mpf(delta.numerator) / delta.denominator
        dd = mpmath.mpf(d)
        return mpf_to_fraction((dl / 22) ** (d + 1) * mpmath.power(dd, -(d + 1) * (3 + mpmath.log(dd, 2))))
