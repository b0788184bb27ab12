"""Spectra of distance-regular graphs from their intersection arrays."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateSpectrum, DomainError, Inapplicable, MultiplicityNotIntegral
from .params import IntersectionArray, distance_degrees

SEPARATION_TOL = 1e-9  # times k
HUGE_K = 10 ** 6
MULTIPLICITY_TOL = 1e-6


@dataclass(frozen=True)
class Spectrum:
    eigenvalues: tuple[float, ...]  # distinct, descending
    multiplicities: tuple[int, ...]

    @property
    def theta_min(self) -> float:
        return self.eigenvalues[-1]

    @property
    def xi(self) -> float:
        """Zero-weight spectral radius: largest |theta| over non-principal eigenvalues."""
        rest = self.eigenvalues[1:]
        if not rest:
            return 0.0
        return max(abs(rest[0]), abs(rest[-1]))

    @property
    def second_largest(self) -> float:
        return self.eigenvalues[1]

    def as_dict(self) -> dict[float, int]:
        return dict(zip(self.eigenvalues, self.multiplicities))

    def to_json(self) -> dict:
        return {
            "eigenvalues": [
                {"value": float(v), "multiplicity": int(m)}
                for v, m in zip(self.eigenvalues, self.multiplicities)
            ],
            "xi": float(self.xi),
        }


def intersection_matrix(arr: IntersectionArray) -> np.ndarray:
    """The tridiagonal matrix T(X): diagonal a_i, super b_i, sub c_i."""
    d = arr.d
    t = np.zeros((d + 1, d + 1))
    for i in range(d + 1):
        t[i, i] = float(arr.a_at(i))
        if i < d:
            t[i, i + 1] = float(arr.b[i])
            t[i + 1, i] = float(arr.c[i])
    return t


def _symmetrized(arr: IntersectionArray) -> np.ndarray:
    d = arr.d
    # float() first: entries may exceed the int64 range
    s = np.diag(np.array([float(x) for x in arr.a]))
    for i in range(d):
        off = np.sqrt(float(arr.b[i]) * float(arr.c[i]))
        s[i, i + 1] = s[i + 1, i] = off
    return s


def snap_integral(vals: np.ndarray) -> np.ndarray:
    """Round values within 1e-9 (relative) of an integer; 0 often comes out as 1e-17."""
    vals = np.array(vals, dtype=float)
    near = np.rint(vals)
    snap = np.abs(vals - near) <= 1e-9 * np.maximum(1.0, np.abs(vals))
    vals[snap] = near[snap]
    return vals


def separation_tol(k: int) -> float:
    """Minimum gap between distinct eigenvalues.

    Relative 1e-9 at moderate k.  For huge k that would swallow genuine
    O(1) gaps, so it drops to 1e-12 relative, still well above the ~1e-15
    relative noise of a symmetric tridiagonal solve.
    """
    return (SEPARATION_TOL if k <= HUGE_K else 1e-12) * k


def eigenvalues(arr: IntersectionArray) -> np.ndarray:
    """Distinct eigenvalues, descending, from the symmetrized T(X)."""
    k = arr.k
    vals = np.linalg.eigvalsh(_symmetrized(arr))[::-1]
    # k is exactly the principal eigenvalue and -k is the only admissible value below -k+tol
    vals[0] = k
    if abs(vals[-1] + k) <= SEPARATION_TOL * k:
        vals[-1] = -k
    vals = snap_integral(vals)
    gaps = -np.diff(vals)
    if gaps.size and gaps.min() <= separation_tol(k):
        raise DegenerateSpectrum(f"eigenvalues closer than {separation_tol(k):.3g}: {vals}")
    return vals


def standard_sequence(arr: IntersectionArray, theta: float) -> list[float]:
    """u_0..u_d from theta*u_i = c_i u_{i-1} + a_i u_i + b_i u_{i+1}, u_0 = 1."""
    u = [1.0, theta / arr.k]
    for i in range(1, arr.d):
        u.append(((theta - arr.a_at(i)) * u[i] - arr.c_at(i) * u[i - 1]) / arr.b[i])
    return u[: arr.d + 1]


def eigen_spectrum(arr: IntersectionArray) -> Spectrum:
    """Eigenvalues with multiplicities m(theta) = n / sum_i k_i u_i(theta)^2.

    Multiplicities must be integral to within ``MULTIPLICITY_TOL`` relative
    to their size (absolute for values below 1).
    """
    vals = eigenvalues(arr)
    ks = [float(x) for x in distance_degrees(arr)]
    n = sum(ks)
    mults = []
    for theta in vals:
        u = standard_sequence(arr, theta)
        m = n / sum(ki * ui * ui for ki, ui in zip(ks, u))
        r = round(m)
        if abs(m - r) > MULTIPLICITY_TOL * max(1.0, abs(m)) or r < 1:
            raise MultiplicityNotIntegral(f"m({theta:.6g}) = {m:.9g}")
        mults.append(int(r))
    return Spectrum(tuple(float(v) for v in vals), tuple(mults))


def ostrowski_bound(a, b) -> float:
    """Radius within which the eigenvalues of two n x n matrices can be matched."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape != b.shape:
        raise DomainError(f"need two square matrices of equal size, got {a.shape} and {b.shape}")
    n = a.shape[0]
    big = max(np.abs(a).max(), np.abs(b).max())
    diff = np.abs(a - b).sum()
    if diff == 0:
        return 0.0
    delta = diff / (n * big)
    return 2 * (n + 1) ** 2 * big * delta ** (1.0 / n)


@dataclass(frozen=True)
class LocalityReport:
    i: int
    eps: float
    theta_i: float
    a_i: int
    radius: float
    holds: bool
    alpha: float | None = None
    xi: float | None = None
    xi_bound: float | None = None
    xi_holds: bool | None = None


def eigenvalue_locality_check(arr: IntersectionArray, i: int, eps: float,
                              alpha: float | None = None,
                              spectrum: Spectrum | None = None) -> LocalityReport:
    """Check |theta_i - a_i| <= 2(d+2)^2 eps^(1/(d+1)) k when b_i, c_i <= eps k.

    With ``alpha`` given and b_{i-1}, c_{i+1} >= alpha k (c_{d+1} = k), also
    check the resulting bound on the zero-weight spectral radius.
    """
    d, k = arr.d, arr.k
    if not 0 <= i <= d:
        raise DomainError(f"index {i} outside 0..{d}")
    if arr.b_at(i) > eps * k or arr.c_at(i) > eps * k:
        raise Inapplicable(f"need b_{i} <= eps*k and c_{i} <= eps*k (b={arr.b_at(i)}, c={arr.c_at(i)}, eps*k={eps * k})")
    spec = spectrum or eigen_spectrum(arr)
    slack = 2 * (d + 2) ** 2 * eps ** (1.0 / (d + 1))
    radius = slack * k
    theta = spec.eigenvalues[i]
    rep = dict(i=i, eps=eps, theta_i=theta, a_i=arr.a_at(i), radius=radius,
               holds=abs(theta - arr.a_at(i)) <= radius)
    if alpha is not None and i >= 1 and arr.b_at(i - 1) >= alpha * k and arr.c_at(i + 1) >= alpha * k:
        bound = k * (1 - alpha + slack)
        rep.update(alpha=alpha, xi=spec.xi, xi_bound=bound, xi_holds=spec.xi <= bound)
    return LocalityReport(**rep)
