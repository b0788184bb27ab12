"""Intersection arrays and the parameters derived from them.

Everything here is exact: distance-degrees and intersection numbers are
computed with :class:`fractions.Fraction` and integrality is checked, never
assumed.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

from .errors import (
    DomainError,
    InvalidArray,
    NegativeA,
    NonIntegralDistanceDegree,
    NonIntegralP,
)


@dataclass(frozen=True)
class IntersectionArray:
    """The array ``{b_0, ..., b_{d-1}; c_1, ..., c_d}``.

    Construction only checks shape (equal lengths, positive integers).  The
    distance-regularity invariants are reported by :meth:`violations` and
    enforced by :meth:`validate`, :func:`parse_array` and
    :func:`derive_parameters`; keeping them out of ``__init__`` lets
    :func:`feasibility_report` inspect malformed candidates.

    Diameter-1 arrays (complete graphs) are representable because halving
    and folding can produce them; the parser rejects them.
    """

    b: tuple[int, ...]
    c: tuple[int, ...]

    def __post_init__(self):
        b = tuple(self.b)
        c = tuple(self.c)
        if len(b) != len(c):
            raise InvalidArray(f"b and c differ in length ({len(b)} vs {len(c)})")
        if not b:
            raise InvalidArray("empty intersection array")
        for name, seq in (("b", b), ("c", c)):
            for x in seq:
                if isinstance(x, bool) or int(x) != x:
                    raise InvalidArray(f"{name} entries must be integers, got {x!r}")
                if x <= 0:
                    raise InvalidArray(f"{name} entries must be positive, got {x}")
        object.__setattr__(self, "b", tuple(int(x) for x in b))
        object.__setattr__(self, "c", tuple(int(x) for x in c))

    @property
    def d(self) -> int:
        return len(self.b)

    @property
    def k(self) -> int:
        return self.b[0]

    def b_at(self, i: int) -> int:
        """b_i with b_d = 0."""
        return self.b[i] if 0 <= i < self.d else 0

    def c_at(self, i: int) -> int:
        """c_i with c_0 = 0 and the convention c_{d+1} = k."""
        if i == 0:
            return 0
        if i == self.d + 1:
            return self.k
        return self.c[i - 1]

    def a_at(self, i: int) -> int:
        return self.k - self.b_at(i) - self.c_at(i)

    @property
    def a(self) -> tuple[int, ...]:
        return tuple(self.a_at(i) for i in range(self.d + 1))

    def violations(self) -> list[tuple[str, str]]:
        """Named invariant failures, in the order they are checked."""
        out = []
        if self.c[0] != 1:
            out.append(("C1NotOne", f"c_1 = {self.c[0]}, expected 1"))
        for i in range(self.d - 1):
            if self.b[i + 1] > self.b[i]:
                out.append(("BNotNonIncreasing", f"b_{i + 1} = {self.b[i + 1]} > b_{i} = {self.b[i]}"))
                break
        for i in range(self.d - 1):
            if self.c[i + 1] < self.c[i]:
                out.append(("CNotNonDecreasing", f"c_{i + 2} = {self.c[i + 1]} < c_{i + 1} = {self.c[i]}"))
                break
        for i in range(self.d + 1):
            if self.a_at(i) < 0:
                out.append(("NegativeA", f"a_{i} = {self.a_at(i)} < 0"))
                break
        return out

    def validate(self, min_diameter: int = 1) -> "IntersectionArray":
        if self.d < min_diameter:
            raise InvalidArray(f"diameter {self.d} < {min_diameter}")
        bad = self.violations()
        if bad:
            name, detail = bad[0]
            raise InvalidArray(f"{name}: {detail}")
        return self

    def to_json(self) -> dict:
        return {"b": list(self.b), "c": list(self.c)}

    def __str__(self):
        return "{" + ",".join(map(str, self.b)) + ";" + ",".join(map(str, self.c)) + "}"


def parse_array(data) -> IntersectionArray:
    """Build a validated array from ``{"b": [...], "c": [...]}`` or its JSON text.

    Raises :class:`InvalidArray` naming the first failed invariant.
    """
    if isinstance(data, (str, bytes)):
        try:
            data = json.loads(data)
        except json.JSONDecodeError as exc:
            raise InvalidArray(f"not valid JSON: {exc}") from None
    if not isinstance(data, dict) or "b" not in data or "c" not in data:
        raise InvalidArray('expected an object with keys "b" and "c"')
    b, c = data["b"], data["c"]
    if not isinstance(b, list) or not isinstance(c, list):
        raise InvalidArray('"b" and "c" must be lists')
    return IntersectionArray(tuple(b), tuple(c)).validate(min_diameter=2)


@dataclass(frozen=True)
class ParameterTable:
    array: IntersectionArray
    a: tuple[int, ...]
    kdist: tuple[int, ...]
    n: int
    p: tuple = field(repr=False)  # p[s][i][j] = p^s_{i,j}

    @property
    def d(self) -> int:
        return self.array.d

    @property
    def k(self) -> int:
        return self.array.k

    @property
    def lam(self) -> int:
        return self.a[1]

    @property
    def mu(self) -> int:
        # for d = 1 there is no distance-2 pair; report 0
        return self.array.c[1] if self.d >= 2 else 0

    @property
    def q(self) -> int:
        """Maximum number of common neighbours of two distinct vertices."""
        return max(self.lam, self.mu)

    def pij(self, s: int, i: int, j: int) -> int:
        return self.p[s][i][j]


def distance_degrees(arr: IntersectionArray) -> list[Fraction]:
    """k_0..k_d from k_{i+1} = k_i b_i / c_{i+1}; may be non-integral."""
    ks = [Fraction(1)]
    for i in range(arr.d):
        ks.append(ks[-1] * arr.b[i] / arr.c[i])
    return ks


def _left_mult(arr: IntersectionArray, x: list[Fraction]) -> list[Fraction]:
    # A * sum_s x_s A_s, rewritten via A A_s = c_{s+1}A_{s+1} + a_s A_s + b_{s-1}A_{s-1}
    d = arr.d
    out = [Fraction(0)] * (d + 1)
    for s, xs in enumerate(x):
        if not xs:
            continue
        out[s] += xs * arr.a_at(s)
        if s + 1 <= d:
            out[s + 1] += xs * arr.c_at(s + 1)
        if s - 1 >= 0:
            out[s - 1] += xs * arr.b_at(s - 1)
    return out


def _tensor_fractions(arr: IntersectionArray) -> list[list[list[Fraction]]]:
    """prod[i][j] = coefficient vector of A_i A_j in the basis A_0..A_d."""
    d = arr.d
    prod = []
    for i in range(d + 1):
        row = []
        e = [Fraction(0)] * (d + 1)
        e[i] = Fraction(1)
        row.append(e)
        if d >= 1:
            row.append(_left_mult(arr, e))
        for j in range(1, d):
            lp = _left_mult(arr, row[j])
            nxt = [
                (lp[s] - arr.a_at(j) * row[j][s] - arr.b_at(j - 1) * row[j - 1][s]) / arr.c_at(j + 1)
                for s in range(d + 1)
            ]
            row.append(nxt)
        prod.append(row)
    return prod


def intersection_tensor(arr: IntersectionArray) -> tuple:
    """Intersection numbers as a nested tuple ``p[s][i][j]``.

    Raises :class:`NonIntegralP` if any coefficient is negative or
    non-integral.
    """
    d = arr.d
    prod = _tensor_fractions(arr)
    p = [[[0] * (d + 1) for _ in range(d + 1)] for _ in range(d + 1)]
    for i in range(d + 1):
        for j in range(d + 1):
            for s in range(d + 1):
                v = prod[i][j][s]
                if v.denominator != 1 or v < 0:
                    raise NonIntegralP(f"p^{s}_{{{i},{j}}} = {v}")
                p[s][i][j] = int(v)
    return tuple(tuple(tuple(r) for r in plane) for plane in p)


def derive_parameters(arr: IntersectionArray) -> ParameterTable:
    bad = arr.violations()
    for name, detail in bad:
        if name == "NegativeA":
            raise NegativeA(detail)
    if bad:
        raise InvalidArray(f"{bad[0][0]}: {bad[0][1]}")
    ks = distance_degrees(arr)
    for i, ki in enumerate(ks):
        if ki.denominator != 1:
            raise NonIntegralDistanceDegree(f"k_{i} = {ki}")
    kdist = tuple(int(x) for x in ks)
    return ParameterTable(
        array=arr,
        a=arr.a,
        kdist=kdist,
        n=sum(kdist),
        p=intersection_tensor(arr),
    )


def johnson_array(m: int, d: int) -> IntersectionArray:
    if d < 2 or m < 2 * d + 1:
        raise DomainError(f"J(m,d) needs d >= 2 and m >= 2d+1, got m={m}, d={d}")
    return IntersectionArray(
        tuple((d - i) * (m - d - i) for i in range(d)),
        tuple((i + 1) ** 2 for i in range(d)),
    )


def hamming_array(d: int, m: int) -> IntersectionArray:
    if d < 1 or m < 2:
        raise DomainError(f"H(d,m) needs d >= 1 and m >= 2, got d={d}, m={m}")
    return IntersectionArray(
        tuple((d - i) * (m - 1) for i in range(d)),
        tuple(i + 1 for i in range(d)),
    )


def cocktail_party_array(m: int) -> IntersectionArray:
    """K_{m x 2}: the complete graph K_{2m} minus a perfect matching."""
    if m < 2:
        raise DomainError(f"cocktail-party graph needs m >= 2, got {m}")
    return IntersectionArray((2 * m - 2, 1), (1, 2 * m - 2))


def johnson_spectrum(m: int, d: int) -> list[tuple[int, int]]:
    """Closed-form (eigenvalue, multiplicity) pairs of J(m,d), descending."""
    return [
        ((d - j) * (m - d - j) - j, comb(m, j) - (comb(m, j - 1) if j else 0))
        for j in range(d + 1)
    ]


def hamming_spectrum(d: int, m: int) -> list[tuple[int, int]]:
    return [(d * (m - 1) - j * m, comb(d, j) * (m - 1) ** j) for j in range(d + 1)]


def cocktail_party_spectrum(m: int) -> list[tuple[int, int]]:
    return [(2 * m - 2, 1), (0, m), (-2, m - 1)]


@dataclass(frozen=True)
class Violation:
    name: str
    detail: str

    def to_json(self) -> dict:
        return {"name": self.name, "detail": self.detail}


def feasibility_report(arr: IntersectionArray) -> list[Violation]:
    """All failed feasibility checks; empty when the array passes every one.

    Checks run in dependency order: structural invariants, integrality of
    the distance-degrees, integrality of p^s_{ij}, then integrality of the
    eigenvalue multiplicities.  Later checks are skipped once k_i is
    non-integral, since they are meaningless without an integer n.
    """
    from .errors import DegenerateSpectrum, MultiplicityNotIntegral
    from .spectrum import eigen_spectrum  # spectrum imports this module

    out = [Violation(name, detail) for name, detail in arr.violations()]
    ks = distance_degrees(arr)
    bad_k = [(i, x) for i, x in enumerate(ks) if x.denominator != 1]
    if bad_k:
        i, x = bad_k[0]
        out.append(Violation("NonIntegralDistanceDegree", f"k_{i} = {x}"))
        return out
    try:
        intersection_tensor(arr)
    except NonIntegralP as exc:
        out.append(Violation("NonIntegralP", str(exc)))
    try:
        eigen_spectrum(arr)
    except (MultiplicityNotIntegral, DegenerateSpectrum) as exc:
        out.append(Violation(type(exc).__name__, str(exc)))
    return out
