"""Truncated integer power series and degree-sequence combinatorics.

Everything here is exact: coefficients are arbitrary-precision Python ints,
truncation bounds are explicit, and no operation ever reads or writes a
coefficient above the bound.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field


@dataclass(frozen=True)
class TruncatedSeries:
    """Integer coefficient sequence c_0..c_bound (inclusive truncation)."""

    coeffs: tuple[int, ...]
    bound: int

    def __post_init__(self):
        if self.bound < 0:
            raise ValueError("bound must be >= 0")
        if len(self.coeffs) != self.bound + 1:
            raise ValueError(
                f"need {self.bound + 1} coefficients for bound {self.bound}, "
                f"got {len(self.coeffs)}"
            )
        object.__setattr__(self, "coeffs", tuple(int(c) for c in self.coeffs))

    @classmethod
    def from_coeffs(cls, coeffs, bound=None):
        coeffs = [int(c) for c in coeffs]
        if bound is None:
            bound = len(coeffs) - 1
        if len(coeffs) < bound + 1:
            coeffs = coeffs + [0] * (bound + 1 - len(coeffs))
        return cls(tuple(coeffs[: bound + 1]), bound)

    @classmethod
    def one(cls, bound):
        return cls((1,) + (0,) * bound, bound)

    @classmethod
    def geometric(cls, bound):
        """1/(1-z) = 1 + z + z^2 + ... truncated."""
        return cls((1,) * (bound + 1), bound)

    @classmethod
    def one_minus_power(cls, d, bound):
        """1 - z^d truncated at bound."""
        coeffs = [0] * (bound + 1)
        coeffs[0] = 1
        if d <= bound:
            coeffs[d] -= 1
        return cls(tuple(coeffs), bound)

    def __add__(self, other):
        self._check_bound(other)
        return TruncatedSeries(
            tuple(a + b for a, b in zip(self.coeffs, other.coeffs)), self.bound
        )

    def __sub__(self, other):
        self._check_bound(other)
        return TruncatedSeries(
            tuple(a - b for a, b in zip(self.coeffs, other.coeffs)), self.bound
        )

    def _check_bound(self, other):
        if not isinstance(other, TruncatedSeries):
            raise TypeError(f"expected TruncatedSeries, got {type(other).__name__}")
        if self.bound != other.bound:
            raise ValueError(f"bound mismatch: {self.bound} != {other.bound}")

    def last_positive_index(self):
        """Largest t with c_t > 0, or None if no coefficient is positive."""
        for t in range(self.bound, -1, -1):
            if self.coeffs[t] > 0:
                return t
        return None

    def to_json(self):
        return {"bound": self.bound, "coeffs": list(self.coeffs)}

    @classmethod
    def from_json(cls, data):
        return cls(tuple(int(c) for c in data["coeffs"]), int(data["bound"]))


def mul_truncated(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    """Cauchy product of two series sharing one truncation bound."""
    a._check_bound(b)
    n = a.bound + 1
    out = [0] * n
    for i, ca in enumerate(a.coeffs):
        if ca == 0:
            continue
        for j in range(n - i):
            cb = b.coeffs[j]
            if cb:
                out[i + j] += ca * cb
    return TruncatedSeries(tuple(out), a.bound)


def ceiling(s: TruncatedSeries) -> TruncatedSeries:
    """Zero out the series from the first non-positive coefficient onward.

    b_t = c_t while every c_j > 0 for j <= t; once some c_t <= 0, that
    coefficient and all later ones become 0.
    """
    out = []
    alive = True
    for c in s.coeffs:
        if alive and c > 0:
            out.append(c)
        else:
            alive = False
            out.append(0)
    return TruncatedSeries(tuple(out), s.bound)


@dataclass(frozen=True)
class DegreeType:
    """A generator-degree profile: n variables, degrees d_1 <= ... <= d_r."""

    n: int
    degrees: tuple[int, ...]

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("variable count must be >= 1")
        degrees = tuple(sorted(int(d) for d in self.degrees))
        if not degrees:
            raise ValueError("at least one degree is required")
        if degrees[0] < 1:
            raise ValueError("degrees must be >= 1")
        object.__setattr__(self, "degrees", degrees)

    @property
    def r(self):
        return len(self.degrees)

    @classmethod
    def parse(cls, text: str) -> "DegreeType":
        """Parse the "n:d1,d2,...,dr" syntax, reporting the failing position."""
        if ":" not in text:
            raise ValueError(f"invalid type {text!r}: missing ':' separator")
        head, _, tail = text.partition(":")
        try:
            n = int(head.strip())
        except ValueError:
            raise ValueError(f"invalid type {text!r}: bad variable count at position 0")
        offset = len(head) + 1
        degrees = []
        pos = offset
        for part in tail.split(","):
            try:
                degrees.append(int(part.strip()))
            except ValueError:
                raise ValueError(f"invalid type {text!r}: bad degree at position {pos}")
            pos += len(part) + 1
        if n < 1:
            raise ValueError(f"invalid type {text!r}: variable count must be >= 1")
        if any(d < 1 for d in degrees):
            raise ValueError(f"invalid type {text!r}: degrees must be >= 1")
        return cls(n, tuple(degrees))

    def __str__(self):
        return f"{self.n}:{','.join(str(d) for d in self.degrees)}"

    def socle_degree(self):
        """d_1 + ... + d_r - n; the top degree of the r = n quotient."""
        return sum(self.degrees) - self.n

    def default_bound(self):
        """Truncation bound safely above every construction degree in scope."""
        return sum(self.degrees) - self.n + max(self.degrees) + 2


@dataclass(frozen=True)
class SigmaProfile:
    """Partial-sum invariants of a degree sequence.

    delta[i-1] = d_1 + ... + d_i - i           (1-based i up to r)
    sigma[i-2] = min(delta_{i-1}, floor(delta_i / 2))   for i >= 2
    """

    degree_type: DegreeType
    delta: tuple[int, ...] = field(init=False)
    sigma: tuple[int, ...] = field(init=False)

    def __post_init__(self):
        ds = self.degree_type.degrees
        delta = []
        total = 0
        for i, d in enumerate(ds, start=1):
            total += d
            delta.append(total - i)
        sigma = [
            min(delta[i - 2], delta[i - 1] // 2) for i in range(2, len(ds) + 1)
        ]
        object.__setattr__(self, "delta", tuple(delta))
        object.__setattr__(self, "sigma", tuple(sigma))

    def delta_at(self, i):
        """delta_i for 1 <= i <= r."""
        return self.delta[i - 1]

    def sigma_at(self, i):
        """sigma_i for 2 <= i <= r."""
        return self.sigma[i - 2]

    @property
    def top_delta(self):
        return self.delta[-1]

    @property
    def delta_star(self):
        """delta_{r-1}, defined when r >= 2."""
        if len(self.delta) < 2:
            return None
        return self.delta[-2]

    @property
    def top_sigma(self):
        """sigma_r = min(delta_{r-1}, floor(delta_r / 2)), defined when r >= 2."""
        if not self.sigma:
            return None
        return self.sigma[-1]


def sigma_profile(t: DegreeType) -> SigmaProfile:
    return SigmaProfile(t)


@dataclass(frozen=True)
class Condition1Report:
    """Per-index record of the degree-growth condition d_i >= sigma_{i-1}."""

    ok: bool
    rows: tuple[tuple[int, int, int, bool], ...]  # (i, d_i, sigma_{i-1}, pass)


def condition1_check(t: DegreeType) -> Condition1Report:
    """True iff r <= 3, or d_i >= sigma_{i-1} for every 4 <= i <= r."""
    if t.r <= 3:
        return Condition1Report(True, ())
    prof = sigma_profile(t)
    rows = []
    ok = True
    for i in range(4, t.r + 1):
        d_i = t.degrees[i - 1]
        s = prof.sigma_at(i - 1)
        passed = d_i >= s
        ok = ok and passed
        rows.append((i, d_i, s, passed))
    return Condition1Report(ok, tuple(rows))


def froberg_series(t: DegreeType, bound: int) -> TruncatedSeries:
    """Ceiling of prod(1 - z^{d_i}) / (1 - z)^n, truncated at bound.

    The pre-ceiling series is exact: 1/(1-z)^n has coefficients C(n-1+t, n-1),
    and the numerator product is carried out in truncated integer arithmetic.
    """
    if bound < 0:
        raise ValueError("bound must be >= 0")
    inv_power = TruncatedSeries(
        tuple(math.comb(t.n - 1 + k, t.n - 1) for k in range(bound + 1)), bound
    )
    acc = inv_power
    for d in t.degrees:
        acc = mul_truncated(acc, TruncatedSeries.one_minus_power(d, bound))
    return ceiling(acc)


def ci_series(t: DegreeType) -> TruncatedSeries:
    """Hilbert series of the r = n quotient: prod(1 - z^{d_i}) / (1 - z)^n.

    A symmetric polynomial of degree exactly delta = sum(d_i) - n, so the
    result is truncated there.
    """
    if t.r != t.n:
        raise ValueError(f"complete-intersection series needs r == n, got {t}")
    delta = t.socle_degree()
    acc = TruncatedSeries.one(delta)
    for d in t.degrees:
        # (1 + z + ... + z^{d-1}) factor, one per generator
        step = TruncatedSeries.from_coeffs([1] * min(d, delta + 1), delta)
        acc = mul_truncated(acc, step)
    return acc
