"""Seeded sampling of generic forms plus the genericity guard.

The random source is SplitMix64, fixed so every number in a report can be
regenerated from (type, prime, seed, resample_count) alone:

  state_0 = (seed + resample_count * 0x9E3779B97F4A7C15) mod 2^64
  next(): state += 0x9E3779B97F4A7C15;
          z = state; z = (z ^ z>>30) * 0xBF58476D1CE4E5B9 mod 2^64;
          z = (z ^ z>>27) * 0x94D049BB133111EB mod 2^64; return z ^ z>>31

Coefficients are drawn uniformly from [1, p-1] by rejection (no modulo
bias), one per monomial in degrevlex-descending order, forms in order
d_1 <= ... <= d_r from a single stream.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .algebra import (
    DEFAULT_PRIME,
    Monomial,
    Polynomial,
    PrimeField,
    groebner,
    monomial_block,
)
from .series import DegreeType, TruncatedSeries, condition1_check

_MASK = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15

RETRY_CAP = 8


class SplitMix64:
    """The fixed 64-bit generator behind all sampling."""

    __slots__ = ("state",)

    def __init__(self, seed: int, stream: int = 0):
        self.state = (seed + stream * _GOLDEN) & _MASK

    def next_u64(self) -> int:
        self.state = (self.state + _GOLDEN) & _MASK
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
        return z ^ (z >> 31)

    def below(self, bound: int) -> int:
        """Uniform in [0, bound) by rejection."""
        limit = (1 << 64) - ((1 << 64) % bound)
        while True:
            u = self.next_u64()
            if u < limit:
                return u % bound

    def coefficient(self, p: int) -> int:
        """Uniform in [1, p-1]."""
        return self.below(p - 1) + 1


@dataclass(frozen=True)
class GenericInstance:
    """A sampled ideal with full provenance."""

    degree_type: DegreeType
    prime: int
    seed: int
    resample_count: int
    forms: tuple[Polynomial, ...]

    def to_json(self):
        return {
            "type": str(self.degree_type),
            "prime": self.prime,
            "seed": self.seed,
            "resample_count": self.resample_count,
            "forms": [f.to_json() for f in self.forms],
        }

    @classmethod
    def from_json(cls, data):
        t = DegreeType.parse(data["type"])
        field = PrimeField(int(data["prime"]))
        forms = tuple(
            Polynomial.from_json(field, t.n, fj) for fj in data["forms"]
        )
        return cls(t, field.p, int(data["seed"]), int(data["resample_count"]), forms)


def sample_form(nvars: int, degree: int, rng: SplitMix64, field: PrimeField) -> Polynomial:
    """Dense form: every degree-`degree` monomial, nonzero coefficient."""
    if degree < 1:
        raise ValueError("form degree must be >= 1")
    terms = [
        (rng.coefficient(field.p), Monomial(exps))
        for exps in monomial_block(nvars, degree)
    ]
    return Polynomial(field, nvars, terms)


def sample_ideal(
    t: DegreeType,
    prime: int = DEFAULT_PRIME,
    seed: int = 0,
    resample_count: int = 0,
) -> GenericInstance:
    field = PrimeField(prime)
    rng = SplitMix64(seed, stream=resample_count)
    forms = tuple(sample_form(t.n, d, rng, field) for d in t.degrees)
    return GenericInstance(t, prime, seed, resample_count, forms)


def projected_instance(inst: GenericInstance) -> GenericInstance:
    """Image under killing the last variable: drop terms it divides.

    The surviving coefficients are the original independent draws, so the
    image is again a valid sample of the (n-1)-variable type.
    """
    t = inst.degree_type
    if t.n < 2:
        raise ValueError("cannot project a 1-variable instance")
    field = PrimeField(inst.prime)
    small = DegreeType(t.n - 1, t.degrees)
    forms = []
    for f in inst.forms:
        terms = [
            (c, Monomial(m.exponents[:-1]))
            for c, m in f.terms
            if m.exponents[-1] == 0
        ]
        forms.append(Polynomial(field, t.n - 1, terms))
    return GenericInstance(small, inst.prime, inst.seed, inst.resample_count, tuple(forms))


@lru_cache(maxsize=32)
def _cached_groebner(type_str: str, prime: int, seed: int, resample: int, cap: int):
    inst = sample_ideal(DegreeType.parse(type_str), prime, seed, resample)
    return groebner(inst.forms, cap)


def instance_groebner(inst: GenericInstance, cap: int):
    """Groebner basis of the instance, memoized on provenance.

    Only instances regenerable from provenance hit the cache; hand-built
    form lists are computed directly.
    """
    key_inst = sample_ideal(inst.degree_type, inst.prime, inst.seed, inst.resample_count)
    if key_inst.forms == inst.forms:
        return _cached_groebner(
            str(inst.degree_type), inst.prime, inst.seed, inst.resample_count, cap
        )
    return groebner(inst.forms, cap)


def hilbert_function_through(inst: GenericInstance, bound: int) -> list[int]:
    """HF of R/I for degrees 0..bound via the Groebner engine."""
    G = instance_groebner(inst, bound)
    eng = G.engine()
    return [len(eng.standard_positions(t)) for t in range(bound + 1)]


def guard_regime_proven(t: DegreeType) -> bool:
    """Regimes where the conjectured series is a theorem, so a miss
    certifies a non-generic sample: r <= n, n <= 3, or the degree-growth
    condition d_i >= sigma_{i-1} (4 <= i <= r)."""
    return t.r <= t.n or t.n <= 3 or condition1_check(t).ok


class GuardExhausted(RuntimeError):
    """Raised when every retry missed a proven Hilbert value."""

    def __init__(self, degree, computed, expected, attempts):
        super().__init__(
            f"genericity guard exhausted after {attempts} attempts: "
            f"degree {degree} gives {computed}, proven value {expected}"
        )
        self.degree = degree
        self.computed = computed
        self.expected = expected
        self.attempts = attempts


@dataclass(frozen=True)
class GuardResult:
    instance: GenericInstance
    passed: bool
    mismatch: tuple[int, int, int] | None  # (degree, computed, expected)
    resamples_used: int


def find_mismatch(inst: GenericInstance, expected: TruncatedSeries, through_degree: int):
    """First degree <= through_degree where HF differs from expected, or None."""
    if through_degree > expected.bound:
        raise ValueError("expected series truncated below the requested degree")
    hf = hilbert_function_through(inst, through_degree)
    for t in range(through_degree + 1):
        if hf[t] != expected.coeffs[t]:
            return (t, hf[t], expected.coeffs[t])
    return None


def genericity_guard(
    inst: GenericInstance,
    expected: TruncatedSeries,
    through_degree: int,
    retry_cap: int = RETRY_CAP,
) -> GuardResult:
    """Accept the instance, resample it, or report a finding.

    Exact match through the degree: pass. Mismatch in a proven regime:
    resample with an incremented resample_count (the sample is certified
    non-generic), up to retry_cap, then raise GuardExhausted. Mismatch in an
    open regime: returned as a finding, never resampled.
    """
    proven = guard_regime_proven(inst.degree_type)
    current = inst
    used = 0
    while True:
        miss = find_mismatch(current, expected, through_degree)
        if miss is None:
            return GuardResult(current, True, None, used)
        if not proven:
            return GuardResult(current, False, miss, used)
        used += 1
        if used > retry_cap:
            raise GuardExhausted(miss[0], miss[1], miss[2], used)
        current = sample_ideal(
            current.degree_type,
            current.prime,
            current.seed,
            current.resample_count + 1,
        )
