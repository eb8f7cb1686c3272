"""Exact polynomial algebra over a prime field with the degrevlex order.

Monomials are exponent tuples with a cached total degree, polynomials are
sparse term lists kept strictly decreasing, and the Groebner engine is
Buchberger with normal (degree-ascending) pair selection, sound per degree
for homogeneous input when truncated at a degree cap.

Reductions run on dense per-degree coefficient vectors (numpy, mod p): for
homogeneous polynomials a single left-to-right sweep over the degree block
is a complete normal form, because subtracting a reducer multiple only
touches degrevlex-smaller positions.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

DEFAULT_PRIME = 32003


# ---------------------------------------------------------------------------
# prime field
# ---------------------------------------------------------------------------

def is_prime(m: int) -> bool:
    """Deterministic Miller-Rabin, valid far beyond any modulus we accept."""
    if m < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if m % q == 0:
            return m == q
    d, s = m - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, m)
        if x in (1, m - 1):
            continue
        for _ in range(s - 1):
            x = x * x % m
            if x == m - 1:
                break
        else:
            return False
    return True


class PrimeField:
    """Arithmetic mod an odd prime p; elements are ints in [0, p)."""

    __slots__ = ("p",)

    def __init__(self, p: int = DEFAULT_PRIME):
        if p == 2 or not is_prime(p):
            raise ValueError(f"modulus must be an odd prime, got {p}")
        self.p = p

    def normalize(self, a: int) -> int:
        return a % self.p

    def inv(self, a: int) -> int:
        a %= self.p
        if a == 0:
            raise ZeroDivisionError("no inverse of 0")
        return pow(a, self.p - 2, self.p)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("PrimeField", self.p))

    def __repr__(self):
        return f"PrimeField({self.p})"


# ---------------------------------------------------------------------------
# monomials and the degrevlex order
# ---------------------------------------------------------------------------

class Monomial:
    """Exponent vector with cached total degree."""

    __slots__ = ("exponents", "degree")

    def __init__(self, exponents):
        exps = tuple(int(e) for e in exponents)
        if not exps:
            raise ValueError("monomials need at least one variable")
        if any(e < 0 for e in exps):
            raise ValueError(f"negative exponent in {exps}")
        self.exponents = exps
        self.degree = sum(exps)

    @property
    def nvars(self):
        return len(self.exponents)

    @classmethod
    def one(cls, nvars):
        return cls((0,) * nvars)

    @classmethod
    def variable(cls, nvars, index):
        """x_index, 1-based."""
        if not 1 <= index <= nvars:
            raise ValueError(f"variable index {index} out of range 1..{nvars}")
        return cls(tuple(1 if i == index - 1 else 0 for i in range(nvars)))

    def sort_key(self):
        # ascending in this key == ascending in degrevlex
        return (self.degree, tuple(-e for e in reversed(self.exponents)))

    def __eq__(self, other):
        return isinstance(other, Monomial) and other.exponents == self.exponents

    def __hash__(self):
        return hash(self.exponents)

    def __lt__(self, other):
        return degrevlex_cmp(self, other) < 0

    def __le__(self, other):
        return degrevlex_cmp(self, other) <= 0

    def __gt__(self, other):
        return degrevlex_cmp(self, other) > 0

    def __ge__(self, other):
        return degrevlex_cmp(self, other) >= 0

    def __mul__(self, other):
        if self.nvars != other.nvars:
            raise ValueError("variable count mismatch")
        return Monomial(tuple(a + b for a, b in zip(self.exponents, other.exponents)))

    def divides(self, other: "Monomial") -> bool:
        if self.nvars != other.nvars:
            raise ValueError("variable count mismatch")
        return all(a <= b for a, b in zip(self.exponents, other.exponents))

    def quotient(self, other: "Monomial") -> "Monomial":
        """self / other; other must divide self."""
        if not other.divides(self):
            raise ValueError(f"{other} does not divide {self}")
        return Monomial(tuple(a - b for a, b in zip(self.exponents, other.exponents)))

    def lcm(self, other: "Monomial") -> "Monomial":
        if self.nvars != other.nvars:
            raise ValueError("variable count mismatch")
        return Monomial(tuple(max(a, b) for a, b in zip(self.exponents, other.exponents)))

    def is_coprime(self, other: "Monomial") -> bool:
        return all(a == 0 or b == 0 for a, b in zip(self.exponents, other.exponents))

    def extend(self, extra_vars: int = 1) -> "Monomial":
        """Embed into a ring with extra trailing variables (exponent 0)."""
        return Monomial(self.exponents + (0,) * extra_vars)

    def times_last_power(self, k: int) -> "Monomial":
        """Multiply by (last variable)^k."""
        return Monomial(self.exponents[:-1] + (self.exponents[-1] + k,))

    def to_json(self):
        return list(self.exponents)

    def __str__(self):
        if self.degree == 0:
            return "1"
        parts = []
        for i, e in enumerate(self.exponents, start=1):
            if e == 1:
                parts.append(f"x{i}")
            elif e > 1:
                parts.append(f"x{i}^{e}")
        return "*".join(parts)

    def __repr__(self):
        return f"Monomial({self.exponents})"


def degrevlex_cmp(a: Monomial, b: Monomial) -> int:
    """-1, 0 or +1; a > b iff deg a > deg b, or degrees tie and the last
    nonzero entry of a - b is negative."""
    if a.nvars != b.nvars:
        raise ValueError(f"variable count mismatch: {a.nvars} != {b.nvars}")
    if a.degree != b.degree:
        return 1 if a.degree > b.degree else -1
    for x, y in zip(reversed(a.exponents), reversed(b.exponents)):
        if x != y:
            return 1 if x < y else -1
    return 0


@lru_cache(maxsize=None)
def monomial_block(nvars: int, degree: int) -> tuple[tuple[int, ...], ...]:
    """All degree-`degree` exponent tuples, degrevlex-descending."""
    if nvars == 1:
        return ((degree,),)
    out = []
    for last in range(degree + 1):
        for rest in monomial_block(nvars - 1, degree - last):
            out.append(rest + (last,))
    return tuple(out)


@lru_cache(maxsize=None)
def block_index(nvars: int, degree: int) -> dict:
    return {exps: i for i, exps in enumerate(monomial_block(nvars, degree))}


@lru_cache(maxsize=None)
def block_matrix(nvars: int, degree: int) -> np.ndarray:
    m = np.array(monomial_block(nvars, degree), dtype=np.int16)
    m.setflags(write=False)
    return m


def block_size(nvars: int, degree: int) -> int:
    return math.comb(degree + nvars - 1, nvars - 1)


# ---------------------------------------------------------------------------
# polynomials
# ---------------------------------------------------------------------------

class Polynomial:
    """Sparse sum of (coefficient, monomial) terms, strictly decreasing."""

    __slots__ = ("field", "nvars", "terms")

    def __init__(self, field: PrimeField, nvars: int, terms):
        self.field = field
        self.nvars = nvars
        cleaned = []
        prev = None
        for c, m in terms:
            c = c % field.p
            if c == 0:
                raise ValueError("zero coefficient in term list")
            if m.nvars != nvars:
                raise ValueError("term variable count mismatch")
            if prev is not None and degrevlex_cmp(prev, m) <= 0:
                raise ValueError("terms not strictly decreasing")
            cleaned.append((c, m))
            prev = m
        self.terms = tuple(cleaned)

    @classmethod
    def from_terms(cls, field, nvars, terms):
        """Combine duplicates, drop zeros, sort decreasing."""
        acc = {}
        for c, m in terms:
            acc[m] = (acc.get(m, 0) + c) % field.p
        kept = [(c, m) for m, c in acc.items() if c != 0]
        kept.sort(key=lambda t: t[1].sort_key(), reverse=True)
        return cls(field, nvars, kept)

    @classmethod
    def zero(cls, field, nvars):
        return cls(field, nvars, ())

    def is_zero(self):
        return not self.terms

    def leading_monomial(self) -> Monomial:
        if not self.terms:
            raise ValueError("zero polynomial has no leading monomial")
        return self.terms[0][1]

    def leading_coefficient(self) -> int:
        if not self.terms:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.terms[0][0]

    def is_homogeneous(self):
        return len({m.degree for _, m in self.terms}) <= 1

    def degree(self):
        """Degree of a nonzero homogeneous polynomial."""
        if not self.terms:
            raise ValueError("zero polynomial has no degree")
        return self.terms[0][1].degree

    def __eq__(self, other):
        return (
            isinstance(other, Polynomial)
            and other.field == self.field
            and other.nvars == self.nvars
            and other.terms == self.terms
        )

    def __hash__(self):
        return hash((self.field.p, self.nvars, self.terms))

    def _check_compatible(self, other):
        if self.field != other.field or self.nvars != other.nvars:
            raise ValueError("polynomials live in different rings")

    def __add__(self, other):
        self._check_compatible(other)
        return Polynomial.from_terms(
            self.field, self.nvars, list(self.terms) + list(other.terms)
        )

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c: int) -> "Polynomial":
        c = c % self.field.p
        if c == 0:
            return Polynomial.zero(self.field, self.nvars)
        return Polynomial(
            self.field, self.nvars, [(a * c % self.field.p, m) for a, m in self.terms]
        )

    def mul_monomial(self, mono: Monomial, c: int = 1) -> "Polynomial":
        c = c % self.field.p
        if c == 0:
            return Polynomial.zero(self.field, self.nvars)
        # multiplication by a fixed monomial preserves degrevlex order
        return Polynomial(
            self.field, self.nvars, [(a * c % self.field.p, m * mono) for a, m in self.terms]
        )

    def monic(self) -> "Polynomial":
        if self.is_zero():
            return self
        return self.scale(self.field.inv(self.leading_coefficient()))

    def coefficient_of(self, m: Monomial) -> int:
        for c, mm in self.terms:
            if mm == m:
                return c
        return 0

    def to_vector(self) -> np.ndarray:
        """Dense coefficient vector over the degree block (homogeneous only)."""
        if self.is_zero():
            raise ValueError("zero polynomial has no degree block")
        if not self.is_homogeneous():
            raise ValueError("dense vectors are per-degree; polynomial not homogeneous")
        t = self.degree()
        idx = block_index(self.nvars, t)
        vec = np.zeros(len(idx), dtype=np.int64)
        for c, m in self.terms:
            vec[idx[m.exponents]] = c
        return vec

    @classmethod
    def from_vector(cls, field, nvars, degree, vec) -> "Polynomial":
        blk = monomial_block(nvars, degree)
        terms = [
            (int(c) % field.p, Monomial(blk[i]))
            for i, c in enumerate(vec)
            if int(c) % field.p != 0
        ]
        return cls(field, nvars, terms)

    def to_json(self):
        return [[c, list(m.exponents)] for c, m in self.terms]

    @classmethod
    def from_json(cls, field, nvars, data):
        return cls(field, nvars, [(int(c), Monomial(e)) for c, e in data])

    def __str__(self):
        if not self.terms:
            return "0"
        return " + ".join(
            f"{c}*{m}" if m.degree > 0 else str(c) for c, m in self.terms
        )

    def __repr__(self):
        return f"Polynomial({self})"


# ---------------------------------------------------------------------------
# monomial ideals
# ---------------------------------------------------------------------------

class MonomialIdeal:
    """Minimal generating set of monomials, stored degrevlex-decreasing."""

    __slots__ = ("nvars", "generators")

    def __init__(self, nvars: int, generators):
        gens = list(generators)
        for g in gens:
            if g.nvars != nvars:
                raise ValueError("generator variable count mismatch")
        gens.sort(key=Monomial.sort_key)
        minimal = []
        for g in gens:  # ascending: earlier kept gens have <= degree
            if not any(h.divides(g) for h in minimal):
                minimal.append(g)
        minimal.sort(key=Monomial.sort_key, reverse=True)
        self.nvars = nvars
        self.generators = tuple(minimal)

    def contains(self, m: Monomial) -> bool:
        return any(g.divides(m) for g in self.generators)

    def __eq__(self, other):
        return (
            isinstance(other, MonomialIdeal)
            and other.nvars == self.nvars
            and other.generators == self.generators
        )

    def __hash__(self):
        return hash((self.nvars, self.generators))

    def __len__(self):
        return len(self.generators)

    def project(self, drop_last: int = 1) -> "MonomialIdeal":
        """Kill the last `drop_last` variables: generators touching them
        vanish, the rest keep their leading exponents."""
        keep = self.nvars - drop_last
        if keep < 1:
            raise ValueError("cannot project away every variable")
        gens = [
            Monomial(g.exponents[:keep])
            for g in self.generators
            if all(e == 0 for e in g.exponents[keep:])
        ]
        return MonomialIdeal(keep, gens)

    def to_json(self):
        return [list(g.exponents) for g in self.generators]

    @classmethod
    def from_json(cls, nvars, data):
        return cls(nvars, [Monomial(e) for e in data])

    def __repr__(self):
        return f"MonomialIdeal({', '.join(str(g) for g in self.generators)})"


def standard_monomials(ideal: MonomialIdeal, t: int) -> list[Monomial]:
    """Degree-t monomials outside the ideal, degrevlex-decreasing."""
    if t < 0:
        return []
    blk = block_matrix(ideal.nvars, t)
    inside = np.zeros(len(blk), dtype=bool)
    for g in ideal.generators:
        if g.degree > t:
            continue
        ge = np.array(g.exponents, dtype=np.int16)
        inside |= np.all(blk >= ge, axis=1)
    block = monomial_block(ideal.nvars, t)
    return [Monomial(block[i]) for i in np.flatnonzero(~inside)]


def hilbert_function(ideal: MonomialIdeal, t: int) -> int:
    """Number of degree-t standard monomials (direct enumeration)."""
    if t < 0:
        return 0
    blk = block_matrix(ideal.nvars, t)
    inside = np.zeros(len(blk), dtype=bool)
    for g in ideal.generators:
        if g.degree > t:
            continue
        ge = np.array(g.exponents, dtype=np.int16)
        inside |= np.all(blk >= ge, axis=1)
    return int((~inside).sum())


# ---------------------------------------------------------------------------
# dense per-degree reduction engine
# ---------------------------------------------------------------------------

class _Engine:
    """Reduction machinery shared by the Buchberger loop and normal_form.

    Holds monic basis vectors per degree plus two caches: a per-degree
    divisor table (which basis element reduces each monomial position) and
    monomial-multiplication index maps.
    """

    def __init__(self, nvars: int, field: PrimeField):
        self.nvars = nvars
        self.field = field
        self.leads: list[tuple[int, ...]] = []
        self.lead_degs: list[int] = []
        self.vecs: list[np.ndarray] = []
        self._div: dict[int, tuple[np.ndarray, int]] = {}
        self._maps: dict[tuple[tuple[int, ...], int], np.ndarray] = {}

    def add(self, lead_exps: tuple[int, ...], degree: int, monic_vec: np.ndarray):
        self.leads.append(lead_exps)
        self.lead_degs.append(degree)
        self.vecs.append(monic_vec)

    def divisor_table(self, t: int) -> np.ndarray:
        """div[k] = index of a basis element whose lead divides monomial k,
        else -1. Lazily refreshed as the basis grows."""
        blk = block_matrix(self.nvars, t)
        div, upto = self._div.get(t, (np.full(len(blk), -1, dtype=np.int32), 0))
        if upto < len(self.leads):
            for j in range(upto, len(self.leads)):
                if self.lead_degs[j] > t:
                    continue
                ge = np.array(self.leads[j], dtype=np.int16)
                mask = (div == -1) & np.all(blk >= ge, axis=1)
                div[mask] = j
            self._div[t] = (div, len(self.leads))
        return div

    def mult_map(self, quotient: tuple[int, ...], src_degree: int, t: int) -> np.ndarray:
        key = (quotient, src_degree)
        mp = self._maps.get(key)
        if mp is None:
            idx = block_index(self.nvars, t)
            src = monomial_block(self.nvars, src_degree)
            mp = np.fromiter(
                (idx[tuple(a + b for a, b in zip(e, quotient))] for e in src),
                dtype=np.intp,
                count=len(src),
            )
            self._maps[key] = mp
        return mp

    def reduce_vector(self, vec: np.ndarray, t: int, start: int = 0) -> np.ndarray:
        """Full normal form of a degree-t coefficient vector, in place.

        One descending sweep suffices: cancelling position k only changes
        positions > k (the reducer multiple's lead sits at k and its tail is
        degrevlex-smaller).
        """
        p = self.field.p
        div = self.divisor_table(t)
        blk = monomial_block(self.nvars, t)
        leads = self.leads
        degs = self.lead_degs
        vecs = self.vecs
        for k in range(start, len(vec)):
            c = int(vec[k])
            if c == 0:
                continue
            j = int(div[k])
            if j < 0:
                continue
            q = tuple(a - b for a, b in zip(blk[k], leads[j]))
            mp = self.mult_map(q, degs[j], t)
            vec[mp] = (vec[mp] - c * vecs[j]) % p
        return vec

    def standard_positions(self, t: int) -> np.ndarray:
        return np.flatnonzero(self.divisor_table(t) == -1)

    def shifted(self, j: int, quotient: tuple[int, ...], t: int) -> np.ndarray:
        """Dense vector of quotient * basis[j] inside the degree-t block."""
        out = np.zeros(block_size(self.nvars, t), dtype=np.int64)
        mp = self.mult_map(quotient, self.lead_degs[j], t)
        out[mp] = self.vecs[j]
        return out


# ---------------------------------------------------------------------------
# Groebner bases
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class GroebnerBasis:
    """Reduced basis, valid for every degree <= degree_cap."""

    field: PrimeField
    nvars: int
    elements: tuple[Polynomial, ...]
    degree_cap: int
    complete_below_cap: bool = True

    def leading_monomials(self):
        return [g.leading_monomial() for g in self.elements]

    def engine(self) -> _Engine:
        """Shared reduction engine; cached so divisor tables persist."""
        eng = self.__dict__.get("_engine")
        if eng is None:
            eng = _Engine(self.nvars, self.field)
            for g in self.elements:
                eng.add(g.leading_monomial().exponents, g.degree(), g.to_vector())
            object.__setattr__(self, "_engine", eng)
        return eng


def _spair_degree(la: Monomial, lb: Monomial) -> int:
    return la.lcm(lb).degree


def groebner(gens, cap: int) -> GroebnerBasis:
    """Reduced Groebner basis of homogeneous generators, valid through cap.

    Buchberger with normal selection: work items (input generators and
    S-pairs) are processed in ascending degree, so for homogeneous input the
    truncated result is exact below the cap. Pair pruning uses the coprime
    criterion and Gebauer-Moeller style lcm elimination.
    """
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        raise ValueError("need at least one nonzero generator")
    field = gens[0].field
    nvars = gens[0].nvars
    for g in gens:
        if g.field != field or g.nvars != nvars:
            raise ValueError("generators live in different rings")
        if not g.is_homogeneous():
            raise ValueError("generators must be homogeneous")

    eng = _Engine(nvars, field)
    lead_monos: list[Monomial] = []

    heap: list[tuple[int, int, int, int]] = []  # (degree, kind, a, b)
    seq = 0
    alive: set[tuple[int, int]] = set()
    for g in sorted(gens, key=lambda g: g.degree()):
        heapq.heappush(heap, (g.degree(), 0, seq, -1))
        seq += 1
    pending_gens = sorted(gens, key=lambda g: g.degree())

    def push_pairs(t_new: int):
        """Queue S-pairs of element t_new against all earlier elements."""
        lt = lead_monos[t_new]
        fresh = []
        for i in range(t_new):
            l = lead_monos[i].lcm(lt)
            if l.degree > cap:
                continue
            fresh.append((i, l))
        # Gebauer-Moeller: drop new pairs whose lcm is a proper multiple of
        # another new pair's lcm; keep one representative among equal lcms.
        fresh.sort(key=lambda il: il[1].sort_key())
        kept: list[tuple[int, Monomial]] = []
        for i, l in fresh:
            drop = False
            for _, l2 in kept:
                if l2.divides(l):
                    drop = True
                    break
            if not drop:
                kept.append((i, l))
        # coprime criterion
        kept = [(i, l) for i, l in kept if not lead_monos[i].is_coprime(lt)]
        # chain criterion on old pairs
        for (i, j) in list(alive):
            lij = lead_monos[i].lcm(lead_monos[j])
            if (
                lt.divides(lij)
                and lead_monos[i].lcm(lt) != lij
                and lead_monos[j].lcm(lt) != lij
            ):
                alive.discard((i, j))
        for i, l in kept:
            alive.add((i, t_new))
            heapq.heappush(heap, (l.degree, 1, i, t_new))

    while heap:
        deg, kind, a, b = heapq.heappop(heap)
        if deg > cap:
            break
        if kind == 0:
            vec = pending_gens[a].to_vector()
        else:
            if (a, b) not in alive:
                continue
            alive.discard((a, b))
            la, lb = lead_monos[a], lead_monos[b]
            l = la.lcm(lb)
            qa = tuple(x - y for x, y in zip(l.exponents, la.exponents))
            qb = tuple(x - y for x, y in zip(l.exponents, lb.exponents))
            vec = eng.shifted(a, qa, deg)
            vec = (vec - eng.shifted(b, qb, deg)) % field.p
        vec = eng.reduce_vector(vec, deg)
        nz = np.flatnonzero(vec)
        if len(nz) == 0:
            continue
        k0 = int(nz[0])
        inv = field.inv(int(vec[k0]))
        vec = vec * inv % field.p
        lead_exps = monomial_block(nvars, deg)[k0]
        eng.add(lead_exps, deg, vec)
        lead_monos.append(Monomial(lead_exps))
        push_pairs(len(lead_monos) - 1)

    # inter-reduce tails; leads are already pairwise non-divisible because
    # every inserted vector was fully reduced first
    elements = []
    for j in range(len(eng.vecs)):
        t = eng.lead_degs[j]
        vec = eng.vecs[j].copy()
        k0 = int(np.flatnonzero(vec)[0])
        eng.reduce_vector(vec, t, start=k0 + 1)
        eng.vecs[j] = vec
        elements.append(Polynomial.from_vector(field, nvars, t, vec))
    # ascending degree, descending degrevlex lead within each degree
    elements.sort(
        key=lambda g: (g.degree(), tuple(reversed(g.leading_monomial().exponents)))
    )
    return GroebnerBasis(field, nvars, tuple(elements), cap, True)


def normal_form(f: Polynomial, G: GroebnerBasis) -> Polynomial:
    """Unique remainder of a homogeneous f modulo G (degree <= cap)."""
    if f.is_zero():
        return f
    if not f.is_homogeneous():
        raise ValueError("normal form is defined per degree; f not homogeneous")
    if f.degree() > G.degree_cap:
        raise ValueError(
            f"degree {f.degree()} above basis cap {G.degree_cap}; "
            "completeness not guaranteed there"
        )
    if f.field != G.field or f.nvars != G.nvars:
        raise ValueError("polynomial and basis live in different rings")
    eng = G.engine()
    vec = eng.reduce_vector(f.to_vector(), f.degree())
    return Polynomial.from_vector(f.field, f.nvars, f.degree(), vec)


def initial_ideal(G: GroebnerBasis) -> MonomialIdeal:
    """Minimal generators = leading monomials of a reduced basis."""
    leads = G.leading_monomials()
    ideal = MonomialIdeal(G.nvars, leads)
    if len(ideal.generators) != len(leads):
        raise RuntimeError("basis was not reduced: leading monomials not minimal")
    return ideal
