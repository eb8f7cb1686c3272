"""Staircase structure of standard monomials and the incremental method.

Given the standard monomials B of an n-variable quotient and one extra
generic form g of degree d in an (n+1)-st variable z, the initial ideal of
the enlarged ideal is assembled from:

  * step 0: the largest monomial of B_d,
  * steps i = 1..i_star (i_star = floor((delta - d)/2)): the monomials of
    B_{d+i} sitting under the first independent columns of the reduction
    matrix M_i (recorded as the 1-based position set S_i inside the
    B_{d+i} column block),
  * closed-form z-power families for all later degrees.

The same S_i data also rebuilds the enlarged standard-monomial family F
grade by grade without any further linear algebra.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .algebra import (
    GroebnerBasis,
    Monomial,
    MonomialIdeal,
    Polynomial,
    PrimeField,
    block_size,
    monomial_block,
    standard_monomials,
)
from .series import DegreeType, sigma_profile


@dataclass(frozen=True)
class StandardMonomialSet:
    """Graded family of standard monomials; each grade degrevlex-decreasing."""

    nvars: int
    grades: tuple[tuple[Monomial, ...], ...]

    @property
    def counts(self):
        return tuple(len(g) for g in self.grades)

    @property
    def top(self):
        return len(self.grades) - 1

    def grade(self, i: int) -> tuple[Monomial, ...]:
        if i < 0 or i > self.top:
            return ()
        return self.grades[i]

    def total(self):
        return sum(self.counts)

    @classmethod
    def from_ideal(cls, ideal: MonomialIdeal, top: int) -> "StandardMonomialSet":
        grades = tuple(
            tuple(standard_monomials(ideal, t)) for t in range(top + 1)
        )
        return cls(ideal.nvars, grades)

    def to_json(self):
        return [[list(m.exponents) for m in g] for g in self.grades]


@dataclass(frozen=True)
class TildeDecomposition:
    """Per grade, the members avoiding the last variable.

    Grade 0 is taken to be {1} so the count bookkeeping a'_0 = a_0 stays
    consistent; no formula ever consumes it.
    """

    nvars: int
    grades: tuple[tuple[Monomial, ...], ...]

    @property
    def counts(self):
        return tuple(len(g) for g in self.grades)


def tilde_decompose(B: StandardMonomialSet) -> TildeDecomposition:
    grades = [B.grade(0)]
    for i in range(1, B.top + 1):
        grades.append(
            tuple(m for m in B.grade(i) if m.exponents[-1] == 0)
        )
    return TildeDecomposition(B.nvars, tuple(grades))


def _scale_grade(grade, k: int):
    """Multiply a grade by (last variable)^k; order is preserved."""
    return tuple(m.times_last_power(k) for m in grade)


@dataclass(frozen=True)
class StructureViolation:
    clause: int
    grade: int
    expected: tuple
    got: tuple


@dataclass(frozen=True)
class StructureReport:
    ok: bool
    skipped: str | None
    violations: tuple[StructureViolation, ...]


def check_structure_b(B: StandardMonomialSet, t: DegreeType) -> StructureReport:
    """Verify the three staircase clauses of an r = n standard set:

      (1) B_i  = tilde(B_i) + x_n * B_{i-1}        for 1 <= i <= sigma
      (2) B_{sigma+i} = x_n^i * B_sigma            for 0 <= i <= delta - 2*sigma
      (3) B_{delta-i} = x_n^{delta-2i} * B_i       for 0 <= i <= sigma

    Equalities are of sorted sequences.
    """
    if t.r != t.n:
        raise ValueError("structure check applies to r == n types")
    if t.n == 1:
        return StructureReport(True, "degenerate single-variable type", ())
    prof = sigma_profile(t)
    delta = prof.top_delta
    sigma = prof.top_sigma
    tilde = tilde_decompose(B)
    violations = []

    for i in range(1, sigma + 1):
        expected = tilde.grades[i] + _scale_grade(B.grade(i - 1), 1)
        if tuple(B.grade(i)) != expected:
            violations.append(StructureViolation(1, i, expected, tuple(B.grade(i))))
    for i in range(0, delta - 2 * sigma + 1):
        expected = _scale_grade(B.grade(sigma), i)
        if tuple(B.grade(sigma + i)) != expected:
            violations.append(
                StructureViolation(2, sigma + i, expected, tuple(B.grade(sigma + i)))
            )
    for i in range(0, sigma + 1):
        expected = _scale_grade(B.grade(i), delta - 2 * i)
        if tuple(B.grade(delta - i)) != expected:
            violations.append(
                StructureViolation(3, delta - i, expected, tuple(B.grade(delta - i)))
            )
    return StructureReport(not violations, None, tuple(violations))


@dataclass(frozen=True)
class MultipleCheckReport:
    ok: bool
    failures: tuple[tuple[int, int], ...]  # (i, j) pairs that failed


def check_grade_multiples(B: StandardMonomialSet, d: int, i_star: int) -> MultipleCheckReport:
    """For i > j >= i_star, B_{d+i} must equal x_n^{i-j} times the
    |B_{d+i}| smallest monomials of B_{d+j}."""
    failures = []
    top = B.top
    for j in range(i_star, top - d + 1):
        for i in range(j + 1, top - d + 1):
            want = B.grade(d + i)
            source = B.grade(d + j)
            count = len(want)
            if count > len(source):
                failures.append((i, j))
                continue
            smallest = source[len(source) - count :]
            if want != _scale_grade(smallest, i - j):
                failures.append((i, j))
    return MultipleCheckReport(not failures, tuple(failures))


# ---------------------------------------------------------------------------
# incremental matrices
# ---------------------------------------------------------------------------

class BlockEscape(RuntimeError):
    """An independent column fell outside the leading column block.

    Marks either a non-generic sample or a genuine structure violation;
    the caller decides which by resampling.
    """

    def __init__(self, step, kept, block):
        super().__init__(
            f"step {step}: independent columns {kept} escape the leading "
            f"block of width {block}"
        )
        self.step = step
        self.kept = kept
        self.block = block


def first_independent_columns(matrix: np.ndarray, target_rank: int, p: int) -> list[int]:
    """Greedy left-to-right scan: keep a column iff it increases the rank
    of the kept set; stop after target_rank columns. 0-based indices.
    """
    rows, cols = matrix.shape
    kept: list[int] = []
    basis = np.zeros((0, rows), dtype=np.int64)
    pivot_rows: list[int] = []
    for c in range(cols):
        if len(kept) == target_rank:
            break
        v = matrix[:, c].astype(np.int64) % p
        for b, pr in zip(basis, pivot_rows):
            coef = int(v[pr])
            if coef:
                v = (v - coef * b) % p
        nz = np.flatnonzero(v)
        if len(nz) == 0:
            continue
        pr = int(nz[0])
        v = v * pow(int(v[pr]), p - 2, p) % p
        basis = np.vstack([basis, v[None, :]])
        pivot_rows.append(pr)
        kept.append(c)
    if len(kept) < target_rank:
        raise ValueError(
            f"rank deficiency: wanted {target_rank} independent columns, "
            f"found {len(kept)}"
        )
    return kept


@dataclass(frozen=True)
class IncrementalStep:
    index: int
    rows: int
    cols: int
    rank: int
    kept_columns: tuple[int, ...]  # 0-based, global within E_{i+d}
    block_width: int  # |B_{d+i}|
    s_set: tuple[int, ...]  # 1-based positions inside the block
    added: tuple[Monomial, ...]
    redundant: tuple[Monomial, ...]
    matrix: np.ndarray | None = field(default=None, compare=False)

    def to_json(self, include_matrix=False):
        data = {
            "step": self.index,
            "rows": self.rows,
            "cols": self.cols,
            "rank": self.rank,
            "kept_columns": [c + 1 for c in self.kept_columns],
            "block_width": self.block_width,
            "s_set": list(self.s_set),
            "added": [list(m.exponents) for m in self.added],
            "redundant": [list(m.exponents) for m in self.redundant],
        }
        if include_matrix and self.matrix is not None:
            data["matrix"] = self.matrix.tolist()
        return data


def build_step_matrix(
    i: int,
    g: Polynomial,
    G: GroebnerBasis,
    E: StandardMonomialSet,
) -> np.ndarray:
    """M_i: row per monomial of E_i (decreasing), entries the normal-form
    coefficients of (row monomial) * g over E_{i+d} (decreasing)."""
    d = g.degree()
    if i + d > G.degree_cap:
        raise ValueError(
            f"step degree {i + d} above basis cap {G.degree_cap}"
        )
    eng = G.engine()
    p = G.field.p
    g_vec = g.to_vector()
    col_positions = eng.standard_positions(i + d)
    rows = []
    for m in E.grade(i):
        vec = np.zeros(block_size(G.nvars, i + d), dtype=np.int64)
        mp = eng.mult_map(m.exponents, d, i + d)
        vec[mp] = g_vec
        vec = eng.reduce_vector(vec, i + d)
        rows.append(vec[col_positions])
    return np.stack(rows) % p


def extract_s(
    kept_columns,
    block_width: int,
    expected_count: int,
    step: int,
) -> tuple[int, ...]:
    """1-based positions of the first independent columns inside the
    B_{d+i} block; every one of the expected_count columns must land
    inside the block."""
    head = list(kept_columns)[:expected_count]
    if len(head) < expected_count or any(c >= block_width for c in head):
        raise BlockEscape(step, tuple(c + 1 for c in head), block_width)
    return tuple(c + 1 for c in head)


# ---------------------------------------------------------------------------
# assembly of the enlarged initial ideal and its standard monomials
# ---------------------------------------------------------------------------

def _embed_grade(grade, extra=1):
    return tuple(m.extend(extra) for m in grade)


def assemble_initial(
    in_gens: MonomialIdeal,
    B: StandardMonomialSet,
    S: list[tuple[int, ...]],
    d: int,
    delta: int,
) -> MonomialIdeal:
    """Union of the generator families, then minimalized.

    `in_gens` lives in n+1 variables; B's grades live in n variables and
    are embedded with z-exponent 0.
    """
    nvars = in_gens.nvars
    gens: list[Monomial] = list(in_gens.generators)

    def add_family(grade, z_power: int):
        for m in grade:
            gens.append(m.extend().times_last_power(z_power))

    if d >= delta:
        for k in range(delta + 1):
            add_family(B.grade(delta - k), d - delta + 2 * k)
        return MonomialIdeal(nvars, gens)

    i_star = (delta - d) // 2
    add_family(B.grade(d)[:1], 0)  # largest of B_d
    for i, s in enumerate(S, start=1):
        block = B.grade(d + i)
        add_family(tuple(block[pos - 1] for pos in s), 0)
    if (delta - d) % 2 == 0:
        for m in range(1, i_star + 1):
            add_family(B.grade(d + i_star - m), 2 * m)
    else:
        add_family(B.grade(d + i_star + 1), 0)
        for m in range(0, i_star + 1):
            add_family(B.grade(d + i_star - m), 1 + 2 * m)
    for k in range(1, d + 1):
        add_family(B.grade(d - k), delta - d + 2 * k)
    return MonomialIdeal(nvars, gens)


def build_f(
    B: StandardMonomialSet,
    S: list[tuple[int, ...]],
    d: int,
    delta: int,
) -> StandardMonomialSet:
    """Standard monomials of the enlarged ideal, grade by grade.

    Grades through the boundary are (surviving part of B_t) followed by
    z * (previous grade); every later grade is a pure z-power shift of an
    earlier one. Top nonzero grade is delta + d - 1.
    """
    if d >= delta:
        raise ValueError("grade recursion requires d < delta")
    i_star = (delta - d) // 2
    even = (delta - d) % 2 == 0
    boundary = d + i_star - 1 if even else d + i_star

    grades: list[tuple[Monomial, ...]] = [_embed_grade(B.grade(0))]
    for t in range(1, boundary + 1):
        if t < d:
            part = B.grade(t)
        elif t == d:
            part = B.grade(d)[1:]
        else:
            s = set(S[t - d - 1])
            block = B.grade(t)
            part = tuple(m for i, m in enumerate(block, start=1) if i not in s)
        grades.append(_embed_grade(part) + _scale_grade(grades[t - 1], 1))

    for t in range(boundary + 1, delta + d):
        if even:
            k = t - (d + i_star)
            src = d + i_star - 1 - k
            shift = 2 * k + 1
        else:
            k = t - (d + i_star + 1)
            src = d + i_star - 1 - k
            shift = 2 * k + 2
        grades.append(_scale_grade(grades[src], shift))

    return StandardMonomialSet(B.nvars + 1, tuple(grades))
