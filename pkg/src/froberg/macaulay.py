"""Per-degree dense linear algebra over F_p.

Independent of the Buchberger engine: the degree-t slice of a homogeneous
ideal is the row space of the matrix whose rows are all monomial multiples
m * f_i with deg(m) = t - deg(f_i), written over the degrevlex-descending
monomial basis. Ranks give Hilbert functions, pivot columns give the
degree-t part of the initial ideal.
"""

from __future__ import annotations

import numpy as np

from .algebra import Monomial, Polynomial, block_index, block_size, monomial_block


def row_echelon_mod_p(matrix: np.ndarray, p: int):
    """Forward elimination mod p, scanning columns left to right.

    Returns (rank, pivot_columns). The input is not modified.
    """
    a = np.array(matrix, dtype=np.int64) % p
    rows, cols = a.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(a[r:, c])
        if len(nz) == 0:
            continue
        pr = r + int(nz[0])
        if pr != r:
            a[[r, pr]] = a[[pr, r]]
        inv = pow(int(a[r, c]), p - 2, p)
        a[r] = a[r] * inv % p
        below = a[r + 1 :, c]
        hit = np.flatnonzero(below)
        if len(hit):
            a[r + 1 + hit] = (a[r + 1 + hit] - below[hit, None] * a[r]) % p
        pivots.append(c)
        r += 1
    return r, pivots


def macaulay_matrix(forms, t: int) -> np.ndarray:
    """Rows spanning the degree-t slice of the ideal the forms generate."""
    f0 = forms[0]
    nvars, p = f0.nvars, f0.field.p
    cols = block_size(nvars, t)
    rows = []
    idx = block_index(nvars, t)
    for f in forms:
        d = f.degree()
        if d > t:
            continue
        shift = monomial_block(nvars, t - d)
        for q in shift:
            row = np.zeros(cols, dtype=np.int64)
            for c, m in f.terms:
                row[idx[tuple(a + b for a, b in zip(m.exponents, q))]] = c
            rows.append(row)
    if not rows:
        return np.zeros((0, cols), dtype=np.int64)
    return np.stack(rows)


def hilbert_function_by_rank(forms, t: int) -> int:
    """dim R_t - rank of the Macaulay matrix."""
    f0 = forms[0]
    mat = macaulay_matrix(forms, t)
    rank, _ = row_echelon_mod_p(mat, f0.field.p)
    return block_size(f0.nvars, t) - rank


def degree_slice(forms, t: int):
    """(ideal monomials, standard monomials) at degree t, both descending.

    Pivot columns of the echelon form are exactly the degree-t leading
    monomials of the ideal; the complement is the standard set.
    """
    f0 = forms[0]
    nvars = f0.nvars
    mat = macaulay_matrix(forms, t)
    _, pivots = row_echelon_mod_p(mat, f0.field.p)
    blk = monomial_block(nvars, t)
    pivot_set = set(pivots)
    inside = [Monomial(blk[c]) for c in pivots]
    outside = [Monomial(blk[c]) for c in range(len(blk)) if c not in pivot_set]
    return inside, outside
