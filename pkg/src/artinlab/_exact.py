"""Integer-scaled exact Gaussian elimination.

All public linear algebra in this package is over the rationals.  Doing
elimination directly on ``Fraction`` entries costs a gcd per arithmetic
op, which is 40x slower than machine integers.  This module clears
denominators once, eliminates with cross-multiplication on integer rows
(gcd-normalizing as it goes), and converts back to ``Fraction`` only at
the end.  Rows live in numpy arrays: int64 while magnitudes provably fit,
promoted to object dtype (arbitrary-precision Python ints) the moment an
operation could overflow.  Results are exact in both regimes.
"""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

# int64 holds |x| < 2**63; updates are row*p - piv*f, so we demand the
# a-priori bound max|row|*(|p| + max|piv|) < 2**62 before using int64.
_INT64_SAFE = 2**62


def int_rows(rows) -> list[list[int]]:
    """Clear denominators row by row (each row scaled independently)."""
    out = []
    for row in rows:
        fr = [x if isinstance(x, Fraction) else Fraction(x) for x in row]
        scale = 1
        for x in fr:
            scale = scale * x.denominator // math.gcd(scale, x.denominator)
        ints = [int(x.numerator * (scale // x.denominator)) for x in fr]
        g = 0
        for v in ints:
            g = math.gcd(g, v)
        if g > 1:
            ints = [v // g for v in ints]
        out.append(ints)
    return out


def _normalize_rows_int64(m, idx):
    g = np.gcd.reduce(np.abs(m[idx]), axis=1)
    g[g == 0] = 1
    mask = g > 1
    if mask.any():
        rows = idx[mask] if isinstance(idx, np.ndarray) else np.array(idx)[mask]
        m[rows] //= g[mask][:, None]


def _normalize_rows_object(m, idx):
    for r in idx:
        g = 0
        for v in m[r]:
            g = math.gcd(g, int(v))
            if g == 1:
                break
        if g > 1:
            m[r] //= g


def rref_ints(matrix: np.ndarray) -> tuple[np.ndarray, list[int]]:
    """Reduced echelon form of an integer matrix, up to row scaling.

    Returns (m, pivots) where m has gcd-normalized rows with positive
    pivot entries and zeros above and below each pivot.  Dividing row i
    by its pivot entry yields the rational RREF.
    """
    m = matrix.copy()
    nrows, ncols = m.shape
    is_object = m.dtype == object
    pivots = []
    piv_r = 0
    for col in range(ncols):
        if piv_r >= nrows:
            break
        colvals = m[piv_r:, col]
        nz = np.nonzero(colvals)[0]
        if len(nz) == 0:
            continue
        # smallest pivot magnitude keeps growth down
        choice = nz[np.argmin([abs(int(colvals[i])) for i in nz])] + piv_r
        if choice != piv_r:
            m[[piv_r, choice]] = m[[choice, piv_r]]
        piv = m[piv_r]
        p = int(piv[col])
        if p < 0:
            m[piv_r] = -piv
            piv = m[piv_r]
            p = -p
        others = np.nonzero(m[:, col])[0]
        others = others[others != piv_r]
        if len(others):
            if not is_object:
                a = int(np.abs(m[others]).max())
                b = int(np.abs(piv).max())
                if a * (p + b) >= _INT64_SAFE:
                    m = m.astype(object)
                    is_object = True
                    piv = m[piv_r]
            factors = m[others, col].copy()
            m[others] = m[others] * p - factors[:, None] * piv[None, :]
            # gcd normalization is only needed to keep growth in check, so
            # run it lazily once magnitudes pass 2**40
            if is_object:
                _normalize_rows_object(m, others)
            elif int(np.abs(m[others]).max()) >= 2**40:
                _normalize_rows_int64(m, others)
        pivots.append(col)
        piv_r += 1
    return m, pivots


def rref_fractions(rows, ncols) -> tuple[list[tuple[Fraction, ...]], list[int]]:
    """Rational RREF (unit pivots) of the given rows; zero rows dropped.

    `rows` may also be a numpy integer matrix, which skips scaling.
    """
    if isinstance(rows, np.ndarray):
        if rows.size == 0 or ncols == 0:
            return [], []
        m = rows
    else:
        if not rows or ncols == 0:
            return [], []
        ints = int_rows(rows)
        mx = max((abs(v) for row in ints for v in row), default=0)
        dtype = np.int64 if mx < _INT64_SAFE else object
        m = np.array(ints, dtype=dtype)
    red, pivots = rref_ints(m)
    out = []
    for r, col in enumerate(pivots):
        p = int(red[r, col])
        out.append(tuple(Fraction(int(v), p) for v in red[r]))
    return out, pivots


def rank(rows, ncols) -> int:
    return len(rref_fractions(rows, ncols)[1])


def kernel_fractions(rows, ncols) -> list[tuple[Fraction, ...]]:
    """Canonical (RREF) basis of the right null space of the row matrix."""
    red, pivots = rref_fractions(rows, ncols)
    pivset = set(pivots)
    free = [c for c in range(ncols) if c not in pivset]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for r, c in enumerate(pivots):
            v[c] = -red[r][f]
        basis.append(v)
    # the free-column construction is echelon up to column order; re-reduce
    # so callers always see strictly increasing unit pivots
    out, _ = rref_fractions(basis, ncols)
    return out


def solve_right(rows, rhs, ncols):
    """One solution x of (rows) @ x = rhs, or None if inconsistent."""
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    red, pivots = rref_fractions(aug, ncols + 1)
    if ncols in pivots:
        return None
    x = [Fraction(0)] * ncols
    for r, c in enumerate(pivots):
        x[c] = red[r][ncols]
    return x
