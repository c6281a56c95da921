"""Exact rational linear algebra: matrices, RREF, kernels, subspaces.

Scalars are ``fractions.Fraction`` values (exported here as ``Rational``):
always in lowest terms with positive denominator, which is exactly the
contract the rest of the package relies on.  Every operation is exact;
there is no floating point anywhere.

The base field is the rationals rather than an algebraically closed
field.  Every decision downstream (dimension, rank, derived-series
length, Engel nilpotency) is a rank computation, and ranks are invariant
under field extension, so all answers agree with the corresponding ones
over the algebraic closure whenever the input data is rational.  The one
place the restriction is visible is rational point finding, documented
in :mod:`artinlab.groebner`.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from . import _exact
from .errors import AmbientMismatchError

Rational = Fraction


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


class Matrix:
    """Immutable dense matrix over the rationals."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries: Iterable[Iterable]):
        rows = tuple(tuple(_frac(x) for x in row) for row in entries)
        self.entries = rows
        self.rows = len(rows)
        self.cols = len(rows[0]) if rows else 0
        if any(len(r) != self.cols for r in rows):
            raise ValueError("ragged rows")

    @staticmethod
    def identity(n: int) -> "Matrix":
        return Matrix(
            [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
        )

    @staticmethod
    def zero(rows: int, cols: int) -> "Matrix":
        z = Fraction(0)
        return Matrix([[z] * cols for _ in range(rows)])

    def __eq__(self, other):
        return isinstance(other, Matrix) and self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __repr__(self):
        return f"Matrix({[list(map(str, r)) for r in self.entries]})"

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __add__(self, other: "Matrix") -> "Matrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise AmbientMismatchError("matrix shapes differ")
        return Matrix(
            [
                [a + b for a, b in zip(r1, r2)]
                for r1, r2 in zip(self.entries, other.entries)
            ]
        )

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self + other.scale(Fraction(-1))

    def scale(self, c) -> "Matrix":
        c = _frac(c)
        return Matrix([[c * x for x in row] for row in self.entries])

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise AmbientMismatchError("inner dimensions differ")
        cols = list(zip(*other.entries)) if other.entries else []
        return Matrix(
            [
                [sum(a * b for a, b in zip(row, col)) for col in cols]
                for row in self.entries
            ]
        )

    def apply(self, vec: Sequence) -> tuple[Fraction, ...]:
        if len(vec) != self.cols:
            raise AmbientMismatchError("vector length differs from column count")
        v = [_frac(x) for x in vec]
        return tuple(sum(a * b for a, b in zip(row, v)) for row in self.entries)

    def transpose(self) -> "Matrix":
        return Matrix(list(zip(*self.entries)) if self.entries else [])

    def is_zero(self) -> bool:
        return all(x == 0 for row in self.entries for x in row)


def rref(m: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row-echelon form and pivot columns; row space is preserved."""
    red, pivots = _exact.rref_fractions(m.entries, m.cols)
    z = tuple(Fraction(0) for _ in range(m.cols))
    full = list(red) + [z] * (m.rows - len(red))
    return Matrix(full), pivots


def rank(m: Matrix) -> int:
    return _exact.rank(m.entries, m.cols)


def kernel_basis(m: Matrix) -> "Subspace":
    """Null space of m as a canonical subspace; dim = cols - rank."""
    return Subspace(m.cols, _exact.kernel_fractions(m.entries, m.cols))


class Subspace:
    """Subspace of Q^n held as a reduced row-echelon basis.

    The RREF basis is canonical, so equality of subspaces is plain
    equality of the stored rows.
    """

    __slots__ = ("ambient_dim", "basis")

    def __init__(self, ambient_dim: int, vectors: Iterable[Sequence] = ()):
        self.ambient_dim = ambient_dim
        rows = [tuple(_frac(x) for x in v) for v in vectors]
        for r in rows:
            if len(r) != ambient_dim:
                raise AmbientMismatchError("vector length differs from ambient")
        red, _ = _exact.rref_fractions(rows, ambient_dim)
        self.basis = tuple(red)

    @staticmethod
    def full(n: int) -> "Subspace":
        return Subspace(n, Matrix.identity(n).entries)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __eq__(self, other):
        return (
            isinstance(other, Subspace)
            and self.ambient_dim == other.ambient_dim
            and self.basis == other.basis
        )

    def __hash__(self):
        return hash((self.ambient_dim, self.basis))

    def __repr__(self):
        return f"Subspace(dim {self.dim} of Q^{self.ambient_dim})"

    def _check(self, other: "Subspace"):
        if self.ambient_dim != other.ambient_dim:
            raise AmbientMismatchError("ambient dimensions differ")

    def __add__(self, other: "Subspace") -> "Subspace":
        self._check(other)
        return Subspace(self.ambient_dim, list(self.basis) + list(other.basis))

    def intersect(self, other: "Subspace") -> "Subspace":
        """Zassenhaus: reduce [A|A; B|0]; intersection appears in the
        right block of rows whose left block vanished."""
        self._check(other)
        n = self.ambient_dim
        z = [Fraction(0)] * n
        rows = [list(v) + list(v) for v in self.basis]
        rows += [list(v) + z for v in other.basis]
        red, pivots = _exact.rref_fractions(rows, 2 * n)
        inter = [row[n:] for row, p in zip(red, pivots) if p >= n]
        return Subspace(n, inter)

    def contains(self, vec: Sequence) -> bool:
        v = [_frac(x) for x in vec]
        if len(v) != self.ambient_dim:
            raise AmbientMismatchError("vector length differs from ambient")
        for row in self.basis:
            lead = next((j for j, x in enumerate(row) if x != 0), None)
            if lead is not None and v[lead] != 0:
                c = v[lead]
                v = [a - c * b for a, b in zip(v, row)]
        return all(x == 0 for x in v)

    def contains_subspace(self, other: "Subspace") -> bool:
        self._check(other)
        return all(self.contains(v) for v in other.basis)

    def complement_within(self, superspace: "Subspace | None" = None) -> "Subspace":
        """A complement c with self + c = superspace (default: ambient)
        and zero intersection, chosen greedily along echelon pivots."""
        if superspace is None:
            superspace = Subspace.full(self.ambient_dim)
        self._check(superspace)
        if not superspace.contains_subspace(self):
            raise AmbientMismatchError("superspace does not contain the subspace")
        chosen: list[Sequence] = []
        cur = self
        for v in superspace.basis:
            if not cur.contains(v):
                chosen.append(v)
                cur = cur + Subspace(self.ambient_dim, [v])
        return Subspace(self.ambient_dim, chosen)

    def quotient_map(self) -> "Matrix":
        """Matrix of a projection Q^n -> Q^(n-dim) with kernel exactly self.

        Rows are the coordinate functionals of the non-pivot coordinates
        after reducing modulo the subspace; used for computing induced
        operators on quotients.
        """
        n = self.ambient_dim
        pivots = [
            next(j for j, x in enumerate(row) if x != 0) for row in self.basis
        ]
        free = [j for j in range(n) if j not in pivots]
        out = []
        for f in free:
            # phi_f(x) = x_f - sum_r basis[r][f] * x_{pivot_r}; vanishes on
            # every basis row because RREF pivot columns are unit vectors
            row = [Fraction(0)] * n
            row[f] = Fraction(1)
            for br, p in zip(self.basis, pivots):
                row[p] = -br[f]
            out.append(row)
        return Matrix(out)
