"""The derivation Lie algebra of a quotient algebra, with decision
procedures for solvability, nilpotency and tangent-level unipotence.

A derivation D of S = K[x]/I is determined by its images D(x_i) in S,
subject to the chain-rule constraints sum_i (dg/dx_i)(x) * D(x_i) = 0 for
every defining relation g; the reduced Groebner basis supplies a
canonical finite set of such relations.  The solution space is extended
to operators on S by the Leibniz rule along the standard monomial basis.

Everything downstream (brackets, derived and lower central series) runs
on integer-scaled numpy arrays with an exact object-dtype fallback, so
an algebra of dimension 32 with an 80-dimensional derivation algebra is
decided in seconds.  Scaling basis vectors does not change any span, so
all dimensions are exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import _exact
from .artin import ArtinAlgebra, socle_data
from .errors import InternalInvariantError
from .groebner import GroebnerBasis, normal_form
from .linalg import Matrix, Subspace
from .poly import Polynomial

_INT64_SAFE = 2**62


def _as_int_array(rows):
    ints = _exact.int_rows(rows)
    mx = max((abs(v) for row in ints for v in row), default=0)
    dtype = np.int64 if mx < 2**31 else object
    return np.array(ints, dtype=dtype) if ints else np.zeros((0, 0), dtype=np.int64)


def _leibniz_operators(algebra: ArtinAlgebra, imgs: np.ndarray) -> np.ndarray:
    """Extend generator images (stack of shape (k, n, dim S), integer
    entries, arbitrary row scales) to operator matrices on S via the
    Leibniz rule along the standard monomial basis labels."""
    ds = algebra.dim
    k_count = imgs.shape[0]
    c, _ = algebra.scaled_tensor()
    labels = algebra.basis_labels
    index = {lab: k for k, lab in enumerate(labels)}
    ops = np.zeros((k_count, ds, ds), dtype=object)
    if imgs.dtype == np.int64 and c.dtype == np.int64:
        mi = int(np.abs(imgs).max(initial=0))
        mc = int(np.abs(c).max(initial=0))
        maxalpha = max((e for lab in labels for e in lab), default=0)
        n = imgs.shape[1]
        if ds * mi * mc * max(1, maxalpha) * n < _INT64_SAFE:
            ops = np.zeros((k_count, ds, ds), dtype=np.int64)
        else:
            imgs = imgs.astype(object)
            c = c.astype(object)
    else:
        imgs = imgs.astype(object)
        c = c.astype(object)
    for b, lab in enumerate(labels):
        for i, e in enumerate(lab):
            if e == 0:
                continue
            lower = list(lab)
            lower[i] -= 1
            k = index[tuple(lower)]
            # D(x^lab) gains e * (x^(lab - e_i) * D(x_i)); multiplication by
            # basis element k acts on row vectors as v @ c[k], and each
            # derivation's row scale times the tensor scale is uniform
            ops[:, :, b] += (imgs[:, i, :] @ c[k]) * e
    return ops


def leibniz_extension(algebra: ArtinAlgebra, image_vector) -> Matrix:
    """The unique operator with the given generator images that satisfies
    the Leibniz rule on all basis monomial products, as an exact matrix."""
    ds = algebra.dim
    n = len(algebra.var_names)
    row = [Fraction(x) for x in image_vector]
    ints = _exact.int_rows([row])[0]
    scale = Fraction(1)
    for orig, scaled in zip(row, ints):
        if orig != 0:
            scale = Fraction(scaled) / orig
            break
    imgs = np.array([ints], dtype=object).reshape(1, n, ds)
    ops = _leibniz_operators(algebra, imgs)
    _, cscale = algebra.scaled_tensor()
    denom = scale * cscale
    return Matrix(
        [[Fraction(int(ops[0, a, b])) / denom for b in range(ds)] for a in range(ds)]
    )


def _pairwise_brackets(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """com[i, j] = a_i @ b_j - b_j @ a_i for stacks of square matrices."""
    if a.dtype == np.int64 and b.dtype == np.int64:
        ds = a.shape[1]
        ma = int(np.abs(a).max(initial=0))
        mb = int(np.abs(b).max(initial=0))
        if ds * ma * mb < _INT64_SAFE // 2:
            p = np.einsum("iab,jbc->ijac", a, b)
            q = np.einsum("jab,ibc->ijac", b, a)
            return p - q
    a = a.astype(object)
    b = b.astype(object)
    out = np.empty((a.shape[0], b.shape[0], a.shape[1], a.shape[2]), dtype=object)
    for i in range(a.shape[0]):
        for j in range(b.shape[0]):
            out[i, j] = a[i] @ b[j] - b[j] @ a[i]
    return out


def _bracket_images(
    ops_a: np.ndarray, imgs_a: np.ndarray, ops_b: np.ndarray, imgs_b: np.ndarray
) -> np.ndarray:
    """Image vectors of all commutators [A_i, B_j]: the image of x under
    [A, B] is A(B(x)) - B(A(x)), so only operators applied to image rows
    are needed, never full operator products.  Result shape (i, j, n, ds).
    Per-row scales multiply consistently on both sides of the difference."""
    safe = all(arr.dtype == np.int64 for arr in (ops_a, imgs_a, ops_b, imgs_b))
    if safe:
        ds = ops_a.shape[1]
        ma = max(
            int(np.abs(ops_a).max(initial=0)), int(np.abs(ops_b).max(initial=0))
        )
        mi = max(
            int(np.abs(imgs_a).max(initial=0)), int(np.abs(imgs_b).max(initial=0))
        )
        safe = ds * ma * mi < _INT64_SAFE // 2
    if not safe:
        ops_a, imgs_a = ops_a.astype(object), imgs_a.astype(object)
        ops_b, imgs_b = ops_b.astype(object), imgs_b.astype(object)
    p1 = np.einsum("iab,jnb->ijna", ops_a, imgs_b)
    p2 = np.einsum("jab,inb->ijna", ops_b, imgs_a)
    return p1 - p2


class LieAlgebraRep:
    """Der S as a concrete space of operators on S.

    basis_operators hold exact rational matrices; internally an
    integer-scaled copy drives the heavy bracket computations.  The
    constructor re-verifies the Leibniz identity of every operator
    against the structure constants, checks that every operator kills
    the unit, and checks bracket closure; failures raise
    InternalInvariantError because they can only come from bugs, not
    from valid inputs.
    """

    def __init__(self, algebra: ArtinAlgebra, image_vectors):
        self.algebra = algebra
        self.ambient_dim = algebra.dim
        self._image_rows = [tuple(v) for v in image_vectors]
        self.dimension = len(self._image_rows)
        self._ops_scaled = self._build_operators()
        self.basis_operators = self._fraction_ops()
        self._verify()

    def _build_operators(self) -> np.ndarray:
        ds = self.algebra.dim
        n = len(self.algebra.var_names)
        d = self.dimension
        if d == 0 or ds == 0:
            self._img_scaled = np.zeros((0, n, ds), dtype=np.int64)
            return np.zeros((0, ds, ds), dtype=np.int64)
        self._img_scaled = _as_int_array(self._image_rows).reshape(d, n, ds)
        return _leibniz_operators(self.algebra, self._img_scaled)

    def _fraction_ops(self) -> tuple:
        ds = self.algebra.dim
        _, cscale = self.algebra.scaled_tensor() if ds else (None, 1)
        out = []
        for r in range(self.dimension):
            row = self._image_rows[r]
            ints = _exact.int_rows([row])[0]
            # recover the per-row scale used by _as_int_array
            scale = None
            for orig, scaled in zip(row, ints):
                if orig != 0:
                    scale = Fraction(scaled) / orig
                    break
            if scale is None:
                scale = Fraction(1)
            denom = scale * cscale
            out.append(
                Matrix(
                    [
                        [Fraction(int(self._ops_scaled[r, a, b]), 1) / denom for b in range(ds)]
                        for a in range(ds)
                    ]
                )
            )
        return tuple(out)

    # verification ------------------------------------------------------
    def _verify(self):
        alg = self.algebra
        ds = alg.dim
        if self.dimension == 0 or ds == 0:
            return
        c, _ = alg.scaled_tensor()
        ops = self._ops_scaled
        if ops.dtype == np.int64 and c.dtype == np.int64:
            mo = int(np.abs(ops).max(initial=0))
            mc = int(np.abs(c).max(initial=0))
            if ds * mo * mc >= _INT64_SAFE // 2:
                ops = ops.astype(object)
                c = c.astype(object)
        else:
            ops = ops.astype(object)
            c = c.astype(object)
        for r in range(self.dimension):
            m = ops[r]
            lhs = np.einsum("ijm,lm->ijl", c, m)
            rhs = np.einsum("ai,ajl->ijl", m, c) + np.einsum("aj,ial->ijl", m, c)
            if not (lhs == rhs).all():
                raise InternalInvariantError("operator violates the Leibniz identity")
        for mat in self.basis_operators:
            if any(x != 0 for x in mat.apply(alg.unit)):
                raise InternalInvariantError("operator does not annihilate the unit")
        # bracket closure: adjoining all pairwise brackets must not grow
        # the span of generator-image vectors
        if self.dimension >= 2:
            n = len(alg.var_names)
            base_rows = _exact.int_rows(self._image_rows)
            base_rank = _exact.rank(base_rows, n * ds)
            brk = _bracket_images(
                self._ops_scaled, self._img_scaled, self._ops_scaled, self._img_scaled
            )
            iu = np.triu_indices(self.dimension, k=1)
            flat = brk[iu].reshape(-1, n * ds)
            all_rows = base_rows + [[int(v) for v in row] for row in flat]
            if _exact.rank(all_rows, n * ds) != base_rank:
                raise InternalInvariantError("derivations are not bracket-closed")

    def contains_operator(self, m: Matrix) -> bool:
        """Membership of an operator in the span of the basis derivations.

        Checks two things: the operator is the Leibniz extension of its own
        generator images (i.e. it is a derivation at all), and that image
        vector lies in the span of the basis image vectors.
        """
        alg = self.algebra
        vec = []
        for img in alg.generator_images:
            vec.extend(m.apply(img))
        if m != leibniz_extension(alg, vec):
            return False
        base = [list(r) for r in self._image_rows]
        n = len(vec)
        return _exact.rank(base + [vec], n) == _exact.rank(base, n)

    def __repr__(self):
        return f"LieAlgebraRep(dim {self.dimension} on Q^{self.ambient_dim})"


def compute_derivations(
    s: ArtinAlgebra, gb: GroebnerBasis | None = None
) -> LieAlgebraRep:
    """Solve the chain-rule linear system over the reduced Groebner basis
    relations; n * dim S unknowns, one block row per relation."""
    gb = gb or s.defining
    if gb is None:
        raise ValueError("algebra has no defining Groebner basis")
    vars = gb.vars
    ds = s.dim
    n = len(vars)
    if ds == 0:
        return LieAlgebraRep(s, [])
    index = {lab: k for k, lab in enumerate(s.basis_labels)}
    rows = []
    for g in gb.elements:
        blocks = []
        for name in vars.names:
            dg = normal_form(g.partial_derivative(name), gb)
            vec = [Fraction(0)] * ds
            for m, c in dg.terms.items():
                vec[index[m]] = c
            blocks.append(s.mult_matrix(vec))
        for r in range(ds):
            row = []
            for b in blocks:
                row.extend(b.entries[r])
            rows.append(row)
    kernel = _exact.kernel_fractions(rows, n * ds)
    return LieAlgebraRep(s, kernel)


@dataclass(frozen=True)
class SeriesReport:
    derived_dims: tuple
    lower_central_dims: tuple
    solvable: bool
    nilpotent: bool
    all_nilpotent_operators: bool


def _span_rank_and_basis(opstack: np.ndarray, ds: int):
    k = opstack.shape[0]
    if k == 0:
        return 0, np.zeros((0, ds, ds), dtype=np.int64)
    flat = opstack.reshape(k, ds * ds)
    red, pivots = _exact.rref_ints(flat)
    r = len(pivots)
    return r, red[:r].reshape(r, ds, ds)


def series(l: LieAlgebraRep) -> SeriesReport:
    """Derived and lower central series by spans of pairwise commutators,
    iterated to stabilization; dimensions are exact ranks.

    Commutators of derivations are derivations, so each term is tracked by
    generator-image vectors (length n * dim S) rather than full operator
    matrices; operators are rebuilt per level by the Leibniz extension.
    """
    alg = l.algebra
    ds = alg.dim
    n = max(len(alg.var_names), 1)
    width = n * ds

    def reduce_rows(rows):
        if rows.shape[0] == 0:
            return 0, None
        red, pivots = _exact.rref_ints(rows)
        r = len(pivots)
        return r, red[:r].reshape(r, n, ds) if r else None

    derived = [l.dimension]
    ops, imgs = l._ops_scaled, l._img_scaled
    while derived[-1] > 0:
        brk = _bracket_images(ops, imgs, ops, imgs)
        iu = np.triu_indices(imgs.shape[0], k=1)
        r, nxt = reduce_rows(brk[iu].reshape(-1, width))
        derived.append(r)
        if r == 0 or r == derived[-2]:
            break
        imgs = nxt
        ops = _leibniz_operators(alg, imgs)
    lower = [l.dimension]
    full_ops, full_imgs = l._ops_scaled, l._img_scaled
    ops, imgs = full_ops, full_imgs
    while lower[-1] > 0:
        brk = _bracket_images(full_ops, full_imgs, ops, imgs)
        r, nxt = reduce_rows(brk.reshape(-1, width))
        lower.append(r)
        if r == 0 or r == lower[-2]:
            break
        imgs = nxt
        ops = _leibniz_operators(alg, imgs)
    return SeriesReport(
        derived_dims=tuple(derived),
        lower_central_dims=tuple(lower),
        solvable=derived[-1] == 0,
        nilpotent=lower[-1] == 0,
        all_nilpotent_operators=all_nilpotent(l),
    )


def all_nilpotent(l: LieAlgebraRep) -> bool:
    """Engel-style flag construction: iterate common kernels, quotient and
    recurse; true iff the flag exhausts the whole space, equivalently every
    element of the span is a nilpotent operator."""
    ds = l.ambient_dim
    if ds == 0 or l.dimension == 0:
        return True
    ops = l._ops_scaled
    u = Subspace(ds)  # grows until it is everything, or stalls
    while u.dim < ds:
        if u.dim:
            q = np.array(_exact.int_rows(u.quotient_map().entries), dtype=ops.dtype)
        else:
            q = np.eye(ds, dtype=ops.dtype)
        if ops.dtype == np.int64:
            mq = int(np.abs(q).max(initial=0))
            mo = int(np.abs(ops).max(initial=0))
            if ds * mq * mo >= _INT64_SAFE:
                q = q.astype(object)
                ops = ops.astype(object)
        # rows of Q @ Op_i for every i, stacked
        prods = np.einsum("qb,iba->iqa", q, ops)
        rows = prods.reshape(-1, ds)
        nxt = Subspace(ds, _exact.kernel_fractions(rows, ds))
        if nxt.dim == u.dim:
            return False
        u = nxt
    return True


@dataclass(frozen=True)
class SocleBoundReport:
    dim_der: int
    emb_dim: int
    socle_dim: int
    product_bound: int
    bound_holds: bool
    positive_when_nontrivial: bool


def socle_bound_check(s: ArtinAlgebra, l: LieAlgebraRep) -> SocleBoundReport:
    """dim Der S >= dim(m/m^2) * dim Soc S, and dim Der S >= 1 whenever
    dim S > 1 (tangent form of the automorphism-group statements)."""
    if not s.local:
        raise ValueError("socle bound needs a local algebra")
    sd = socle_data(s)
    m1 = s.power_of_max_ideal(1)
    m2 = s.power_of_max_ideal(2)
    emb = m1.dim - m2.dim
    bound = emb * sd.socle.dim
    return SocleBoundReport(
        dim_der=l.dimension,
        emb_dim=emb,
        socle_dim=sd.socle.dim,
        product_bound=bound,
        bound_holds=l.dimension >= bound,
        positive_when_nontrivial=(s.dim == 1 or l.dimension >= 1),
    )


@dataclass(frozen=True)
class UnipotentTangentReport:
    dim_u: int
    usoc_dim: int
    lsoc_dim: int
    soc_dim: int
    emb_dim: int
    derivations: tuple
    all_members: bool


def unipotent_subgroup_dim(
    s: ArtinAlgebra, l: LieAlgebraRep | None = None
) -> UnipotentTangentReport:
    """Dimension of the socle-built unipotent subgroup, tangent level.

    Reported as s * dim USoc + n * dim LSoc with s = dim USoc and
    n = dim(m/m^2).  Also constructs the tangent derivations sending one
    adapted degree-1 coordinate into LSoc (for upper-socle coordinates)
    or Soc (for the rest) and checks each against the derivation space
    when one is supplied.
    """
    if not s.local:
        raise ValueError("unipotent subgroup needs a local algebra")
    sd = socle_data(s)
    m1 = s.power_of_max_ideal(1)
    m2 = s.power_of_max_ideal(2)
    emb = m1.dim - m2.dim
    sdim = sd.usoc.dim
    dim_u = sdim * sd.usoc.dim + emb * sd.lsoc.dim
    # adapted degree-1 lifts: upper socle first, then a completion
    lifts = list(sd.usoc.basis)
    cur = m2 + sd.usoc
    for v in m1.basis:
        if len(lifts) == emb:
            break
        if not cur.contains(v):
            lifts.append(v)
            cur = cur + Subspace(s.dim, [v])
    if len(lifts) != emb:
        raise InternalInvariantError("failed to complete degree-1 lifts")
    cols = [list(s.unit)] + [list(v) for v in lifts] + [list(v) for v in m2.basis]
    basis_mat = Matrix(list(zip(*cols)))
    inv = _invert(basis_mat)
    ders = []
    for t in range(emb):
        targets = sd.lsoc.basis if t < sdim else sd.socle.basis
        for f in targets:
            image_cols = [[Fraction(0)] * s.dim for _ in range(s.dim)]
            image_cols[1 + t] = list(f)
            e = Matrix(list(zip(*image_cols)))
            ders.append(e @ inv)
    members = all(l.contains_operator(d) for d in ders) if l is not None else True
    return UnipotentTangentReport(
        dim_u=dim_u,
        usoc_dim=sd.usoc.dim,
        lsoc_dim=sd.lsoc.dim,
        soc_dim=sd.socle.dim,
        emb_dim=emb,
        derivations=tuple(ders),
        all_members=members,
    )


def _invert(m: Matrix) -> Matrix:
    n = m.rows
    aug = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m.entries)]
    red, pivots = _exact.rref_fractions(aug, 2 * n)
    if pivots[:n] != list(range(n)):
        raise InternalInvariantError("matrix not invertible")
    return Matrix([row[n:] for row in red[:n]])
