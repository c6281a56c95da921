"""Finite-dimensional commutative algebras as explicit structure constants.

An ArtinAlgebra is a basis plus the full multiplication table, the images
of the ambient variables, and the filtration by powers of the ideal
generated by those images.  Quotients come out of Groebner data
(`from_groebner`), tensor products are built Kronecker style, and
non-local algebras split into local factors through rational points.

Construction always verifies commutativity, the unit law and full
associativity of the table; associativity runs over an integer-scaled
numpy tensor so the exhaustive check stays cheap even at dimension ~50.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import _exact
from .errors import IncompletePointsError, InternalInvariantError
from .groebner import (
    GroebnerBasis,
    Ideal,
    LocalComponent,
    _monomials_of_degree,
    local_component,
    normal_form,
    rational_points,
    standard_monomials,
)
from .linalg import Matrix, Subspace
from .poly import MonomialOrder, Polynomial

_INT64_SAFE = 2**62


class ArtinAlgebra:
    """Commutative algebra with unit, given by structure constants.

    basis vectors b_i multiply as b_i * b_j = sum_k structure[i][j][k] b_k.
    `filtration` is the chain of subspaces [m, m^2, ...] for the ideal m
    generated by the variable images, ending with the zero subspace when
    that chain reaches zero (then the algebra is local with maximal ideal
    m and the `local` flag is set).
    """

    def __init__(
        self,
        labels: Sequence,
        label_degrees: Sequence[int],
        structure,
        unit: Sequence[Fraction],
        var_names: Sequence[str],
        generator_images: Sequence[Sequence[Fraction]],
        defining: GroebnerBasis | None = None,
        source: LocalComponent | None = None,
    ):
        self.dim = len(labels)
        self.basis_labels = tuple(labels)
        self.label_degrees = tuple(label_degrees)
        self.structure = tuple(
            tuple(tuple(Fraction(c) for c in vec) for vec in row) for row in structure
        )
        self.unit = tuple(Fraction(c) for c in unit)
        self.var_names = tuple(var_names)
        self.generator_images = tuple(
            tuple(Fraction(c) for c in img) for img in generator_images
        )
        self.defining = defining
        self.source = source
        self._tensor_cache = None
        self._validate()
        self.filtration, self.local = self._build_filtration()

    # multiplication -----------------------------------------------------
    def multiply(self, u: Sequence[Fraction], v: Sequence[Fraction]):
        out = [Fraction(0)] * self.dim
        for i, a in enumerate(u):
            if not a:
                continue
            row = self.structure[i]
            for j, b in enumerate(v):
                if not b:
                    continue
                ab = a * b
                for k, c in enumerate(row[j]):
                    if c:
                        out[k] += ab * c
        return tuple(out)

    def mult_matrix(self, vec: Sequence[Fraction]) -> Matrix:
        """Operator of multiplication by the element with coordinates vec."""
        cols = []
        for j in range(self.dim):
            col = [Fraction(0)] * self.dim
            for i, a in enumerate(vec):
                if not a:
                    continue
                for k, c in enumerate(self.structure[i][j]):
                    if c:
                        col[k] += a * c
            cols.append(col)
        return Matrix(list(zip(*cols)))

    def scaled_tensor(self):
        """(numpy structure tensor * scale, scale) with integer entries."""
        if self._tensor_cache is None:
            scale = 1
            for row in self.structure:
                for vec in row:
                    for c in vec:
                        scale = scale * c.denominator // math.gcd(scale, c.denominator)
            ints = [
                [[int(c * scale) for c in vec] for vec in row]
                for row in self.structure
            ]
            mx = max(
                (abs(v) for row in ints for vec in row for v in vec), default=0
            )
            dtype = np.int64 if mx < 2**31 else object
            self._tensor_cache = (np.array(ints, dtype=dtype), scale)
        return self._tensor_cache

    # invariants -----------------------------------------------------------
    def _validate(self):
        d = self.dim
        if d == 0:
            return
        for i in range(d):
            for j in range(i):
                if self.structure[i][j] != self.structure[j][i]:
                    raise InternalInvariantError("structure constants not commutative")
        for j in range(d):
            col = self.multiply(self.unit, tuple(int(k == j) for k in range(d)))
            if col != tuple(Fraction(int(k == j)) for k in range(d)):
                raise InternalInvariantError("unit does not act as identity")
        c, scale = self.scaled_tensor()
        if c.dtype == np.int64:
            mx = int(np.abs(c).max()) if d else 0
            if d * mx * mx >= _INT64_SAFE:
                c = c.astype(object)
        for i in range(d):
            # (b_i b_j) b_k  vs  b_i (b_j b_k), all j, k at once
            lhs = np.einsum("jm,mkl->jkl", c[i], c)
            rhs = np.einsum("jkm,ml->jkl", c, c[i])
            if not (lhs == rhs).all():
                raise InternalInvariantError("structure constants not associative")

    def _build_filtration(self):
        mats = [self.mult_matrix(img) for img in self.generator_images]
        rows = []
        for m in mats:
            rows.extend(m.transpose().entries)
        chain = []
        cur = Subspace(self.dim, rows)
        while True:
            chain.append(cur)
            if cur.dim == 0:
                break
            nxt_rows = []
            for m in mats:
                for v in cur.basis:
                    nxt_rows.append(m.apply(v))
            nxt = Subspace(self.dim, nxt_rows)
            if nxt.dim == cur.dim:
                # stabilized above zero: not nilpotent, hence not local
                return tuple(chain), False
            cur = nxt
        local = self.dim == 0 or chain[0].dim == self.dim - 1
        return tuple(chain), local

    def power_of_max_ideal(self, k: int) -> Subspace:
        """m^k as a subspace (k >= 1); zero beyond the filtration depth."""
        if k < 1:
            raise ValueError("k must be >= 1")
        if k <= len(self.filtration):
            return self.filtration[k - 1]
        return self.filtration[-1] if not self.local else Subspace(self.dim)

    @property
    def nilpotency_exponent(self) -> int:
        """Least r with m^r = 0 (local algebras only)."""
        if not self.local:
            raise ValueError("nilpotency exponent needs a local algebra")
        return len(self.filtration)

    def __repr__(self):
        kind = "local" if self.local else "non-local"
        return f"ArtinAlgebra(dim {self.dim}, {kind})"


def from_groebner(gb: GroebnerBasis, source: LocalComponent | None = None) -> ArtinAlgebra:
    """Quotient algebra on the standard monomial basis; the multiplication
    table is the normal form of each basis product."""
    basis = standard_monomials(gb)
    dim = len(basis)
    index = {m: i for i, m in enumerate(basis)}
    vars = gb.vars
    memo: dict = {}

    def nf_vec(mono):
        if mono in memo:
            return memo[mono]
        if mono in index:
            vec = tuple(
                Fraction(int(k == index[mono])) for k in range(dim)
            )
        else:
            p = normal_form(Polynomial.monomial(vars, mono), gb)
            out = [Fraction(0)] * dim
            for m, c in p.terms.items():
                out[index[m]] = c
            vec = tuple(out)
        memo[mono] = vec
        return vec

    structure = [
        [
            nf_vec(tuple(a + b for a, b in zip(basis[i], basis[j])))
            for j in range(dim)
        ]
        for i in range(dim)
    ]
    unit = nf_vec(tuple([0] * len(vars))) if dim else ()
    images = []
    for k in range(len(vars)):
        mono = tuple(int(i == k) for i in range(len(vars)))
        images.append(nf_vec(mono) if dim else ())
    return ArtinAlgebra(
        labels=basis,
        label_degrees=[sum(m) for m in basis],
        structure=structure,
        unit=unit,
        var_names=vars.names,
        generator_images=images,
        defining=gb,
        source=source,
    )


def annihilator(s: ArtinAlgebra, sub: Subspace) -> Subspace:
    """Ann(sub) = {z : z * x = 0 for all x in sub}, the kernel of the
    stacked multiplication maps by a basis of sub."""
    if sub.ambient_dim != s.dim:
        raise ValueError("subspace not in the algebra")
    if sub.dim == 0:
        return Subspace.full(s.dim)
    rows = []
    for v in sub.basis:
        rows.extend(s.mult_matrix(v).entries)
    return Subspace(s.dim, _exact.kernel_fractions(rows, s.dim))


@dataclass(frozen=True)
class SocleData:
    socle: Subspace
    lsoc: Subspace
    usoc: Subspace


def socle_data(s: ArtinAlgebra) -> SocleData:
    """Socle = Ann(m); lower socle is its part inside m^2; the upper socle
    is a complement chosen by echelon pivoting that prefers coordinates of
    degree-1 basis labels (the choice of complement is not canonical, this
    one is deterministic)."""
    if not s.local:
        raise ValueError("socle data needs a local algebra")
    if s.dim < 2:
        # for the base field the socle is everything and the upper/lower
        # split of the annihilator of m is meaningless
        raise ValueError("socle decomposition needs dim S >= 2")
    m1 = s.power_of_max_ideal(1)
    soc = annihilator(s, m1)
    m2 = s.power_of_max_ideal(2)
    lsoc = soc.intersect(m2)
    deg1 = [i for i, d in enumerate(s.label_degrees) if d == 1]
    perm = deg1 + [i for i in range(s.dim) if i not in deg1]
    permuted = [[v[p] for p in perm] for v in soc.basis]
    red, _ = _exact.rref_fractions(permuted, s.dim)
    inv = [0] * s.dim
    for pos, p in enumerate(perm):
        inv[p] = pos
    candidates = [tuple(row[inv[i]] for i in range(s.dim)) for row in red]
    picked: list = []
    cur = lsoc
    for v in candidates:
        if not cur.contains(v):
            picked.append(v)
            cur = cur + Subspace(s.dim, [v])
    usoc = Subspace(s.dim, picked)
    if lsoc.dim + usoc.dim != soc.dim:
        raise InternalInvariantError("socle complement has wrong dimension")
    return SocleData(socle=soc, lsoc=lsoc, usoc=usoc)


def minimal_generator_count(
    ideal: Ideal, order: MonomialOrder | None = None
) -> int:
    """dim(I / mI) for the localization of I at the origin, computed in the
    finite model mod m^(r+2) where r is the local nilpotency exponent; by
    Nakayama this equals the size of every minimal generating set."""
    vars = ideal.vars
    n = len(vars)
    for g in ideal.generators:
        if g.constant_term() != 0:
            raise ValueError("generator with nonzero constant term")
    origin = tuple(Fraction(0) for _ in range(n))
    lc = local_component(ideal, origin, order=order)
    r = lc.exponent
    maxdeg = r + 1
    mons = []
    for d in range(maxdeg + 1):
        mons.extend(_monomials_of_degree(n, d))
    index = {m: i for i, m in enumerate(mons)}

    def vec(p: Polynomial):
        out = [Fraction(0)] * len(mons)
        for m, c in p.terms.items():
            if sum(m) <= maxdeg:
                out[index[m]] = c
        return out

    rows_full = []
    rows_m = []
    for g in ideal.generators:
        for beta_deg in range(0, maxdeg + 1):
            if g.order_of() + beta_deg > maxdeg:
                break
            for beta in _monomials_of_degree(n, beta_deg):
                row = vec(g * Polynomial.monomial(vars, beta))
                rows_full.append(row)
                if beta_deg >= 1:
                    rows_m.append(row)
    from . import _exact

    return _exact.rank(rows_full, len(mons)) - _exact.rank(rows_m, len(mons))


@dataclass(frozen=True)
class PresentationDegree:
    """Degree-k slice of the presentation of gr S as Sym(m/m^2)/I*."""

    degree: int
    sym_dim: int
    kernel: Subspace  # I*_k inside Sym^k(m/m^2)
    m_times_kernel: Subspace  # span of (deg-1 symbols) * I*_{k-1}

    @property
    def fresh_relations(self) -> int:
        return self.kernel.dim - self.m_times_kernel.dim


@dataclass(frozen=True)
class GradedAlgebra:
    """Associated graded algebra: gr S = K + m/m^2 + m^2/m^3 + ...

    components[i] is dim m^i/m^(i+1); lifts[i] is a basis of a vector-space
    complement of m^(i+1) in m^i, as coordinate vectors in S, so products
    of lifts followed by projection define the graded multiplication.
    presentation[k-1] carries the degree-k kernel data of the surjection
    Sym^k(m/m^2) -> gr_k used by the narrowness test.
    """

    components: tuple
    lifts: tuple
    presentation: tuple

    @property
    def top_degree(self) -> int:
        return len(self.components) - 1

    def component_dim(self, k: int) -> int:
        return self.components[k] if 0 <= k < len(self.components) else 0


def associated_graded(s: ArtinAlgebra) -> GradedAlgebra:
    if not s.local:
        raise ValueError("associated graded needs a local algebra")
    chain = [Subspace.full(s.dim)] + [f for f in s.filtration]
    if chain[-1].dim != 0:
        chain.append(Subspace(s.dim))
    lifts = []
    comps = []
    for k in range(len(chain) - 1):
        comp = chain[k + 1].complement_within(chain[k])
        lifts.append(tuple(comp.basis))
        comps.append(comp.dim)
    while comps and comps[-1] == 0:
        comps.pop()
        lifts.pop()
    top = len(comps) - 1
    deg1 = lifts[1] if len(lifts) > 1 else ()
    nprime = len(deg1)

    def project(vec, k):
        """Coordinates of vec (an element of m^k) in the degree-k component."""
        basis_rows = [list(r) for r in lifts[k]] + [
            list(r) for r in (chain[k + 1].basis if k + 1 < len(chain) else ())
        ]
        sol = _exact.solve_right(
            list(zip(*basis_rows)), list(vec), len(basis_rows)
        )
        if sol is None:
            raise InternalInvariantError("graded projection failed")
        return sol[: len(lifts[k])]

    presentation = []
    for k in range(1, top + 2):
        sym = list(_monomials_of_degree(nprime, k)) if nprime else []
        if k <= top and sym:
            cols = []
            for mono in sym:
                vec = s.unit
                for i, e in enumerate(mono):
                    for _ in range(e):
                        vec = s.multiply(vec, deg1[i])
                cols.append(project(vec, k))
            mat_rows = list(zip(*cols))
            kernel = Subspace(len(sym), _exact.kernel_fractions(mat_rows, len(sym)))
        else:
            kernel = Subspace.full(len(sym))
        mk_rows = []
        if k >= 2 and presentation:
            prev_sym = list(_monomials_of_degree(nprime, k - 1))
            sym_index = {m: i for i, m in enumerate(sym)}
            for w in presentation[-1].kernel.basis:
                for i in range(nprime):
                    row = [Fraction(0)] * len(sym)
                    for m_idx, c in enumerate(w):
                        if c:
                            m = list(prev_sym[m_idx])
                            m[i] += 1
                            row[sym_index[tuple(m)]] += c
                    mk_rows.append(row)
        presentation.append(
            PresentationDegree(
                degree=k,
                sym_dim=len(sym),
                kernel=kernel,
                m_times_kernel=Subspace(len(sym), mk_rows),
            )
        )
    return GradedAlgebra(
        components=tuple(comps), lifts=tuple(lifts), presentation=tuple(presentation)
    )


def graded_product(g: GradedAlgebra, s: ArtinAlgebra, k: int, i: int, l: int, j: int):
    """Product gr_k[i] * gr_l[j] as coordinates in gr_(k+l); zero beyond top."""
    vec = s.multiply(g.lifts[k][i], g.lifts[l][j])
    t = k + l
    if t > g.top_degree:
        return tuple()
    chain_next = (
        s.power_of_max_ideal(t + 1) if t >= 1 else Subspace(s.dim)
    )
    rows = [list(r) for r in g.lifts[t]] + [list(r) for r in chain_next.basis]
    sol = _exact.solve_right(list(zip(*rows)), list(vec), len(rows))
    if sol is None:
        raise InternalInvariantError("graded product projection failed")
    return tuple(sol[: len(g.lifts[t])])


def tensor_product(a: ArtinAlgebra, b: ArtinAlgebra) -> ArtinAlgebra:
    """Kronecker-style product algebra; local when both factors are."""
    if set(a.var_names) & set(b.var_names):
        raise ValueError("tensor factors must use disjoint variable names")
    da, db = a.dim, b.dim
    dim = da * db

    def fuse(i, j):
        return i * db + j

    structure = [[None] * dim for _ in range(dim)]
    for i1 in range(da):
        for j1 in range(db):
            r = fuse(i1, j1)
            for i2 in range(da):
                ca = a.structure[i1][i2]
                for j2 in range(db):
                    cb = b.structure[j1][j2]
                    vec = [Fraction(0)] * dim
                    for k1, va in enumerate(ca):
                        if not va:
                            continue
                        for k2, vb in enumerate(cb):
                            if vb:
                                vec[fuse(k1, k2)] = va * vb
                    structure[r][fuse(i2, j2)] = tuple(vec)
    unit = [Fraction(0)] * dim
    for i, ua in enumerate(a.unit):
        for j, ub in enumerate(b.unit):
            unit[fuse(i, j)] = ua * ub
    images = []
    for img in a.generator_images:
        vec = [Fraction(0)] * dim
        for i, c in enumerate(img):
            for j, ub in enumerate(b.unit):
                vec[fuse(i, j)] = c * ub
        images.append(vec)
    for img in b.generator_images:
        vec = [Fraction(0)] * dim
        for i, ua in enumerate(a.unit):
            for j, c in enumerate(img):
                vec[fuse(i, j)] = ua * c
        images.append(vec)
    labels = [
        (la, lb) for la in a.basis_labels for lb in b.basis_labels
    ]
    degrees = [
        dla + dlb for dla in a.label_degrees for dlb in b.label_degrees
    ]
    return ArtinAlgebra(
        labels=labels,
        label_degrees=degrees,
        structure=structure,
        unit=unit,
        var_names=a.var_names + b.var_names,
        generator_images=images,
    )


def decompose_local(
    ideal: Ideal, order: MonomialOrder | None = None
) -> list[ArtinAlgebra]:
    """One local factor per rational point of a finite-dimensional quotient;
    fails explicitly when the point list cannot be certified complete."""
    pts = rational_points(ideal, order)
    if not pts.complete:
        raise IncompletePointsError(pts.failed_variable)
    out = []
    for p in pts.points:
        lc = local_component(ideal, p, order=order)
        out.append(from_groebner(lc.gb, source=lc))
    return out
