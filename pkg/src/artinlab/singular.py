"""Isolated hypersurface singularities: Jacobian ideals, moduli (Tjurina)
algebras, quasi-homogeneity detection, and the quadratic splitting normal
form.

The moduli algebra of p at the origin is the local factor of (p, dp/dx_1,
..., dp/dx_n); it is finite-dimensional exactly when the singularityies
isolated, which is detected by stabilization of the truncated dimensions
(a configurable cap turns failure to stabilize into an explicit
non-isolated error instead of a radical computation).

Square roots never appear: the splitting normal form keeps nonzero
rational scalars lambda_i in front of the split squares.  Everything
downstream only needs lambda_i != 0, so all reported invariants agree
with the classical normal form over an algebraically closed field.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from . import criteria as criteria_mod
from .artin import ArtinAlgebra, associated_graded, from_groebner
from .errors import InternalInvariantError
from .groebner import Ideal, LocalComponent, local_component
from .liealg import compute_derivations, series
from .poly import MonomialOrder, Polynomial, VarSet


def jacobian_ideal(p: Polynomial) -> Ideal:
    """Ideal of all first partials of p (zero partials dropped)."""
    gens = []
    for name in p.vars.names:
        d = p.partial_derivative(name)
        if not d.is_zero():
            gens.append(d)
    return Ideal(p.vars, gens)


@dataclass(frozen=True)
class QuasiHomogeneity:
    weights: tuple
    degree: int


def quasi_homogeneous_weights(p: Polynomial) -> QuasiHomogeneity | None:
    """Positive integer weights making every monomial of p the same
    weighted degree, or None.  Solves the linear system of exponent
    differences exactly, then certifies positivity by Fourier-Motzkin
    elimination and clears denominators."""
    if p.is_zero():
        raise ValueError("zero polynomial")
    monos = list(p.terms)
    n = len(p.vars)
    if any(sum(m) == 0 for m in monos):
        return None
    rows = [
        [Fraction(a - b) for a, b in zip(m, monos[0])] for m in monos[1:]
    ]
    from . import _exact

    if rows:
        basis = _exact.kernel_fractions(rows, n)
    else:
        basis = [
            tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)
        ]
    if not basis:
        return None
    r = len(basis)
    # w = t . basis must satisfy w_j >= 1 for every variable j
    constraints = []
    for j in range(n):
        constraints.append(([b[j] for b in basis], Fraction(1)))
    t = _fourier_motzkin(constraints, r)
    if t is None:
        return None
    w = [sum(tv * b[j] for tv, b in zip(t, basis)) for j in range(n)]
    scale = 1
    for x in w:
        scale = scale * x.denominator // _gcd(scale, x.denominator)
    ints = [int(x * scale) for x in w]
    g = 0
    for v in ints:
        g = _gcd(g, v)
    ints = [v // g for v in ints]
    k = sum(e * wv for e, wv in zip(monos[0], ints))
    return QuasiHomogeneity(weights=tuple(ints), degree=int(k))


def _gcd(a, b):
    import math

    return math.gcd(int(a), int(b))


def _fourier_motzkin(constraints, nvars):
    """Find rational t with coeffs . t >= bound for every constraint, or
    None; classical elimination of the last variable with back
    substitution."""
    if nvars == 0:
        return [] if all(b <= 0 for _, b in constraints) else None
    pos, neg, zero = [], [], []
    for coeffs, b in constraints:
        c = coeffs[-1]
        if c > 0:
            pos.append((coeffs, b))
        elif c < 0:
            neg.append((coeffs, b))
        else:
            zero.append((coeffs[:-1], b))
    reduced = list(zero)
    for cp, bp in pos:
        for cn, bn in neg:
            # (-cn_last) * (cp . t >= bp)  +  cp_last * (cn . t >= bn)
            # cancels the last variable; both multipliers are positive
            m1, m2 = -cn[-1], cp[-1]
            coeffs = [m1 * a + m2 * c for a, c in zip(cp[:-1], cn[:-1])]
            reduced.append((coeffs, m1 * bp + m2 * bn))
    sub = _fourier_motzkin(reduced, nvars - 1)
    if sub is None:
        return None
    lo, hi = None, None
    for cp, bp in pos:
        v = (bp - sum(a * s for a, s in zip(cp[:-1], sub))) / cp[-1]
        lo = v if lo is None else max(lo, v)
    for cn, bn in neg:
        v = (bn - sum(a * s for a, s in zip(cn[:-1], sub))) / cn[-1]
        hi = v if hi is None else min(hi, v)
    if lo is not None and hi is not None:
        val = (lo + hi) / 2
    elif lo is not None:
        val = lo
    elif hi is not None:
        val = hi
    else:
        val = Fraction(0)
    return sub + [val]


@dataclass(frozen=True)
class ModuliAlgebra:
    """Local quotient by (p, J(p)) at the origin, plus its invariants.

    tjurina is its dimension; milnor is the dimension of the local
    quotient by J(p) alone (auxiliary).  When p is quasi-homogeneous the
    Euler identity puts p inside J(p), so the two dimensions agree and
    the moduli algebra is a complete intersection.
    """

    p: Polynomial
    algebra: ArtinAlgebra
    tjurina: int
    milnor: int
    quasi_homogeneous: QuasiHomogeneity | None
    local: LocalComponent


def moduli_algebra(
    p: Polynomial,
    cap: int = 50,
    order: MonomialOrder | None = None,
    cancel: Callable[[], bool] | None = None,
) -> ModuliAlgebra:
    if p.is_zero():
        raise ValueError("zero polynomial has no singularity data")
    if p.constant_term() != 0:
        raise ValueError("the origin is not on the hypersurface")
    if p.order_of() < 2:
        raise ValueError("the origin is a smooth point (linear part present)")
    n = len(p.vars)
    origin = tuple(Fraction(0) for _ in range(n))
    jac = jacobian_ideal(p)
    full = Ideal(p.vars, (p,) + jac.generators)
    lc = local_component(full, origin, order=order, cap=cap, cancel=cancel)
    milnor = (
        local_component(jac, origin, order=order, cap=cap, cancel=cancel).dim
        if jac.generators
        else 0
    )
    qh = quasi_homogeneous_weights(p)
    if qh is not None:
        euler = Polynomial.zero(p.vars)
        for name, w in zip(p.vars.names, qh.weights):
            euler = euler + Polynomial.variable(p.vars, name) * p.partial_derivative(
                name
            ).scale(w)
        if euler != p.scale(qh.degree):
            raise InternalInvariantError("Euler identity failed for detected weights")
        if lc.dim != milnor:
            raise InternalInvariantError(
                "quasi-homogeneous polynomial with tjurina != milnor"
            )
    return ModuliAlgebra(
        p=p,
        algebra=from_groebner(lc.gb, source=lc),
        tjurina=lc.dim,
        milnor=milnor,
        quasi_homogeneous=qh,
        local=lc,
    )


# splitting normal form ---------------------------------------------------


@dataclass(frozen=True)
class SplitResult:
    """p composed with `change` is sum(lambdas[i] * split_vars[i]^2) +
    residual, modulo degrees above the truncation; the residual involves
    only the non-split variables and has order >= 3."""

    rank: int
    lambdas: tuple
    split_vars: tuple
    residual: Polynomial | None
    change: dict
    truncation: int


def _quadratic_matrix(p: Polynomial):
    n = len(p.vars)
    q = [[Fraction(0)] * n for _ in range(n)]
    for m, c in p.terms.items():
        if sum(m) != 2:
            continue
        idx = [i for i, e in enumerate(m) if e]
        if len(idx) == 1:
            q[idx[0]][idx[0]] = c
        else:
            i, j = idx
            q[i][j] = q[j][i] = c / 2
    return q


def _congruence_diagonalize(q):
    """P with P^T Q P diagonal, nonzero entries first; returns (P, diag)."""
    n = len(q)
    q = [row[:] for row in q]
    p = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]

    def col_op(dst, src, f):
        for r in range(n):
            q[r][dst] += f * q[r][src]
        for r in range(n):
            q[dst][r] += f * q[src][r]
        for r in range(n):
            p[r][dst] += f * p[r][src]

    def swap(a, b):
        for r in range(n):
            q[r][a], q[r][b] = q[r][b], q[r][a]
        q[a], q[b] = q[b], q[a]
        for r in range(n):
            p[r][a], p[r][b] = p[r][b], p[r][a]

    for i in range(n):
        if q[i][i] == 0:
            pivot = next((j for j in range(i + 1, n) if q[j][j] != 0), None)
            if pivot is not None:
                swap(i, pivot)
            else:
                mixed = next((j for j in range(i + 1, n) if q[i][j] != 0), None)
                if mixed is None:
                    continue
                col_op(i, mixed, Fraction(1))
        for j in range(i + 1, n):
            if q[i][j] != 0:
                col_op(j, i, -q[i][j] / q[i][i])
    # move zero diagonal entries to the back, preserving relative order
    nonzero = [i for i in range(n) if q[i][i] != 0]
    zero = [i for i in range(n) if q[i][i] == 0]
    perm = nonzero + zero
    p = [[row[j] for j in perm] for row in p]
    diag = [q[j][j] for j in perm]
    return p, diag


def splitting_normal_form(p: Polynomial, truncation: int) -> SplitResult:
    """Exact rational quadratic splitting, truncated at `truncation`:
    diagonalize the quadratic part by a linear congruence, then remove all
    remaining terms containing split variables degree by degree."""
    if p.is_zero():
        raise ValueError("zero polynomial")
    if p.order_of() < 2:
        raise ValueError("polynomial has a linear part or constant term")
    if truncation < 3:
        raise ValueError("truncation degree must be at least 3")
    vars = p.vars
    n = len(vars)
    pm, diag = _congruence_diagonalize(_quadratic_matrix(p))
    rank = sum(1 for d in diag if d != 0)
    lambdas = tuple(diag[:rank])
    change = {}
    for i, name in enumerate(vars.names):
        img = Polynomial.zero(vars)
        for j in range(n):
            if pm[i][j]:
                img = img + Polynomial.variable(vars, vars.names[j]).scale(pm[i][j])
        change[name] = img
    work = p.substitute(change, max_degree=truncation)

    def compose(sigma):
        nonlocal change, work
        change = {
            name: img.substitute(sigma, max_degree=truncation)
            for name, img in change.items()
        }
        work = work.substitute(sigma, max_degree=truncation)

    for i in range(rank):
        lam = lambdas[i]
        for d in range(3, truncation + 1):
            bad = {
                m: c
                for m, c in work.terms.items()
                if sum(m) == d and m[i] >= 1
            }
            if not bad:
                continue
            u_terms = {}
            for m, c in bad.items():
                lowered = list(m)
                lowered[i] -= 1
                u_terms[tuple(lowered)] = -c / (2 * lam)
            sigma = {
                vars.names[i]: Polynomial.variable(vars, vars.names[i])
                + Polynomial(vars, u_terms)
            }
            compose(sigma)
    # split variables carry only their squares now; the rest is the residual
    split_names = vars.names[:rank]
    residual_terms = {}
    for m, c in work.terms.items():
        if all(m[i] == 0 for i in range(rank)):
            residual_terms[m] = c
            continue
        if sum(m) == 2 and any(m[i] == 2 for i in range(rank)):
            continue
        raise InternalInvariantError("split variable survived the normal form")
    if rank == n:
        residual = None
    else:
        reduced = VarSet(vars.names[rank:])
        residual = Polynomial(
            reduced, {m[rank:]: c for m, c in residual_terms.items()}
        )
        if residual.order_of() < 3 and not residual.is_zero():
            raise InternalInvariantError("residual has order below 3")
    return SplitResult(
        rank=rank,
        lambdas=lambdas,
        split_vars=tuple(split_names),
        residual=residual,
        change=change,
        truncation=truncation,
    )


# full desk report ---------------------------------------------------------


@dataclass(frozen=True)
class YauReport:
    p: Polynomial
    moduli: ModuliAlgebra
    split_rank: int
    residual: Polynomial | None
    residual_tjurina: int
    p_in_jacobian: bool | None
    schulze: criteria_mod.SchulzeResult | None
    narrow_gr: bool
    dim_der: int
    solvable: bool


def yau_report(
    p: Polynomial, cap: int = 50, cancel: Callable[[], bool] | None = None
) -> YauReport:
    """Complete solvability dossier for an isolated hypersurface
    singularity: reduce order-2 inputs by the splitting normal form, check
    the moduli algebra of the residual matches in dimension, run the
    one-sided criteria, then decide Der solvability directly (it must come
    out solvable; a contradiction means an implementation bug)."""
    moduli = moduli_algebra(p, cap=cap, cancel=cancel)
    split_rank = 0
    residual = p
    residual_tjurina = moduli.tjurina
    if p.order_of() == 2:
        trunc = max(moduli.local.exponent + 2, 3)
        split = splitting_normal_form(p, trunc)
        split_rank = split.rank
        residual = split.residual
        if residual is None or residual.is_zero():
            residual = None
            residual_tjurina = 1
        else:
            residual_tjurina = moduli_algebra(residual, cap=cap, cancel=cancel).tjurina
        if residual_tjurina != moduli.tjurina:
            raise InternalInvariantError(
                "splitting changed the moduli algebra dimension"
            )
    p_in_jac = None
    if moduli.quasi_homogeneous is not None:
        from .groebner import buchberger, normal_form

        jac = jacobian_ideal(p)
        gb = buchberger(jac, MonomialOrder.for_varset(p.vars))
        p_in_jac = normal_form(p, gb).is_zero()
    schulze = None
    if residual is not None:
        mod_ideal = Ideal(
            residual.vars,
            (residual,) + jacobian_ideal(residual).generators,
        )
        schulze = criteria_mod.schulze_test(mod_ideal)
    narrow = criteria_mod.narrow_test(associated_graded(moduli.algebra))
    rep = compute_derivations(moduli.algebra)
    ser = series(rep)
    if not ser.solvable:
        raise InternalInvariantError(
            "derivation algebra of a moduli algebra came out non-solvable"
        )
    return YauReport(
        p=p,
        moduli=moduli,
        split_rank=split_rank,
        residual=residual,
        residual_tjurina=residual_tjurina,
        p_in_jacobian=p_in_jac,
        schulze=schulze,
        narrow_gr=narrow,
        dim_der=rep.dimension,
        solvable=ser.solvable,
    )
