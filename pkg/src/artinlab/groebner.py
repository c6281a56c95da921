"""Buchberger engine, staircase analysis, point finding and localization.

Localization at a point never uses local (Mora) orderings: because every
local factor in scope is finite-dimensional, the quotient by an ideal I
at a point equals the quotient by I + m^N once the truncation exponent N
stabilizes, and that stabilization is detected exactly.  Generators are
required to be polynomials; when an ideal contains a power of the
maximal ideal it makes no difference whether the quotient is formed from
the polynomial ring or from formal power series, so all power-series
statements are computed on these finite models.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .errors import (
    AmbientMismatchError,
    CancelledError,
    IncompletePointsError,
    InfiniteDimensionalError,
    InternalInvariantError,
    NonIsolatedSingularityError,
)
from .linalg import Matrix
from .poly import (
    Monomial,
    MonomialOrder,
    Polynomial,
    VarSet,
    mono_degree,
    mono_div,
    mono_divides,
    mono_lcm,
    mono_mul,
)


class Ideal:
    """Finitely generated ideal; generator order is preserved for reporting."""

    __slots__ = ("vars", "generators")

    def __init__(self, vars: VarSet, generators: Iterable[Polynomial]):
        gens = tuple(generators)
        for g in gens:
            if g.vars != vars:
                raise AmbientMismatchError("generator over a different variable set")
            if g.is_zero():
                raise ValueError("zero generator")
        self.vars = vars
        self.generators = gens

    def __repr__(self):
        return f"Ideal({', '.join(map(str, self.generators))})"


class GroebnerBasis:
    """Reduced Groebner basis with its staircase of leading monomials."""

    __slots__ = ("vars", "order", "elements", "staircase")

    def __init__(self, vars: VarSet, order: MonomialOrder, elements: Iterable[Polynomial]):
        elems = tuple(
            sorted(elements, key=lambda g: order.key(g.leading_term(order)[0]))
        )
        lts = []
        for g in elems:
            lm, lc = g.leading_term(order)
            if lc != 1:
                raise InternalInvariantError("basis element is not monic")
            lts.append(lm)
        for i, g in enumerate(elems):
            for m in g.terms:
                for j, lt in enumerate(lts):
                    if j != i and mono_divides(lt, m):
                        raise InternalInvariantError("basis is not reduced")
                    if j == i and m != lts[i] and mono_divides(lt, m):
                        raise InternalInvariantError("basis is not reduced")
        self.vars = vars
        self.order = order
        self.elements = elems
        self.staircase = tuple(lts)

    def __repr__(self):
        return f"GroebnerBasis({', '.join(map(str, self.elements))})"


def _monic(p: Polynomial, order: MonomialOrder) -> Polynomial:
    _, lc = p.leading_term(order)
    return p if lc == 1 else p.scale(1 / lc)


def normal_form(p: Polynomial, gb: GroebnerBasis) -> Polynomial:
    """Canonical representative of p modulo the ideal: no remaining term is
    divisible by a staircase monomial, and p - result lies in the ideal."""
    order = gb.order
    rem: dict = {}
    work = p
    while work.terms:
        lm, lc = work.leading_term(order)
        for g, lt in zip(gb.elements, gb.staircase):
            if mono_divides(lt, lm):
                work = work - g * Polynomial.monomial(p.vars, mono_div(lm, lt), lc)
                break
        else:
            rem[lm] = lc
            work = work - Polynomial.monomial(p.vars, lm, lc)
    return Polynomial(p.vars, rem)


def _reduce_by(p: Polynomial, basis: list[Polynomial], order: MonomialOrder) -> Polynomial:
    rem: dict = {}
    work = p
    lts = [g.leading_term(order)[0] for g in basis]
    while work.terms:
        lm, lc = work.leading_term(order)
        for g, lt in zip(basis, lts):
            if mono_divides(lt, lm):
                work = work - g * Polynomial.monomial(p.vars, mono_div(lm, lt), lc)
                break
        else:
            rem[lm] = lc
            work = work - Polynomial.monomial(p.vars, lm, lc)
    return Polynomial(p.vars, rem)


def _interreduce(polys: list[Polynomial], order: MonomialOrder) -> list[Polynomial]:
    basis = [_monic(p, order) for p in polys if not p.is_zero()]
    changed = True
    while changed:
        changed = False
        for i in range(len(basis)):
            others = basis[:i] + basis[i + 1 :]
            if not others:
                continue
            h = _reduce_by(basis[i], others, order)
            if h != basis[i]:
                changed = True
                if h.is_zero():
                    basis.pop(i)
                else:
                    basis[i] = _monic(h, order)
                break
    return basis


def buchberger(ideal: Ideal, order: MonomialOrder) -> GroebnerBasis:
    """Classical Buchberger with the normal selection strategy and both
    standard pair-skipping criteria; output is the reduced basis."""
    vars = ideal.vars
    basis = _interreduce(list(ideal.generators), order)
    lts = [g.leading_term(order)[0] for g in basis]

    def is_mono(i):
        return len(basis[i].terms) == 1

    pairs = set()
    for i, j in itertools.combinations(range(len(basis)), 2):
        if not (is_mono(i) and is_mono(j)):
            pairs.add((i, j))
    done = set()
    while pairs:
        i, j = min(pairs, key=lambda ij: order.key(mono_lcm(lts[ij[0]], lts[ij[1]])))
        pairs.remove((i, j))
        done.add((i, j))
        lcm = mono_lcm(lts[i], lts[j])
        if lcm == mono_mul(lts[i], lts[j]):
            continue  # coprime leading terms
        chain = False
        for k in range(len(basis)):
            if k in (i, j) or not mono_divides(lts[k], lcm):
                continue
            p1 = (min(i, k), max(i, k))
            p2 = (min(j, k), max(j, k))
            if p1 in done and p2 in done:
                chain = True
                break
        if chain:
            continue
        s = basis[i] * Polynomial.monomial(vars, mono_div(lcm, lts[i])) - basis[
            j
        ] * Polynomial.monomial(vars, mono_div(lcm, lts[j]))
        h = _reduce_by(s, basis, order)
        if h.is_zero():
            continue
        h = _monic(h, order)
        new = len(basis)
        basis.append(h)
        lts.append(h.leading_term(order)[0])
        for k in range(new):
            if not (is_mono(k) and is_mono(new)):
                pairs.add((k, new))
    return GroebnerBasis(vars, order, _interreduce(basis, order))


def is_finite_dimensional(gb: GroebnerBasis) -> bool:
    """True iff every variable has a pure power in the staircase ideal."""
    n = len(gb.vars)
    if any(sum(lt) == 0 for lt in gb.staircase):
        return True  # unit ideal, zero algebra
    for i in range(n):
        if not any(lt[i] > 0 and sum(lt) == lt[i] for lt in gb.staircase):
            return False
    return True


def standard_monomials(gb: GroebnerBasis) -> list[Monomial]:
    """Monomials outside the staircase ideal, ascending in the basis order;
    they are a vector-space basis of the quotient."""
    if not is_finite_dimensional(gb):
        raise InfiniteDimensionalError("quotient is not finite-dimensional")
    n = len(gb.vars)
    if any(sum(lt) == 0 for lt in gb.staircase):
        return []
    bounds = []
    for i in range(n):
        bounds.append(
            min(lt[i] for lt in gb.staircase if lt[i] > 0 and sum(lt) == lt[i])
        )
    out = []
    for mono in itertools.product(*(range(b) for b in bounds)):
        if not any(mono_divides(lt, mono) for lt in gb.staircase):
            out.append(mono)
    out.sort(key=gb.order.key)
    return out


def quotient_dimension(gb: GroebnerBasis) -> int:
    return len(standard_monomials(gb))


def _monomials_of_degree(n: int, d: int):
    if n == 1:
        yield (d,)
        return
    for first in range(d, -1, -1):
        for rest in _monomials_of_degree(n - 1, d - first):
            yield (first,) + rest


def min_power_of_maximal_inside(gb: GroebnerBasis) -> int:
    """Least r with m^r contained in the ideal (origin-centered)."""
    dim = quotient_dimension(gb)  # also guards finite-dimensionality
    n = len(gb.vars)
    for r in range(1, dim + 3):
        if all(
            normal_form(Polynomial.monomial(gb.vars, m), gb).is_zero()
            for m in _monomials_of_degree(n, r)
        ):
            return r
    raise InternalInvariantError("power of maximal ideal not found below bound")


def multiplication_matrix(gb: GroebnerBasis, p: Polynomial, basis=None) -> Matrix:
    """Matrix of multiplication by p on the quotient, in the standard
    monomial basis (columns indexed by basis monomials)."""
    basis = standard_monomials(gb) if basis is None else basis
    index = {m: i for i, m in enumerate(basis)}
    cols = []
    for b in basis:
        prod = normal_form(p * Polynomial.monomial(gb.vars, b), gb)
        col = [Fraction(0)] * len(basis)
        for m, c in prod.terms.items():
            col[index[m]] = c
        cols.append(col)
    return Matrix(list(zip(*cols)))


# point finding ---------------------------------------------------------


def _char_poly(m: Matrix) -> list[Fraction]:
    """Coefficients [1, c1, ..., cn] of det(tI - M), Faddeev-LeVerrier."""
    n = m.rows
    coeffs = [Fraction(1)]
    mk = m
    for k in range(1, n + 1):
        ck = -sum(mk[i, i] for i in range(n)) / k
        coeffs.append(ck)
        if k < n:
            mk = m @ (mk + Matrix.identity(n).scale(ck))
    return coeffs


def _divisors(n: int) -> list[int]:
    n = abs(n)
    out = set()
    f = 1
    while f * f <= n:
        if n % f == 0:
            out.add(f)
            out.add(n // f)
        f += 1
    return sorted(out)


def _rational_roots(coeffs: list[Fraction]) -> tuple[list[Fraction], bool]:
    """All rational roots of the polynomial with the given descending
    coefficients, and whether it splits completely over the rationals."""
    scale = 1
    for c in coeffs:
        scale = scale * c.denominator // math.gcd(scale, c.denominator)
    ints = [int(c * scale) for c in coeffs]

    def value(root: Fraction) -> Fraction:
        acc = Fraction(0)
        for c in ints:
            acc = acc * root + c
        return acc

    def deflate(cs: list[int], root: Fraction) -> list[int]:
        out = []
        acc = Fraction(0)
        for c in cs[:-1]:
            acc = acc * root + c
            out.append(acc)
        lcm = 1
        for v in out:
            lcm = lcm * v.denominator // math.gcd(lcm, v.denominator)
        return [int(v * lcm) for v in out]

    roots = []
    work = ints[:]
    while len(work) > 1:
        while work and work[-1] == 0:
            roots.append(Fraction(0))
            work = work[:-1]
        if len(work) <= 1:
            break
        found = None
        for q in _divisors(work[0]):
            for p in _divisors(work[-1]):
                for sign in (1, -1):
                    cand = Fraction(sign * p, q)
                    acc = 0
                    for c in work:
                        acc = acc * cand + c
                    if acc == 0:
                        found = cand
                        break
                if found:
                    break
            if found:
                break
        if found is None:
            return sorted(set(roots)), False
        roots.append(found)
        work = deflate(work, found)
    return sorted(set(roots)), True


@dataclass(frozen=True)
class PointsResult:
    points: tuple
    complete: bool
    failed_variable: str | None = None


def rational_points(ideal: Ideal, order: MonomialOrder | None = None) -> PointsResult:
    """All common zeros with rational coordinates, found from eigenvalues of
    the coordinate multiplication operators.  `complete` certifies the list
    is every zero over the algebraic closure; incompleteness is reported,
    not fatal."""
    vars = ideal.vars
    order = order or MonomialOrder.for_varset(vars)
    gb = buchberger(ideal, order)
    if not is_finite_dimensional(gb):
        raise InfiniteDimensionalError("point finding needs a finite-dimensional quotient")
    basis = standard_monomials(gb)
    if not basis:
        return PointsResult((), True)
    complete = True
    failed = None
    coord_roots = []
    for i, name in enumerate(vars.names):
        m = multiplication_matrix(gb, Polynomial.variable(vars, name), basis)
        roots, split = _rational_roots(_char_poly(m))
        coord_roots.append(roots)
        if not split and complete:
            complete = False
            failed = name
    points = []
    for cand in itertools.product(*coord_roots):
        if all(_evaluate(g, cand) == 0 for g in ideal.generators):
            points.append(tuple(cand))
    points.sort()
    return PointsResult(tuple(points), complete, failed)


def _evaluate(p: Polynomial, point: Sequence[Fraction]) -> Fraction:
    acc = Fraction(0)
    for m, c in p.terms.items():
        v = c
        for e, a in zip(m, point):
            if e:
                v *= Fraction(a) ** e
        acc += v
    return acc


def shift_to_point(p: Polynomial, point: Sequence) -> Polynomial:
    """Recenter so that `point` becomes the origin: x_i -> x_i + a_i."""
    images = {}
    for name, a in zip(p.vars.names, point):
        a = Fraction(a)
        img = Polynomial.variable(p.vars, name)
        if a != 0:
            img = img + Polynomial.constant(p.vars, a)
        images[name] = img
    return p.substitute(images)


@dataclass(frozen=True)
class LocalComponent:
    """Finite local model of an ideal at a rational point.

    gb presents K[x]/(I + m^N) in coordinates recentred at the point; N is
    the stabilized truncation exponent, so the model has m-bar^N = 0 and
    its dimension equals the local multiplicity.
    """

    point: tuple
    gb: GroebnerBasis
    exponent: int
    dim: int


def local_component(
    ideal: Ideal,
    point: Sequence,
    order: MonomialOrder | None = None,
    cap: int | None = None,
    cancel: Callable[[], bool] | None = None,
) -> LocalComponent:
    """Truncation-stabilization loop: raise N until
    dim K[x]/(I + m^N) = dim K[x]/(I + m^(N+1))."""
    vars = ideal.vars
    order = order or MonomialOrder.for_varset(vars)
    point = tuple(Fraction(a) for a in point)
    for g in ideal.generators:
        if _evaluate(g, point) != 0:
            raise ValueError(f"generator {g} does not vanish at {point}")
    shifted = [shift_to_point(g, point) for g in ideal.generators]

    def model(n: int) -> GroebnerBasis:
        gens = [p for p in shifted if not p.is_zero()]
        gens += [
            Polynomial.monomial(vars, m) for m in _monomials_of_degree(len(vars), n)
        ]
        return buchberger(Ideal(vars, gens), order)

    prev_gb = model(1)
    prev_dim = quotient_dimension(prev_gb)
    n = 1
    while True:
        if cancel is not None and cancel():
            raise CancelledError("localization cancelled")
        if cap is not None and n > cap:
            pretty = "(" + ", ".join(str(a) for a in point) + ")"
            raise NonIsolatedSingularityError(
                f"local dimension at {pretty} did not stabilize below N = {cap}"
            )
        cur_gb = model(n + 1)
        cur_dim = quotient_dimension(cur_gb)
        if cur_dim == prev_dim:
            return LocalComponent(point, prev_gb, n, prev_dim)
        prev_gb, prev_dim = cur_gb, cur_dim
        n += 1
