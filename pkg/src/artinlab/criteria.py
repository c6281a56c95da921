"""Sufficient solvability criteria for Der S, as one-sided decision rules.

Every verdict here is either "solvable" or "inconclusive": these are
sufficient conditions only, and only the direct derivation-series
computation in :mod:`artinlab.liealg` may ever pronounce "non-solvable".

The generator-count test needs the ideal order l to be at least 2.  When
a local component has order 1 the offending variables are eliminated by
an exact implicit-function substitution (truncated at a precision that a
Nakayama argument proves sufficient), which reduces to an isomorphic
presentation in fewer variables.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .artin import (
    ArtinAlgebra,
    GradedAlgebra,
    associated_graded,
    from_groebner,
    minimal_generator_count,
)
from .errors import ArtinlabError, IncompletePointsError
from .groebner import (
    Ideal,
    buchberger,
    is_finite_dimensional,
    local_component,
    quotient_dimension,
    rational_points,
    shift_to_point,
)
from .poly import MonomialOrder, Polynomial, VarSet

SOLVABLE = "solvable"
INCONCLUSIVE = "inconclusive"


class OrderTooSmallError(ArtinlabError):
    """Raised when a generator has a linear part (ideal order 1).

    The generator-count criterion assumes the ideal sits inside the square
    of the maximal ideal; eliminate the variable carried by the linear
    part first (the global test does this automatically per component).
    """


def ideal_order(i: Ideal) -> int:
    """Largest l with I inside m^l at the origin: the minimum generator
    order, since an ideal lies in m^l iff all its generators do."""
    l = None
    for g in i.generators:
        o = g.order_of()
        if o == 0:
            raise ValueError("generator with nonzero constant term")
        l = o if l is None else min(l, o)
    if l is None:
        raise ValueError("empty ideal has no order")
    return int(l)


@dataclass(frozen=True)
class SchulzeResult:
    verdict: str
    n: int
    l: int
    min_gens: int

    @property
    def extremal(self) -> bool:
        return self.min_gens == self.n + self.l - 1


def schulze_test(
    i: Ideal, point=None, order: MonomialOrder | None = None
) -> SchulzeResult:
    """Generator-count criterion at a rational point (default the origin):
    dim(I/mI) < n + l - 1 forces Der S solvable."""
    if point is not None and any(Fraction(a) != 0 for a in point):
        gens = [shift_to_point(g, point) for g in i.generators]
        i = Ideal(i.vars, [g for g in gens if not g.is_zero()])
    n = len(i.vars)
    l = ideal_order(i)
    if l < 2:
        raise OrderTooSmallError(
            "ideal order is 1; eliminate the variable carried by the linear "
            "part before applying the generator-count test"
        )
    mg = minimal_generator_count(i, order=order)
    verdict = SOLVABLE if mg < n + l - 1 else INCONCLUSIVE
    return SchulzeResult(verdict=verdict, n=n, l=l, min_gens=mg)


def narrow_test(g: GradedAlgebra) -> bool:
    """At most k fresh relations in each degree k: for every k the degree-k
    kernel of Sym(m/m^2) -> gr S grows from its predecessor by at most k.
    Degrees beyond top+1 are automatic, so the scan stops there."""
    return all(p.fresh_relations <= p.degree for p in g.presentation)


def complete_intersection_check(i: Ideal, order: MonomialOrder | None = None) -> bool:
    """n generators in n variables with a nonzero finite-dimensional
    quotient; such a sequence is automatically regular, and the unity
    component of the automorphism group is then solvable."""
    if len(i.generators) != len(i.vars):
        return False
    gb = buchberger(i, order or MonomialOrder.for_varset(i.vars))
    if not is_finite_dimensional(gb):
        return False
    return quotient_dimension(gb) > 0


# variable elimination --------------------------------------------------


def _eliminate_linear_variables(
    gens: list[Polynomial], vars: VarSet, precision: int
) -> tuple[VarSet | None, list[Polynomial]]:
    """Remove variables that occur linearly in some generator.

    Uses the formal implicit function theorem: a generator with linear
    part c*x_j solves x_j as a series s in the remaining variables, found
    by fixpoint iteration mod degree `precision`.  The substituted
    generators generate exactly the image ideal (the truncation error
    lies in m * I, so Nakayama removes it).  Returns (None, []) when all
    variables get consumed, i.e. the local algebra is the base field.
    """
    gens = [g for g in gens if not g.is_zero()]
    while True:
        target = None
        for g in sorted(gens, key=str):
            if g.order_of() == 1:
                target = g
                break
        if target is None:
            return vars, gens
        var_idx = next(
            k
            for k in range(len(vars))
            if target.coefficient(tuple(int(t == k) for t in range(len(vars)))) != 0
        )
        name = vars.names[var_idx]
        c = target.coefficient(tuple(int(t == var_idx) for t in range(len(vars))))
        x_j = Polynomial.variable(vars, name)
        h = target - x_j.scale(c)
        s = Polynomial.zero(vars)
        for _ in range(precision + 1):
            nxt = (-Fraction(1) / c) * h.substitute({name: s}, max_degree=precision)
            nxt = nxt.truncate(precision)
            if nxt == s:
                break
            s = nxt
        if len(vars) == 1:
            return None, []
        reduced = VarSet([n for n in vars.names if n != name])
        keep = [i for i in range(len(vars)) if i != var_idx]
        new_gens = []
        for g in gens:
            if g is target:
                continue
            sub = g.substitute({name: s}, max_degree=precision).truncate(precision)
            if sub.is_zero():
                continue
            terms = {}
            for m, coeff in sub.terms.items():
                if m[var_idx] != 0:
                    raise ArtinlabError("elimination left the removed variable")
                terms[tuple(m[i] for i in keep)] = coeff
            new_gens.append(Polynomial(reduced, terms))
        vars, gens = reduced, new_gens
        if not gens:
            return None, []


# per-component and global reports ---------------------------------------


@dataclass(frozen=True)
class ComponentCriteria:
    point: tuple
    dim: int
    l: int | None
    min_gens: int | None
    schulze: str
    extremal: bool | None
    narrow_gr: bool | None
    narrow_verdict: str
    n_effective: int
    algebra: ArtinAlgebra = field(repr=False, compare=False)


@dataclass(frozen=True)
class CriteriaReport:
    n: int
    complete_intersection: bool
    verdict: str
    components: tuple

    @property
    def local(self) -> bool:
        return len(self.components) == 1 and all(
            a == 0 for a in self.components[0].point
        )

    def _single(self):
        if len(self.components) != 1:
            raise ValueError("report has several components; use .components")
        return self.components[0]

    @property
    def l(self):
        return self._single().l

    @property
    def min_gens(self):
        return self._single().min_gens

    @property
    def schulze(self):
        return self._single().schulze

    @property
    def extremal(self):
        return self._single().extremal

    @property
    def narrow_gr(self):
        return self._single().narrow_gr

    @property
    def narrow_verdict(self):
        return self._single().narrow_verdict


def component_criteria(
    i: Ideal, point, order: MonomialOrder | None = None
) -> ComponentCriteria:
    """All one-sided criteria for the local factor of the ideal at a point."""
    lc = local_component(i, point, order=order)
    algebra = from_groebner(lc.gb, source=lc)
    if algebra.dim == 1:
        return ComponentCriteria(
            point=tuple(point),
            dim=1,
            l=None,
            min_gens=None,
            schulze=SOLVABLE,
            extremal=None,
            narrow_gr=True,
            narrow_verdict=SOLVABLE,
            n_effective=0,
            algebra=algebra,
        )
    shifted = [
        g
        for g in (shift_to_point(p, point) for p in i.generators)
        if not g.is_zero()
    ]
    local_ideal = Ideal(i.vars, shifted)
    l = ideal_order(local_ideal)
    if l < 2:
        reduced_vars, reduced_gens = _eliminate_linear_variables(
            shifted, i.vars, lc.exponent + 2
        )
        if reduced_vars is None or not reduced_gens:
            raise ArtinlabError(
                "elimination emptied a component of dimension > 1"
            )
        local_ideal = Ideal(reduced_vars, reduced_gens)
        l = ideal_order(local_ideal)
    result = schulze_test(local_ideal, order=None)
    grading = associated_graded(algebra)
    narrow = narrow_test(grading)
    return ComponentCriteria(
        point=tuple(point),
        dim=algebra.dim,
        l=result.l,
        min_gens=result.min_gens,
        schulze=result.verdict,
        extremal=result.extremal,
        narrow_gr=narrow,
        narrow_verdict=SOLVABLE if narrow else INCONCLUSIVE,
        n_effective=result.n,
        algebra=algebra,
    )


def evaluate_ideal(i: Ideal, order: MonomialOrder | None = None) -> CriteriaReport:
    """Criteria report over all rational points (requires a complete list)."""
    pts = rational_points(i, order)
    if not pts.complete:
        raise IncompletePointsError(pts.failed_variable)
    comps = tuple(component_criteria(i, p, order) for p in pts.points)
    ci = complete_intersection_check(i, order)
    if ci:
        verdict = SOLVABLE
    elif comps and all(
        c.schulze == SOLVABLE or c.narrow_verdict == SOLVABLE for c in comps
    ):
        verdict = SOLVABLE
    else:
        verdict = INCONCLUSIVE
    return CriteriaReport(
        n=len(i.vars),
        complete_intersection=ci,
        verdict=verdict,
        components=comps,
    )


@dataclass(frozen=True)
class GlobalSchulzeResult:
    verdict: str
    fast_path: bool
    generator_count: int
    l: int | None
    component_verdicts: tuple


def global_schulze(i: Ideal, order: MonomialOrder | None = None) -> GlobalSchulzeResult:
    """Globalized generator-count criterion: solvable outright when the raw
    generator count m satisfies m < n + l - 1 with l the minimal local
    order over all points; otherwise falls back to the per-component
    criteria (solvability of the whole is equivalent to solvability of
    every local factor)."""
    pts = rational_points(i, order)
    if not pts.complete:
        raise IncompletePointsError(pts.failed_variable)
    n = len(i.vars)
    m = len(i.generators)
    if not pts.points:
        return GlobalSchulzeResult(SOLVABLE, True, m, None, ())
    orders = []
    for p in pts.points:
        shifted = [
            g
            for g in (shift_to_point(g0, p) for g0 in i.generators)
            if not g.is_zero()
        ]
        orders.append(ideal_order(Ideal(i.vars, shifted)))
    l = min(orders)
    if l >= 2 and m < n + l - 1:
        return GlobalSchulzeResult(
            SOLVABLE, True, m, l, tuple((p, SOLVABLE) for p in pts.points)
        )
    verdicts = []
    for p in pts.points:
        comp = component_criteria(i, p, order)
        verdicts.append((p, comp.schulze))
    overall = (
        SOLVABLE if all(v == SOLVABLE for _, v in verdicts) else INCONCLUSIVE
    )
    return GlobalSchulzeResult(overall, False, m, l, tuple(verdicts))
