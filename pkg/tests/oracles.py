"""Independent brute-force oracles used to freeze expected values.

Everything here is plain linear algebra on truncated monomial spans; no
Groebner bases, no normal forms.  The implementations under test must
agree with these on every fixture where both apply.
"""

from fractions import Fraction

from artinlab import _exact
from artinlab.groebner import _monomials_of_degree
from artinlab.poly import Polynomial


def monomials_below(n, degree):
    out = []
    for d in range(degree):
        out.extend(_monomials_of_degree(n, d))
    return out


def _span_rows(gens, mons, index, maxdeg):
    """Coefficient rows of x^beta * g truncated below maxdeg."""
    n = len(gens[0].vars)
    rows = []
    for g in gens:
        o = g.order_of()
        for bdeg in range(0, maxdeg):
            if o + bdeg >= maxdeg and bdeg > 0:
                break
            for beta in _monomials_of_degree(n, bdeg):
                prod = g * Polynomial.monomial(g.vars, beta)
                row = [Fraction(0)] * len(mons)
                nonzero = False
                for m, c in prod.terms.items():
                    if sum(m) < maxdeg:
                        row[index[m]] = c
                        nonzero = True
                if nonzero:
                    rows.append(row)
    return rows


def local_quotient_dim(gens, trunc):
    """dim K[x]/(I + m^trunc) by rank of the truncated multiple span."""
    n = len(gens[0].vars)
    mons = monomials_below(n, trunc)
    index = {m: i for i, m in enumerate(mons)}
    rows = _span_rows(gens, mons, index, trunc)
    return len(mons) - _exact.rank(rows, len(mons))


def stable_local_dim(gens, start=3, limit=40):
    """Local dimension at the origin: iterate the truncation until two
    consecutive values agree."""
    prev = local_quotient_dim(gens, start)
    for t in range(start + 1, limit):
        cur = local_quotient_dim(gens, t)
        if cur == prev:
            return cur
        prev = cur
    raise AssertionError("oracle did not stabilize below the limit")


def power_quotient_dim(gens, k, trunc):
    """dim K[x]/(I + m^k) for the local model: add all degree-k monomials
    to the generators before the span computation."""
    vars = gens[0].vars
    n = len(vars)
    extra = [Polynomial.monomial(vars, m) for m in _monomials_of_degree(n, k)]
    return local_quotient_dim(list(gens) + extra, trunc)


def graded_component_dims(gens, trunc):
    """Dimensions of m^i/m^(i+1) for the local quotient at the origin,
    computed purely from truncated spans: dim S/m^i is the i-th partial."""
    total = stable_local_dim(gens, start=3, limit=trunc)
    dims = []
    prev = 0
    k = 1
    while prev < total:
        cur = power_quotient_dim(gens, k, trunc)
        dims.append(cur - prev)
        prev = cur
        k += 1
        if k > trunc:
            raise AssertionError("graded oracle ran past the truncation")
    return dims


def min_power_inside(gens, trunc):
    """Least r with m^r inside the ideal, via span membership of every
    degree-r monomial (valid when the quotient is local at the origin)."""
    n = len(gens[0].vars)
    mons = monomials_below(n, trunc)
    index = {m: i for i, m in enumerate(mons)}
    rows = _span_rows(gens, mons, index, trunc)
    base = _exact.rank(rows, len(mons))
    for r in range(1, trunc - 1):
        ok = True
        for beta in _monomials_of_degree(n, r):
            row = [Fraction(0)] * len(mons)
            row[index[beta]] = Fraction(1)
            if _exact.rank(rows + [row], len(mons)) != base:
                ok = False
                break
        if ok:
            return r
    raise AssertionError("oracle found no power inside the ideal")
