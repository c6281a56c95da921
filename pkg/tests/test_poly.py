import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from artinlab.errors import AmbientMismatchError, ParseError
from artinlab.poly import (
    MonomialOrder,
    Polynomial,
    VarSet,
    parse,
    weighted_degree,
)

XY = VarSet(["x", "y"])


def P(text, vs=XY):
    return parse(text, vs)


def test_parse_difference():
    p = P("x^2 - x^3")
    assert p.coefficient((2, 0)) == 1
    assert p.coefficient((3, 0)) == -1
    assert len(p.terms) == 2


def test_parse_binomial_power():
    p = P("(x+y)^6")
    assert len(p.terms) == 7
    for i in range(7):
        assert p.coefficient((6 - i, i)) == math.comb(6, i)


def test_parse_rational_coefficient():
    p = P("3/4*x^2*y^4")
    assert p.terms == {(2, 4): Fraction(3, 4)}


def test_parse_error_position():
    with pytest.raises(ParseError):
        P("x^2 ++ y")
    with pytest.raises(ParseError):
        P("x + (y")


def test_parse_unknown_variable():
    with pytest.raises(ParseError):
        P("x + z")


def test_no_implicit_multiplication():
    with pytest.raises(ParseError):
        P("2 x")


def test_product_difference_of_squares():
    assert P("x+y") * P("x-y") == P("x^2-y^2")


def test_multiplication_by_zero():
    assert (P("x^3+y") * Polynomial.zero(XY)).is_zero()


def test_square_expansion():
    assert P("x+y") ** 2 == P("x^2+2*x*y+y^2")


def test_partial_derivatives():
    assert P("x^3+y^5").partial_derivative("x") == P("3*x^2")
    assert P("7").partial_derivative("x").is_zero()
    assert P("x^3*y^3").partial_derivative("y") == P("3*x^3*y^2")


def test_order_of():
    assert P("x^2-x^3").order_of() == 2
    assert Polynomial.zero(XY).order_of() == math.inf
    assert P("y^5+x^6").order_of() == 5


def test_substitute_shift():
    assert P("x^2").substitute({"x": P("x+y")}) == P("x^2+2*x*y+y^2")


def test_substitute_identity():
    p = P("x^3-2*x*y+1/3")
    assert p.substitute({"x": P("x")}) == p


def test_substitute_rank_one_split():
    p = P("x^2+2*x*y+y^2+y^3")
    assert p.substitute({"x": P("x-y")}) == P("x^2+y^3")


def test_truncate():
    assert P("x+x^3").truncate(2) == P("x")
    p = P("x^4+y^2")
    assert p.truncate(10) == p
    assert P("(1+x)^3").truncate(1) == P("1+3*x")


def test_weighted_degree():
    assert weighted_degree((3, 0), (5, 3)) == 15
    assert weighted_degree((0, 0), (5, 3)) == 0
    assert weighted_degree((1, 3), (1, 1)) == 4
    with pytest.raises(AmbientMismatchError):
        weighted_degree((1, 2), (1,))


def test_varset_mismatch():
    other = VarSet(["x"])
    with pytest.raises(AmbientMismatchError):
        P("x") + parse("x", other)


def test_monomial_orders_disagree_where_expected():
    vs = VarSet(["x", "y", "z"])
    lex = MonomialOrder.for_varset(vs, "lex")
    deglex = MonomialOrder.for_varset(vs, "deglex")
    degrevlex = MonomialOrder.for_varset(vs, "degrevlex")
    # x > y^5 in lex but not in the degree-compatible orders
    assert lex.greater((1, 0, 0), (0, 5, 0))
    assert not deglex.greater((1, 0, 0), (0, 5, 0))
    # xz vs y^2: deglex prefers xz, degrevlex prefers y^2
    assert deglex.greater((1, 0, 1), (0, 2, 0))
    assert degrevlex.greater((0, 2, 0), (1, 0, 1))


def test_priority_permutation():
    o = MonomialOrder.for_varset(XY, "deglex", ["y", "x"])
    assert o.greater((0, 1), (1, 0))


small_polys = st.lists(
    st.tuples(
        st.tuples(st.integers(0, 3), st.integers(0, 3)),
        st.fractions(min_value=-5, max_value=5, max_denominator=4),
    ),
    max_size=5,
).map(lambda terms: Polynomial(XY, dict(terms)))


@given(small_polys, small_polys, small_polys)
@settings(max_examples=60, deadline=None)
def test_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a + b == b + a
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c


@given(small_polys, small_polys)
@settings(max_examples=60, deadline=None)
def test_order_multiplicative(a, b):
    if a.is_zero() or b.is_zero():
        assert (a * b).is_zero()
    else:
        assert (a * b).order_of() == a.order_of() + b.order_of()


@given(small_polys)
@settings(max_examples=80, deadline=None)
def test_parse_print_round_trip(p):
    assert parse(str(p), XY) == p


@given(small_polys, small_polys, small_polys)
@settings(max_examples=40, deadline=None)
def test_substitution_composes(p, f, g):
    one_step = p.substitute({"x": f}).substitute({"y": g})
    composed = p.substitute(
        {"x": f.substitute({"y": g}), "y": g}
    )
    assert one_step == composed
