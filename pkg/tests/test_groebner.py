import itertools
from fractions import Fraction

import pytest

from artinlab.errors import InfiniteDimensionalError
from artinlab.groebner import (
    Ideal,
    buchberger,
    is_finite_dimensional,
    local_component,
    min_power_of_maximal_inside,
    normal_form,
    quotient_dimension,
    rational_points,
    standard_monomials,
)
from artinlab.poly import MonomialOrder, Polynomial, VarSet, mono_div, parse

from .conftest import make_gb, make_ideal
from . import oracles

XY = VarSet(["x", "y"])
SHOWCASE = ["y^5", "(x+y)^6", "x^5-x^3*y^3", "x^4*y"]


def showcase_gb():
    return make_gb(make_ideal(["x", "y"], *SHOWCASE), "deglex", ["y", "x"])


def test_showcase_basis_matches_published_set():
    gb = showcase_gb()
    expected = {
        parse(t, XY)
        for t in ["x^6", "y^5", "x^3*y^3-x^5", "x^2*y^4+4/3*x^5", "x^4*y"]
    }
    assert set(gb.elements) == expected


def test_monomial_ideal_is_its_own_basis():
    gb = make_gb(make_ideal(["x", "y"], "x^2", "y^3", "x*y^2"))
    assert set(gb.elements) == {parse(t, XY) for t in ["x^2", "y^3", "x*y^2"]}


def test_lex_pair_reduces_to_zero():
    gb = make_gb(make_ideal(["x", "y"], "x-y", "y^2"), "lex")
    assert set(gb.elements) == {parse("x-y", XY), parse("y^2", XY)}


def test_reduced_basis_independent_of_generator_order():
    base = set(showcase_gb().elements)
    gens = SHOWCASE
    for perm in itertools.permutations(range(4)):
        gb = make_gb(
            make_ideal(["x", "y"], *[gens[i] for i in perm]), "deglex", ["y", "x"]
        )
        assert set(gb.elements) == base


def test_normal_form_identifications():
    gb = showcase_gb()
    assert normal_form(parse("x^3*y^3", XY), gb) == parse("x^5", XY)
    assert normal_form(parse("x^2*y^4", XY), gb) == parse("-4/3*x^5", XY)
    for g in gb.elements:
        assert normal_form(g, gb).is_zero()


def test_normal_form_linear_and_idempotent():
    gb = showcase_gb()
    p = parse("x^3*y^3 + 2*x^2*y^4 - x + 7", XY)
    q = parse("x^6 + x*y - 5/3", XY)
    np_ = normal_form(p, gb)
    nq = normal_form(q, gb)
    assert normal_form(p + q, gb) == np_ + nq
    assert normal_form(p.scale(Fraction(3, 7)), gb) == np_.scale(Fraction(3, 7))
    assert normal_form(np_, gb) == np_


def test_normal_form_against_division_with_cofactors():
    """Re-run the division tracking explicit cofactors and check the exact
    identity p = sum q_i g_i + r."""
    gb = showcase_gb()
    order = gb.order
    for text in ["x^3*y^3", "(x+y)^7", "x^2*y^4 + x^4*y - 1/2*x^6 + y"]:
        p = parse(text, XY)
        quotients = [Polynomial.zero(XY) for _ in gb.elements]
        rem = Polynomial.zero(XY)
        work = p
        while work.terms:
            lm, lc = work.leading_term(order)
            for i, (g, lt) in enumerate(zip(gb.elements, gb.staircase)):
                if all(a <= b for a, b in zip(lt, lm)):
                    t = Polynomial.monomial(XY, mono_div(lm, lt), lc)
                    quotients[i] = quotients[i] + t
                    work = work - g * t
                    break
            else:
                t = Polynomial.monomial(XY, lm, lc)
                rem = rem + t
                work = work - t
        rebuilt = rem
        for q, g in zip(quotients, gb.elements):
            rebuilt = rebuilt + q * g
        assert rebuilt == p
        assert rem == normal_form(p, gb)


def test_finite_dimensionality():
    assert is_finite_dimensional(make_gb(make_ideal(["x", "y"], "x^2", "y^3", "x*y^2")))
    assert not is_finite_dimensional(make_gb(make_ideal(["x", "y"], "x^2", "x*y")))
    assert is_finite_dimensional(make_gb(make_ideal(["x"], "x")))


def test_standard_monomials_small():
    gb = make_gb(make_ideal(["x", "y"], "x^2", "y^3", "x*y^2"))
    sm = standard_monomials(gb)
    assert set(sm) == {(0, 0), (1, 0), (0, 1), (1, 1), (0, 2)}
    keys = [gb.order.key(m) for m in sm]
    assert keys == sorted(keys)


def test_standard_monomials_showcase_count_and_content():
    sm = standard_monomials(showcase_gb())
    assert len(sm) == 19
    assert (5, 0) in sm
    assert (3, 3) not in sm and (2, 4) not in sm


def test_standard_monomials_univariate():
    assert standard_monomials(make_gb(make_ideal(["x"], "x"))) == [(0,)]


def test_standard_monomial_count_matches_span_oracle():
    for names, gens in [
        (["x", "y"], ["x^2", "y^3", "x*y^2"]),
        (["x", "y"], SHOWCASE),
        (["x", "y", "z"], ["x^3", "x^2*y", "x^2*z", "y^4", "z^4"]),
    ]:
        ideal = make_ideal(names, *gens)
        gb = make_gb(ideal)
        dim = quotient_dimension(gb)
        assert dim == oracles.stable_local_dim(list(ideal.generators))


def test_infinite_dimensional_errors():
    gb = make_gb(make_ideal(["x", "y"], "x^2", "x*y"))
    with pytest.raises(InfiniteDimensionalError):
        standard_monomials(gb)


def test_min_power_showcase():
    assert min_power_of_maximal_inside(showcase_gb()) == 7


def test_min_power_monomial_example_with_oracle():
    ideal = make_ideal(["x", "y"], "x^2", "y^3", "x*y^2")
    got = min_power_of_maximal_inside(make_gb(ideal))
    assert got == oracles.min_power_inside(list(ideal.generators), 9)
    assert got == 3


def test_min_power_maximal_ideal():
    assert min_power_of_maximal_inside(make_gb(make_ideal(["x", "y"], "x", "y"))) == 1


def test_rational_points_cubic():
    pr = rational_points(make_ideal(["x"], "x^2-x^3"))
    assert pr.complete
    assert pr.points == ((Fraction(0),), (Fraction(1),))


def test_rational_points_origin_only():
    pr = rational_points(make_ideal(["x", "y"], "x^2", "y^3", "x*y^2"))
    assert pr.complete and pr.points == ((Fraction(0), Fraction(0)),)


def test_rational_points_irrational():
    pr = rational_points(make_ideal(["x"], "x^2-2"))
    assert pr.points == () and not pr.complete and pr.failed_variable == "x"


def test_local_component_double_root():
    i = make_ideal(["x"], "x^2-x^3")
    lc = local_component(i, (0,))
    assert lc.dim == 2
    assert quotient_dimension(lc.gb) == 2
    lc1 = local_component(i, (1,))
    assert lc1.dim == 1


def test_local_component_already_local():
    i = make_ideal(["x", "y"], "x^2", "y^3", "x*y^2")
    lc = local_component(i, (0, 0))
    assert lc.dim == 5


def test_local_dims_partition_total():
    for names, gens in [
        (["x"], ["x^2-x^3"]),
        (["x", "y"], ["x^2*(x-1)", "y^2"]),
    ]:
        ideal = make_ideal(names, *gens)
        gb = make_gb(ideal)
        pr = rational_points(ideal)
        assert pr.complete
        total = sum(local_component(ideal, p).dim for p in pr.points)
        assert total == quotient_dimension(gb)


def test_local_component_rejects_nonvanishing_point():
    i = make_ideal(["x"], "x^2-x^3")
    with pytest.raises(ValueError):
        local_component(i, (2,))
