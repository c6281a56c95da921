import random

import pytest

from artinlab.artin import associated_graded, from_groebner, minimal_generator_count
from artinlab.criteria import (
    INCONCLUSIVE,
    SOLVABLE,
    OrderTooSmallError,
    complete_intersection_check,
    component_criteria,
    evaluate_ideal,
    global_schulze,
    ideal_order,
    narrow_test,
    schulze_test,
)
from artinlab.errors import IncompletePointsError

from .conftest import make_algebra, make_gb, make_ideal


def test_ideal_order_examples():
    assert ideal_order(make_ideal(["x", "y"], "x^2", "y^3", "x*y^2")) == 2
    assert (
        ideal_order(make_ideal(["x", "y", "z"], "x^3", "x^2*y", "x^2*z", "y^4", "z^4"))
        == 3
    )
    assert (
        ideal_order(
            make_ideal(["x", "y"], "y^5", "(x+y)^6", "x^5-x^3*y^3", "x^4*y")
        )
        == 5
    )


def test_ideal_order_rejects_constants():
    with pytest.raises(ValueError):
        ideal_order(make_ideal(["x"], "x^2-1"))


def test_schulze_square_pair():
    r = schulze_test(make_ideal(["x", "y"], "x^2", "y^2"))
    assert r.verdict == SOLVABLE and (r.n, r.l, r.min_gens) == (2, 2, 2)


def test_schulze_three_squares():
    r = schulze_test(make_ideal(["x1", "x2", "x3"], "x1^2", "x2^2", "x3^2"))
    assert r.verdict == SOLVABLE and r.min_gens == 3


def test_schulze_extremal_case():
    r = schulze_test(make_ideal(["x", "y"], "x^2", "y^3", "x*y^2"))
    assert r.verdict == INCONCLUSIVE and r.extremal


def test_schulze_rejects_order_one():
    with pytest.raises(OrderTooSmallError):
        schulze_test(make_ideal(["x", "y"], "x", "y^2"))


def graded(names, *gens):
    return associated_graded(make_algebra(names, *gens))


def test_narrow_two_var_example_numbers():
    g = graded(["x", "y"], "x^2", "y^3", "x*y^2")
    by_degree = {p.degree: p for p in g.presentation}
    assert by_degree[2].kernel.dim == 1 and by_degree[2].m_times_kernel.dim == 0
    assert by_degree[3].kernel.dim == 4 and by_degree[3].m_times_kernel.dim == 2
    assert narrow_test(g)


def test_narrow_fails_for_three_squares():
    g = graded(["x1", "x2", "x3"], "x1^2", "x2^2", "x3^2")
    by_degree = {p.degree: p for p in g.presentation}
    assert by_degree[2].fresh_relations == 3
    assert not narrow_test(g)


def test_narrow_square_pair():
    g = graded(["x", "y"], "x^2", "y^2")
    by_degree = {p.degree: p for p in g.presentation}
    assert by_degree[2].fresh_relations == 2
    assert narrow_test(g)


def test_global_schulze_two_points():
    r = global_schulze(make_ideal(["x", "y"], "x^2*(x-1)", "y^2"))
    assert r.verdict == SOLVABLE
    assert len(r.component_verdicts) == 2
    assert all(v == SOLVABLE for _, v in r.component_verdicts)


def test_global_schulze_cubic():
    r = global_schulze(make_ideal(["x"], "x^2-x^3"))
    assert r.verdict == SOLVABLE


def test_global_schulze_local_matches_local_test():
    i = make_ideal(["x", "y"], "x^2", "y^2")
    g = global_schulze(i)
    s = schulze_test(i)
    assert g.verdict == s.verdict == SOLVABLE


def test_global_schulze_incomplete_points():
    with pytest.raises(IncompletePointsError):
        global_schulze(make_ideal(["x"], "x^2-2"))


def test_complete_intersection_examples():
    assert complete_intersection_check(make_ideal(["x", "y"], "x^2*(x-1)", "y^2"))
    assert not complete_intersection_check(
        make_ideal(["x", "y"], "x^2", "y^3", "x*y^2")
    )
    assert not complete_intersection_check(make_ideal(["x", "y"], "x^2", "x*y"))


def test_component_criteria_eliminates_linear_part():
    i = make_ideal(["x", "y"], "x^2*(x-1)", "y^2")
    comp = component_criteria(i, (1, 0))
    assert comp.dim == 2
    assert comp.n_effective == 1 and comp.l == 2 and comp.min_gens == 1
    assert comp.schulze == SOLVABLE


def test_evaluate_local_report():
    rep = evaluate_ideal(make_ideal(["x", "y"], "x^2", "y^3", "x*y^2"))
    assert rep.local
    assert rep.l == 2 and rep.min_gens == 3
    assert rep.schulze == INCONCLUSIVE and rep.extremal
    assert rep.narrow_gr and rep.narrow_verdict == SOLVABLE
    assert rep.verdict == SOLVABLE


def test_extremality_trichotomy():
    rng = random.Random(7)
    seen = set()
    for _ in range(40):
        n = rng.choice([1, 2])
        names = ["x", "y"][:n]
        gens = []
        for v in names:
            gens.append(f"{v}^{rng.randint(2, 3)}")
        for _ in range(rng.randint(0, 2)):
            a, b = rng.randint(0, 2), rng.randint(0, 2)
            if a + b >= 2 and n == 2:
                gens.append(f"x^{a}*y^{b}" if a and b else (f"x^{a}" if a else f"y^{b}"))
        try:
            r = schulze_test(make_ideal(names, *gens))
        except OrderTooSmallError:
            continue
        edge = r.n + r.l - 1
        cases = [r.min_gens < edge, r.min_gens == edge, r.min_gens > edge]
        assert sum(cases) == 1
        assert r.extremal == cases[1]
        assert (r.verdict == SOLVABLE) == cases[0]
        seen.add(tuple(cases).index(True))
    assert {0, 1} <= seen  # both solvable and extremal cases exercised
