import pytest

from artinlab.artin import from_groebner
from artinlab.groebner import Ideal, buchberger
from artinlab.poly import MonomialOrder, VarSet, parse


def make_ideal(names, *texts):
    vs = VarSet(names)
    return Ideal(vs, [parse(t, vs) for t in texts])


def make_gb(ideal, kind="degrevlex", priority=None):
    return buchberger(
        ideal, MonomialOrder.for_varset(ideal.vars, kind, priority)
    )


def make_algebra(names, *texts, kind="degrevlex", priority=None):
    return from_groebner(make_gb(make_ideal(names, *texts), kind, priority))


# local algebras used by the corpus-wide bound and solvability sweeps;
# every entry is local at the origin with dim >= 2
CORPUS = [
    ("two_var_cube", ["x", "y"], ["x^2", "y^3", "x*y^2"], "degrevlex", None),
    (
        "three_var_quartic",
        ["x", "y", "z"],
        ["x^3", "x^2*y", "x^2*z", "y^4", "z^4"],
        "degrevlex",
        None,
    ),
    (
        "unipotent_showcase",
        ["x", "y"],
        ["y^5", "(x+y)^6", "x^5-x^3*y^3", "x^4*y"],
        "deglex",
        ["y", "x"],
    ),
    ("squares_n3", ["x1", "x2", "x3"], ["x1^2", "x2^2", "x3^2"], "degrevlex", None),
    ("dual_numbers", ["x"], ["x^2"], "degrevlex", None),
    ("mixed_socle", ["x", "y"], ["x^2", "x*y", "y^3"], "degrevlex", None),
    (
        "tensor_flat_l2",
        ["x1", "x2", "x3"],
        ["x1^2", "x1*x2", "x2^2", "x3^2"],
        "degrevlex",
        None,
    ),
    (
        "tensor_flat_l3",
        ["x1", "x2", "x3"],
        ["x1^3", "x1^2*x2", "x1*x2^2", "x2^3", "x3^3"],
        "degrevlex",
        None,
    ),
    ("cusp_moduli", ["x", "y"], ["x^2", "y^2", "x*y"], "degrevlex", None),
    ("curly", ["x", "y"], ["x^3-y^2", "x^4", "y^3"], "degrevlex", None),
]


@pytest.fixture(scope="session")
def corpus_algebras():
    return [
        (name, make_algebra(names, *gens, kind=kind, priority=prio))
        for name, names, gens, kind, prio in CORPUS
    ]


@pytest.fixture(scope="session")
def corpus_derivations(corpus_algebras):
    from artinlab.liealg import compute_derivations

    return [(name, a, compute_derivations(a)) for name, a in corpus_algebras]
