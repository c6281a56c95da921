import itertools
from fractions import Fraction

import pytest

from artinlab.artin import (
    annihilator,
    associated_graded,
    decompose_local,
    from_groebner,
    graded_product,
    minimal_generator_count,
    socle_data,
    tensor_product,
)
from artinlab.errors import IncompletePointsError
from artinlab.linalg import Subspace
from artinlab.poly import VarSet, parse

from .conftest import make_algebra, make_gb, make_ideal
from . import oracles


def vec(alg, label):
    return tuple(
        Fraction(int(l == label)) for l in alg.basis_labels
    )


def test_quotient_dimensions_and_products():
    a = make_algebra(["x", "y"], "x^2", "y^3", "x*y^2")
    assert a.dim == 5 and a.local
    xy = a.multiply(vec(a, (1, 0)), vec(a, (0, 1)))
    assert xy == vec(a, (1, 1))


def test_field_quotient():
    a = make_algebra(["x"], "x")
    assert a.dim == 1 and a.local


def test_showcase_filtration():
    a = make_algebra(
        ["x", "y"],
        "y^5",
        "(x+y)^6",
        "x^5-x^3*y^3",
        "x^4*y",
        kind="deglex",
        priority=["y", "x"],
    )
    assert a.dim == 19
    assert a.nilpotency_exponent == 7
    m6 = a.power_of_max_ideal(6)
    assert m6.dim == 1 and m6.contains(vec(a, (5, 0)))
    assert a.power_of_max_ideal(7).dim == 0


def test_annihilator_of_whole_algebra_is_zero():
    a = make_algebra(["x", "y"], "x^2", "y^3", "x*y^2")
    assert annihilator(a, Subspace.full(a.dim)).dim == 0


def test_annihilator_dual_numbers():
    a = make_algebra(["x"], "x^2")
    x = vec(a, (1,))
    ann = annihilator(a, Subspace(a.dim, [x]))
    assert ann.dim == 1 and ann.contains(x)


def test_annihilator_of_maximal_ideal():
    a = make_algebra(["x", "y"], "x^2", "y^3", "x*y^2")
    ann = annihilator(a, a.power_of_max_ideal(1))
    assert ann.dim == 2
    assert ann.contains(vec(a, (1, 1))) and ann.contains(vec(a, (0, 2)))


def test_socle_data_examples():
    a = make_algebra(["x", "y"], "x^2", "y^3", "x*y^2")
    sd = socle_data(a)
    assert (sd.socle.dim, sd.lsoc.dim, sd.usoc.dim) == (2, 2, 0)

    b = make_algebra(["x", "y"], "x^2", "x*y", "y^3")
    sdb = socle_data(b)
    assert (sdb.socle.dim, sdb.lsoc.dim, sdb.usoc.dim) == (2, 1, 1)
    assert sdb.socle.contains(vec(b, (1, 0)))
    assert sdb.lsoc.contains(vec(b, (0, 2)))

    c = make_algebra(["x"], "x^2")
    sdc = socle_data(c)
    assert (sdc.socle.dim, sdc.lsoc.dim, sdc.usoc.dim) == (1, 0, 1)
    assert sdc.socle == c.power_of_max_ideal(1)


def test_socle_is_ideal_killed_by_m(corpus_algebras):
    for name, a in corpus_algebras:
        sd = socle_data(a)
        m1 = a.power_of_max_ideal(1)
        for z in sd.socle.basis:
            for b in range(a.dim):
                prod = a.multiply(z, vec(a, a.basis_labels[b]))
                assert sd.socle.contains(prod), name
            for w in m1.basis:
                assert all(x == 0 for x in a.multiply(z, w)), name


def test_principal_socle_ideals_are_lines(corpus_algebras):
    for name, a in corpus_algebras:
        sd = socle_data(a)
        combos = list(sd.socle.basis)
        if sd.socle.dim >= 2:
            combos.append(
                tuple(
                    x + 2 * y
                    for x, y in zip(sd.socle.basis[0], sd.socle.basis[1])
                )
            )
        for z in combos:
            rows = [a.multiply(z, vec(a, lab)) for lab in a.basis_labels]
            span = Subspace(a.dim, rows)
            assert span.dim == 1, name


def test_minimal_generator_counts():
    assert minimal_generator_count(make_ideal(["x", "y"], "x^2", "y^2")) == 2
    assert (
        minimal_generator_count(make_ideal(["x", "y"], "x^2", "y^3", "x*y^2")) == 3
    )
    assert (
        minimal_generator_count(
            make_ideal(["x", "y", "z"], "x^3", "x^2*y", "x^2*z", "y^4", "z^4")
        )
        == 5
    )


def test_minimal_generator_count_redundant_generator():
    # x^2 + y^2 lies in (x^2, y^2); the count must not see it
    assert (
        minimal_generator_count(make_ideal(["x", "y"], "x^2", "y^2", "x^2+y^2")) == 2
    )


def test_graded_of_homogeneous_is_same_table():
    a = make_algebra(["x", "y"], "x^2", "y^3", "x*y^2")
    g = associated_graded(a)
    assert g.components == (1, 2, 2)
    # match graded basis lifts to the monomial basis and compare products
    pos = {}
    for k, lift in enumerate(g.lifts):
        for i, v in enumerate(lift):
            label = a.basis_labels[[x != 0 for x in v].index(True)]
            assert v == vec(a, label)
            pos[(k, i)] = label
    for (k, i), (l, j) in itertools.product(pos, pos):
        if k + l > g.top_degree:
            continue
        prod = graded_product(g, a, k, i, l, j)
        direct = a.multiply(vec(a, pos[(k, i)]), vec(a, pos[(l, j)]))
        back = [Fraction(0)] * a.dim
        for t, c in enumerate(prod):
            if c:
                back_label = pos[(k + l, t)]
                back[a.basis_labels.index(back_label)] = c
        assert tuple(back) == direct


def test_graded_of_curve_germ():
    i = make_ideal(["x"], "x^2-x^3")
    from artinlab.groebner import local_component

    lc = local_component(i, (0,))
    a = from_groebner(lc.gb)
    g = associated_graded(a)
    assert g.components == (1, 1)


def test_graded_showcase_dims_match_oracle():
    gens = list(
        make_ideal(["x", "y"], "y^5", "(x+y)^6", "x^5-x^3*y^3", "x^4*y").generators
    )
    oracle_dims = oracles.graded_component_dims(gens, 12)
    a = make_algebra(
        ["x", "y"],
        "y^5",
        "(x+y)^6",
        "x^5-x^3*y^3",
        "x^4*y",
        kind="deglex",
        priority=["y", "x"],
    )
    g = associated_graded(a)
    assert list(g.components) == oracle_dims == [1, 2, 3, 4, 5, 3, 1]
    assert sum(g.components) == a.dim == 19


def test_graded_dims_sum_to_dim(corpus_algebras):
    for name, a in corpus_algebras:
        g = associated_graded(a)
        assert sum(g.components) == a.dim, name


def test_filtration_products(corpus_algebras):
    for name, a in corpus_algebras:
        depth = a.nilpotency_exponent
        for i in range(1, depth):
            for j in range(1, depth - i + 1):
                target = a.power_of_max_ideal(i + j)
                for u in a.power_of_max_ideal(i).basis:
                    for v in a.power_of_max_ideal(j).basis:
                        assert target.contains(a.multiply(u, v)), name


def test_tensor_dimensions():
    a = make_algebra(["x", "y"], "x^2", "y^3", "x*y^2")
    b = make_algebra(["t"], "t^2")
    t = tensor_product(a, b)
    assert t.dim == 10 and t.local


def test_tensor_with_field_is_identity_like():
    a = make_algebra(["x", "y"], "x^2", "y^3", "x*y^2")
    k = make_algebra(["t"], "t")
    t = tensor_product(a, k)
    assert t.dim == a.dim
    for i in range(a.dim):
        for j in range(a.dim):
            assert t.structure[i][j] == a.structure[i][j]


def test_tensor_matches_flat_presentation():
    a = make_algebra(["x1", "x2"], "x1^2", "x1*x2", "x2^2")
    b = make_algebra(["x3"], "x3^2")
    t = tensor_product(a, b)
    flat = make_algebra(["x1", "x2", "x3"], "x1^2", "x1*x2", "x2^2", "x3^2")
    assert t.dim == flat.dim == 6
    # identify tensor labels (alpha, beta) with concatenated exponents
    mapping = []
    for la, lb in t.basis_labels:
        mapping.append(flat.basis_labels.index(tuple(la) + tuple(lb)))
    for i in range(6):
        for j in range(6):
            expect = [Fraction(0)] * 6
            for k, c in enumerate(t.structure[i][j]):
                expect[mapping[k]] = c
            assert (
                tuple(expect)
                == flat.structure[mapping[i]][mapping[j]]
            )


def test_decompose_cubic():
    facs = decompose_local(make_ideal(["x"], "x^2-x^3"))
    assert sorted(f.dim for f in facs) == [1, 2]


def test_decompose_two_points():
    facs = decompose_local(make_ideal(["x", "y"], "x^2*(x-1)", "y^2"))
    assert sorted(f.dim for f in facs) == [2, 4]
    assert sum(f.dim for f in facs) == 6


def test_decompose_local_input_single_factor():
    facs = decompose_local(make_ideal(["x", "y"], "x^2", "y^3", "x*y^2"))
    assert len(facs) == 1 and facs[0].dim == 5


def test_decompose_requires_complete_points():
    with pytest.raises(IncompletePointsError):
        decompose_local(make_ideal(["x"], "x^2-2"))


def test_direct_product_idempotents():
    """Rebuild the product of the local factors block-diagonally and check
    the unit decomposes into orthogonal idempotents summing to one."""
    facs = decompose_local(make_ideal(["x", "y"], "x^2*(x-1)", "y^2"))
    total = sum(f.dim for f in facs)
    offsets = []
    off = 0
    for f in facs:
        offsets.append(off)
        off += f.dim

    def embed(f, idx, v):
        out = [Fraction(0)] * total
        for i, x in enumerate(v):
            out[offsets[idx] + i] = x
        return out

    def block_mul(u, w):
        out = [Fraction(0)] * total
        for idx, f in enumerate(facs):
            a = u[offsets[idx] : offsets[idx] + f.dim]
            b = w[offsets[idx] : offsets[idx] + f.dim]
            for i, x in enumerate(f.multiply(a, b)):
                out[offsets[idx] + i] = x
        return out

    idems = [embed(f, i, f.unit) for i, f in enumerate(facs)]
    one = [sum(col) for col in zip(*idems)]
    for i, e in enumerate(idems):
        assert block_mul(e, e) == e
        for j, e2 in enumerate(idems):
            if i != j:
                assert all(x == 0 for x in block_mul(e, e2))
    assert block_mul(one, one) == one
