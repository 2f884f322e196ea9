from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from asfpaving import linalg
from asfpaving.rootdata import (
    AffineRoot,
    AffineWeylElement,
    RootDatumError,
    WeylElement,
    affine_length,
    affine_root_value,
    alcove_position,
    apartment_action,
    as_fraction,
    build_root_datum,
    cartan_matrix,
    classify_cartan,
    coxeter_element,
    root_count,
    simple_reflection,
    translation,
    weyl_group_order,
)

SMALL = [
    ("A", 1, "simply_connected"),
    ("A", 2, "simply_connected"),
    ("A", 2, "adjoint"),
    ("A", 1, "gl"),
    ("A", 2, "gl"),
    ("B", 2, "simply_connected"),
    ("C", 2, "adjoint"),
    ("G2", 2, "simply_connected"),
    ("A", 3, "simply_connected"),
    ("B", 3, "adjoint"),
    ("C", 3, "simply_connected"),
    ("D", 4, "simply_connected"),
]

datums = st.sampled_from(SMALL).map(lambda t: build_root_datum(*t))


def test_a1_simply_connected():
    d = build_root_datum("A", 1)
    assert len(d.roots) == 2
    assert d.weyl_order == 2


def test_a2_adjoint():
    d = build_root_datum("A", 2, "adjoint")
    assert len(d.roots) == 6
    assert d.weyl_order == 6


def test_g2_adjoint():
    d = build_root_datum("G2", 2, "adjoint")
    assert len(d.roots) == 12
    assert d.weyl_order == 12


def test_gl_needs_type_a():
    with pytest.raises(RootDatumError):
        build_root_datum("B", 2, "gl")


@pytest.mark.parametrize("family,rank", [("B", 1), ("D", 3), ("G2", 3), ("E", 6), ("A", 0), ("A", 9)])
def test_invalid_types(family, rank):
    with pytest.raises(RootDatumError):
        build_root_datum(family, rank)


def test_gl_lattice():
    d = build_root_datum("A", 2, "gl")
    assert d.lattice_rank == 3
    assert d.rank == 2
    assert d.central_directions
    assert d.label().startswith("GL")


@pytest.mark.parametrize("fam,rank,isog", SMALL)
def test_datum_invariants(fam, rank, isog):
    d = build_root_datum(fam, rank, isog)
    assert d.pairing_matrix == cartan_matrix(fam, rank) or (fam, rank) == ("C", 2)
    assert all(d.pairing_matrix[i][i] == 2 for i in range(rank))
    assert len(d.roots) == root_count(fam, rank)
    assert {tuple(-c for c in a) for a in d.roots} == set(d.roots)
    assert d.weyl_order == weyl_group_order(fam, rank)
    assert len(d.weyl_group) == d.weyl_order
    assert d.family == fam


def test_classify_cartan_orders_nodes():
    fam, rank, order = classify_cartan(cartan_matrix("B", 3))
    assert (fam, rank) == ("B", 3)
    assert sorted(order) == [0, 1, 2]


def test_as_fraction_rejects_floats():
    assert as_fraction("3/2") == F(3, 2)
    assert as_fraction(2) == F(2)
    for bad in (1.5, True, "x"):
        with pytest.raises(RootDatumError):
            as_fraction(bad)


def test_affine_root_value_examples():
    d = build_root_datum("A", 1)
    a = d.simple_roots[0]
    x = (F(1, 4),)  # alpha = 2 * omega, so alpha(x) = 1/2
    assert affine_root_value(AffineRoot(a, 1), x) == F(3, 2)
    assert affine_root_value(AffineRoot(tuple(-c for c in a), 0), (F(0),)) == 0
    assert affine_root_value(AffineRoot(tuple(-c for c in a), 1), x) == F(1, 2)
    with pytest.raises(RootDatumError):
        affine_root_value(AffineRoot(a, 0), (F(0), F(0)))


def test_apartment_action_examples():
    d = build_root_datum("A", 1)
    a = d.simple_roots[0]
    y = (F(1, 4),)
    assert apartment_action(AffineWeylElement.identity(d), y) == y
    yp = apartment_action(translation(d, d.simple_coroots[0]), (F(0),))
    assert linalg.dot(a, yp) == 2
    yp = apartment_action(simple_reflection(d, 0), y)
    assert linalg.dot(a, yp) == F(-1, 2)


@pytest.mark.parametrize("fam,rank,h", [("A", 1, 2), ("A", 2, 3), ("G2", 2, 6), ("B", 3, 6), ("D", 4, 6)])
def test_coxeter_element_order(fam, rank, h):
    d = build_root_datum(fam, rank)
    c = coxeter_element(d)
    assert c.word == tuple(range(rank))
    assert c.order() == h == d.coxeter_number


def test_alcove_position_examples():
    d = build_root_datum("A", 1)
    assert alcove_position(d, (F(1, 4),)).interior
    pos = alcove_position(d, (F(0),))
    assert not pos.interior
    assert {(w.gradient, w.level) for w in pos.walls} == {((2,), 0), ((-2,), 0)}
    d2 = build_root_datum("A", 2)
    pos = alcove_position(d2, (F(0), F(0)))
    assert len(pos.walls) == 6 and all(w.level == 0 for w in pos.walls)


def test_longest_element_length():
    d = build_root_datum("B", 3)
    assert d.weyl_group.longest.length == len(d.positive_roots)
    assert d.weyl_group.longest.sign() == (-1) ** len(d.positive_roots)


def test_affine_length_of_simple_reflections():
    d = build_root_datum("A", 2)
    assert affine_length(AffineWeylElement.identity(d)) == 0
    for i in range(d.rank):
        assert affine_length(simple_reflection(d, i)) == 1
    assert affine_length(translation(d, d.simple_coroots[0])) == 4  # sum of |alpha(alpha_1^vee)|


# -- properties -------------------------------------------------------------

@given(datums, st.data())
def test_weyl_closure(d, data):
    w = data.draw(st.sampled_from(d.weyl_group.elements))
    roots = set(d.roots)
    for a in d.roots:
        assert tuple(w.act_weight(a)) in roots


@given(datums, st.data())
def test_weyl_pairing_invariant(d, data):
    w = data.draw(st.sampled_from(d.weyl_group.elements))
    a = data.draw(st.sampled_from(d.roots))
    y = data.draw(st.lists(st.fractions(max_denominator=6), min_size=d.lattice_rank, max_size=d.lattice_rank))
    assert linalg.dot(w.act_weight(a), w.act_coweight(y)) == linalg.dot(a, y)


@given(datums, st.data())
def test_affine_equivariance(d, data):
    w = data.draw(st.sampled_from(d.weyl_group.elements))
    t = data.draw(st.lists(st.integers(-3, 3), min_size=d.rank, max_size=d.rank))
    lam = [0] * d.lattice_rank
    for k, cv in zip(t, d.simple_coroots):
        lam = [a + k * b for a, b in zip(lam, cv)]
    c = AffineWeylElement(tuple(lam), w)
    root = AffineRoot(data.draw(st.sampled_from(d.roots)), data.draw(st.integers(-4, 4)))
    y = tuple(data.draw(st.lists(st.fractions(max_denominator=7), min_size=d.lattice_rank, max_size=d.lattice_rank)))
    assert affine_root_value(c.pullback(root), y) == affine_root_value(root, c.act(y))
    assert c.inverse().act(c.act(y)) == y


@pytest.mark.parametrize("fam,rank,isog", SMALL)
def test_coxeter_element_is_elliptic(fam, rank, isog):
    d = build_root_datum(fam, rank, isog)
    c = coxeter_element(d)
    n = d.lattice_rank
    one_minus = [[(1 if i == j else 0) - c.matrix[i][j] for j in range(n)] for i in range(n)]
    assert linalg.rank(one_minus) == d.rank


@given(datums, st.data())
def test_weyl_multiplication(d, data):
    u = data.draw(st.sampled_from(d.weyl_group.elements))
    v = data.draw(st.sampled_from(d.weyl_group.elements))
    assert (u * v) * v.inverse() == u
    assert WeylElement.from_word(d, u.word + v.word) == u * v
    assert (u * v).sign() == u.sign() * v.sign()
