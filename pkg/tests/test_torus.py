from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from asfpaving import linalg
from asfpaving.repweights import WeightedRep, adjoint_rep
from asfpaving.rootdata import _connected_components, alcove_position, build_root_datum
from asfpaving.torus import (
    TorusError,
    build_torus,
    coxeter_point,
    equivalued_admissible,
    grading_order,
    levi_at,
    weakly_coxeter_point,
)

TYPES = [
    ("A", 1, "simply_connected"), ("A", 2, "simply_connected"), ("A", 3, "adjoint"),
    ("A", 1, "gl"), ("A", 3, "gl"), ("B", 2, "simply_connected"), ("C", 3, "simply_connected"),
    ("D", 4, "adjoint"), ("G2", 2, "simply_connected"), ("B", 4, "simply_connected"),
]

A1 = build_root_datum("A", 1)


def values(d, x, roots=None):
    return [F(linalg.dot(a, x)) for a in (roots or d.simple_roots)]


def test_coxeter_point_examples():
    assert values(A1, coxeter_point(A1)) == [F(1, 2)]
    a2 = build_root_datum("A", 2)
    assert values(a2, coxeter_point(a2)) == [F(1, 3), F(1, 3)]
    assert alcove_position(A1, coxeter_point(A1)).interior


@pytest.mark.parametrize("fam,rank,isog", TYPES)
def test_coxeter_point_interior_and_torus(fam, rank, isog):
    d = build_root_datum(fam, rank, isog)
    x = coxeter_point(d)
    assert alcove_position(d, x).interior
    assert levi_at(d, x).is_torus
    assert all(v == F(1, d.coxeter_number) for v in values(d, x))
    assert grading_order(d, x) == d.coxeter_number


def test_weakly_coxeter_full_levi_is_coxeter():
    for t in TYPES[:4]:
        d = build_root_datum(*t)
        assert weakly_coxeter_point(d, range(d.rank)) == coxeter_point(d)
    gl2 = build_root_datum("A", 1, "gl")
    assert values(gl2, weakly_coxeter_point(gl2, [0])) == [F(1, 2)]


def test_weakly_coxeter_a2_with_a1_levi():
    d = build_root_datum("A", 2)
    x = weakly_coxeter_point(d, [0])
    a1, a2 = values(d, x)
    assert a1 == F(1, 2)
    assert 0 < a2 < F(1, 2)
    assert alcove_position(d, x).interior


def test_weakly_coxeter_rejects_bad_selection():
    with pytest.raises(TorusError):
        weakly_coxeter_point(build_root_datum("A", 2), [5])


@pytest.mark.parametrize("fam,rank,isog", TYPES[:9])
def test_weakly_coxeter_restricts_to_levi_coxeter(fam, rank, isog):
    d = build_root_datum(fam, rank, isog)
    for sel in ([0], list(range(d.rank - 1)) or [0], [d.rank - 1]):
        x = weakly_coxeter_point(d, sel)
        assert alcove_position(d, x).interior
        sub = [[d.pairing_matrix[i][j] for j in sel] for i in sel]
        for comp in _connected_components(sub):
            h = build_root_datum("A", 1).coxeter_number if len(comp) == 1 else None
            vals = {F(linalg.dot(d.simple_roots[sel[i]], x)) for i in comp}
            assert len(vals) == 1
            if h is not None:
                assert vals == {F(1, h)}


def test_levi_at_examples():
    d = build_root_datum("A", 2)
    assert levi_at(d, coxeter_point(d)).is_torus
    assert len(levi_at(d, (F(0), F(0))).roots) == 6
    x = linalg.solve([list(a) for a in d.simple_roots], [F(0), F(1, 2)])
    h = levi_at(d, tuple(x))
    assert sorted(h.roots) == sorted([d.simple_roots[0], tuple(-c for c in d.simple_roots[0])])
    assert h.lattice_rank == d.lattice_rank


def test_kac_mode_validation():
    t = build_torus(A1, "kac", x=["1/4"], order=4)
    assert t.x == (F(1, 4),) and t.h_datum.is_torus
    with pytest.raises(TorusError):
        build_torus(A1, "kac", x=["1/4"], order=3)
    with pytest.raises(TorusError):
        build_torus(A1, "kac", x=["1/4"])
    with pytest.raises(TorusError):
        build_torus(A1, "nonsense")


@given(st.integers(1, 12), st.integers(-12, 12))
def test_kac_order_checked(order, mu):
    x = (F(mu, order),)
    t = build_torus(A1, "kac", x=x, order=order)
    assert (order * t.x[0]).denominator == 1
    if F(mu, order).denominator > 1:
        with pytest.raises(TorusError):
            build_torus(A1, "kac", x=x, order=F(mu, order).denominator - 1 or 13)


def test_equivalued_admissible_examples():
    x = coxeter_point(A1)
    adj = adjoint_rep(A1)
    ok = equivalued_admissible(A1, x, F(3, 2), adj)
    assert ok.ok and sorted(ok.piece.weights()) == [(-2,), (2,)] and ok.regular
    bad = equivalued_admissible(A1, x, F(1, 3), adj)
    assert not bad.ok and "not an integer" in bad.reason
    central = equivalued_admissible(A1, x, 1, adj)
    assert not central.ok and central.piece.weights() == [(0,)]
    custom = WeightedRep.from_weights([(2,), (-2,), (0,)], "custom")
    flagged = equivalued_admissible(A1, x, 1, custom)
    assert flagged.ok and not flagged.regular


def test_empty_piece_fails():
    d = build_root_datum("A", 2)
    res = equivalued_admissible(d, coxeter_point(d), F(1, 2), adjoint_rep(d), order=6)
    assert not res.ok and res.reason == "no equivalued element with this valuation"
