from fractions import Fraction as F

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from asfpaving import linalg
from asfpaving.paving import (
    Enumeration,
    PavingError,
    PavingProblem,
    affine_root_count,
    assemble,
    cell_data,
    enumerate_orbits,
    jump_set,
    polytope_bounds,
    run_paving,
)
from asfpaving.repweights import adjoint_rep, lattice_quotient_dim
from asfpaving.rootdata import AffineWeylElement, WeylElement, build_root_datum
from asfpaving.torus import coxeter_point, equivalued_admissible

A1 = build_root_datum("A", 1)


def sl2_problem(radius=3, auto=True, y=(F(0),)):
    return PavingProblem(A1, adjoint_rep(A1), coxeter_point(A1), F(3, 2), y, F(0),
                         v_support=[(2,), (-2,)], enumeration=Enumeration(radius, auto))


def key(rec):
    return (rec.orbit.translation, rec.orbit.finite.word, rec.y_prime, rec.empty,
            rec.base_dim, rec.layer_ranks, rec.dim_total, rec.dim_rootcount)


def translation_cell(problem, k):
    c = AffineWeylElement((k,), WeylElement.identity(A1))
    return cell_data(problem, c)


def gl_problem(n, m, iwahori=False, radius=0):
    d = build_root_datum("A", n - 1, "gl")
    x = coxeter_point(d)
    y = x if iwahori else tuple([F(0)] * n)
    return PavingProblem(d, adjoint_rep(d), x, F(m, n), y, F(0),
                         enumeration=Enumeration(radius, True, quotient_by_central=True))


def test_problem_validation():
    with pytest.raises(PavingError, match="hypothesis s ≥ t violated"):
        PavingProblem(A1, adjoint_rep(A1), coxeter_point(A1), F(1, 2), (F(0),), F(1))
    with pytest.raises(PavingError):
        PavingProblem(A1, adjoint_rep(A1), coxeter_point(A1), F(3, 2), (F(0), F(0)), F(0))
    with pytest.raises(PavingError):
        PavingProblem(A1, adjoint_rep(A1), coxeter_point(A1), F(3, 2), (F(0),), F(0),
                      enumeration=Enumeration(1, True, quotient_by_central=True))
    with pytest.raises(PavingError):
        PavingProblem(A1, adjoint_rep(A1), coxeter_point(A1), F(3, 2), (F(0),), F(0), v_support=[(0,)])


def test_enumerate_orbits_examples():
    p = sl2_problem()
    assert len(enumerate_orbits(p, radius=2)) == 5
    reps = enumerate_orbits(p, radius=0)
    assert len(reps) == 1 and reps[0].act(p.y) == p.y
    both = PavingProblem(A1, adjoint_rep(A1), coxeter_point(A1), F(3, 2), coxeter_point(A1), F(0))
    reps = enumerate_orbits(both, radius=1)
    assert len(reps) == 6  # three translations times |W|


def test_sl2_cells():
    p = sl2_problem()
    c0 = translation_cell(p, 0)
    assert not c0.empty and c0.base_dim == 0 and c0.layer_ranks == () and c0.dim_total == 0
    c1 = cell_data(p, AffineWeylElement((1,), WeylElement.from_word(A1, (0,))))
    assert c1.y_prime == (F(1),)
    assert not c1.empty and c1.dim_total == 1 and c1.dim_rootcount == 1
    assert c1.layer_ranks == ((F(1, 2), 1),)
    for k in (-1, 2, 3):
        assert translation_cell(p, k).empty


def test_jump_set_examples():
    p = sl2_problem()
    c1 = AffineWeylElement((1,), WeylElement.from_word(A1, (0,)))
    assert jump_set(p, c1) == [F(1, 2)]
    assert jump_set(p, AffineWeylElement.identity(A1)) == []
    # y' = x: no affine root and no weight can separate x from itself
    at_x = sl2_problem(y=coxeter_point(A1))
    assert jump_set(at_x, AffineWeylElement.identity(A1)) == []


def test_sl2_report():
    report = run_paving(sl2_problem())
    nonempty = report.nonempty()
    assert [c.y_prime for c in nonempty] == [(F(0),), (F(1),)]
    assert report.point_count_poly == (1, 1)
    assert report.max_dim == 1 and report.affine_paving
    assert report.evaluate(2) == 3
    assert report.truncation_note["complete"]
    assert report.truncation_note["polytope_box"] == [(-2, 2)]


def test_empty_window_report():
    report = run_paving(sl2_problem(radius=0, auto=False, y=(F(3),)))
    assert len(report.cells) <= A1.weyl_order and not report.nonempty()
    assert report.point_count_poly == (0,)
    assert report.max_dim is None


def test_assemble_sorts_cells():
    p = sl2_problem()
    recs = [translation_cell(p, k) for k in (2, 0, -1)]
    report = assemble(p, recs)
    assert [c.y_prime for c in report.cells] == [(F(-1),), (F(0),), (F(2),)]


@pytest.mark.parametrize("n,m,poly", [
    (2, 3, (1, 1)),
    (2, 5, (1, 1, 1)),
    (2, 7, (1, 1, 1, 1)),
    (3, 2, (1, 1)),
    (3, 4, (1, 1, 2, 1)),
    (3, 5, (1, 1, 2, 2, 1)),
    (4, 3, (1, 1, 2, 1)),
])
def test_gl_affine_grassmannian_polys(n, m, poly):
    report = run_paving(gl_problem(n, m))
    assert report.point_count_poly == poly
    assert report.max_dim == (m - 1) * (n - 1) // 2
    for c in report.nonempty():
        assert c.base_dim + c.layer_sum == c.dim_total == c.dim_rootcount


@pytest.mark.parametrize("n,m,poly", [
    (2, 3, (1, 2)),
    (3, 4, (1, 3, 6, 6)),
    (3, 5, (1, 3, 6, 9, 6)),
])
def test_gl_iwahori_polys(n, m, poly):
    report = run_paving(gl_problem(n, m, iwahori=True))
    assert report.point_count_poly == poly
    assert sum(poly) == m ** (n - 1)


def test_gl_cells_by_position():
    report = run_paving(gl_problem(2, 5))
    dims = {c.y_prime: c.dim_total for c in report.nonempty()}
    assert dims == {(F(-1), F(1)): 2, (F(0), F(0)): 0, (F(1), F(-1)): 1}
    report = run_paving(gl_problem(3, 2))
    dims = {c.y_prime: c.dim_total for c in report.nonempty()}
    assert dims == {(F(0), F(0), F(0)): 0, (F(1), F(0), F(-1)): 1}


def test_polytope_bounds_fix_central_coordinate():
    bounds, unbounded = polytope_bounds(gl_problem(2, 3))
    assert bounds[-1] == (0, 0) and not unbounded


def test_split_case_hits_extension_cap():
    # x = 0: H = SL(2), the fiber is infinite and the safety net must stop
    p = PavingProblem(A1, adjoint_rep(A1), (F(0),), F(1), (F(0),), F(0), enumeration=Enumeration(1, True))
    report = run_paving(p)
    note = report.truncation_note
    assert note["heuristic"] and note.get("extension_cap_reached") and not note["complete"]
    assert not report.affine_paving and report.point_count_poly is None
    for c in report.nonempty():
        assert c.base_dim + c.layer_sum == c.dim_total == c.dim_rootcount


# -- properties -------------------------------------------------------------

def test_central_periodicity():
    d = build_root_datum("A", 1, "gl")
    p = PavingProblem(d, adjoint_rep(d), coxeter_point(d), F(3, 2), (F(0), F(0)), F(0),
                      enumeration=Enumeration(2, False))
    report = run_paving(p)
    by_point = {c.y_prime: c for c in report.cells}
    pairs = 0
    for yp, c in by_point.items():
        shifted = (yp[0] + 1, yp[1] + 1)
        if shifted in by_point:
            pairs += 1
            other = by_point[shifted]
            assert (c.empty, c.dim_total) == (other.empty, other.dim_total)
    assert pairs > 0


@given(st.integers(0, 2))
def test_enumeration_stable_under_radius(r):
    small = {(c.orbit.translation, c.orbit.finite.word): c for c in run_paving(sl2_problem(r, False)).cells}
    large = {(c.orbit.translation, c.orbit.finite.word): c for c in run_paving(sl2_problem(r + 1, False)).cells}
    assert set(small) <= set(large)
    for k, rec in small.items():
        assert key(rec) == key(large[k])


def test_determinism():
    a = run_paving(gl_problem(3, 4))
    b = run_paving(gl_problem(3, 4))
    assert [key(c) for c in a.cells] == [key(c) for c in b.cells]
    assert a.point_count_poly == b.point_count_poly
    assert a.truncation_note == b.truncation_note


TYPES = [("A", 1, "simply_connected"), ("A", 2, "simply_connected"), ("A", 2, "adjoint"),
         ("B", 2, "simply_connected"), ("G2", 2, "simply_connected")]


@given(st.sampled_from(TYPES), st.sampled_from([1, 3, 5]), st.booleans(), st.data())
def test_three_way_dimension_agreement(t, k, iwahori, data):
    d = build_root_datum(*t)
    h = d.coxeter_number
    x = coxeter_point(d)
    assume(equivalued_admissible(d, x, F(k, h), adjoint_rep(d)).regular)
    y = x if iwahori else tuple([F(0)] * d.lattice_rank)
    p = PavingProblem(d, adjoint_rep(d), x, F(k, h), y, F(0), enumeration=Enumeration(1, False))
    reps = enumerate_orbits(p)
    c = data.draw(st.sampled_from(reps))
    rec = cell_data(p, c)
    if not rec.empty:
        assert rec.base_dim + rec.layer_sum == rec.dim_total == rec.dim_rootcount
        total = affine_root_count(d, x, rec.y_prime) - lattice_quotient_dim(x, p.s, rec.y_prime, 0, p.rep)
        assert total == rec.dim_total


def test_non_regular_valuation_raises():
    from asfpaving.hessenberg import NegativeRankError
    d = build_root_datum("G2", 2)
    p = PavingProblem(d, adjoint_rep(d), coxeter_point(d), F(1, 2), (F(0), F(0)), F(0))
    c = AffineWeylElement((0, -1), WeylElement.from_word(d, (0, 1)))
    with pytest.raises(NegativeRankError):
        cell_data(p, c)


def test_elliptic_support_is_finite_and_complete():
    d = build_root_datum("A", 2)
    p = PavingProblem(d, adjoint_rep(d), coxeter_point(d), F(4, 3), (F(0), F(0)), F(0))
    report = run_paving(p)
    assert report.truncation_note["complete"]
    assert report.affine_paving
    values = [linalg.dot(a, c.y_prime) for c in report.nonempty() for a in d.roots]
    assert max(values) < 10
