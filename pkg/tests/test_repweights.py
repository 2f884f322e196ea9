import math
from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from asfpaving.rootdata import RootDatumError, build_root_datum
from asfpaving.repweights import (
    NEG_INF,
    WeightedRep,
    adjoint_rep,
    filtration_dim,
    grade_by,
    graded_filtration_dim,
    lattice_quotient_dim,
    mod_Z_piece,
    moy_prasad_piece,
    standard_rep,
)

A1 = build_root_datum("A", 1)
ADJ1 = adjoint_rep(A1)
HALF = (F(1, 4),)  # alpha(x) = 1/2
ALPHA, MALPHA, ZERO = (2,), (-2,), (0,)


def test_adjoint_examples():
    assert dict(ADJ1.entries) == {ALPHA: 1, MALPHA: 1, ZERO: 1}
    assert ADJ1.dim == 3
    a2 = adjoint_rep(build_root_datum("A", 2))
    assert a2.dim == 8 and dict(a2.entries)[(0, 0)] == 2
    gl2 = adjoint_rep(build_root_datum("A", 1, "gl"))
    assert gl2.dim == 4 and dict(gl2.entries)[(0, 0)] == 2


def test_standard_reps():
    assert standard_rep(build_root_datum("A", 2)).dim == 3
    assert standard_rep(build_root_datum("A", 2, "gl")).dim == 3
    assert standard_rep(build_root_datum("B", 2)).dim == 5
    assert standard_rep(build_root_datum("C", 3)).dim == 6
    assert standard_rep(build_root_datum("D", 4)).dim == 8
    assert standard_rep(build_root_datum("G2", 2)).dim == 7
    with pytest.raises(RootDatumError):
        standard_rep(build_root_datum("A", 2, "adjoint"))


def test_rep_requires_positive_dim():
    with pytest.raises(ValueError):
        WeightedRep.from_weights([])


def test_grade_by_examples():
    assert grade_by((F(1, 2),), ADJ1) == {F(-1): 1, F(0): 1, F(1): 1}
    assert grade_by((F(0),), ADJ1) == {F(0): 3}
    assert grade_by((F(0), F(0)), adjoint_rep(build_root_datum("A", 2))) == {F(0): 8}


def test_filtration_examples():
    y = (F(1, 2),)  # alpha(y) = 1
    assert filtration_dim(y, 0, ADJ1) == 2
    assert filtration_dim(y, NEG_INF, ADJ1) == 3
    assert filtration_dim(y, F(1, 2), ADJ1) == 1


def test_moy_prasad_examples():
    p = moy_prasad_piece(HALF, F(1, 2), ADJ1)
    assert sorted((w, m) for w, _, m in p.entries) == [(MALPHA, 1), (ALPHA, 0)]
    assert p.dim == 2
    p = moy_prasad_piece(HALF, 0, ADJ1)
    assert [(w, m) for w, _, m in p.entries] == [(ZERO, 0)]
    assert moy_prasad_piece(HALF, F(1, 3), ADJ1).dim == 0


def test_mod_z_examples():
    assert sorted(mod_Z_piece(HALF, F(1, 2), ADJ1).weights()) == [MALPHA, ALPHA]
    assert mod_Z_piece(HALF, 0, ADJ1).weights() == [ZERO]
    assert mod_Z_piece((F(0),), 0, ADJ1).dim == 3


def test_graded_filtration_examples():
    assert graded_filtration_dim(HALF, F(3, 2), (F(0),), 0, ADJ1) == 2
    assert graded_filtration_dim(HALF, F(3, 2), (F(0),), 2, ADJ1) == 1
    assert graded_filtration_dim(HALF, F(3, 2), (F(0),), 3, ADJ1) == 0


def test_lattice_quotient_examples():
    assert lattice_quotient_dim(HALF, F(1, 2), HALF, F(1, 2), ADJ1) == 0
    # brute force over (lambda, m): lambda(x) + m >= 0 and m < 0 has no solution here
    assert lattice_quotient_dim(HALF, 0, (F(0),), 0, ADJ1) == 0
    assert lattice_quotient_dim((F(0),), 0, (F(0),), 1, ADJ1) == 3


# -- properties -------------------------------------------------------------

SMALL = [("A", 1, "simply_connected"), ("A", 2, "simply_connected"), ("A", 2, "gl"),
         ("B", 2, "simply_connected"), ("G2", 2, "simply_connected"), ("C", 3, "adjoint")]


@st.composite
def rep_and_points(draw, npoints=2):
    d = build_root_datum(*draw(st.sampled_from(SMALL)))
    rep = draw(st.sampled_from([adjoint_rep(d), standard_rep(d)] if d.isogeny != "adjoint" else [adjoint_rep(d)]))
    frac = st.fractions(min_value=-3, max_value=3, max_denominator=6)
    pts = [tuple(draw(st.lists(frac, min_size=d.lattice_rank, max_size=d.lattice_rank))) for _ in range(npoints)]
    return d, rep, pts


@given(rep_and_points(1))
def test_grading_sums_to_dim(args):
    _, rep, (y,) = args
    assert sum(grade_by(y, rep).values()) == rep.dim
    assert filtration_dim(y, NEG_INF, rep) == rep.dim


@given(rep_and_points(1))
def test_mod_z_pieces_partition(args):
    _, rep, (x,) = args
    residues = set()
    for w, _ in rep.entries:
        v = F(sum(a * b for a, b in zip(w, x)))
        residues.add(v - math.floor(v))
    assert sum(mod_Z_piece(x, r, rep).dim for r in residues) == rep.dim


@given(rep_and_points(2), st.fractions(min_value=-3, max_value=3, max_denominator=6),
       st.fractions(min_value=-3, max_value=3, max_denominator=6))
def test_translation_identity(args, r, t):
    _, rep, (x, y) = args
    piece = moy_prasad_piece(x, r, rep)
    image = piece.image()
    shifted = 0 if image is None else filtration_dim(tuple(a - b for a, b in zip(y, x)), t - r, image)
    assert graded_filtration_dim(x, r, y, t, rep) == shifted


@given(rep_and_points(2), st.fractions(min_value=-2, max_value=2, max_denominator=6),
       st.fractions(min_value=-2, max_value=2, max_denominator=6))
def test_lattice_quotient_decomposition(args, s, t):
    _, rep, (x, y) = args
    # levels s + r with r >= 0 at which some weight sits
    levels = set()
    for w, _ in rep.entries:
        wx = F(sum(a * b for a, b in zip(w, x)))
        wy = F(sum(a * b for a, b in zip(w, y)))
        for m in range(math.ceil(s - wx), math.ceil(t - wy) + 1):
            levels.add(wx + m)
    total = sum(
        moy_prasad_piece(x, lv, rep).dim - graded_filtration_dim(x, lv, y, t, rep)
        for lv in levels if lv >= s
    )
    assert lattice_quotient_dim(x, s, y, t, rep) == total


@given(rep_and_points(1), st.fractions(max_denominator=5), st.fractions(max_denominator=5))
def test_filtration_monotone(args, t1, t2):
    _, rep, (y,) = args
    lo, hi = min(t1, t2), max(t1, t2)
    assert filtration_dim(y, hi, rep) <= filtration_dim(y, lo, rep)
