"""Grading points x, the pseudo-Levi H at x, and equivalued admissibility."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import linalg
from .repweights import GradedPiece, WeightedRep, mod_Z_piece
from .rootdata import (
    ApartmentPoint,
    RootDatum,
    RootDatumError,
    _connected_components,
    alcove_position,
    as_point,
    coxeter_number_of,
)

MODES = ("coxeter", "weakly_coxeter", "kac")


class TorusError(ValueError):
    pass


@dataclass(frozen=True)
class TorusSpec:
    mode: str
    x: ApartmentPoint
    order: int
    h_datum: RootDatum
    levi_selection: tuple[int, ...] = ()


def coxeter_point(datum: RootDatum) -> ApartmentPoint:
    """rho-check divided by the Coxeter number; every simple root takes the value 1/h."""
    h = datum.coxeter_number
    return tuple(c / h for c in datum.rho_check)


def levi_at(datum: RootDatum, x: Sequence[Fraction]) -> RootDatum:
    """Root subsystem of roots taking integer values at x."""
    if len(x) != datum.lattice_rank:
        raise RootDatumError("dimension mismatch")
    roots = [a for a in datum.roots if Fraction(linalg.dot(a, x)).denominator == 1]
    return datum.sub_datum(roots)


def grading_order(datum: RootDatum, x: Sequence[Fraction]) -> int:
    """Smallest l > 0 with l * alpha(x) integral for every root alpha."""
    l = 1
    for a in datum.roots:
        l = math.lcm(l, Fraction(linalg.dot(a, x)).denominator)
    return l


def _levi_coxeter_point(datum: RootDatum, selection: Sequence[int]) -> ApartmentPoint:
    simple = [datum.simple_roots[i] for i in selection]
    levi = RootDatum.from_simple(
        simple, [datum.simple_coroots[i] for i in selection], datum.lattice_rank, datum.isogeny
    )
    # each simple factor contributes its own rho-check / h
    point = [Fraction(0)] * datum.lattice_rank
    for comp in _connected_components(levi.pairing_matrix):
        sub = levi.sub_datum(
            [a for a in levi.roots if _in_span(a, [levi.simple_roots[i] for i in comp])]
        )
        h = coxeter_number_of(*sub.components[0])
        for i, c in enumerate(sub.rho_check):
            point[i] += c / h
    return tuple(point)


def _in_span(root, simple) -> bool:
    return linalg.rank([list(s) for s in simple] + [list(root)]) == len(simple)


def weakly_coxeter_point(datum: RootDatum, levi_selection: Sequence[int]) -> ApartmentPoint:
    """Coxeter point of the Levi M, shifted along the center of M until regular in G."""
    selection = sorted(set(int(i) for i in levi_selection))
    if any(i < 0 or i >= datum.rank for i in selection):
        raise TorusError("levi selection must index simple roots")
    if not selection:
        base = tuple([Fraction(0)] * datum.lattice_rank)
    else:
        base = _levi_coxeter_point(datum, selection)
    center = linalg.nullspace([list(datum.simple_roots[i]) for i in selection], datum.lattice_rank)
    candidates = [tuple([Fraction(0)] * len(center))]
    for denom in (7, 11, 13, 17, 19, 23, 29, 31, 37):
        for k in range(1, denom):
            candidates.append(tuple(Fraction(k * (j + 1), denom * (j + 2)) for j in range(len(center))))
    points = []
    for coeffs in candidates:
        x = list(base)
        for c, v in zip(coeffs, center):
            for i in range(len(x)):
                x[i] += c * v[i]
        points.append(tuple(x))
    # prefer a point of the base alcove, then any regular point
    for x in points:
        if all(0 < linalg.dot(a, x) < 1 for a in datum.positive_roots):
            return x
    for x in points:
        if alcove_position(datum, x).interior:
            return x
    raise TorusError("no regular perturbation found within the search bound")


def build_torus(datum: RootDatum, mode: str, x=None, order: int | None = None,
                levi_selection: Sequence[int] = ()) -> TorusSpec:
    if mode == "coxeter":
        x = coxeter_point(datum)
        order = datum.coxeter_number
    elif mode == "weakly_coxeter":
        x = weakly_coxeter_point(datum, levi_selection)
        order = grading_order(datum, x) if order is None else order
    elif mode == "kac":
        if x is None or order is None:
            raise TorusError("kac mode needs both x and its order l")
        x = as_point(x)
        if len(x) != datum.lattice_rank:
            raise TorusError("dimension mismatch")
        if not isinstance(order, int) or order < 1:
            raise TorusError("order l must be a positive integer")
        if any((order * c).denominator != 1 for c in x):
            raise TorusError("l * x must lie in the coweight lattice")
    else:
        raise TorusError(f"unknown torus mode {mode!r}")
    return TorusSpec(mode, x, order, levi_at(datum, x), tuple(levi_selection))


@dataclass(frozen=True)
class Admissibility:
    ok: bool
    reason: str = ""
    piece: GradedPiece | None = None
    regular: bool = False


def equivalued_admissible(datum: RootDatum, x, s, rep: WeightedRep, order: int | None = None) -> Admissibility:
    """Check that an equivalued element of valuation s can live in V(x, s + Z).

    ``regular`` is set when the denominator of s equals the grading order,
    the situation in which the graded piece carries regular semisimple
    elements whose root values all have valuation exactly s.
    """
    x = as_point(x)
    s = Fraction(s)
    l = grading_order(datum, x) if order is None else order
    if (s * l).denominator != 1:
        return Admissibility(False, f"s*l = {s * l} is not an integer")
    piece = mod_Z_piece(x, s, rep)
    if piece.dim == 0:
        return Admissibility(False, "no equivalued element with this valuation", piece)
    zero = tuple([0] * datum.lattice_rank)
    central = all(w == zero for w, _, _ in piece.entries)
    if central and rep.name == "adjoint" and datum.roots:
        return Admissibility(False, "graded piece is central; no regular element", piece)
    regular = (not central) and s.denominator == l
    return Admissibility(True, "", piece, regular)
