"""Hessenberg varieties P_y(t, v) in partial flag varieties of H.

Everything is read off from weights: dimensions from transversality,
emptiness from the top Chern class of V/F^t_y V in the coinvariant algebra
of H, and layer ranks from surjectivity of the defining map.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import linalg
from .coinvariant import build_engine
from .repweights import NEG_INF, GradedPiece, WeightedRep, filtration_dim, mod_Z_piece
from .rootdata import ApartmentPoint, RootDatum, Weight

log = logging.getLogger(__name__)


class HessenbergError(ValueError):
    pass


class NegativeRankError(ArithmeticError):
    """A layer rank came out negative: the inputs violate the hypotheses."""


@dataclass(frozen=True)
class HessenbergSpec:
    h_datum: RootDatum
    parabolic_point: ApartmentPoint
    t: object  # Fraction or NEG_INF
    rep_piece: GradedPiece
    v_support: tuple[Weight, ...]

    def __post_init__(self):
        if self.t is not NEG_INF and Fraction(self.t) > 0:
            raise HessenbergError("Hessenberg parameter t must be <= 0")
        piece_weights = {w for w, _, _ in self.rep_piece.entries}
        for w in self.v_support:
            if tuple(w) not in piece_weights:
                raise HessenbergError(f"support weight {tuple(w)} is not a weight of the graded piece")

    def _value(self, w: Sequence[int]) -> Fraction:
        return Fraction(linalg.dot(w, self.parabolic_point))

    def quotient_weights(self) -> list[Weight]:
        """Weights of V/F^t, listed with multiplicity."""
        if self.t is NEG_INF:
            return []
        t = Fraction(self.t)
        return [w for w, mult, _ in self.rep_piece.entries for _ in range(mult) if self._value(w) < t]


@dataclass(frozen=True)
class EmptinessVerdict:
    empty: bool
    chern_empty: bool
    support_empty: bool | None
    method: str


def ambient_dim(spec: HessenbergSpec) -> int:
    return sum(1 for b in spec.h_datum.roots if spec._value(b) < 0)


def codim_condition(spec: HessenbergSpec) -> int:
    return len(spec.quotient_weights())


def emptiness(spec: HessenbergSpec) -> EmptinessVerdict:
    if spec.h_datum.is_torus:
        # every positive-degree class vanishes in the coinvariants of a torus,
        # so the Chern verdict is just "the quotient is nonzero"
        t = spec.t
        if t is NEG_INF:
            chern_empty = support_empty = False
        else:
            t = Fraction(t)
            below = {w for w, _, _ in spec.rep_piece.entries if spec._value(w) < t}
            chern_empty = bool(below)
            support_empty = any(tuple(w) in below for w in spec.v_support)
        if support_empty != chern_empty:
            log.warning(
                "torus H: support verdict (empty=%s) disagrees with Chern verdict (empty=%s)",
                support_empty, chern_empty,
            )
        return EmptinessVerdict(support_empty, chern_empty, support_empty, "support")
    quotient = spec.quotient_weights()
    chern_empty = bool(quotient) and build_engine(spec.h_datum).chern_top_class(quotient).is_zero()
    return EmptinessVerdict(chern_empty, chern_empty, None, "chern")


def is_empty(spec: HessenbergSpec) -> bool:
    return emptiness(spec).empty


def hessenberg_dim(spec: HessenbergSpec) -> int:
    if is_empty(spec):
        raise HessenbergError("empty variety")
    if spec.h_datum.is_torus:
        # a single point, whatever part of the quotient the support avoids
        return 0
    d = ambient_dim(spec) - codim_condition(spec)
    if d < 0:
        raise HessenbergError(f"negative dimension {d} for a nonempty Hessenberg variety")
    return d


def bundle_rank_K(x, y, r, s, t, t_prime, rep: WeightedRep, adjoint: WeightedRep) -> int:
    """Rank of the kernel K(x, y, r, s, t, t') of g(x, r+Z) -> V(x, r+s+Z) modulo filtrations.

    The map from g(x,r)/F^{t'} to V(x,r+s)/F^{t+t'} is surjective when
    t + t' <= 0, so the rank is the difference of the two dimensions.
    """
    r, s, t, t_prime = Fraction(r), Fraction(s), Fraction(t), Fraction(t_prime)
    if t + t_prime > 0:
        raise HessenbergError("t + t' must be <= 0")
    g_piece = mod_Z_piece(x, r, adjoint)
    v_piece = mod_Z_piece(x, r + s, rep)
    g_quot = g_piece.dim - _piece_filtration(y, t_prime, g_piece)
    v_quot = v_piece.dim - _piece_filtration(y, t + t_prime, v_piece)
    rank = g_quot - v_quot
    if rank < 0:
        raise NegativeRankError(
            f"negative layer rank {rank} at r = {r}: vector not good or hypotheses violated"
        )
    return rank


def _piece_filtration(y, t, piece: GradedPiece) -> int:
    image = piece.image()
    return 0 if image is None else filtration_dim(y, t, image)
