"""Representations as weight multisets, with gradings and Moy-Prasad filtrations.

A representation V is recorded only through its weights.  Loop-space
vectors live on lines V_lambda * eps^m, which we index by pairs (lambda, m);
the line sits in degree lambda(x) + m for the grading attached to x.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from . import linalg
from .rootdata import RootDatum, RootDatumError, Weight, standard_epsilons


class _NegInf:
    """Sentinel for t = -infinity: every weight lies in F^{-inf}."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "NEG_INF"

    def __lt__(self, other):
        return other is not self

    def __le__(self, other):
        return True

    def __gt__(self, other):
        return False

    def __ge__(self, other):
        return other is self


NEG_INF = _NegInf()


@dataclass(frozen=True)
class WeightedRep:
    entries: tuple[tuple[Weight, int], ...]
    name: str = "custom"

    def __post_init__(self):
        if not self.entries:
            raise ValueError("representation must have positive dimension")
        lengths = {len(w) for w, _ in self.entries}
        if len(lengths) != 1:
            raise ValueError("weights of inconsistent length")
        for w, mult in self.entries:
            if not isinstance(mult, int) or mult <= 0:
                raise ValueError(f"multiplicity must be a positive integer, got {mult!r}")

    @classmethod
    def from_weights(cls, weights: Iterable[Sequence[int]], name: str = "custom") -> "WeightedRep":
        counts = Counter(tuple(int(c) for c in w) for w in weights)
        return cls(tuple(sorted(counts.items())), name)

    @property
    def dim(self) -> int:
        return sum(m for _, m in self.entries)

    def weights(self) -> list[Weight]:
        """Weights listed with multiplicity."""
        return [w for w, m in self.entries for _ in range(m)]


@dataclass(frozen=True)
class GradedPiece:
    """Weights (with loop offset m) in a single graded degree or residue class.

    ``offset`` is None for the mod-Z pieces, where m is not pinned down.
    """

    base_point: tuple[Fraction, ...]
    residue: Fraction
    entries: tuple[tuple[Weight, int, int | None], ...]

    @property
    def dim(self) -> int:
        return sum(m for _, m, _ in self.entries)

    def image(self) -> WeightedRep | None:
        """Forget the offsets (the canonical identification with a piece of V)."""
        if not self.entries:
            return None
        return WeightedRep.from_weights(
            [w for w, mult, _ in self.entries for _ in range(mult)], "piece"
        )

    def weights(self) -> list[Weight]:
        return [w for w, mult, _ in self.entries for _ in range(mult)]


def adjoint_rep(datum: RootDatum) -> WeightedRep:
    zero = tuple([0] * datum.lattice_rank)
    entries = [(a, 1) for a in datum.roots] + [(zero, datum.lattice_rank)]
    return WeightedRep(tuple(sorted(entries)), "adjoint")


def standard_rep(datum: RootDatum) -> WeightedRep:
    """Defining representation of a classical group (or the 7-dim one for G2).

    Raises if its weights do not lie in X^*(A) for this isogeny (e.g. the
    vector representation of an adjoint group of type A).
    """
    eps = standard_epsilons(datum)
    fam = datum.family
    if datum.isogeny == "gl" or fam in ("A", "C"):
        ws = list(eps) + ([] if fam == "A" else [tuple(-c for c in e) for e in eps])
    elif fam == "B":
        ws = list(eps) + [tuple(-c for c in e) for e in eps] + [tuple([Fraction(0)] * datum.lattice_rank)]
    elif fam == "D":
        ws = list(eps) + [tuple(-c for c in e) for e in eps]
    elif fam == "G2":
        ws = [tuple(Fraction(c) for c in a) for a in datum.roots if _is_short(datum, a)]
        ws = ws + [tuple([Fraction(0)] * datum.lattice_rank)]
    else:
        raise RootDatumError("no standard representation for this datum")
    out = []
    for w in ws:
        if any(Fraction(c).denominator != 1 for c in w):
            raise RootDatumError(
                f"the standard representation is not defined for {datum.label()} ({datum.isogeny})"
            )
        out.append(tuple(int(c) for c in w))
    return WeightedRep.from_weights(out, "standard")


def _is_short(datum: RootDatum, a: Weight) -> bool:
    # in G2 only a short root a has some root b with <b, a^vee> = 3
    return any(abs(linalg.dot(b, datum.coroot_of[a])) == 3 for b in datum.roots)


def _value(weight: Sequence[int], point: Sequence[Fraction]) -> Fraction:
    return Fraction(linalg.dot(weight, point))


def grade_by(y: Sequence[Fraction], rep: WeightedRep) -> dict[Fraction, int]:
    out: dict[Fraction, int] = {}
    for w, mult in rep.entries:
        v = _value(w, y)
        out[v] = out.get(v, 0) + mult
    return dict(sorted(out.items()))


def filtration_dim(y: Sequence[Fraction], t, rep: WeightedRep) -> int:
    if t is NEG_INF:
        return rep.dim
    t = Fraction(t)
    return sum(mult for w, mult in rep.entries if _value(w, y) >= t)


def moy_prasad_piece(x: Sequence[Fraction], r, rep: WeightedRep) -> GradedPiece:
    r = Fraction(r)
    entries = []
    for w, mult in rep.entries:
        m = r - _value(w, x)
        if m.denominator == 1:
            entries.append((w, mult, int(m)))
    return GradedPiece(tuple(Fraction(c) for c in x), r, tuple(entries))


def mod_Z_piece(x: Sequence[Fraction], residue, rep: WeightedRep) -> GradedPiece:
    residue = Fraction(residue)
    residue -= math.floor(residue)
    entries = [(w, mult, None) for w, mult in rep.entries if (_value(w, x) - residue).denominator == 1]
    return GradedPiece(tuple(Fraction(c) for c in x), residue, tuple(entries))


def graded_filtration_dim(x, r, y, t, rep: WeightedRep) -> int:
    """dim of F^t_y inside the degree-r piece for x: lambda(x)+m = r, lambda(y)+m >= t."""
    piece = moy_prasad_piece(x, r, rep)
    if t is NEG_INF:
        return piece.dim
    t = Fraction(t)
    return sum(mult for w, mult, m in piece.entries if _value(w, y) + m >= t)


def lattice_quotient_dim(x, s, y, t, rep: WeightedRep) -> int:
    """Number of lines (lambda, m) with lambda(x)+m >= s and lambda(y)+m < t."""
    if t is NEG_INF:
        return 0
    s, t = Fraction(s), Fraction(t)
    total = 0
    for w, mult in rep.entries:
        lo = math.ceil(s - _value(w, x))       # smallest m in V_{x,s}
        hi = math.ceil(t - _value(w, y))       # smallest m in V_{y,t}
        total += mult * max(0, hi - lo)
    return total
