"""Orbit enumeration and cell data for equivalued affine Springer fibers.

Orbits of the parahoric at x on the partial affine flag variety for y are
indexed by points y' = c.y of the affine Weyl group orbit of y, taken up
to the stabilizer of x.  Each orbit contributes one cell: an iterated
affine bundle over a Hessenberg variety of H = levi_at(x).
"""

from __future__ import annotations

import functools
import itertools
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import linalg
from .hessenberg import HessenbergSpec, bundle_rank_K, emptiness, hessenberg_dim
from .repweights import WeightedRep, adjoint_rep, lattice_quotient_dim, mod_Z_piece
from .rootdata import (
    AffineWeylElement,
    ApartmentPoint,
    RootDatum,
    Weight,
    WeylElement,
    affine_length,
    as_fraction,
    as_point,
    fundamental_alcove_point,
)
from .torus import levi_at

log = logging.getLogger(__name__)

MAX_AUTO_EXTEND = 16


class PavingError(ValueError):
    pass


@dataclass(frozen=True)
class Enumeration:
    radius: int = 3
    auto_extend: bool = True
    quotient_by_central: bool = False


@dataclass(frozen=True)
class PavingProblem:
    datum: RootDatum
    rep: WeightedRep
    x: ApartmentPoint
    s: Fraction
    y: ApartmentPoint
    t: Fraction
    v_support: tuple[Weight, ...] | None = None
    enumeration: Enumeration = field(default_factory=Enumeration)

    def __post_init__(self):
        object.__setattr__(self, "x", as_point(self.x))
        object.__setattr__(self, "y", as_point(self.y))
        object.__setattr__(self, "s", as_fraction(self.s))
        object.__setattr__(self, "t", as_fraction(self.t))
        n = self.datum.lattice_rank
        if len(self.x) != n or len(self.y) != n:
            raise PavingError("dimension mismatch between points and the root datum")
        if self.t > self.s:
            raise PavingError("hypothesis s ≥ t violated")
        if self.enumeration.radius < 0:
            raise PavingError("radius must be nonnegative")
        if self.enumeration.quotient_by_central and self.datum.isogeny != "gl":
            raise PavingError("quotient_by_central needs central translations (isogeny gl)")
        piece = mod_Z_piece(self.x, self.s, self.rep)
        if self.v_support is None:
            object.__setattr__(self, "v_support", tuple(w for w, _, _ in piece.entries))
        else:
            support = tuple(tuple(int(c) for c in w) for w in self.v_support)
            have = {w for w, _, _ in piece.entries}
            for w in support:
                if w not in have:
                    raise PavingError(f"support weight {w} is not in V(x, s + Z)")
            object.__setattr__(self, "v_support", support)
        if not self.v_support:
            raise PavingError("no equivalued element with this valuation")

    @functools.cached_property
    def adjoint(self) -> WeightedRep:
        return adjoint_rep(self.datum)

    @functools.cached_property
    def is_adjoint(self) -> bool:
        return self.rep == self.adjoint

    @functools.cached_property
    def h_datum(self) -> RootDatum:
        return levi_at(self.datum, self.x)

    @functools.cached_property
    def piece(self):
        return mod_Z_piece(self.x, self.s, self.rep)

    @functools.cached_property
    def finite_orbit(self) -> list[tuple[WeylElement, ApartmentPoint, tuple[Fraction, ...]]]:
        out = []
        for w in self.datum.weyl_group:
            wy = w.act_coweight(self.y)
            out.append((w, wy, lattice_coordinates(self.datum, wy)))
        return out

    @functools.cached_property
    def orbit_by_residue(self) -> dict[tuple[Fraction, ...], list[tuple[WeylElement, ApartmentPoint]]]:
        """finite_orbit grouped by the fractional parts of the lattice coordinates of w(y)."""
        out: dict = {}
        for w, wy, coords in self.finite_orbit:
            out.setdefault(_frac_part(coords), []).append((w, wy))
        return out

    @functools.cached_property
    def base_alcove_point(self) -> ApartmentPoint:
        return fundamental_alcove_point(self.datum)

    @functools.cached_property
    def finite_images(self) -> list[ApartmentPoint]:
        return sorted({wy for _, wy, _ in self.finite_orbit})


@dataclass(frozen=True)
class CellRecord:
    orbit: AffineWeylElement
    y_prime: ApartmentPoint
    base: HessenbergSpec
    empty: bool
    base_dim: int | None
    layer_ranks: tuple[tuple[Fraction, int], ...]
    dim_total: int | None
    dim_rootcount: int | None

    @property
    def layer_sum(self) -> int:
        return sum(r for _, r in self.layer_ranks)


@dataclass(frozen=True)
class PavingReport:
    cells: tuple[CellRecord, ...]
    affine_paving: bool
    max_dim: int | None
    point_count_poly: tuple[int, ...] | None
    truncation_note: dict

    def nonempty(self) -> list[CellRecord]:
        return [c for c in self.cells if not c.empty]

    def evaluate(self, q: int) -> int:
        if self.point_count_poly is None:
            raise PavingError("point count polynomial needs an affine paving")
        return sum(c * q**i for i, c in enumerate(self.point_count_poly))


# ---------------------------------------------------------------------------
# Translation lattice

def translation_basis(datum: RootDatum) -> list[tuple[int, ...]]:
    """Simple coroots, plus (1, ..., 1) for gl."""
    basis = [tuple(c) for c in datum.simple_coroots]
    if datum.isogeny == "gl":
        basis.append(tuple([1] * datum.lattice_rank))
    return basis


def lattice_vector(datum: RootDatum, coords: Sequence[int]) -> tuple[int, ...]:
    out = [0] * datum.lattice_rank
    for k, b in zip(coords, translation_basis(datum)):
        for i in range(len(out)):
            out[i] += k * b[i]
    return tuple(out)


@functools.lru_cache(maxsize=None)
def _basis_inverse(datum: RootDatum) -> tuple[tuple[Fraction, ...], ...]:
    basis = translation_basis(datum)
    n = datum.lattice_rank
    if len(basis) != n:
        raise PavingError("translation lattice does not have full rank")
    cols = [[Fraction(b[i]) for b in basis] for i in range(n)]
    inv = [linalg.solve(cols, [Fraction(int(i == j)) for i in range(n)]) for j in range(n)]
    # inv[j] is the j-th column of the inverse
    return tuple(tuple(inv[j][i] for j in range(n)) for i in range(n))


def lattice_coordinates(datum: RootDatum, v: Sequence) -> tuple[Fraction, ...]:
    """Coordinates of v in the translation basis (rational; integral iff v is a translation)."""
    return tuple(sum((a * b for a, b in zip(row, v)), Fraction(0)) for row in _basis_inverse(datum))


def _is_translation(datum: RootDatum, v: Sequence) -> bool:
    return all(c.denominator == 1 for c in lattice_coordinates(datum, v))


# ---------------------------------------------------------------------------
# Orbits

def _stabilizer_images(h: RootDatum, x: ApartmentPoint, p: ApartmentPoint) -> list[ApartmentPoint]:
    if h.is_torus:
        return [p]
    shift = tuple(a - b for a, b in zip(p, x))
    out = set()
    for u in h.weyl_group:
        img = u.act_coweight(shift)
        out.add(tuple(Fraction(a) + b for a, b in zip(img, x)))
    return sorted(out)


def _frac_part(coords: Sequence[Fraction]) -> tuple[Fraction, ...]:
    return tuple(c - math.floor(c) for c in coords)


def _min_length_rep(problem: PavingProblem, orbit_points: list[ApartmentPoint]) -> AffineWeylElement:
    datum = problem.datum
    by_residue = problem.orbit_by_residue
    candidates = []
    for p in orbit_points:
        for w, wy in by_residue.get(_frac_part(lattice_coordinates(datum, p)), ()):
            lam = tuple(int(a - b) for a, b in zip(p, wy))
            candidates.append(AffineWeylElement(lam, w))
    if not candidates:
        raise PavingError("internal error: orbit point not reachable from y")
    if len(candidates) == 1:
        return candidates[0]
    base = problem.base_alcove_point
    return min(candidates, key=lambda c: (affine_length(c, base), c.translation, c.finite.word))


def _box_points(bounds: Sequence[tuple[int, int]]):
    return itertools.product(*[range(lo, hi + 1) for lo, hi in bounds])


def _radius_bounds(problem: PavingProblem, radius: int) -> list[tuple[int, int]]:
    bounds = [(-radius, radius)] * problem.datum.rank
    if problem.datum.isogeny == "gl":
        bounds.append((0, 0) if problem.enumeration.quotient_by_central else (-radius, radius))
    return bounds


def _orbits_in_box(problem: PavingProblem, bounds) -> dict[ApartmentPoint, list[ApartmentPoint]]:
    """Group the candidate points w(y) + lambda into stabilizer orbits, keyed canonically."""
    datum = problem.datum
    h = problem.h_datum
    finite_images = problem.finite_images
    orbits: dict[ApartmentPoint, list[ApartmentPoint]] = {}
    for coords in _box_points(bounds):
        lam = lattice_vector(datum, coords)
        for wy in finite_images:
            p = tuple(Fraction(a) + b for a, b in zip(wy, lam))
            images = _stabilizer_images(h, problem.x, p)
            key = images[0]
            if key not in orbits:
                orbits[key] = images
    return orbits


def enumerate_orbits(problem: PavingProblem, radius: int | None = None) -> list[AffineWeylElement]:
    """Minimal-length double-coset representatives with translation coordinates within the radius."""
    r = problem.enumeration.radius if radius is None else radius
    return _representatives(problem, _radius_bounds(problem, r))


def _representatives(problem: PavingProblem, bounds) -> list[AffineWeylElement]:
    orbits = _orbits_in_box(problem, bounds)
    reps = [_min_length_rep(problem, pts) for pts in orbits.values()]
    reps.sort(key=lambda c: (c.translation, c.finite.word))
    return reps


# ---------------------------------------------------------------------------
# Cells

def jump_set(problem: PavingProblem, c: AffineWeylElement) -> list[Fraction]:
    x, s, t = problem.x, problem.s, problem.t
    yp = c.act(problem.y)
    out = set()
    for a in problem.datum.roots:
        ax, ay = Fraction(linalg.dot(a, x)), Fraction(linalg.dot(a, yp))
        # integers n with a(x) + n > 0 and a(y') + n < 0
        for n in range(math.floor(-ax) + 1, math.ceil(-ay)):
            out.add(ax + n)
    for w, _ in problem.rep.entries:
        wx, wy = Fraction(linalg.dot(w, x)), Fraction(linalg.dot(w, yp))
        # integers m with w(x) + m > s and w(y') + m < t
        for m in range(math.floor(s - wx) + 1, math.ceil(t - wy)):
            out.add(wx + m - s)
    return sorted(r for r in out if r > 0)


def affine_root_count(datum: RootDatum, x, yp, upper=None) -> int:
    """#{affine roots a + n : a(x) + n >= 0, (a(x) + n < upper), a(y') + n < 0}."""
    total = 0
    for a in datum.roots:
        ax, ay = Fraction(linalg.dot(a, x)), Fraction(linalg.dot(a, yp))
        lo = math.ceil(-ax)
        hi = math.ceil(-ay)
        if upper is not None:
            hi = min(hi, math.ceil(upper - ax))
        total += max(0, hi - lo)
    return total


def cell_data(problem: PavingProblem, c: AffineWeylElement) -> CellRecord:
    x, s, t = problem.x, problem.s, problem.t
    yp = c.act(problem.y)
    h = problem.h_datum
    base = HessenbergSpec(
        h_datum=h,
        parabolic_point=tuple(a - b for a, b in zip(yp, x)),
        t=t - s,
        rep_piece=problem.piece,
        v_support=problem.v_support,
    )
    if emptiness(base).empty:
        return CellRecord(c, yp, base, True, None, (), None, None)
    base_dim = hessenberg_dim(base)
    adjoint = problem.adjoint
    layers = []
    shift = base.parabolic_point
    for r in jump_set(problem, c):
        layers.append((r, bundle_rank_K(x, shift, r, s, t - s, -r, problem.rep, adjoint)))
    dim_total = affine_root_count(problem.datum, x, yp) - lattice_quotient_dim(x, s, yp, t, problem.rep)
    dim_rootcount = None
    if problem.is_adjoint and t == 0:
        dim_rootcount = affine_root_count(problem.datum, x, yp, upper=s)
    layer_sum = sum(rk for _, rk in layers)
    if base_dim + layer_sum != dim_total or (dim_rootcount is not None and dim_rootcount != dim_total):
        log.warning(
            "dimension formulas disagree at %s: base %d + layers %d, count %d, root count %s",
            c.translation, base_dim, layer_sum, dim_total, dim_rootcount,
        )
    return CellRecord(c, yp, base, False, base_dim, tuple(layers), dim_total, dim_rootcount)


# ---------------------------------------------------------------------------
# Enumeration bounds

def _support_systems(problem: PavingProblem):
    """Linear systems A k >= b in translation coordinates, one per candidate (w, u)."""
    datum = problem.datum
    h = problem.h_datum
    basis = translation_basis(datum)
    h_group = [WeylElement.identity(h)] if h.is_torus else list(h.weyl_group)
    rhs0 = problem.t - problem.s
    finite_images = problem.finite_images
    for wy in finite_images:
        for u in h_group:
            rows, rhs = [], []
            for lam in problem.v_support:
                lam_u = u.act_weight(lam)
                rows.append([Fraction(linalg.dot(lam_u, b)) for b in basis])
                rhs.append(rhs0 - Fraction(linalg.dot(lam_u, wy)) + Fraction(linalg.dot(lam_u, problem.x)))
            yield rows, rhs


def polytope_bounds(problem: PavingProblem) -> tuple[list[tuple[int, int]] | None, list[int]]:
    """Bounding box (padded by one) of all support polytopes, and the unbounded coordinates.

    Returns (None, []) when every system is infeasible.
    """
    from scipy.optimize import linprog

    nvars = len(translation_basis(problem.datum))
    fixed_central = problem.datum.isogeny == "gl" and problem.enumeration.quotient_by_central
    var_bounds = [(None, None)] * nvars
    if fixed_central:
        var_bounds[-1] = (0, 0)
    lo = [math.inf] * nvars
    hi = [-math.inf] * nvars
    feasible_any = False
    for rows, rhs in _support_systems(problem):
        a_ub = [[-float(v) for v in row] for row in rows]
        b_ub = [-float(v) for v in rhs]

        def optimum(cost):
            return linprog(cost, A_ub=a_ub, b_ub=b_ub, bounds=var_bounds, method="highs")

        if optimum([0.0] * nvars).status == 2:
            continue  # infeasible system
        feasible_any = True
        for i in range(nvars):
            e = [float(j == i) for j in range(nvars)]
            low = optimum(e)
            high = optimum([-v for v in e])
            lo[i] = min(lo[i], -math.inf if low.status == 3 else low.fun)
            hi[i] = max(hi[i], math.inf if high.status == 3 else -high.fun)
    if not feasible_any:
        return None, []
    bounds, unbounded = [], []
    for i in range(nvars):
        if fixed_central and i == nvars - 1:
            bounds.append((0, 0))
        elif math.isinf(lo[i]) or math.isinf(hi[i]):
            unbounded.append(i)
            bounds.append((0, 0))
        else:
            bounds.append((math.floor(lo[i]) - 1, math.ceil(hi[i]) + 1))
    return bounds, unbounded


def _union_bounds(a, b):
    return [(min(x[0], y[0]), max(x[1], y[1])) for x, y in zip(a, b)]


def _on_boundary(problem: PavingProblem, c: AffineWeylElement, bounds) -> bool:
    coords = lattice_coordinates(problem.datum, c.translation)
    return any(k == lo or k == hi for k, (lo, hi) in zip(coords, bounds) if lo != hi)


def run_paving(problem: PavingProblem) -> PavingReport:
    """Enumerate orbits, compute every cell, and assemble the report."""
    enum = problem.enumeration
    h = problem.h_datum
    radius_box = _radius_bounds(problem, enum.radius)
    poly_box, unbounded = polytope_bounds(problem)
    note = {
        "radius": enum.radius,
        "auto_extend": enum.auto_extend,
        "quotient_by_central": enum.quotient_by_central,
        "bound": "polytope" if h.is_torus else "heuristic",
        "polytope_box": poly_box,
        "unbounded_coordinates": unbounded,
    }
    if poly_box is not None:
        for i in unbounded:
            poly_box[i] = radius_box[i]
    if enum.auto_extend and poly_box is not None:
        box = _union_bounds(radius_box, poly_box)
    else:
        box = radius_box
    complete = poly_box is None or all(
        lo <= plo and phi <= hi for (lo, hi), (plo, phi) in zip(box, poly_box)
    )
    cache: dict = {}

    def cells_in(window):
        out = []
        for c in _representatives(problem, window):
            key = (c.translation, c.finite.word)
            if key not in cache:
                cache[key] = cell_data(problem, c)
            out.append(cache[key])
        return out

    records = cells_in(box)
    extensions = 0
    if not h.is_torus and enum.auto_extend:
        frozen = len(box) - 1 if problem.datum.isogeny == "gl" and enum.quotient_by_central else None
        # safety net: grow the window while nonempty cells touch its boundary
        while any(not r.empty and _on_boundary(problem, r.orbit, box) for r in records):
            if extensions >= MAX_AUTO_EXTEND:
                log.warning("auto-extension stopped at the iteration cap; the report is truncated")
                note["extension_cap_reached"] = True
                break
            box = [(lo, hi) if i == frozen else (lo - 1, hi + 1) for i, (lo, hi) in enumerate(box)]
            records = cells_in(box)
            extensions += 1
    note["window"] = box
    note["extensions"] = extensions
    note["complete"] = complete and not unbounded and not note.get("extension_cap_reached", False)
    note["heuristic"] = not h.is_torus
    return assemble(problem, records, note)


def assemble(problem: PavingProblem, records: Sequence[CellRecord], note: dict | None = None) -> PavingReport:
    records = sorted(records, key=lambda r: (r.orbit.translation, r.orbit.finite.word))
    h = problem.h_datum
    affine = h.is_torus
    nonempty = [r for r in records if not r.empty]
    max_dim = max((r.dim_total for r in nonempty), default=None)
    poly = None
    if affine:
        coeffs = [0] * ((max_dim or 0) + 1)
        for r in nonempty:
            coeffs[r.dim_total] += 1
        poly = tuple(coeffs)
    return PavingReport(tuple(records), affine, max_dim, poly, dict(note or {}))
