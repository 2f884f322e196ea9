"""Coinvariant algebra of a (possibly non-semisimple) root datum.

Polynomials live on the apartment: the variable z_i is the i-th coweight
coordinate, so a weight lambda is the linear form sum_i lambda_i z_i.  The
ideal I is generated by the Weyl invariants of positive degree: the linear
forms killing every coroot (torus and central directions) together with
the fundamental invariants of each simple factor.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from . import linalg
from .polys import Poly, elementary_symmetric, groebner, grlex_key, product, reduce, divides
from .rootdata import (
    RootDatum,
    RootDatumError,
    WeylElement,
    classify_cartan,
    standard_epsilons,
    _connected_components,
)


class EngineError(RuntimeError):
    pass


def weight_form(weight: Sequence, nvars: int | None = None) -> Poly:
    if nvars is not None and len(weight) != nvars:
        raise ValueError("dimension mismatch")
    return Poly.linear(weight)


def act(w: WeylElement, p: Poly) -> Poly:
    """(w . p)(z) = p(w^{-1} z)."""
    return p.substitute_linear(w.inverse().matrix)


def _components(datum: RootDatum) -> list[tuple[str, int, list]]:
    """Irreducible factors as (family, rank, simple roots in Bourbaki order)."""
    out = []
    if datum.declared is not None:
        fam, k = datum.declared
        return [(fam, k, list(datum.simple_roots))]
    for comp in _connected_components(datum.pairing_matrix):
        sub = [[datum.pairing_matrix[i][j] for j in comp] for i in comp]
        fam, k, order = classify_cartan(sub)
        out.append((fam, k, [datum.simple_roots[comp[i]] for i in order]))
    return out


def _reynolds(p: Poly, group: list[WeylElement]) -> Poly:
    total = Poly(p.nvars)
    for w in group:
        total = total + act(w, p)
    return total * Fraction(1, len(group))


def _component_invariants(datum: RootDatum, fam: str, k: int, simple: list) -> list[Poly]:
    n = datum.lattice_rank
    if fam == "G2":
        sub = RootDatum.from_simple(simple, [datum.coroot_of[a] for a in simple], n, datum.isogeny)
        group = sub.weyl_group.elements
        u = [weight_form(a) for a in simple]
        f2 = _reynolds(u[0] ** 2, group)
        if not f2:
            raise EngineError("Reynolds averaging produced no quadratic invariant")
        cube = f2 ** 3
        for a in range(7):
            f6 = _reynolds(u[0] ** a * u[1] ** (6 - a), group)
            if not f6:
                continue
            m, c = cube.leading()
            ratio = f6.terms.get(m, Fraction(0)) / c
            if f6 - cube * ratio:
                return [f2, f6 - cube * ratio]
        raise EngineError("Reynolds averaging produced no sextic invariant")
    eps = [weight_form(e) for e in standard_epsilons(datum, simple, (fam, k))]
    if fam == "A":
        return [elementary_symmetric(eps, j, n) for j in range(2, k + 2)]
    squares = [e * e for e in eps]
    if fam in ("B", "C"):
        return [elementary_symmetric(squares, j, n) for j in range(1, k + 1)]
    if fam == "D":
        return [elementary_symmetric(squares, j, n) for j in range(1, k)] + [product(eps, n)]
    raise EngineError(f"unsupported family {fam}")


@dataclass
class CoinvariantEngine:
    datum: RootDatum
    generators: list[Poly]
    basis: list[Poly]
    standard_monomials: list[tuple[int, ...]]
    top_monomial: tuple[int, ...]
    top_scale: Fraction
    _regular_point: tuple = field(default=(), repr=False)

    @property
    def nvars(self) -> int:
        return self.datum.lattice_rank

    @property
    def quotient_dim(self) -> int:
        return len(self.standard_monomials)

    @property
    def top_degree(self) -> int:
        return len(self.datum.positive_roots)

    def normal_form(self, p: Poly) -> Poly:
        if not self.basis:
            return p.copy()
        return reduce(p, self.basis)

    def is_in_ideal(self, p: Poly) -> bool:
        return self.normal_form(p).is_zero()

    def top_class(self) -> Poly:
        """Normal form of the degree-top class on which the alternating functional is 1."""
        return Poly(self.nvars, {self.top_monomial: self.top_scale})

    def integrate(self, p: Poly) -> Fraction:
        """sum_w sgn(w) p(w z0) / prod_{a>0} a(z0), the alternating functional."""
        z0 = self._regular_point
        delta = product((weight_form(a) for a in self.datum.positive_roots), self.nvars).evaluate(z0)
        total = Fraction(0)
        for w in self.datum.weyl_group:
            total += w.sign() * p.evaluate(w.act_coweight(z0))
        return total / delta

    def chern_top_class(self, weights: Iterable[Sequence]) -> Poly:
        """Normal form of the product of the weights (reduced as we go)."""
        acc = Poly.constant(self.nvars, 1)
        for w in weights:
            acc = self.normal_form(acc * weight_form(w, self.nvars))
            if acc.is_zero():
                break
        return acc

    def schubert_expand_typeA(self, p: Poly) -> list[tuple[WeylElement, Fraction]]:
        """Coefficients of p in the Schubert basis, via divided differences."""
        if any(fam != "A" for fam, _ in self.datum.components):
            raise EngineError("Schubert expansion is only implemented for type A")
        return schubert_coefficients(self.datum, p)


def divided_difference(datum: RootDatum, i: int, p: Poly) -> Poly:
    s = WeylElement.from_word(datum, (i,))
    diff = p - p.substitute_linear(s.matrix)
    if diff.is_zero():
        return diff
    return diff.exact_divide(weight_form(datum.simple_roots[i]))


def schubert_coefficients(datum: RootDatum, p: Poly) -> list[tuple[WeylElement, Fraction]]:
    out = []
    for w in datum.weyl_group:
        q = p.homogeneous_part(len(w.word))
        for i in reversed(w.word):
            if q.is_zero():
                break
            q = divided_difference(datum, i, q)
        if q.degree() > 0:
            raise EngineError("divided difference left a non-constant remainder")
        out.append((w, q.constant_term()))
    return out


def _regular_point(datum: RootDatum) -> tuple[Fraction, ...]:
    n = datum.lattice_rank
    for seed in range(2, 200):
        z = tuple(Fraction(seed ** (i + 1) + i, 7 + i) for i in range(n))
        if all(linalg.dot(a, z) != 0 for a in datum.positive_roots):
            return z
    raise EngineError("no regular point found")


def _standard_monomials(basis: list[Poly], nvars: int, limit: int) -> list[tuple[int, ...]]:
    leads = [g.leading()[0] for g in basis]
    out = []
    d = 0
    while True:
        level = [
            m for m in _monomials_of_degree(nvars, d)
            if not any(divides(l, m) for l in leads)
        ]
        if not level:
            return out
        out.extend(level)
        if len(out) > limit:
            raise EngineError("quotient is larger than |W|; invariants are not a regular sequence")
        d += 1


def _monomials_of_degree(nvars: int, d: int):
    if nvars == 0:
        if d == 0:
            yield ()
        return
    for combo in itertools.combinations_with_replacement(range(nvars), d):
        m = [0] * nvars
        for i in combo:
            m[i] += 1
        yield tuple(m)


_ENGINE_CACHE: dict = {}


def build_engine(datum: RootDatum) -> CoinvariantEngine:
    key = (datum.lattice_rank, datum.simple_roots, datum.simple_coroots)
    if key in _ENGINE_CACHE:
        return _ENGINE_CACHE[key]
    n = datum.lattice_rank
    gens: list[Poly] = []
    # linear invariants: weights orthogonal to every coroot
    for v in linalg.nullspace([list(c) for c in datum.simple_coroots], n):
        gens.append(Poly.linear(v))
    for fam, k, simple in _components(datum):
        gens.extend(_component_invariants(datum, fam, k, simple))
    for g in gens:
        if g.is_zero() or not g.is_homogeneous() or g.degree() < 1:
            raise EngineError("invariant generators must be homogeneous of positive degree")
    basis = groebner(gens)
    order = datum.weyl_order
    std = _standard_monomials(basis, n, order)
    if len(std) != order:
        raise EngineError(f"quotient dimension {len(std)} differs from |W| = {order}")
    top = [m for m in std if sum(m) == len(datum.positive_roots)]
    if len(top) != 1:
        raise EngineError("top degree of the quotient is not one-dimensional")
    engine = CoinvariantEngine(datum, gens, basis, std, top[0], Fraction(1), _regular_point(datum))
    value = engine.integrate(Poly(n, {top[0]: Fraction(1)}))
    if value == 0:
        raise EngineError("alternating functional vanishes on the top monomial")
    engine.top_scale = 1 / value
    _ENGINE_CACHE[key] = engine
    return engine
