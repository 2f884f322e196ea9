"""Sparse multivariate polynomials with exact rational coefficients.

Terms are stored as {exponent tuple: Fraction}.  The monomial order is
graded lexicographic: compare total degree first, then exponents
lexicographically (x_0 > x_1 > ...).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

Monomial = tuple[int, ...]


def grlex_key(mono: Monomial) -> tuple[int, Monomial]:
    return (sum(mono), mono)


def divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def mono_div(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x - y for x, y in zip(a, b))


def mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


class Poly:
    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: dict[Monomial, Fraction] | None = None):
        self.nvars = nvars
        self.terms: dict[Monomial, Fraction] = {}
        if terms:
            for m, c in terms.items():
                if c != 0:
                    if len(m) != nvars:
                        raise ValueError("monomial of wrong length")
                    self.terms[tuple(m)] = Fraction(c)

    # -- constructors -----------------------------------------------------
    @classmethod
    def zero(cls, nvars: int) -> "Poly":
        return cls(nvars)

    @classmethod
    def constant(cls, nvars: int, c) -> "Poly":
        return cls(nvars, {(0,) * nvars: Fraction(c)})

    @classmethod
    def variable(cls, nvars: int, i: int) -> "Poly":
        return cls(nvars, {tuple(int(j == i) for j in range(nvars)): Fraction(1)})

    @classmethod
    def linear(cls, coeffs: Sequence) -> "Poly":
        """The linear form sum_i coeffs[i] * z_i."""
        n = len(coeffs)
        return cls(n, {tuple(int(j == i) for j in range(n)): Fraction(c) for i, c in enumerate(coeffs)})

    # -- arithmetic -------------------------------------------------------
    def copy(self) -> "Poly":
        p = Poly(self.nvars)
        p.terms = dict(self.terms)
        return p

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Poly.constant(self.nvars, other)
        return isinstance(other, Poly) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other: "Poly") -> "Poly":
        if isinstance(other, (int, Fraction)):
            other = Poly.constant(self.nvars, other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = out.get(m, 0) + c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        p = Poly(self.nvars)
        p.terms = out
        return p

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        p = Poly(self.nvars)
        p.terms = {m: -c for m, c in self.terms.items()}
        return p

    def __sub__(self, other: "Poly") -> "Poly":
        if isinstance(other, (int, Fraction)):
            other = Poly.constant(self.nvars, other)
        return self + (-other)

    def __mul__(self, other) -> "Poly":
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return Poly(self.nvars)
            p = Poly(self.nvars)
            p.terms = {m: c * other for m, c in self.terms.items()}
            return p
        out: dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = mono_mul(m1, m2)
                out[m] = out.get(m, 0) + c1 * c2
        return Poly(self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Poly":
        result = Poly.constant(self.nvars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def mul_term(self, mono: Monomial, coeff: Fraction) -> "Poly":
        p = Poly(self.nvars)
        p.terms = {mono_mul(m, mono): c * coeff for m, c in self.terms.items()}
        return p

    # -- inspection -------------------------------------------------------
    def degree(self) -> int:
        return max((sum(m) for m in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(m) for m in self.terms}) <= 1

    def homogeneous_part(self, d: int) -> "Poly":
        return Poly(self.nvars, {m: c for m, c in self.terms.items() if sum(m) == d})

    def leading(self) -> tuple[Monomial, Fraction]:
        m = max(self.terms, key=grlex_key)
        return m, self.terms[m]

    def constant_term(self) -> Fraction:
        return self.terms.get((0,) * self.nvars, Fraction(0))

    def evaluate(self, point: Sequence) -> Fraction:
        total = Fraction(0)
        for m, c in self.terms.items():
            v = c
            for x, e in zip(point, m):
                if e:
                    v *= Fraction(x) ** e
            total += v
        return total

    def substitute_linear(self, matrix: Sequence[Sequence]) -> "Poly":
        """p(M z): replace z_i by sum_j M[i][j] z_j."""
        images = [Poly.linear(row) for row in matrix]
        powers: dict[tuple[int, int], Poly] = {}
        out = Poly(self.nvars)
        for m, c in self.terms.items():
            term = Poly.constant(self.nvars, c)
            for i, e in enumerate(m):
                if e:
                    key = (i, e)
                    if key not in powers:
                        powers[key] = images[i] ** e
                    term = term * powers[key]
            out = out + term
        return out

    def exact_divide(self, q: "Poly") -> "Poly":
        """Quotient of an exact division; raises if q does not divide self."""
        if q.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        lm_q, lc_q = q.leading()
        rem = self.copy()
        quot: dict[Monomial, Fraction] = {}
        while rem:
            lm, lc = rem.leading()
            if not divides(lm_q, lm):
                raise ValueError("polynomial division is not exact")
            t = mono_div(lm, lm_q)
            c = lc / lc_q
            quot[t] = quot.get(t, 0) + c
            rem = rem - q.mul_term(t, c)
        return Poly(self.nvars, quot)

    def __repr__(self) -> str:
        return f"Poly({self})"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m in sorted(self.terms, key=grlex_key, reverse=True):
            c = self.terms[m]
            mono = "*".join(f"z{i}" + (f"^{e}" if e > 1 else "") for i, e in enumerate(m) if e)
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")


def product(polys: Iterable[Poly], nvars: int) -> Poly:
    out = Poly.constant(nvars, 1)
    for p in polys:
        out = out * p
    return out


def elementary_symmetric(forms: Sequence[Poly], k: int, nvars: int) -> Poly:
    """e_k of the given polynomials, via the generating-function recursion."""
    e = [Poly.constant(nvars, 1)] + [Poly(nvars) for _ in range(k)]
    for f in forms:
        for j in range(k, 0, -1):
            e[j] = e[j] + e[j - 1] * f
    return e[k]


# ---------------------------------------------------------------------------
# Groebner bases

def _s_poly(f: Poly, g: Poly) -> Poly:
    mf, cf = f.leading()
    mg, cg = g.leading()
    l = mono_lcm(mf, mg)
    return f.mul_term(mono_div(l, mf), 1 / cf) - g.mul_term(mono_div(l, mg), 1 / cg)


def reduce(p: Poly, basis: Sequence[Poly]) -> Poly:
    """Full normal form of p modulo basis (remainder of multivariate division)."""
    leads = [(g.leading(), g) for g in basis]
    rem = Poly(p.nvars)
    work = p.copy()
    while work:
        m, c = work.leading()
        for (lm, lc), g in leads:
            if divides(lm, m):
                work = work - g.mul_term(mono_div(m, lm), c / lc)
                break
        else:
            rem.terms[m] = c
            del work.terms[m]
    return rem


def groebner(generators: Sequence[Poly]) -> list[Poly]:
    """Reduced Groebner basis (grlex) by Buchberger's algorithm."""
    basis = [g for g in generators if g]
    if not basis:
        return []
    pairs = [(i, j) for j in range(len(basis)) for i in range(j)]
    while pairs:
        pairs.sort(key=lambda ij: grlex_key(mono_lcm(basis[ij[0]].leading()[0], basis[ij[1]].leading()[0])))
        i, j = pairs.pop(0)
        mi, mj = basis[i].leading()[0], basis[j].leading()[0]
        if mono_mul(mi, mj) == mono_lcm(mi, mj):
            continue  # coprime leading monomials
        r = reduce(_s_poly(basis[i], basis[j]), basis)
        if r:
            basis.append(r)
            k = len(basis) - 1
            pairs.extend((a, k) for a in range(k))
    # minimalize
    basis = [g * (1 / g.leading()[1]) for g in basis]
    minimal = []
    for idx, g in enumerate(basis):
        lm = g.leading()[0]
        redundant = any(
            divides(h.leading()[0], lm) and (h.leading()[0] != lm or jdx < idx)
            for jdx, h in enumerate(basis) if jdx != idx
        )
        if not redundant:
            minimal.append(g)
    reduced = []
    for idx, g in enumerate(minimal):
        others = minimal[:idx] + minimal[idx + 1:]
        lm, _ = g.leading()
        tail = Poly(g.nvars, {m: c for m, c in g.terms.items() if m != lm})
        reduced.append(Poly(g.nvars, {lm: Fraction(1)}) + reduce(tail, others))
    reduced.sort(key=lambda g: grlex_key(g.leading()[0]))
    return reduced
