"""Root data, finite and affine Weyl groups, exact apartment arithmetic.

Coordinates
-----------
Weights (elements of X^*(A)) and coweights (elements of X_*(A)) are integer
tuples in a pair of dual bases, so the pairing is the ordinary dot product.
The bases depend on the isogeny type:

* ``simply_connected``: X_* has the simple coroots as basis, X^* the
  fundamental weights.
* ``adjoint``: X^* has the simple roots as basis, X_* the fundamental
  coweights.
* ``gl`` (family A only): X^* = X_* = Z^(rank+1) with the standard basis.

Points of the apartment are tuples of Fractions in the coweight basis.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from . import linalg

Weight = tuple[int, ...]
Coweight = tuple[int, ...]
ApartmentPoint = tuple[Fraction, ...]

FAMILIES = ("A", "B", "C", "D", "G2")
ISOGENIES = ("simply_connected", "adjoint", "gl")
MAX_CLASSICAL_RANK = 8


class RootDatumError(ValueError):
    pass


def as_fraction(value) -> Fraction:
    """Parse an exact rational; floats and anything non-rational are refused."""
    if isinstance(value, bool):
        raise RootDatumError(f"not a rational number: {value!r}")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise RootDatumError(f"not a rational number: {value!r}") from exc
    raise RootDatumError(f"not an exact rational (got {type(value).__name__}): {value!r}")


def as_point(values: Iterable) -> ApartmentPoint:
    return tuple(as_fraction(v) for v in values)


# ---------------------------------------------------------------------------
# Standard (Bourbaki) realizations

def standard_simple_roots(family: str, rank: int) -> list[list[Fraction]]:
    """Simple roots of the classical realization, in Bourbaki order."""
    n = rank
    one, zero = Fraction(1), Fraction(0)

    def e(i: int, dim: int) -> list[Fraction]:
        v = [zero] * dim
        v[i] = one
        return v

    def diff(i: int, j: int, dim: int) -> list[Fraction]:
        return [a - b for a, b in zip(e(i, dim), e(j, dim))]

    if family == "A":
        return [diff(i, i + 1, n + 1) for i in range(n)]
    if family == "B":
        return [diff(i, i + 1, n) for i in range(n - 1)] + [e(n - 1, n)]
    if family == "C":
        return [diff(i, i + 1, n) for i in range(n - 1)] + [[2 * c for c in e(n - 1, n)]]
    if family == "D":
        last = [a + b for a, b in zip(e(n - 2, n), e(n - 1, n))]
        return [diff(i, i + 1, n) for i in range(n - 1)] + [last]
    if family == "G2":
        return [[one, -one, zero], [Fraction(-2), one, one]]
    raise RootDatumError(f"unknown family {family!r}")


def cartan_matrix(family: str, rank: int) -> list[list[int]]:
    """pairing[i][j] = <alpha_i, alpha_j^vee>."""
    a = standard_simple_roots(family, rank)
    return [
        [int(2 * linalg.dot(a[i], a[j]) / linalg.dot(a[j], a[j])) for j in range(rank)]
        for i in range(rank)
    ]


def _validate_type(family: str, rank: int) -> None:
    if family not in FAMILIES:
        raise RootDatumError(f"unknown family {family!r}")
    if not isinstance(rank, int) or rank < 1:
        raise RootDatumError(f"rank must be a positive integer, got {rank!r}")
    minimum = {"A": 1, "B": 2, "C": 2, "D": 4, "G2": 2}[family]
    if family == "G2" and rank != 2:
        raise RootDatumError("G2 has rank 2")
    if rank < minimum:
        raise RootDatumError(f"{family}{rank} is not a valid Dynkin type (rank >= {minimum})")
    if family != "G2" and rank > MAX_CLASSICAL_RANK:
        raise RootDatumError(f"classical rank is limited to {MAX_CLASSICAL_RANK}")


def weyl_group_order(family: str, rank: int) -> int:
    n = rank
    if family == "A":
        return math.factorial(n + 1)
    if family in ("B", "C"):
        return 2**n * math.factorial(n)
    if family == "D":
        return 2 ** (n - 1) * math.factorial(n)
    if family == "G2":
        return 12
    raise RootDatumError(family)


def coxeter_number_of(family: str, rank: int) -> int:
    return {"A": rank + 1, "B": 2 * rank, "C": 2 * rank, "D": 2 * rank - 2, "G2": 6}[family]


def root_count(family: str, rank: int) -> int:
    n = rank
    return {"A": n * (n + 1), "B": 2 * n * n, "C": 2 * n * n, "D": 2 * n * (n - 1), "G2": 12}[family]


def classify_cartan(pairing: Sequence[Sequence[int]]) -> tuple[str, int, list[int]]:
    """Identify a connected Cartan matrix.

    Returns (family, rank, order) where ``order`` lists the node indices in
    Bourbaki order, so that ``pairing`` permuted by ``order`` equals
    ``cartan_matrix(family, rank)``.
    """
    k = len(pairing)
    nbrs = {i: [j for j in range(k) if j != i and pairing[i][j] != 0] for i in range(k)}
    if k == 1:
        return "A", 1, [0]
    bond = {(i, j): pairing[i][j] * pairing[j][i] for i in range(k) for j in nbrs[i]}
    triple = [p for p, b in bond.items() if b == 3]
    if triple:
        if k != 2:
            raise RootDatumError("unsupported Dynkin diagram with a triple bond")
        i, j = triple[0]
        # short root first: <long, short^vee> = -3
        return ("G2", 2, [j, i]) if pairing[i][j] == -3 else ("G2", 2, [i, j])

    def chain_from(start: int) -> list[int]:
        order, prev, cur = [start], None, start
        while True:
            nxt = [j for j in nbrs[cur] if j != prev]
            if not nxt:
                return order
            prev, cur = cur, nxt[0]
            order.append(cur)

    degrees = {i: len(nbrs[i]) for i in range(k)}
    if max(degrees.values()) > 3 or sum(1 for d in degrees.values() if d == 3) > 1:
        raise RootDatumError("unsupported Dynkin diagram")
    double = [p for p, b in bond.items() if b == 2]
    if double:
        if max(degrees.values()) > 2:
            raise RootDatumError("unsupported Dynkin diagram")
        i, j = double[0]
        if k == 2:
            # B2 orientation: long root first, <long, short^vee> = -2
            return ("B", 2, [i, j]) if pairing[i][j] == -2 else ("B", 2, [j, i])
        ends = [v for v in range(k) if degrees[v] == 1]
        order = chain_from(ends[0])
        if {order[-1], order[-2]} != {i, j}:
            order = chain_from(ends[1])
        if {order[-1], order[-2]} != {i, j}:
            raise RootDatumError("unsupported Dynkin diagram (F4-like)")
        fam = "B" if pairing[order[-2]][order[-1]] == -2 else "C"
        return fam, k, order
    branch = [i for i in range(k) if degrees[i] == 3]
    if branch:
        b = branch[0]
        arms = []
        for start in nbrs[b]:
            arm, prev, cur = [start], b, start
            while True:
                nxt = [j for j in nbrs[cur] if j != prev]
                if not nxt:
                    break
                prev, cur = cur, nxt[0]
                arm.append(cur)
            arms.append(arm)
        arms.sort(key=lambda a: (-len(a), a[0]))
        if len(arms[1]) != 1 or len(arms[2]) != 1:
            raise RootDatumError("unsupported Dynkin diagram (E-type)")
        order = list(reversed(arms[0])) + [b, arms[1][0], arms[2][0]]
        return "D", k, order
    ends = sorted(v for v in range(k) if degrees[v] == 1)
    return "A", k, chain_from(ends[0])


# ---------------------------------------------------------------------------
# Root datum

@dataclass(frozen=True)
class AffineRoot:
    """The affine function alpha + level on the apartment."""

    gradient: Weight
    level: int

    def __str__(self) -> str:
        sign = "+" if self.level >= 0 else "-"
        return f"{list(self.gradient)} {sign} {abs(self.level)}"


@dataclass(frozen=True, eq=False)
class RootDatum:
    """A reduced root datum with its roots realized in integer coordinates.

    For named groups ``family``/``rank`` give the Dynkin type; for
    subsystems (pseudo-Levi subgroups) ``components`` lists the irreducible
    pieces and ``family`` is None unless there is exactly one.
    """

    isogeny: str
    lattice_rank: int
    simple_roots: tuple[Weight, ...]
    simple_coroots: tuple[Coweight, ...]
    roots: tuple[Weight, ...]
    coroots: tuple[Coweight, ...]
    positive: tuple[bool, ...]
    components: tuple[tuple[str, int], ...]
    name: str = ""
    declared: tuple[str, int] | None = None

    # -- construction -----------------------------------------------------
    @classmethod
    def from_simple(
        cls,
        simple_roots: Sequence[Weight],
        simple_coroots: Sequence[Coweight],
        lattice_rank: int,
        isogeny: str,
        name: str = "",
    ) -> "RootDatum":
        simple_roots = tuple(tuple(int(c) for c in a) for a in simple_roots)
        simple_coroots = tuple(tuple(int(c) for c in a) for a in simple_coroots)
        r = len(simple_roots)
        pairing = [[linalg.dot(simple_roots[i], simple_coroots[j]) for j in range(r)] for i in range(r)]
        for i in range(r):
            if pairing[i][i] != 2:
                raise RootDatumError("simple root/coroot pairing must be 2 on the diagonal")

        # BFS over (coefficients in simple roots, root, coroot)
        seen: dict[Weight, tuple[tuple[int, ...], Coweight]] = {}
        frontier = []
        for i in range(r):
            coeff = tuple(int(j == i) for j in range(r))
            seen[simple_roots[i]] = (coeff, simple_coroots[i])
            frontier.append((coeff, simple_roots[i], simple_coroots[i]))
        while frontier:
            nxt = []
            for coeff, root, coroot in frontier:
                for i in range(r):
                    a, av = simple_roots[i], simple_coroots[i]
                    k = linalg.dot(root, av)
                    new_root = tuple(x - k * y for x, y in zip(root, a))
                    if new_root in seen:
                        continue
                    kv = linalg.dot(a, coroot)
                    new_coroot = tuple(x - kv * y for x, y in zip(coroot, av))
                    new_coeff = tuple(c - (k if j == i else 0) for j, c in enumerate(coeff))
                    seen[new_root] = (new_coeff, new_coroot)
                    nxt.append((new_coeff, new_root, new_coroot))
            frontier = nxt
        items = []
        for root, (coeff, coroot) in seen.items():
            pos = all(c >= 0 for c in coeff)
            if not pos and not all(c <= 0 for c in coeff):
                raise RootDatumError("root with mixed-sign coefficients; not a root system")
            items.append((0 if pos else 1, sum(abs(c) for c in coeff), tuple(-c for c in coeff), root, coroot, pos))
        items.sort()
        components = []
        for comp in _connected_components(pairing):
            sub = [[pairing[i][j] for j in comp] for i in comp]
            fam, k, _ = classify_cartan(sub)
            components.append((fam, k))
        components.sort()
        return cls(
            isogeny=isogeny,
            lattice_rank=lattice_rank,
            simple_roots=simple_roots,
            simple_coroots=simple_coroots,
            roots=tuple(it[3] for it in items),
            coroots=tuple(it[4] for it in items),
            positive=tuple(it[5] for it in items),
            components=tuple(components),
            name=name,
        )

    # -- basic invariants -------------------------------------------------
    @property
    def rank(self) -> int:
        """Semisimple rank (number of simple roots)."""
        return len(self.simple_roots)

    @property
    def family(self) -> str | None:
        if self.declared is not None:
            return self.declared[0]
        return self.components[0][0] if len(self.components) == 1 else None

    @property
    def is_torus(self) -> bool:
        return not self.roots

    @cached_property
    def pairing_matrix(self) -> list[list[int]]:
        return [[linalg.dot(a, av) for av in self.simple_coroots] for a in self.simple_roots]

    @cached_property
    def weyl_order(self) -> int:
        return math.prod(weyl_group_order(f, k) for f, k in self.components)

    @cached_property
    def coxeter_number(self) -> int:
        if len(self.components) != 1:
            raise RootDatumError("Coxeter number needs an irreducible root system")
        return coxeter_number_of(*self.components[0])

    @cached_property
    def positive_roots(self) -> tuple[Weight, ...]:
        return tuple(a for a, p in zip(self.roots, self.positive) if p)

    @cached_property
    def positive_coroots(self) -> tuple[Coweight, ...]:
        return tuple(a for a, p in zip(self.coroots, self.positive) if p)

    @cached_property
    def coroot_of(self) -> dict[Weight, Coweight]:
        return dict(zip(self.roots, self.coroots))

    @cached_property
    def rho_check(self) -> ApartmentPoint:
        """Half the sum of the positive coroots."""
        n = self.lattice_rank
        tot = [Fraction(0)] * n
        for av in self.positive_coroots:
            for i in range(n):
                tot[i] += av[i]
        return tuple(v / 2 for v in tot)

    @cached_property
    def central_directions(self) -> list[list[Fraction]]:
        """Basis of the coweights killed by every root (the center of the Lie algebra)."""
        return linalg.nullspace([list(a) for a in self.simple_roots], self.lattice_rank)

    def label(self) -> str:
        if self.name:
            return self.name
        if not self.components:
            return f"T{self.lattice_rank}"
        return "x".join(f"{f}{k}" if f != "G2" else "G2" for f, k in self.components)

    # -- actions ----------------------------------------------------------
    def reflect_weight(self, weight: Sequence, i: int) -> tuple:
        a, av = self.simple_roots[i], self.simple_coroots[i]
        k = linalg.dot(weight, av)
        return tuple(x - k * y for x, y in zip(weight, a))

    def reflect_coweight(self, coweight: Sequence, i: int) -> tuple:
        a, av = self.simple_roots[i], self.simple_coroots[i]
        k = linalg.dot(a, coweight)
        return tuple(x - k * y for x, y in zip(coweight, av))

    def pair(self, weight: Sequence, point: Sequence):
        if len(weight) != self.lattice_rank or len(point) != self.lattice_rank:
            raise RootDatumError("dimension mismatch")
        return linalg.dot(weight, point)

    def is_root(self, weight: Sequence) -> bool:
        return tuple(weight) in self.coroot_of

    def sub_datum(self, roots: Iterable[Weight], name: str = "") -> "RootDatum":
        """Root subsystem spanned by a closed symmetric set of roots."""
        roots = set(tuple(r) for r in roots)
        for r in roots:
            if r not in self.coroot_of:
                raise RootDatumError(f"{r} is not a root")
            if tuple(-c for c in r) not in roots:
                raise RootDatumError("root subset must be symmetric")
        pos = [r for r in self.positive_roots if r in roots]
        pos_set = set(pos)
        simple = []
        for r in pos:
            decomposable = any(
                tuple(x - y for x, y in zip(r, p)) in pos_set for p in pos if p != r
            )
            if not decomposable:
                simple.append(r)
        sub = RootDatum.from_simple(
            simple, [self.coroot_of[a] for a in simple], self.lattice_rank, self.isogeny, name
        )
        if set(sub.roots) != roots:
            raise RootDatumError("root subset is not closed")
        return sub

    @cached_property
    def weyl_group(self) -> "WeylGroup":
        return WeylGroup(self)


def _connected_components(pairing: Sequence[Sequence[int]]) -> list[list[int]]:
    k = len(pairing)
    seen, comps = set(), []
    for s in range(k):
        if s in seen:
            continue
        comp, stack = [], [s]
        seen.add(s)
        while stack:
            i = stack.pop()
            comp.append(i)
            for j in range(k):
                if j not in seen and pairing[i][j] != 0:
                    seen.add(j)
                    stack.append(j)
        comps.append(sorted(comp))
    return comps


def build_root_datum(family: str, rank: int, isogeny: str = "simply_connected") -> RootDatum:
    """Construct the root datum of the named type.

    ``gl`` with family A and rank n gives GL(n+1).
    """
    _validate_type(family, rank)
    if isogeny not in ISOGENIES:
        raise RootDatumError(f"unknown isogeny {isogeny!r}")
    if isogeny == "gl" and family != "A":
        raise RootDatumError("isogeny 'gl' is only available for family A")
    pairing = cartan_matrix(family, rank)
    r = rank
    if isogeny == "simply_connected":
        simple = [tuple(pairing[i]) for i in range(r)]
        cosimple = [tuple(int(i == j) for j in range(r)) for i in range(r)]
        lattice = r
    elif isogeny == "adjoint":
        simple = [tuple(int(i == j) for j in range(r)) for i in range(r)]
        cosimple = [tuple(pairing[k][i] for k in range(r)) for i in range(r)]
        lattice = r
    else:
        lattice = r + 1
        simple = [tuple((1 if k == i else -1 if k == i + 1 else 0) for k in range(lattice)) for i in range(r)]
        cosimple = list(simple)
    name = f"{family}{rank}" if family != "G2" else "G2"
    if isogeny == "gl":
        name = f"GL{rank + 1}"
    datum = RootDatum.from_simple(simple, cosimple, lattice, isogeny, name)
    if len(datum.roots) != root_count(family, rank):
        raise RootDatumError("internal error: wrong number of roots")
    # C2 and B2 coincide; the classifier reports B2
    expected = ("B", 2) if (family, rank) == ("C", 2) else (family, rank)
    if datum.components != (expected,):
        raise RootDatumError("internal error: Dynkin type mismatch")
    return replace(datum, declared=(family, rank))


def standard_epsilons(datum: RootDatum, component_simple: Sequence[Weight] | None = None,
                      component_type: tuple[str, int] | None = None) -> list[tuple[Fraction, ...]]:
    """The coordinate functionals eps_i of the classical realization, as rational weights.

    With no component given this uses the whole (irreducible) datum; for
    ``gl`` the eps_i are the standard basis.  For semisimple components the
    eps_i are projected onto the root span (relevant only in type A, where
    the projection removes the trace).
    """
    if component_simple is None:
        if datum.isogeny == "gl":
            n = datum.lattice_rank
            return [tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)]
        if datum.declared is not None:
            component_type = datum.declared
            component_simple = list(datum.simple_roots)
        elif len(datum.components) == 1:
            component_type = datum.components[0]
            order = classify_cartan(datum.pairing_matrix)[2]
            component_simple = [datum.simple_roots[i] for i in order]
        else:
            raise RootDatumError("standard coordinates need an irreducible datum")
    fam, k = component_type
    std = standard_simple_roots(fam, k)
    dim = len(std[0])
    gram = [[linalg.dot(a, b) for b in std] for a in std]
    eps = []
    for i in range(dim):
        e = [Fraction(int(i == j)) for j in range(dim)]
        q = linalg.solve(gram, [linalg.dot(e, a) for a in std])
        w = [Fraction(0)] * datum.lattice_rank
        for qj, beta in zip(q, component_simple):
            for l in range(datum.lattice_rank):
                w[l] += qj * beta[l]
        eps.append(tuple(w))
    return eps


# ---------------------------------------------------------------------------
# Finite Weyl group

class WeylElement:
    """Element of a Weyl group: a reduced word plus its matrix on coweights.

    Equality is by the action (the matrix), which for a reduced root datum
    is the same as equality of the induced permutation of the roots.
    """

    __slots__ = ("datum", "word", "matrix")

    def __init__(self, datum: RootDatum, word: tuple[int, ...], matrix: tuple[tuple[int, ...], ...]):
        self.datum = datum
        self.word = tuple(word)
        self.matrix = matrix

    @classmethod
    def from_word(cls, datum: RootDatum, word: Sequence[int]) -> "WeylElement":
        n = datum.lattice_rank
        cols = []
        for j in range(n):
            v = tuple(int(i == j) for i in range(n))
            for i in reversed(word):
                v = datum.reflect_coweight(v, i)
            cols.append(v)
        matrix = tuple(tuple(cols[j][i] for j in range(n)) for i in range(n))
        return cls(datum, tuple(word), matrix)

    @classmethod
    def identity(cls, datum: RootDatum) -> "WeylElement":
        return cls.from_word(datum, ())

    def __eq__(self, other) -> bool:
        return isinstance(other, WeylElement) and self.matrix == other.matrix

    def __hash__(self) -> int:
        return hash(self.matrix)

    def __repr__(self) -> str:
        return f"WeylElement(word={list(self.word)})"

    def __mul__(self, other: "WeylElement") -> "WeylElement":
        m = tuple(
            tuple(sum(self.matrix[i][k] * other.matrix[k][j] for k in range(len(other.matrix)))
                  for j in range(len(other.matrix)))
            for i in range(len(self.matrix))
        )
        return WeylElement(self.datum, self.word + other.word, m)

    @property
    def length(self) -> int:
        return sum(1 for a in self.datum.positive_roots if self.act_weight(a) not in set(self.datum.positive_roots))

    def inverse(self) -> "WeylElement":
        return WeylElement.from_word(self.datum, tuple(reversed(self.word)))

    def act_coweight(self, v: Sequence) -> tuple:
        return tuple(sum(row[j] * v[j] for j in range(len(v))) for row in self.matrix)

    def act_weight(self, lam: Sequence) -> tuple:
        v = tuple(lam)
        for i in reversed(self.word):
            v = self.datum.reflect_weight(v, i)
        return v

    def is_identity(self) -> bool:
        n = len(self.matrix)
        return all(self.matrix[i][j] == int(i == j) for i in range(n) for j in range(n))

    def order(self) -> int:
        k, p = 1, self
        while not p.is_identity():
            p = p * self
            k += 1
            if k > 10_000:
                raise RootDatumError("element order too large")
        return k

    def root_permutation(self) -> tuple[int, ...]:
        index = {a: i for i, a in enumerate(self.datum.roots)}
        return tuple(index[self.act_weight(a)] for a in self.datum.roots)

    def sign(self) -> int:
        return -1 if len(self.word) % 2 else 1


class WeylGroup:
    """All elements of W, enumerated breadth-first so each word is reduced."""

    def __init__(self, datum: RootDatum):
        self.datum = datum
        ident = WeylElement.identity(datum)
        elems = [ident]
        seen = {ident}
        frontier = [ident]
        simple = [WeylElement.from_word(datum, (i,)) for i in range(datum.rank)]
        while frontier:
            nxt = []
            for w in frontier:
                for s in simple:
                    sw = s * w
                    if sw not in seen:
                        seen.add(sw)
                        nxt.append(sw)
            elems.extend(nxt)
            frontier = nxt
        if len(elems) != datum.weyl_order:
            raise RootDatumError(f"Weyl group enumeration gave {len(elems)}, expected {datum.weyl_order}")
        self.elements: list[WeylElement] = elems

    def __iter__(self):
        return iter(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    @cached_property
    def longest(self) -> WeylElement:
        return self.elements[-1]


def coxeter_element(datum: RootDatum) -> WeylElement:
    """Product of the simple reflections in index order."""
    return WeylElement.from_word(datum, tuple(range(datum.rank)))


# ---------------------------------------------------------------------------
# Affine roots and the affine Weyl group

def affine_root_value(root: AffineRoot, x: Sequence[Fraction]) -> Fraction:
    if len(root.gradient) != len(x):
        raise RootDatumError("dimension mismatch")
    return Fraction(linalg.dot(root.gradient, x)) + root.level


@dataclass(frozen=True)
class AffineWeylElement:
    """The affine map y -> w(y) + translation on the apartment."""

    translation: Coweight
    finite: WeylElement

    @classmethod
    def identity(cls, datum: RootDatum) -> "AffineWeylElement":
        return cls(tuple([0] * datum.lattice_rank), WeylElement.identity(datum))

    @property
    def datum(self) -> RootDatum:
        return self.finite.datum

    def act(self, y: Sequence[Fraction]) -> ApartmentPoint:
        if len(y) != len(self.translation):
            raise RootDatumError("dimension mismatch")
        wy = self.finite.act_coweight(y)
        return tuple(Fraction(a) + b for a, b in zip(wy, self.translation))

    def __mul__(self, other: "AffineWeylElement") -> "AffineWeylElement":
        t = self.finite.act_coweight(other.translation)
        return AffineWeylElement(
            tuple(a + b for a, b in zip(t, self.translation)), self.finite * other.finite
        )

    def inverse(self) -> "AffineWeylElement":
        winv = self.finite.inverse()
        t = winv.act_coweight(self.translation)
        return AffineWeylElement(tuple(-a for a in t), winv)

    def pullback(self, root: AffineRoot) -> AffineRoot:
        """The affine root y -> root(c y), i.e. c^{-1} applied to ``root``."""
        winv = self.finite.inverse()
        grad = winv.act_weight(root.gradient)
        return AffineRoot(tuple(grad), root.level + linalg.dot(root.gradient, self.translation))


def apartment_action(c: AffineWeylElement, y: Sequence[Fraction]) -> ApartmentPoint:
    return c.act(y)


def translation(datum: RootDatum, coweight: Sequence[int]) -> AffineWeylElement:
    return AffineWeylElement(tuple(int(c) for c in coweight), WeylElement.identity(datum))


def simple_reflection(datum: RootDatum, i: int) -> AffineWeylElement:
    return AffineWeylElement(tuple([0] * datum.lattice_rank), WeylElement.from_word(datum, (i,)))


@dataclass(frozen=True)
class AlcovePosition:
    interior: bool
    walls: tuple[AffineRoot, ...] = field(default=())


def alcove_position(datum: RootDatum, x: Sequence[Fraction]) -> AlcovePosition:
    """Interior of an alcove, or the affine roots vanishing at x.

    Each root alpha with alpha(x) integral contributes exactly one vanishing
    affine root, alpha - alpha(x); levels are therefore bounded by
    max |alpha(x)|.
    """
    walls = []
    for a in datum.roots:
        v = Fraction(linalg.dot(a, x))
        if v.denominator == 1:
            walls.append(AffineRoot(a, -int(v)))
    return AlcovePosition(interior=not walls, walls=tuple(walls))


def fundamental_alcove_point(datum: RootDatum) -> ApartmentPoint:
    """An interior point of the base alcove (rho-check over the Coxeter number)."""
    h = datum.coxeter_number
    return tuple(c / h for c in datum.rho_check)


def affine_length(c: AffineWeylElement, base_point: Sequence[Fraction] | None = None) -> int:
    """Number of affine walls separating the base alcove from its image under c."""
    datum = c.datum
    p0 = base_point if base_point is not None else fundamental_alcove_point(datum)
    image = c.act(p0)
    total = 0
    for a in datum.positive_roots:
        total += abs(math.floor(Fraction(linalg.dot(a, image))) - math.floor(Fraction(linalg.dot(a, p0))))
    return total
