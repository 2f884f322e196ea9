"""Brute-force lattice oracle for GL(n) over a finite prime field.

We count lattices L in F_p((eps))^n with u L contained in L, restricted to
a window eps^w L0 <= L <= eps^-w L0 of degree zero.  Writing M = eps^w L,
the candidates are the sublattices eps^(2w) L0 <= M <= L0 of index n*w,
each given by its unique upper triangular Hermite basis.

Power series are stored truncated at eps^N as tuples of residues mod p.
Every product is checked for overflow past the truncation order, so a
too-small N raises instead of silently giving a wrong count.
"""

from __future__ import annotations

import itertools
import math
import random
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

Series = tuple[int, ...]


class OracleError(ValueError):
    pass


class TruncationOverflow(OracleError):
    """A product reached a power of eps at or beyond the truncation order."""


MAX_N = 3
MAX_Q = 7


def _is_prime(q: int) -> bool:
    return q >= 2 and all(q % d for d in range(2, int(math.isqrt(q)) + 1))


# ---------------------------------------------------------------------------
# Truncated series arithmetic over F_p

@dataclass(frozen=True)
class Ring:
    p: int
    N: int

    def zero(self) -> Series:
        return (0,) * self.N

    def monomial(self, c: int, e: int) -> Series:
        if e >= self.N:
            raise TruncationOverflow(f"eps^{e} exceeds truncation order {self.N}")
        v = [0] * self.N
        v[e] = c % self.p
        return tuple(v)

    def from_coeffs(self, coeffs: Sequence[int]) -> Series:
        if any(c % self.p for c in coeffs[self.N:]):
            raise TruncationOverflow("series does not fit in the truncation order")
        v = [c % self.p for c in coeffs[: self.N]]
        return tuple(v + [0] * (self.N - len(v)))

    def add(self, a: Series, b: Series) -> Series:
        p = self.p
        return tuple((x + y) % p for x, y in zip(a, b))

    def sub(self, a: Series, b: Series) -> Series:
        p = self.p
        return tuple((x - y) % p for x, y in zip(a, b))

    def mul(self, a: Series, b: Series) -> Series:
        p, N = self.p, self.N
        out = [0] * N
        for i, x in enumerate(a):
            if not x:
                continue
            for j, y in enumerate(b):
                if not y:
                    continue
                if i + j >= N:
                    raise TruncationOverflow(f"product reaches eps^{i + j} with truncation order {N}")
                out[i + j] = (out[i + j] + x * y) % p
        return tuple(out)

    @staticmethod
    def valuation(a: Series) -> int | None:
        for i, x in enumerate(a):
            if x:
                return i
        return None

    def shift_down(self, a: Series, e: int) -> Series:
        """a / eps^e, assuming val(a) >= e."""
        return tuple(a[e:]) + (0,) * e


@dataclass(frozen=True)
class TruncSeriesMatrix:
    ring: Ring
    entries: tuple[tuple[Series, ...], ...]

    @property
    def n(self) -> int:
        return len(self.entries)

    def apply(self, v: Sequence[Series]) -> tuple[Series, ...]:
        R = self.ring
        out = []
        for row in self.entries:
            acc = R.zero()
            for a, b in zip(row, v):
                acc = R.add(acc, R.mul(a, b))
            out.append(acc)
        return tuple(out)

    def matmul(self, other: "TruncSeriesMatrix") -> "TruncSeriesMatrix":
        R = self.ring
        n = self.n
        cols = [tuple(other.entries[i][j] for i in range(n)) for j in range(n)]
        images = [self.apply(c) for c in cols]
        return TruncSeriesMatrix(R, tuple(tuple(images[j][i] for j in range(n)) for i in range(n)))

    def max_degree(self) -> int:
        deg = 0
        for row in self.entries:
            for a in row:
                nz = [i for i, x in enumerate(a) if x]
                if nz:
                    deg = max(deg, nz[-1])
        return deg


def _matrix_from_terms(ring: Ring, n: int, terms) -> TruncSeriesMatrix:
    rows = [[ring.zero() for _ in range(n)] for _ in range(n)]
    for (i, j), (c, e) in terms.items():
        rows[i][j] = ring.add(rows[i][j], ring.monomial(c, e))
    return TruncSeriesMatrix(ring, tuple(tuple(r) for r in rows))


def coxeter_element_matrix(n: int, m: int, q: int, N: int) -> TruncSeriesMatrix:
    """Companion-type u: u e_i = e_{i+1} for i < n, u e_n = eps^m e_1."""
    _check_params(n, m, q)
    if m >= N:
        raise TruncationOverflow("truncation order must exceed m")
    terms = {(i + 1, i): (1, 0) for i in range(n - 1)}
    terms[(0, n - 1)] = (1, m)
    return _matrix_from_terms(Ring(q, N), n, terms)


def graded_coxeter_matrix(n: int, m: int, q: int, N: int) -> TruncSeriesMatrix:
    """Homogeneous representative: sum_i eps^{(m - (j - i))/n} E_{i,j}, j = i + m mod n.

    It has degree m/n for the grading by rho-check / n, so its lattice
    positions match the paving cells one for one.
    """
    _check_params(n, m, q)
    terms = {}
    for i in range(n):
        j = (i + m) % n
        level = (m - (j - i)) // n
        if level >= N:
            raise TruncationOverflow("truncation order must exceed the entries' valuations")
        terms[(i, j)] = (1, level)
    return _matrix_from_terms(Ring(q, N), n, terms)


def scalar_matrix(n: int, e: int, q: int, N: int) -> TruncSeriesMatrix:
    """eps^e times the identity."""
    return _matrix_from_terms(Ring(q, N), n, {(i, i): (1, e) for i in range(n)})


def _check_params(n: int, m: int, q: int) -> None:
    if n < 1 or n > MAX_N:
        raise OracleError(f"oracle limit: n must be between 1 and {MAX_N}")
    if not _is_prime(q) or q > MAX_Q:
        raise OracleError(f"oracle limit: q must be a prime <= {MAX_Q}")
    if m < 1 or math.gcd(m, n) != 1:
        raise OracleError("m must be positive and coprime to n")


# ---------------------------------------------------------------------------
# Lattices

@dataclass(frozen=True)
class LatticeRep:
    """Hermite basis of M = eps^w L: column j is eps^{a_j} e_j + sum_{i<j} b_ij e_i."""

    profile: tuple[int, ...]
    columns: tuple[tuple[Series, ...], ...]
    window: int

    def key(self):
        return (self.profile, self.columns)


def _contains(ring: Ring, lat: LatticeRep, v: Sequence[Series]) -> bool:
    """Is v in the lattice spanned by the Hermite columns?  Back substitution."""
    n = len(lat.profile)
    coeffs: list[Series | None] = [None] * n
    for i in range(n - 1, -1, -1):
        r = v[i]
        for k in range(i + 1, n):
            if coeffs[k] is not None:
                r = ring.sub(r, ring.mul(lat.columns[k][i], coeffs[k]))
        a = lat.profile[i]
        val = Ring.valuation(r)
        if val is None:
            coeffs[i] = ring.zero()
            continue
        if val < a:
            return False
        coeffs[i] = ring.shift_down(r, a)
    return True


def _hermite_forms(ring: Ring, n: int, w: int):
    total = n * w
    for profile in itertools.product(range(2 * w + 1), repeat=n):
        if sum(profile) != total:
            continue
        slots = [(i, j) for j in range(n) for i in range(j)]
        ranges = [itertools.product(range(ring.p), repeat=profile[i]) for i, _ in slots]
        for choice in itertools.product(*[list(r) for r in ranges]):
            cols = []
            for j in range(n):
                col = []
                for i in range(n):
                    if i == j:
                        col.append(ring.monomial(1, profile[j]))
                    elif i < j:
                        col.append(ring.from_coeffs(choice[slots.index((i, j))]))
                    else:
                        col.append(ring.zero())
                cols.append(tuple(col))
            yield LatticeRep(profile, tuple(cols), w)


def enumerate_stable_lattices(u: TruncSeriesMatrix, window: int) -> list[LatticeRep]:
    """All Hermite forms in the degree-zero window with u L inside L, sorted canonically."""
    ring = u.ring
    n = u.n
    if window < 0:
        raise OracleError("window must be nonnegative")
    needed = u.max_degree() + 2 * window + 1
    if ring.N <= needed:
        raise TruncationOverflow(
            f"truncation order {ring.N} too small for window {window} (need > {needed})"
        )
    out = []
    corner = [tuple(ring.monomial(1, 2 * window) if i == j else ring.zero() for i in range(n)) for j in range(n)]
    for lat in _hermite_forms(ring, n, window):
        if not all(_contains(ring, lat, c) for c in corner):
            continue
        if all(_contains(ring, lat, u.apply(col)) for col in lat.columns):
            out.append(lat)
    out.sort(key=LatticeRep.key)
    return out


def _rank_mod_p(rows: list[list[int]], p: int) -> int:
    rows = [r[:] for r in rows if any(r)]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(rows)) if rows[i][c] % p), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = pow(rows[rank][c], -1, p)
        rows[rank] = [(x * inv) % p for x in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][c] % p:
                f = rows[i][c]
                rows[i] = [(x - f * y) % p for x, y in zip(rows[i], rows[rank])]
        rank += 1
    return rank


def _index_in(ring: Ring, lat: LatticeRep, depths: Sequence[int]) -> int:
    """dim_Fp of the image of M in sum_i o / eps^{depths[i]}."""
    depths = [max(0, d) for d in depths]
    if sum(depths) == 0:
        return 0
    vectors = []
    for col in lat.columns:
        for e in range(max(depths)):
            vec = []
            for i, d in enumerate(depths):
                shifted = [0] * e + list(col[i])
                vec.extend(shifted[:d])
            vectors.append(vec)
    return _rank_mod_p(vectors, ring.p)


def iwahori_position(ring: Ring, lat: LatticeRep) -> tuple[int, ...]:
    """The lambda with L in I eps^lambda L0, I the upper triangular Iwahori subgroup."""
    n = len(lat.profile)
    w = lat.window
    top = 2 * w + 2

    def F(j: int, k: int) -> int:
        return _index_in(ring, lat, [k + (1 if i >= j else 0) for i in range(n)])

    lam = []
    for j in range(1, n + 1):
        for k in range(0, top + 1):
            if F(j - 1, k) - F(j, k) == 1:
                lam.append(k - w)
                break
        else:
            raise OracleError("could not determine the Iwahori position")
    return tuple(lam)


# ---------------------------------------------------------------------------
# Runs and comparison

@dataclass
class OracleResult:
    n: int
    m: int
    q: int
    N: int
    window: int
    variant: str
    total: int
    positions: dict[tuple[int, ...], int] = field(default_factory=dict)


def default_truncation(n: int, m: int, window: int) -> int:
    return m + 2 * window + 2


def run_oracle(n: int, m: int, q: int, window: int, N: int | None = None,
               variant: str = "graded", positions: bool = True) -> OracleResult:
    N = default_truncation(n, m, window) if N is None else N
    if N <= max(m, 2 * window + 1):
        raise TruncationOverflow(f"truncation order {N} too small")
    if variant == "graded":
        u = graded_coxeter_matrix(n, m, q, N)
    elif variant == "companion":
        u = coxeter_element_matrix(n, m, q, N)
    else:
        raise OracleError(f"unknown oracle variant {variant!r}")
    lattices = enumerate_stable_lattices(u, window)
    pos: dict[tuple[int, ...], int] = {}
    if positions:
        pos = dict(sorted(Counter(iwahori_position(u.ring, lat) for lat in lattices).items()))
    return OracleResult(n, m, q, N, window, variant, len(lattices), pos)


def random_unimodular(n: int, q: int, N: int, rng: random.Random, steps: int = 4,
                      max_degree: int = 1) -> tuple[TruncSeriesMatrix, TruncSeriesMatrix]:
    """A random g in GL_n(F_q[eps]) with polynomial inverse, as a product of elementary matrices."""
    ring = Ring(q, N)
    ident = {(i, i): (1, 0) for i in range(n)}
    g = _matrix_from_terms(ring, n, ident)
    ginv = _matrix_from_terms(ring, n, ident)
    for _ in range(steps):
        i, j = rng.sample(range(n), 2)
        coeffs = [rng.randrange(q) for _ in range(max_degree + 1)]
        e = ring.from_coeffs(coeffs)
        neg = ring.from_coeffs([-c for c in coeffs])
        elem = [[ring.monomial(1, 0) if a == b else ring.zero() for b in range(n)] for a in range(n)]
        elem_inv = [row[:] for row in elem]
        elem[i][j] = e
        elem_inv[i][j] = neg
        E = TruncSeriesMatrix(ring, tuple(tuple(r) for r in elem))
        Einv = TruncSeriesMatrix(ring, tuple(tuple(r) for r in elem_inv))
        g = E.matmul(g)
        ginv = ginv.matmul(Einv)
    return g, ginv


def conjugate(g: TruncSeriesMatrix, u: TruncSeriesMatrix, ginv: TruncSeriesMatrix) -> TruncSeriesMatrix:
    return g.matmul(u).matmul(ginv)


@dataclass
class Verdict:
    status: str  # "match", "mismatch" or "window mismatch"
    total_oracle: int
    total_paving: int
    per_orbit: list[dict]
    offending: list[tuple[int, ...]]

    @property
    def match(self) -> bool:
        return self.status == "match"


def paving_position(y_prime: Sequence[Fraction]) -> tuple[int, ...]:
    """Iwahori position of the lattice attached to the cell with apartment point y'."""
    return tuple(-int(c) for c in y_prime)


def compare_with_paving(oracle: OracleResult, report, problem=None) -> Verdict:
    """Compare oracle counts with a paving report, per orbit and in total."""
    if not report.affine_paving:
        raise OracleError("comparison needs an affine paving")
    if problem is not None:
        datum = problem.datum
        if datum.isogeny != "gl" or datum.lattice_rank != oracle.n:
            raise OracleError("mismatched problem parameters: root datum")
        if problem.s != Fraction(oracle.m, oracle.n) or problem.t != 0 or any(problem.y):
            raise OracleError("mismatched problem parameters: s, t or y")
    q, w = oracle.q, oracle.window
    covered = {}
    for cell in report.cells:
        pos = paving_position(cell.y_prime)
        if sum(pos) != 0:
            continue
        covered[pos] = 0 if cell.empty else q ** cell.dim_total
    in_window = {p: v for p, v in covered.items() if max(abs(c) for c in p) <= w}
    per_orbit, offending = [], []
    outside = False
    for pos in sorted(set(in_window) | set(oracle.positions)):
        found = oracle.positions.get(pos, 0)
        if pos not in covered:
            outside = outside or found > 0
            per_orbit.append({"position": list(pos), "oracle": found, "paving": None})
            continue
        expected = in_window.get(pos, 0)
        per_orbit.append({"position": list(pos), "oracle": found, "paving": expected})
        if found != expected and oracle.positions:
            offending.append(pos)
    total_paving = sum(in_window.values())
    if outside:
        status = "window mismatch"
    elif offending or oracle.total != total_paving:
        status = "mismatch"
    else:
        status = "match"
    return Verdict(status, oracle.total, total_paving, per_orbit, offending)
