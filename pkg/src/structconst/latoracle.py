"""Brute-force point counts of GL_n convolution fibers over small finite fields.

A lattice ``L`` with ``t^hi O^n <= L <= t^lo O^n`` is stored as the t-stable
subspace ``L / t^hi O^n`` of ``V = t^lo O^n / t^hi O^n``, an ``F_q``-space
with basis ``t^s e_j`` at index ``(s - lo) n + j``.  Subspaces are kept in
reduced row echelon form, which makes them hashable and canonical.

For minuscule ``mu_i = (1^k, 0^{n-k}) + c (1^n)`` a lattice ``L'`` in position
``mu_i`` from ``L`` (ignoring the twist) satisfies ``tL <= L' <= L`` with
``dim L / L' = k``.  The fiber over ``t^lam`` is the set of chains
``O^n = L_0 >= L_1 >= ... >= L_r = t^lam' O^n`` with the twists removed from
``lam``.  Every member of such a chain contains the endpoint, so the
enumeration runs in the smaller quotient ``O^n / t^lam' O^n``, where the
endpoint is the zero subspace.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import CapabilityError, DatumMismatchError, InconsistencyError, PrecisionError, PreconditionError
from .qpoly import QPoly
from .rootdata import WeightVec

__all__ = [
    "FiniteField",
    "Lattice",
    "LatticeChain",
    "FiberCount",
    "smith_exponents",
    "relative_position",
    "enumerate_fiber",
    "interpolate_polynomial",
    "oracle_polynomial",
]

SUPPORTED_Q = (2, 3, 4, 5)
MAX_N = 4
MAX_R = 4
WITNESS_CAP = 1000


class FiniteField:
    """``F_q`` for ``q`` in 2, 3, 4, 5 with elements ``0..q-1``.

    ``F_4`` is ``F_2[x] / (x^2 + x + 1)`` with ``a + b x`` stored as ``a + 2b``.
    """

    _cache: dict[int, "FiniteField"] = {}

    def __new__(cls, q: int):
        if q not in SUPPORTED_Q:
            raise CapabilityError(f"field of order {q} is not supported (choose from {SUPPORTED_Q})")
        if q not in cls._cache:
            self = super().__new__(cls)
            self._setup(q)
            cls._cache[q] = self
        return cls._cache[q]

    def _setup(self, q: int) -> None:
        self.q = q
        if q == 4:
            self.add_table = [[a ^ b for b in range(4)] for a in range(4)]

            def mul(a, b):
                a0, a1, b0, b1 = a & 1, a >> 1, b & 1, b >> 1
                c0 = (a0 & b0) ^ (a1 & b1)
                c1 = (a0 & b1) ^ (a1 & b0) ^ (a1 & b1)
                return c0 | (c1 << 1)

            self.mul_table = [[mul(a, b) for b in range(4)] for a in range(4)]
        else:
            self.add_table = [[(a + b) % q for b in range(q)] for a in range(q)]
            self.mul_table = [[(a * b) % q for b in range(q)] for a in range(q)]
        self.neg_table = [next(b for b in range(q) if self.add_table[a][b] == 0) for a in range(q)]
        self.inv_table = [0] + [next(b for b in range(q) if self.mul_table[a][b] == 1) for a in range(1, q)]

    def __repr__(self) -> str:
        return f"GF({self.q})"

    @property
    def elements(self) -> range:
        return range(self.q)

    def add(self, a: int, b: int) -> int:
        return self.add_table[a][b]

    def sub(self, a: int, b: int) -> int:
        return self.add_table[a][self.neg_table[b]]

    def mul(self, a: int, b: int) -> int:
        return self.mul_table[a][b]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("zero has no inverse")
        return self.inv_table[a]

    # -- row reduction ---------------------------------------------------------------

    def axpy(self, c: int, x: Sequence[int], y: Sequence[int]) -> list[int]:
        """``y - c x``."""
        if c == 0:
            return list(y)
        m = self.mul_table[self.neg_table[c]]
        add = self.add_table
        return [add[b][m[a]] for a, b in zip(x, y)]

    def rref(self, rows: Iterable[Sequence[int]]) -> tuple[tuple[int, ...], ...]:
        basis: list[list[int]] = []
        pivots: list[int] = []
        for row in rows:
            v = list(row)
            for b, p in zip(basis, pivots):
                if v[p]:
                    v = self.axpy(v[p], b, v)
            p = next((i for i, x in enumerate(v) if x), None)
            if p is None:
                continue
            c = self.inv_table[v[p]]
            v = [self.mul_table[c][x] for x in v]
            for k, b in enumerate(basis):
                if b[p]:
                    basis[k] = self.axpy(b[p], v, b)
            basis.append(v)
            pivots.append(p)
        order = sorted(range(len(basis)), key=lambda k: pivots[k])
        return tuple(tuple(basis[k]) for k in order)

    def reduce(self, basis: Sequence[Sequence[int]], v: Sequence[int]) -> list[int]:
        """Remainder of ``v`` modulo an RREF basis."""
        v = list(v)
        for b in basis:
            p = next(i for i, x in enumerate(b) if x)
            if v[p]:
                v = self.axpy(v[p], b, v)
        return v

    def subspaces(self, dim: int, k: int) -> Iterable[tuple[tuple[int, ...], ...]]:
        """All ``k``-dimensional subspaces of ``F^dim`` in RREF."""
        if k < 0 or k > dim:
            return
        for piv in itertools.combinations(range(dim), k):
            free = [(r, j) for r, p in enumerate(piv) for j in range(p + 1, dim) if j not in piv]
            for vals in itertools.product(range(self.q), repeat=len(free)):
                rows = [[0] * dim for _ in piv]
                for r, p in enumerate(piv):
                    rows[r][p] = 1
                for (r, j), x in zip(free, vals):
                    rows[r][j] = x
                yield tuple(tuple(r) for r in rows)


# -- lattices --------------------------------------------------------------------------

@dataclass(frozen=True)
class Lattice:
    """A lattice between ``t^hi O^n`` and ``t^lo O^n`` over ``F_q``."""

    field: FiniteField
    n: int
    lo: int
    hi: int
    basis: tuple[tuple[int, ...], ...]

    @property
    def dim(self) -> int:
        return len(self.basis)

    def index(self, s: int, j: int) -> int:
        return (s - self.lo) * self.n + j

    @classmethod
    def standard(cls, F: FiniteField, n: int, lo: int, hi: int, shifts: Sequence[int] | None = None) -> "Lattice":
        """``span(t^{a_j} e_j)``; ``O^n`` when ``shifts`` is omitted."""
        shifts = [0] * n if shifts is None else list(shifts)
        if any(a < lo for a in shifts):
            raise PrecisionError(f"exponents {shifts} fall below the window start {lo}")
        size = (hi - lo) * n
        rows = []
        for j, a in enumerate(shifts):
            for s in range(max(a, lo), hi):
                v = [0] * size
                v[(s - lo) * n + j] = 1
                rows.append(v)
        return cls(F, n, lo, hi, F.rref(rows))

    @classmethod
    def from_generators(cls, F: FiniteField, gens: Sequence[Sequence[dict[int, int]]], window: int) -> "Lattice":
        """``O``-span of column vectors with Laurent-polynomial entries ``{exponent: coeff}``.

        The window is ``[-window, window)``; a :class:`PrecisionError` signals
        that the lattice does not fit (the caller should enlarge the window).
        """
        n = len(gens[0])
        lo, hi = -window, window
        for g in gens:
            for entry in g:
                if any(e < lo for e, c in entry.items() if c % F.q):
                    raise PrecisionError("generator reaches below the window")
        exps = smith_exponents(F, [[_laurent_row(g[i], lo, 2 * window) for g in gens] for i in range(n)],
                               precision=2 * window, shift=lo)
        if len(exps) < n or exps[0] >= hi:
            raise PrecisionError(f"elementary divisors {exps} do not fit in the window [{lo}, {hi})")
        size = (hi - lo) * n
        rows = []
        for g in gens:
            for s in range(0, hi - lo):
                v = [0] * size
                for j, entry in enumerate(g):
                    for e, c in entry.items():
                        if lo <= e + s < hi and c % F.q:
                            idx = (e + s - lo) * n + j
                            v[idx] = F.add(v[idx], c % F.q)
                rows.append(v)
        return cls(F, n, lo, hi, F.rref(rows))

    def times_t(self, k: int = 1) -> "Lattice":
        """``t^k L``; negative ``k`` needs room at the bottom of the window."""
        n, size = self.n, len(self.basis[0]) if self.basis else (self.hi - self.lo) * self.n
        rows = []
        for b in self.basis:
            v = [0] * size
            for i, x in enumerate(b):
                if x:
                    j = i + k * n
                    if j < 0:
                        raise PrecisionError("t-power leaves the window")
                    if j < size:
                        v[j] = x
            rows.append(v)
        if k < 0:
            for i in range(size + k * n, size):
                v = [0] * size
                v[i] = 1
                rows.append(v)
        return Lattice(self.field, n, self.lo, self.hi, self.field.rref(rows))

    def contains(self, other: "Lattice") -> bool:
        return all(not any(self.field.reduce(self.basis, v)) for v in other.basis)

    def __add__(self, other: "Lattice") -> "Lattice":
        return Lattice(self.field, self.n, self.lo, self.hi, self.field.rref(self.basis + other.basis))

    def __and__(self, other: "Lattice") -> "Lattice":
        F = self.field
        size = (self.hi - self.lo) * self.n
        zero = [0] * size
        rows = [list(a) + list(a) for a in self.basis] + [list(b) + zero for b in other.basis]
        out = [r[size:] for r in F.rref(rows) if not any(r[:size])]
        return Lattice(F, self.n, self.lo, self.hi, F.rref(out))

    def above(self, s: int) -> "Lattice":
        """``L`` intersected with ``t^s O^n``."""
        return self & Lattice.standard(self.field, self.n, self.lo, self.hi, [min(max(s, self.lo), self.hi)] * self.n)

    def to_json(self) -> list[list[int]]:
        return [list(b) for b in self.basis]


def _laurent_row(entry: dict[int, int], lo: int, precision: int) -> list[int]:
    out = [0] * precision
    for e, c in entry.items():
        if 0 <= e - lo < precision:
            out[e - lo] = c
    return out


def _positive_parts(L: Lattice, M: Lattice) -> list[int]:
    """Multiset of the positive exponents of ``inv(L, M)``."""
    span = L.hi - L.lo
    pos = []
    for k in range(0, span + 1):
        # t^{-k} M inside the window, intersected with L
        shifted = M.above(L.lo + k).times_t(-k)
        pos.append(L.dim - (L & shifted).dim)
    counts = [pos[m - 1] - pos[m] for m in range(1, span + 1)]
    out = []
    for m in range(1, span + 1):
        nxt = counts[m] if m < span else 0
        out += [m] * (counts[m - 1] - nxt)
    return out


def relative_position(L: Lattice, M: Lattice) -> tuple[int, ...]:
    """``inv(L, M)``: exponents ``a`` with ``M = span t^{a_i} f_i`` for a basis ``f`` of ``L``, decreasing."""
    if (L.field, L.n, L.lo, L.hi) != (M.field, M.n, M.lo, M.hi):
        raise PreconditionError("lattices live in different windows")
    pos = _positive_parts(L, M)
    neg = [-a for a in _positive_parts(M, L)]
    zeros = L.n - len(pos) - len(neg)
    if zeros < 0:
        raise PrecisionError("inconsistent exponent count; enlarge the window")
    return tuple(sorted(pos + [0] * zeros + neg, reverse=True))


def smith_exponents(F: FiniteField, matrix: Sequence[Sequence[Sequence[int]]], precision: int, shift: int = 0) -> list[int]:
    """Elementary-divisor exponents of a matrix over ``F_q[[t]] / t^precision``.

    Entries are coefficient lists (constant term first); ``shift`` is added to
    every exponent, so Laurent matrices are handled by factoring out
    ``t^shift``.  A :class:`PrecisionError` is raised when the matrix is not
    invertible modulo ``t^precision`` over ``F_q((t))``, i.e. when some
    elementary divisor vanishes at this precision.
    """
    M = [[list(e[:precision]) + [0] * (precision - len(e)) for e in row] for row in matrix]
    nrows = len(M)
    ncols = len(M[0]) if M else 0

    def val(e):
        return next((i for i, x in enumerate(e) if x), precision)

    def mul(a, b):
        out = [0] * precision
        for i, x in enumerate(a):
            if x:
                for j in range(precision - i):
                    if b[j]:
                        out[i + j] = F.add(out[i + j], F.mul(x, b[j]))
        return out

    def unit_inverse(u):
        inv = [0] * precision
        inv[0] = F.inv(u[0])
        for k in range(1, precision):
            acc = 0
            for j in range(1, k + 1):
                acc = F.add(acc, F.mul(u[j], inv[k - j]))
            inv[k] = F.mul(F.neg_table[acc], inv[0])
        return inv

    exps = []
    rows = list(range(nrows))
    cols = list(range(ncols))
    while rows and cols:
        best = min(((val(M[i][j]), i, j) for i in rows for j in cols), default=(precision, None, None))
        v, pi, pj = best
        if v >= precision:
            raise PrecisionError(f"matrix is singular modulo t^{precision}")
        exps.append(v + shift)
        piv = M[pi][pj]
        u = piv[v:] + [0] * v
        uinv = unit_inverse(u)
        for i in rows:
            if i == pi or val(M[i][pj]) >= precision:
                continue
            e = M[i][pj]
            factor = mul(e[v:] + [0] * v, uinv)
            for j in cols:
                prod = mul(factor, M[pi][j])
                M[i][j] = [F.sub(a, b) for a, b in zip(M[i][j], prod)]
        rows.remove(pi)
        cols.remove(pj)
    if len(exps) < min(nrows, ncols):
        raise PrecisionError("rank deficient at this precision")
    return sorted(exps, reverse=True)


# -- fiber enumeration -----------------------------------------------------------------

@dataclass(frozen=True)
class LatticeChain:
    """One point of the fiber.

    ``steps[i]`` is ``L_{i+1} / t^lam' O^n`` in RREF, inside the quotient
    ``O^n / t^lam' O^n`` whose basis is ``t^s e_j`` for ``0 <= s < lam'_j``
    ordered by ``j`` and then ``s``.
    """

    q: int
    n: int
    steps: tuple[tuple[tuple[int, ...], ...], ...]
    endpoint: tuple[int, ...]

    def lattices(self, window: int) -> list[Lattice]:
        """``L_0 .. L_r`` as :class:`Lattice` objects in the window ``[-window, window)``."""
        F = FiniteField(self.q)
        cells = [(j, s) for j in range(self.n) for s in range(self.endpoint[j])]
        end = Lattice.standard(F, self.n, -window, window, self.endpoint)
        size = 2 * window * self.n
        out = [Lattice.standard(F, self.n, -window, window)]
        for basis in self.steps:
            rows = list(end.basis)
            for b in basis:
                v = [0] * size
                for x, (j, s) in zip(b, cells):
                    v[(s + window) * self.n + j] = x
                rows.append(v)
            out.append(Lattice(F, self.n, -window, window, F.rref(rows)))
        return out

    def to_json(self) -> dict:
        return {"q": self.q, "n": self.n, "endpoint": list(self.endpoint),
                "steps": [[list(r) for r in s] for s in self.steps]}


@dataclass
class FiberCount:
    count: int
    witnesses: list[LatticeChain] = field(default_factory=list)

    def to_json(self) -> dict:
        out: dict = {"count": self.count}
        if self.witnesses:
            out["witnesses"] = [w.to_json() for w in self.witnesses]
        return out


def _step_type(v: Sequence[int]) -> tuple[int, int]:
    """``(k, c)`` with ``v = (1^k, 0^{n-k}) + c (1^n)``."""
    c = min(v)
    if any(x not in (c, c + 1) for x in v) or list(v) != sorted(v, reverse=True):
        raise PreconditionError(f"{tuple(v)} is not a dominant minuscule coweight of GL_{len(v)}")
    return sum(1 for x in v if x == c + 1), c


class _Enumerator:
    """Chains of t-stable subspaces of ``V = O^n / t^end O^n`` ending at zero."""

    def __init__(self, F: FiniteField, end: Sequence[int], steps: Sequence[int]):
        self.F = F
        self.steps = list(steps)
        cells = [(j, s) for j in range(len(end)) for s in range(end[j])]
        pos = {c: i for i, c in enumerate(cells)}
        self.dim = len(cells)
        # image of each basis vector under t (None when it dies)
        self.t_image = [pos.get((j, s + 1)) for j, s in cells]
        self.memo: dict[tuple[int, tuple], int] = {}

    def times_t(self, basis):
        rows = []
        for b in basis:
            v = [0] * self.dim
            for i, x in enumerate(b):
                if x:
                    k = self.t_image[i]
                    if k is not None:
                        v[k] = x
            rows.append(v)
        return self.F.rref(rows)

    def killed_by(self, basis, m: int) -> bool:
        """Whether ``t^m`` annihilates the subspace."""
        for _ in range(m):
            if not basis:
                return True
            basis = self.times_t(basis)
        return not basis

    def choices(self, basis, k: int):
        F = self.F
        tL = self.times_t(basis)
        need = len(basis) - k - len(tL)
        if need < 0:
            return
        comp = []
        cur = list(tL)
        for b in basis:
            r = F.reduce(F.rref(cur), b)
            if any(r):
                comp.append(r)
                cur.append(r)
        for sub in F.subspaces(len(comp), need):
            rows = list(tL)
            for coeffs in sub:
                v = [0] * self.dim
                for c, b in zip(coeffs, comp):
                    if c:
                        v = F.axpy(F.neg_table[c], b, v)
                rows.append(v)
            yield F.rref(rows)

    def count(self, i: int, basis) -> int:
        if i == len(self.steps):
            return int(not basis)
        key = (i, basis)
        got = self.memo.get(key)
        if got is None:
            got = 0
            left = len(self.steps) - i - 1
            for U in self.choices(basis, self.steps[i]):
                if self.killed_by(U, left):
                    got += self.count(i + 1, U)
            self.memo[key] = got
        return got

    def walk(self, i: int, basis, path: list, out: list, cap: int) -> None:
        if len(out) >= cap:
            return
        if i == len(self.steps):
            if not basis:
                out.append(tuple(path))
            return
        for U in self.choices(basis, self.steps[i]):
            if self.count(i + 1, U) if self.killed_by(U, len(self.steps) - i - 1) else 0:
                path.append(U)
                self.walk(i + 1, U, path, out, cap)
                path.pop()


def enumerate_fiber(mus: Sequence[WeightVec], lam: WeightVec, q: int, witnesses: bool = False) -> FiberCount:
    """Count ``F_q``-points of the fiber over ``t^lam`` for a GL_n tuple of minuscule coweights."""
    if not mus:
        raise PreconditionError("need at least one coweight")
    d = mus[0].datum
    if d.model != "gl":
        raise CapabilityError(f"the lattice oracle handles GL_n only, not {d.label}")
    n = d.rank
    r = len(mus)
    if n > MAX_N or r > MAX_R:
        raise CapabilityError(f"oracle budget is n <= {MAX_N}, r <= {MAX_R}")
    F = FiniteField(q)
    steps, twist = [], 0
    for m in list(mus) + [lam]:
        if m.datum is not d:
            raise DatumMismatchError("mixed root data")
    for m in mus:
        k, c = _step_type(m.coords)
        steps.append(k)
        twist += c
    end = tuple(x - twist for x in lam.coords)
    if list(end) != sorted(end, reverse=True):
        raise PreconditionError(f"{lam} is not dominant")
    if sum(end) != sum(steps) or min(end) < 0 or max(end) > r:
        return FiberCount(0)
    en = _Enumerator(F, end, steps)
    whole = F.rref([[int(i == j) for j in range(en.dim)] for i in range(en.dim)])
    total = en.count(0, whole)
    found: list[LatticeChain] = []
    if witnesses and total:
        paths: list = []
        en.walk(0, whole, [], paths, WITNESS_CAP)
        found = [LatticeChain(q, n, p, end) for p in paths]
    return FiberCount(total, found)


def interpolate_polynomial(counts: Sequence[tuple[int, int]], degree_bound: int) -> QPoly:
    """Integer polynomial of degree at most ``degree_bound`` through the samples.

    Extra samples beyond ``degree_bound + 1`` are used as checks.
    """
    pts = {}
    for x, y in counts:
        if x in pts and pts[x] != y:
            raise InconsistencyError(f"two different counts at q = {x}")
        pts[x] = y
    if len(pts) < degree_bound + 1:
        raise PreconditionError(f"need {degree_bound + 1} distinct sample points, got {len(pts)}")
    xs = sorted(pts)[: degree_bound + 1]
    coeffs = [Fraction(0)] * (degree_bound + 1)
    for i, xi in enumerate(xs):
        basis = [Fraction(1)]
        den = Fraction(1)
        for j, xj in enumerate(xs):
            if j == i:
                continue
            basis = [Fraction(0)] + basis
            for k in range(len(basis) - 1):
                basis[k] -= xj * basis[k + 1]
            den *= xi - xj
        for k, b in enumerate(basis):
            coeffs[k] += pts[xi] * b / den
    if any(c.denominator != 1 for c in coeffs):
        raise InconsistencyError(f"samples {sorted(pts.items())} are not an integer polynomial of degree <= {degree_bound}")
    poly = QPoly(int(c) for c in coeffs)
    for x, y in pts.items():
        if poly(x) != y:
            raise InconsistencyError(f"interpolant {poly} misses the sample ({x}, {y})")
    return poly


def oracle_polynomial(mus: Sequence[WeightVec], lam: WeightVec, qs: Sequence[int], degree_bound: int) -> QPoly:
    return interpolate_polynomial([(q, enumerate_fiber(mus, lam, q).count) for q in qs], degree_bound)
