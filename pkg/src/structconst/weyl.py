"""Finite and extended affine Weyl groups.

The finite group is materialized by closure from simple reflections.  Each
element is identified by the image of the regular vector ``rho_shift``, which
also gives the product ``u * v`` (apply ``u`` to the key of ``v``).  Elements
are handled as indices into flat tables; :class:`WeylElement` wraps an index
for the public interface.

Extended affine elements ``t_lam w`` are pairs ``(lam, w)`` in normal form with
product ``(t_a u)(t_b v) = t_{a + u b} (u v)`` and Iwahori-Matsumoto length

    l(t_lam w) = sum over alpha > 0 of |<alpha, lam> - [w^{-1} alpha < 0]|.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

from .errors import CapabilityError, PreconditionError
from .rootdata import RootDatum, Vec, WeightVec, as_vec

MAX_ORDER = 400

Affine = tuple[Vec, int]

__all__ = [
    "WeylGroup",
    "WeylElement",
    "AffineElement",
    "orbit",
    "stabilizer_order",
    "bruhat_leq",
    "minimal_double_coset_rep",
    "affine_length",
    "double_coset_elements",
]


def _matvec(m: Sequence[Sequence[int]], v: Sequence[int]) -> Vec:
    return tuple(sum(a * b for a, b in zip(row, v)) for row in m)


def _matmul(a, b):
    bt = tuple(zip(*b))
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a)


class WeylGroup:
    """Tables for the finite Weyl group of a root datum."""

    _lock = threading.Lock()

    def __init__(self, datum: RootDatum, limit: int = MAX_ORDER):
        self.datum = datum
        n = datum.rank
        ident = tuple(tuple(int(i == j) for j in range(n)) for i in range(n))
        gens = []
        for a, c in zip(datum.simple_roots, datum.simple_coroots):
            gens.append(tuple(tuple(int(i == j) - c[i] * a[j] for j in range(n)) for i in range(n)))
        self.generators = tuple(gens)
        rho = datum.rho_shift
        self.keys: list[Vec] = [rho]
        self.matrices = [ident]
        self.words: list[tuple[int, ...]] = [()]
        self.index = {rho: 0}
        frontier = [0]
        while frontier:
            nxt = []
            for w in frontier:
                for s, g in enumerate(gens):
                    key = _matvec(g, self.keys[w])
                    if key in self.index:
                        continue
                    if len(self.keys) >= limit:
                        raise CapabilityError(f"Weyl group of {datum.label} exceeds {limit} elements")
                    self.index[key] = len(self.keys)
                    self.keys.append(key)
                    self.matrices.append(_matmul(g, self.matrices[w]))
                    self.words.append((s,) + self.words[w])
                    nxt.append(len(self.keys) - 1)
            frontier = nxt
        self.order = len(self.keys)
        self.lengths = [len(w) for w in self.words]
        rank = datum.semisimple_rank
        self.lmul = [[self.index[_matvec(gens[s], self.keys[w])] for w in range(self.order)] for s in range(rank)]
        self.rmul = [[self.mul(w, self.index[_matvec(gens[s], rho)]) for w in range(self.order)] for s in range(rank)]
        self.inverse = [0] * self.order
        for w in range(self.order):
            x = 0
            for s in reversed(self.words[w]):
                x = self.rmul[s][x]
            self.inverse[w] = x
        self._bruhat: dict[int, frozenset[int]] = {}

    def mul(self, u: int, v: int) -> int:
        return self.index[_matvec(self.matrices[u], self.keys[v])]

    def act(self, w: int, v: Sequence[int]) -> Vec:
        return _matvec(self.matrices[w], v)

    def element(self, w: int) -> "WeylElement":
        return WeylElement(self, w)

    def from_word(self, word: Sequence[int]) -> int:
        x = 0
        for s in word:
            x = self.rmul[s][x]
        return x

    @cached_property
    def longest(self) -> int:
        return max(range(self.order), key=lambda w: self.lengths[w])

    @cached_property
    def inversion_flags(self) -> list[tuple[int, ...]]:
        """For each ``w``: flags ``[w^{-1} alpha < 0]`` over the positive roots."""
        pos = self.datum.positive_roots
        return [tuple(int(sum(a * b for a, b in zip(alpha, key)) < 0) for alpha in pos) for key in self.keys]

    @cached_property
    def poincare(self) -> tuple[int, ...]:
        """Coefficients of ``P_W(q) = sum_w q^{l(w)}``."""
        out = [0] * (max(self.lengths) + 1)
        for ell in self.lengths:
            out[ell] += 1
        return tuple(out)

    def bruhat_interval(self, w: int) -> frozenset[int]:
        """All ``u <= w``: products of subwords of a reduced word of ``w``."""
        got = self._bruhat.get(w)
        if got is None:
            below = {0}
            for s in self.words[w]:
                below |= {self.rmul[s][x] for x in below}
            got = frozenset(below)
            with self._lock:
                self._bruhat[w] = got
        return got

    def leq(self, u: int, w: int) -> bool:
        return u in self.bruhat_interval(w)

    def stabilizer_generators(self, v: Sequence[int]) -> tuple[int, ...]:
        """Simple indices fixing a dominant ``v``."""
        return tuple(i for i, a in enumerate(self.datum.simple_roots) if sum(x * y for x, y in zip(a, v)) == 0)

    def min_double_coset(self, w: int, left: Sequence[int], right: Sequence[int]) -> int:
        changed = True
        while changed:
            changed = False
            for s in left:
                y = self.lmul[s][w]
                if self.lengths[y] < self.lengths[w]:
                    w, changed = y, True
            for s in right:
                y = self.rmul[s][w]
                if self.lengths[y] < self.lengths[w]:
                    w, changed = y, True
        return w

    def min_coset_reps(self, mu: Sequence[int]) -> dict[Vec, int]:
        """``nu -> `` the shortest ``w`` with ``w mu = nu``, over the orbit of ``mu``."""
        out: dict[Vec, int] = {}
        for w in range(self.order):
            nu = self.act(w, mu)
            if nu not in out or self.lengths[w] < self.lengths[out[nu]]:
                out[nu] = w
        return out

    # -- extended affine Weyl group ---------------------------------------------

    def compose(self, x: Affine, y: Affine) -> Affine:
        lam, u = x
        nu, v = y
        moved = self.act(u, nu) if u else nu
        return tuple(a + b for a, b in zip(lam, moved)), self.mul(u, v) if u else v

    def affine_inverse(self, x: Affine) -> Affine:
        lam, u = x
        ui = self.inverse[u]
        return tuple(-a for a in self.act(ui, lam)), ui

    def affine_length(self, x: Affine) -> int:
        lam, w = x
        total = 0
        for alpha, flag in zip(self.datum.positive_roots, self.inversion_flags[w]):
            total += abs(sum(a * b for a, b in zip(alpha, lam)) - flag)
        return total

    @cached_property
    def affine_simple(self) -> tuple[Affine, ...]:
        """Simple affine reflections: the finite ones, then one ``s_0`` per factor."""
        zero = self.datum.zero()
        out = [(zero, self.rmul[s][0]) for s in range(self.datum.semisimple_rank)]
        for theta, theta_v in self.datum.highest_roots:
            key = tuple(r - sum(a * b for a, b in zip(theta, self.datum.rho_shift)) * c
                        for r, c in zip(self.datum.rho_shift, theta_v))
            s_theta = self.index[key]
            cands = [(tuple(sgn * c for c in theta_v), s_theta) for sgn in (1, -1)]
            good = [x for x in cands if self.affine_length(x) == 1]
            assert len(good) == 1, "expected exactly one affine simple reflection per factor"
            out.append(good[0])
        return tuple(out)


def _group(datum: RootDatum) -> WeylGroup:
    return datum.weyl_group


@dataclass(frozen=True)
class WeylElement:
    group: WeylGroup
    index: int

    @property
    def word(self) -> tuple[int, ...]:
        return self.group.words[self.index]

    @property
    def matrix(self) -> tuple[tuple[int, ...], ...]:
        return self.group.matrices[self.index]

    @property
    def length(self) -> int:
        return self.group.lengths[self.index]

    def __mul__(self, other: "WeylElement") -> "WeylElement":
        return WeylElement(self.group, self.group.mul(self.index, other.index))

    def inverse(self) -> "WeylElement":
        return WeylElement(self.group, self.group.inverse[self.index])

    def __call__(self, v: WeightVec) -> WeightVec:
        return WeightVec(self.group.act(self.index, as_vec(self.group.datum, v)), self.group.datum)

    def to_json(self) -> list[int]:
        return [s + 1 for s in self.word]

    def __repr__(self) -> str:
        return "e" if not self.word else "s" + ".s".join(str(s + 1) for s in self.word)


@dataclass(frozen=True)
class AffineElement:
    translation: WeightVec
    finite_part: WeylElement

    @property
    def key(self) -> Affine:
        return self.translation.coords, self.finite_part.index

    @classmethod
    def from_key(cls, datum: RootDatum, key: Affine) -> "AffineElement":
        return cls(WeightVec(key[0], datum), WeylElement(datum.weyl_group, key[1]))

    def __mul__(self, other: "AffineElement") -> "AffineElement":
        g = self.finite_part.group
        return AffineElement.from_key(g.datum, g.compose(self.key, other.key))

    def to_json(self) -> dict:
        return {"translation": list(self.translation.coords), "word": self.finite_part.to_json()}


def orbit(v: WeightVec) -> set[WeightVec]:
    d = v.datum
    return {WeightVec(x, d) for x in d.orbit(v.coords)}


def stabilizer_order(v: WeightVec) -> int:
    g = _group(v.datum)
    return g.order // len(v.datum.orbit(v.coords))


def bruhat_leq(u: WeylElement, w: WeylElement) -> bool:
    if u.group is not w.group:
        raise PreconditionError("elements of different Weyl groups")
    return u.group.leq(u.index, w.index)


def minimal_double_coset_rep(w: WeylElement, lam: WeightVec, mu: WeightVec) -> WeylElement:
    """Shortest element of ``W_lam w W_mu`` for dominant ``lam`` and ``mu``."""
    g = w.group
    for v in (lam, mu):
        if not g.datum.is_dominant(as_vec(g.datum, v)):
            raise PreconditionError(f"{v} is not dominant")
    left = g.stabilizer_generators(as_vec(g.datum, lam))
    right = g.stabilizer_generators(as_vec(g.datum, mu))
    return WeylElement(g, g.min_double_coset(w.index, left, right))


def affine_length(x: AffineElement) -> int:
    return x.finite_part.group.affine_length(x.key)


def double_coset_elements(mu: WeightVec) -> set[AffineElement]:
    d = mu.datum
    if not d.is_dominant(mu.coords):
        raise PreconditionError(f"{mu} is not dominant")
    g = _group(d)
    return {AffineElement.from_key(d, (nu, w)) for nu in d.orbit(mu.coords) for w in range(g.order)}
