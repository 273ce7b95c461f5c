"""Finite-dimensional representations of the dual group.

Highest weights are dominant coweights of ``G``; the roots of the dual group
are the coroots of ``G``.  Weight multiplicities come from Freudenthal's
recursion on the dominant chamber, tensor products from Brauer-Klimyk with the
``rho``-shifted reflection.  ``rho_shift`` (the sum of the fundamental
coweights) stands in for ``rho``: it differs from the half sum of positive
coroots by a central vector, which no reflection moves.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import CapabilityError, PreconditionError
from .rootdata import RootDatum, Vec, WeightVec, as_vec, dominant_weights_below

__all__ = [
    "WeightMultiset",
    "TensorDecomposition",
    "PRVWitness",
    "weyl_dimension",
    "weight_system",
    "dominant_multiplicities",
    "tensor_decompose",
    "tensor_multiplicity",
    "rep_nonvanishing",
    "prv_witness_search",
    "rep_to_simply_connected",
]

WEIGHT_BUDGET = 200_000
"""Largest weight system or tensor support handled before giving up."""


@dataclass(frozen=True)
class WeightMultiset:
    datum: RootDatum
    entries: dict[WeightVec, int]

    @property
    def dimension(self) -> int:
        return sum(self.entries.values())

    def __getitem__(self, v: WeightVec) -> int:
        return self.entries.get(v, 0)

    def to_json(self) -> list:
        return [[list(v.coords), m] for v, m in sorted(self.entries.items(), reverse=True)]


@dataclass(frozen=True)
class TensorDecomposition:
    datum: RootDatum
    factors: tuple[WeightVec, ...]
    constituents: dict[WeightVec, int]

    def __getitem__(self, lam: WeightVec) -> int:
        return self.constituents.get(lam, 0)

    def mass(self) -> int:
        return sum(m * weyl_dimension(lam) for lam, m in self.constituents.items())

    def to_json(self) -> dict[str, int]:
        return {",".join(map(str, lam.coords)): m for lam, m in sorted(self.constituents.items(), reverse=True)}


@dataclass(frozen=True)
class PRVWitness:
    """One solution of ``lam = w_1 mu_1 + ... + w_r mu_r``.

    ``weights`` holds the summands ``w_i mu_i`` and ``words`` a reduced word
    (1-based simple indices) of the shortest ``w_i`` producing each of them.
    """

    weights: tuple[Vec, ...]
    words: tuple[tuple[int, ...], ...] = field(compare=False)

    def to_json(self) -> dict:
        return {"weights": [list(v) for v in self.weights], "words": [list(w) for w in self.words]}


# -- single representations ------------------------------------------------------

def _check_dominant(d: RootDatum, v: Vec) -> None:
    if not d.is_dominant(v):
        raise PreconditionError(f"{v} is not dominant for {d.label}")


def _dim(d: RootDatum, mu: Vec) -> int:
    rho = d.rho_shift
    num = den = 1
    for a in d.positive_roots:
        num *= sum(x * (y + z) for x, y, z in zip(a, mu, rho))
        den *= sum(x * z for x, z in zip(a, rho))
    val = Fraction(num, den)
    assert val.denominator == 1, "Weyl dimension is not integral"
    return int(val)


def weyl_dimension(mu: WeightVec) -> int:
    d = mu.datum
    _check_dominant(d, mu.coords)
    return _dim(d, mu.coords)


def _form(d: RootDatum, u: Sequence[int], v: Sequence[int]) -> int:
    """Invariant form ``sum over all roots <a, u><a, v>`` (twice the positive sum)."""
    return 2 * sum(sum(x * y for x, y in zip(a, u)) * sum(x * y for x, y in zip(a, v)) for a in d.positive_roots)


def dominant_multiplicities(d: RootDatum, mu: Vec) -> dict[Vec, int]:
    """Freudenthal multiplicities of the dominant weights of ``V_mu``."""
    _check_dominant(d, mu)
    order = dominant_weights_below(d, mu)
    if len(order) > WEIGHT_BUDGET:
        raise CapabilityError(f"too many dominant weights below {mu}")
    rho = d.rho_shift
    top = [a + b for a, b in zip(mu, rho)]
    top_norm = _form(d, top, top)
    mult: dict[Vec, int] = {mu: 1}
    for lam in order[1:]:
        shifted = [a + b for a, b in zip(lam, rho)]
        den = top_norm - _form(d, shifted, shifted)
        num = 0
        for c in d.positive_coroots:
            k = 1
            while True:
                v = tuple(a + k * b for a, b in zip(lam, c))
                m = mult.get(d.dominant(v), 0)
                if not m:
                    break
                num += m * _form(d, v, c)
                k += 1
        val = Fraction(2 * num, den)
        assert val.denominator == 1 and val >= 0, f"Freudenthal gave {val} at {lam}"
        if val:
            mult[lam] = int(val)
    return mult


def _weights(d: RootDatum, mu: Vec) -> dict[Vec, int]:
    out: dict[Vec, int] = {}
    for lam, m in dominant_multiplicities(d, mu).items():
        for v in d.orbit(lam, WEIGHT_BUDGET):
            out[v] = m
        if len(out) > WEIGHT_BUDGET:
            raise CapabilityError(f"weight system of {mu} exceeds {WEIGHT_BUDGET} weights")
    return out


def weight_system(mu: WeightVec) -> WeightMultiset:
    d = mu.datum
    return WeightMultiset(d, {WeightVec(v, d): m for v, m in _weights(d, mu.coords).items()})


# -- tensor products ------------------------------------------------------------------

def _reflect_dominant(d: RootDatum, v: Vec) -> tuple[Vec, int]:
    """Move ``v`` into the open dominant chamber; sign 0 when it lies on a wall."""
    sign = 1
    v = tuple(v)
    while True:
        for i, a in enumerate(d.simple_roots):
            k = sum(x * y for x, y in zip(a, v))
            if k == 0:
                return v, 0
            if k < 0:
                v = d.reflect(i, v)
                sign = -sign
                break
        else:
            return v, sign


def _bk_step(d: RootDatum, acc: dict[Vec, int], weights: dict[Vec, int]) -> dict[Vec, int]:
    rho = d.rho_shift
    out: Counter = Counter()
    for lam, a in acc.items():
        base = [x + y for x, y in zip(lam, rho)]
        for nu, m in weights.items():
            v, sign = _reflect_dominant(d, tuple(x + y for x, y in zip(base, nu)))
            if sign:
                out[tuple(x - y for x, y in zip(v, rho))] += sign * a * m
    res = {lam: c for lam, c in out.items() if c}
    assert all(c > 0 for c in res.values()), "negative tensor multiplicity"
    if len(res) > WEIGHT_BUDGET:
        raise CapabilityError("tensor product support too large")
    return res


def _add(vs: Sequence[Vec], rank: int) -> Vec:
    out = [0] * rank
    for v in vs:
        out = [a + b for a, b in zip(out, v)]
    return tuple(out)


def _decompose(d: RootDatum, mus: Sequence[Vec], target: Vec | None = None) -> dict[Vec, int]:
    for mu in mus:
        _check_dominant(d, mu)
    acc = {tuple(mus[0]): 1}
    cache: dict[Vec, dict[Vec, int]] = {}
    for k, mu in enumerate(mus[1:], start=1):
        mu = tuple(mu)
        if mu not in cache:
            cache[mu] = _weights(d, mu)
        acc = _bk_step(d, acc, cache[mu])
        if target is not None:
            rest = _add(mus[k + 1:], d.rank)
            rest_dual = _add([d.dual(m) for m in mus[k + 1:]], d.rank)
            # the final constituent lies below lam + rest, and lam below target + rest*
            acc = {lam: c for lam, c in acc.items()
                   if d.leq(target, tuple(a + b for a, b in zip(lam, rest)))
                   and d.leq(lam, tuple(a + b for a, b in zip(target, rest_dual)))}
    return acc


def _datum_of(mus: Sequence[WeightVec]) -> RootDatum:
    if not mus:
        raise PreconditionError("need at least one highest weight")
    d = mus[0].datum
    for m in mus:
        as_vec(d, m)
    return d


def tensor_decompose(mus: Sequence[WeightVec]) -> TensorDecomposition:
    d = _datum_of(mus)
    raw = _decompose(d, [m.coords for m in mus])
    return TensorDecomposition(d, tuple(mus), {WeightVec(lam, d): c for lam, c in raw.items()})


def tensor_multiplicity(mus: Sequence[WeightVec], lam: WeightVec) -> int:
    """``dim V^lam_{mu_1..mu_r}``, pruning constituents that cannot reach ``lam``."""
    d = _datum_of(mus)
    target = as_vec(d, lam)
    _check_dominant(d, target)
    total = _add([m.coords for m in mus], d.rank)
    if not d.leq(target, total):
        return 0
    return _decompose(d, [m.coords for m in mus], target).get(target, 0)


def rep_nonvanishing(mus: Sequence[WeightVec], lam: WeightVec) -> bool:
    return tensor_multiplicity(mus, lam) > 0


# -- PRV witnesses and reduction ----------------------------------------------------------

def _word_to(d: RootDatum, v: Vec) -> tuple[int, ...]:
    """Reduced word of the shortest ``w`` with ``w(dominant(v)) = v``."""
    word = []
    while True:
        for i, a in enumerate(d.simple_roots):
            if sum(x * y for x, y in zip(a, v)) < 0:
                v = d.reflect(i, v)
                word.append(i + 1)
                break
        else:
            return tuple(word)


def prv_witness_search(mus: Sequence[WeightVec], lam: WeightVec, limit: int | None = None) -> list[PRVWitness] | None:
    """All ways to write ``lam`` as ``sum w_i mu_i``, one per tuple of summands.

    Partial sums are pruned when the remaining difference cannot be a sum of
    the remaining orbit elements (its dominant form must lie below their sum).
    ``limit`` stops the search after that many witnesses.
    """
    d = _datum_of(mus)
    target = as_vec(d, lam)
    _check_dominant(d, target)
    vecs = [m.coords for m in mus]
    for v in vecs:
        _check_dominant(d, v)
    orbits = [d.orbit(v) for v in vecs]
    r = len(vecs)
    tails = [_add(vecs[i:], d.rank) for i in range(r + 1)]
    found: list[tuple[Vec, ...]] = []

    def feasible(rem: Vec, i: int) -> bool:
        return d.leq(d.dominant(rem), tails[i])

    def walk(i: int, rem: Vec, chosen: list[Vec]) -> None:
        if limit is not None and len(found) >= limit:
            return
        if i == r - 1:
            if rem in orbit_sets[i]:
                found.append(tuple(chosen) + (rem,))
            return
        for nu in orbits[i]:
            nxt = tuple(a - b for a, b in zip(rem, nu))
            if feasible(nxt, i + 1):
                chosen.append(nu)
                walk(i + 1, nxt, chosen)
                chosen.pop()

    orbit_sets = [set(o) for o in orbits]
    if feasible(target, 0):
        walk(0, target, [])
    if not found:
        return None
    return [PRVWitness(ws, tuple(_word_to(d, w) for w in ws)) for ws in found]


def rep_to_simply_connected(mus: Sequence[WeightVec], lam: WeightVec) -> tuple[list[WeightVec], WeightVec]:
    """Push an instance to the simply connected cover of the derived dual group.

    The dual of the adjoint quotient of ``G`` is the simply connected cover of
    the derived group of the dual group; its weights are Dynkin labels.
    """
    d = _datum_of(mus)
    lv = as_vec(d, lam)
    diff = tuple(a - b for a, b in zip(_add([m.coords for m in mus], d.rank), lv))
    if not d.in_coroot_lattice(diff):
        raise PreconditionError("sum of the mu_i minus lambda is not in the root lattice of the dual group")
    sc = d.adjoint
    return [WeightVec(d.to_adjoint(m.coords), sc) for m in mus], WeightVec(d.to_adjoint(lv), sc)
