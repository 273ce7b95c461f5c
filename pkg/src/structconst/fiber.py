"""Stratification of minuscule convolution fibers.

For a tuple ``mu_1..mu_r`` of minuscule coweights and dominant ``lam`` the
fiber over ``t_lam`` is cut into strata ``Z_w`` indexed by ``W / W_mu`` with
``mu = mu_r^*``.  Because ``W_mu`` is the full stabilizer of ``mu``, a coset
is recorded by the orbit element ``nu = w mu``.  A stratum is nonempty exactly
when ``(lam + nu)_dom`` lies below ``mu_1 + ... + mu_{r-1}``, it is good when
``lam + nu`` is already dominant, and it has dimension ``<rho, mu + nu>``.  It
is a product of an affine space with the fiber one step shorter over
``(lam + nu)_dom``; this gives the point-count and component recursions.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .errors import DecompositionError, PreconditionError
from .hecke import hecke_algebra, rho_pairing
from .qpoly import ONE, QPoly
from .rootdata import RootDatum, Vec, WeightVec, as_vec, sum_of_minuscules_decomposition
from .weyl import WeylElement

__all__ = [
    "StratumDescriptor",
    "PullApart",
    "stratum_analyze",
    "closure_order",
    "point_count_recursion",
    "component_count_recursion",
    "pulling_apart",
    "equidimensionality_audit",
]


def _add(vs: Sequence[Vec], rank: int) -> Vec:
    out = [0] * rank
    for v in vs:
        out = [a + b for a, b in zip(out, v)]
    return tuple(out)


def _plus(a: Vec, b: Vec) -> Vec:
    return tuple(x + y for x, y in zip(a, b))


def _setup(mus: Sequence[WeightVec], lam: WeightVec) -> tuple[RootDatum, tuple[Vec, ...], Vec]:
    if not mus:
        d = lam.datum
        return d, (), lam.coords
    d = mus[0].datum
    vecs = tuple(as_vec(d, m) for m in mus)
    lv = as_vec(d, lam)
    for v in vecs:
        if not d.is_dominant(v) or not d.minuscule(v):
            raise PreconditionError(f"{v} is not a dominant minuscule coweight of {d.label}")
    if not d.is_dominant(lv):
        raise PreconditionError(f"{lv} is not dominant")
    return d, vecs, lv


@dataclass(frozen=True)
class StratumDescriptor:
    lam: WeightVec
    mu_list: tuple[WeightVec, ...]
    nu: WeightVec
    nonempty: bool
    good: bool
    dimension: int | None

    @property
    def mu(self) -> WeightVec:
        """``mu_r^*``, whose orbit indexes the strata."""
        return WeightVec(self.lam.datum.dual(self.mu_list[-1].coords), self.lam.datum)

    @property
    def w_class(self) -> WeylElement:
        """Shortest Weyl element carrying ``mu`` to ``nu``."""
        d = self.lam.datum
        g = d.weyl_group
        return WeylElement(g, g.min_coset_reps(self.mu.coords)[self.nu.coords])

    def to_json(self) -> dict:
        return {
            "lambda": self.lam.to_json(),
            "mu": [m.to_json() for m in self.mu_list],
            "nu": self.nu.to_json(),
            "nonempty": self.nonempty,
            "good": self.good,
            "dimension": self.dimension,
        }


def _analyze(d: RootDatum, lam: Vec, vecs: Sequence[Vec], nu: Vec) -> tuple[bool, bool, int | None]:
    mu = d.dual(vecs[-1])
    moved = _plus(lam, nu)
    nonempty = d.leq(d.dominant(moved), _add(vecs[:-1], d.rank))
    if not nonempty:
        return False, False, None
    dim = rho_pairing(d, _plus(mu, nu))
    assert dim >= 0
    return True, d.is_dominant(moved), dim


def stratum_analyze(lam: WeightVec, mus: Sequence[WeightVec], w) -> StratumDescriptor:
    """Describe ``Z_w`` for the last step of ``mus`` over ``lam``.

    ``w`` is a :class:`WeylElement` (any element of its coset) or directly the
    orbit element ``w mu`` as a :class:`WeightVec`.
    """
    if not mus:
        raise PreconditionError("need at least one coweight")
    d, vecs, lv = _setup(mus, lam)
    mu = d.dual(vecs[-1])
    if isinstance(w, WeylElement):
        nu = d.weyl_group.act(w.index, mu)
    else:
        nu = as_vec(d, w)
        if nu not in set(d.orbit(mu)):
            raise PreconditionError(f"{nu} is not in the orbit of {mu}")
    nonempty, good, dim = _analyze(d, lv, vecs, nu)
    return StratumDescriptor(WeightVec(lv, d), tuple(mus), WeightVec(nu, d), nonempty, good, dim)


def closure_order(s: StratumDescriptor, t: StratumDescriptor) -> bool:
    """Whether ``Z_t`` lies in the closure of ``Z_s`` (``w_t >= w_s`` in Bruhat order)."""
    if s.lam != t.lam or s.mu_list != t.mu_list:
        raise PreconditionError("strata of different fibers")
    if not (s.nonempty and t.nonempty):
        raise PreconditionError("closure order is defined on nonempty strata")
    g = s.lam.datum.weyl_group
    return g.leq(s.w_class.index, t.w_class.index)


# -- recursions --------------------------------------------------------------------

_POINTS: dict = {}
_COMPONENTS: dict = {}


def _points(d: RootDatum, vecs: tuple[Vec, ...], lam: Vec) -> QPoly:
    if not vecs:
        return ONE if not any(lam) else QPoly()
    key = (id(d), vecs, lam)
    got = _POINTS.get(key)
    if got is not None:
        return got
    prefix = _add(vecs[:-1], d.rank)
    mu = d.dual(vecs[-1])
    total = QPoly()
    for nu in d.orbit(mu):
        child = d.dominant(_plus(lam, nu))
        if d.leq(child, prefix):
            sub = _points(d, vecs[:-1], child)
            if sub:
                e = rho_pairing(d, _plus(mu, nu))
                assert e >= 0, f"negative stratum dimension {e}"
                total = total + sub.shift(e)
    return _POINTS.setdefault(key, total)


def _components(d: RootDatum, vecs: tuple[Vec, ...], lam: Vec) -> int:
    if not vecs:
        return int(not any(lam))
    key = (id(d), vecs, lam)
    got = _COMPONENTS.get(key)
    if got is not None:
        return got
    prefix = _add(vecs[:-1], d.rank)
    total = 0
    for nu in d.orbit(d.dual(vecs[-1])):
        child = _plus(lam, nu)
        if d.is_dominant(child) and d.leq(child, prefix):
            total += _components(d, vecs[:-1], child)
    return _COMPONENTS.setdefault(key, total)


def point_count_recursion(mus: Sequence[WeightVec], lam: WeightVec) -> QPoly:
    """Number of ``F_q``-points of the fiber over ``t_lam`` as a polynomial in ``q``."""
    d, vecs, lv = _setup(mus, lam)
    return _points(d, vecs, lv)


def component_count_recursion(mus: Sequence[WeightVec], lam: WeightVec) -> int:
    """Number of irreducible components of dimension ``<rho, |mu| - lam>``."""
    d, vecs, lv = _setup(mus, lam)
    return _components(d, vecs, lv)


# -- pulling apart -----------------------------------------------------------------

@dataclass
class PullApart:
    """Minuscule refinement of a tuple of sums of minuscules.

    ``blocks[i]`` is the slice of ``refined`` that sums to ``mu_i``.  The
    product of the refined spherical functions of one block is ``f_{mu_i}``
    plus lower terms; :meth:`constant` peels those off to recover
    ``c^lam_{mu}`` from point counts of the refined fiber.
    """

    datum: RootDatum
    original: tuple[Vec, ...]
    refined: tuple[Vec, ...]
    blocks: tuple[tuple[int, int], ...]
    _memo: dict = field(default_factory=dict, repr=False)

    def block(self, i: int) -> tuple[Vec, ...]:
        a, b = self.blocks[i]
        return self.refined[a:b]

    def block_expansion(self, i: int) -> dict[Vec, QPoly]:
        """``prod_j f_{nu_ij} = sum_kappa c^kappa f_kappa`` for block ``i``."""
        d = self.datum
        parts = self.block(i)
        top = _add(parts, d.rank)
        from .rootdata import dominant_weights_below

        out = {}
        for kappa in dominant_weights_below(d, top):
            c = _points(d, parts, kappa)
            if c:
                out[kappa] = c
        assert out.get(top) == ONE, "top coefficient of a block must be 1"
        return out

    def constant(self, lam: Vec) -> QPoly:
        """``c^lam_{mu}`` through the refinement."""
        return self._extract(self.original, tuple(lam))

    def _extract(self, mus: tuple[Vec, ...], lam: Vec) -> QPoly:
        key = (mus, lam)
        if key in self._memo:
            return self._memo[key]
        d = self.datum
        try:
            sub = pulling_apart([WeightVec(m, d) for m in mus])
        except DecompositionError:
            val = hecke_algebra(d).constants(mus).get(lam, QPoly())
            self._memo[key] = val
            return val
        refined_total = _points(d, sub.refined, lam)
        expansions = [sub.block_expansion(i) for i in range(len(mus))]
        lower = QPoly()
        for kappas, coeff in _tuples(expansions):
            if kappas == mus:
                continue
            inner = self._extract(kappas, lam)
            if inner:
                lower = lower + coeff * inner
        val = refined_total - lower
        self._memo[key] = val
        return val

    def nonvanishing(self, lam: Vec) -> bool:
        return bool(self.constant(lam))

    def to_json(self) -> dict:
        return {
            "refined": [list(v) for v in self.refined],
            "blocks": [list(b) for b in self.blocks],
        }


def _tuples(expansions: list[dict[Vec, QPoly]]):
    out = [((), ONE)]
    for exp in expansions:
        out = [(ks + (k,), c * e) for ks, c in out for k, e in exp.items()]
    return out


def pulling_apart(mus: Sequence[WeightVec]) -> PullApart:
    if not mus:
        raise PreconditionError("need at least one coweight")
    d = mus[0].datum
    refined: list[Vec] = []
    blocks = []
    for m in mus:
        as_vec(d, m)
        parts = sum_of_minuscules_decomposition(m)
        if parts is None:
            raise DecompositionError(f"{m} is not a sum of minuscule coweights")
        start = len(refined)
        terms = sorted((w.coords for w, k in parts for _ in range(k)), reverse=True)
        refined += terms or [m.coords]
        blocks.append((start, len(refined)))
    return PullApart(d, tuple(m.coords for m in mus), tuple(refined), tuple(blocks))


# -- audit -----------------------------------------------------------------------

def equidimensionality_audit(mus: Sequence[WeightVec], lam: WeightVec) -> dict:
    """Check that each nonempty bad stratum lies in the closure of a good one.

    For a bad stratum with shortest coset representative ``w`` the candidate
    is ``w*``, the shortest element of ``W_lam w W_mu``.  It must be good,
    nonempty and Bruhat below ``w``.  The walk descends into every nonempty
    stratum, visiting each ``(step, lambda)`` node once.
    """
    d, vecs, lv = _setup(mus, lam)
    g = d.weyl_group
    nodes = []
    failures = []
    seen = set()
    bad_checked = 0

    def visit(k: int, lam_: Vec) -> None:
        nonlocal bad_checked
        if k == 0 or (k, lam_) in seen:
            return
        seen.add((k, lam_))
        sub = vecs[:k]
        mu = d.dual(sub[-1])
        reps = g.min_coset_reps(mu)
        left = g.stabilizer_generators(lam_)
        right = g.stabilizer_generators(mu)
        strata = []
        for nu, w in sorted(reps.items(), reverse=True):
            nonempty, good, dim = _analyze(d, lam_, sub, nu)
            if not nonempty:
                continue
            entry = {"nu": list(nu), "w": [s + 1 for s in g.words[w]], "good": good, "dim": dim}
            if not good:
                bad_checked += 1
                ws = g.min_double_coset(w, left, right)
                nu_s = g.act(ws, mu)
                ne_s, good_s, dim_s = _analyze(d, lam_, sub, nu_s)
                ok = ne_s and good_s and g.leq(ws, w)
                entry["dominated_by"] = {"nu": list(nu_s), "w": [s + 1 for s in g.words[ws]], "dim": dim_s, "ok": ok}
                if not ok:
                    failures.append({"step": k, "lambda": list(lam_), **entry})
            strata.append(entry)
            visit(k - 1, d.dominant(_plus(lam_, nu)))
        nodes.append({"step": k, "lambda": list(lam_), "strata": strata})

    nonempty_fiber = bool(_points(d, vecs, lv))
    if nonempty_fiber:
        visit(len(vecs), lv)
    return {
        "instance": {"type": d.label, "mu": [list(v) for v in vecs], "lambda": list(lv)},
        "status": "PASS" if not failures else "FAIL",
        "nonempty": nonempty_fiber,
        "nodes": sorted(nodes, key=lambda n: (-n["step"], n["lambda"])),
        "bad_strata": bad_checked,
        "failures": failures,
    }
