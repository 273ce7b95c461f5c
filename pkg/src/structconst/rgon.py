"""Special r-gons through the rank-one reduction.

For each simple factor ``H`` of the adjoint group an allowed fundamental
coweight ``lam_H`` is fixed.  When every ``mu_i`` projects to ``a^H_i lam_H``
the problem splits into one ``PGL_2`` tree per factor, where side lengths
``a^H_1..a^H_r`` close up into a polygon as soon as their sum is even and no
side exceeds the sum of the others.  The certificate is the tripod: split the
sides into three consecutive groups with sums ``A, B, C`` satisfying the
triangle inequalities and take legs ``(A+B-C)/2, (B+C-A)/2, (A+C-B)/2``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .errors import (
    CapabilityError,
    DecompositionError,
    ParityError,
    PreconditionError,
    TriangleInequalityError,
)
from .rootdata import RootDatum, Vec, WeightVec, as_vec, is_allowed_fundamental

__all__ = [
    "FactorPolygon",
    "RGonWitness",
    "weak_triangle_check",
    "tree_rgon",
    "special_rgon",
    "special_rgon_crosscheck",
    "hecke_adjoint_reduction",
    "saturation_factor",
]


@dataclass(frozen=True)
class FactorPolygon:
    """Tripod certificate for one ``PGL_2`` tree (``l`` and ``m`` are 1-based)."""

    sides: tuple[int, ...]
    l: int
    m: int
    A: int
    B: int
    C: int
    legs: tuple[int, int, int]

    def check(self) -> bool:
        l1, l2, l3 = self.legs
        s = self.sides
        return (
            min(self.legs) >= 0
            and (self.A + self.B + self.C) % 2 == 0
            and self.A <= self.B + self.C
            and self.B <= self.A + self.C
            and self.C <= self.A + self.B
            and sum(s) % 2 == 0
            and self.A == sum(s[: self.l])
            and self.B == sum(s[self.l: self.m])
            and self.C == sum(s[self.m:])
            and l1 + l2 == self.B
            and l1 + l3 == self.A
            and l2 + l3 == self.C
        )

    def to_json(self) -> dict:
        return {"sides": list(self.sides), "l": self.l, "m": self.m,
                "A": self.A, "B": self.B, "C": self.C, "legs": list(self.legs)}


@dataclass(frozen=True)
class RGonWitness:
    per_factor: tuple[FactorPolygon, ...]
    allowed: tuple[int | None, ...] = field(default=())
    factor_types: tuple[str, ...] = field(default=())

    def check(self) -> bool:
        return all(p.check() for p in self.per_factor)

    def to_json(self) -> dict:
        out: dict = {"per_factor": [p.to_json() for p in self.per_factor]}
        if self.allowed:
            out["allowed"] = list(self.allowed)
            out["factor_types"] = list(self.factor_types)
        return out


def _add(vs: Sequence[Vec], rank: int) -> Vec:
    out = [0] * rank
    for v in vs:
        out = [a + b for a, b in zip(out, v)]
    return tuple(out)


def weak_triangle_check(mus: Sequence[WeightVec], centered: bool = False) -> bool:
    """``mu_i^* <= sum of the other mu_j`` for every ``i``.

    With ``centered`` the inequalities are tested on the images in the
    adjoint group, which forgets central components.
    """
    if not mus:
        raise PreconditionError("need at least one coweight")
    d = mus[0].datum
    vecs = [as_vec(d, m) for m in mus]
    for v in vecs:
        if not d.is_dominant(v):
            raise PreconditionError(f"{v} is not dominant")
    if centered:
        d, vecs = d.adjoint, [d.to_adjoint(v) for v in vecs]
    total = _add(vecs, d.rank)
    for v in vecs:
        rest = tuple(a - b for a, b in zip(total, v))
        if not d.leq(d.dual(v), rest):
            return False
    return True


def tree_rgon(u: Sequence[int]) -> FactorPolygon:
    """Special polygon in the tree of ``PGL_2`` with side lengths ``u``."""
    u = tuple(int(x) for x in u)
    if not u or any(x < 0 for x in u):
        raise PreconditionError("side lengths must be a nonempty list of nonnegative integers")
    total = sum(u)
    for i, x in enumerate(u):
        if 2 * x > total:
            raise TriangleInequalityError(f"side {i + 1} of length {x} exceeds the sum {total - x} of the others")
    if total % 2:
        raise ParityError(f"side lengths {u} have odd sum {total}")
    r = len(u)
    l, prefix = 0, 0
    for i, x in enumerate(u):
        prefix += x
        if 2 * prefix <= total:
            l = i + 1
    l = min(l, r - 1)
    m = l + 1
    A, B, C = sum(u[:l]), sum(u[l:m]), sum(u[m:])
    legs = ((A + B - C) // 2, (B + C - A) // 2, (A + C - B) // 2)
    poly = FactorPolygon(u, l, m, A, B, C, legs)
    assert poly.check(), f"tripod invariants fail for {u}"
    return poly


def _allowed_index(d: RootDatum, k: int, projections: list[tuple[int, ...]], choice: int | None) -> int:
    n = len(d.factor_indices[k])
    if choice is not None:
        if not is_allowed_fundamental(d, choice, k):
            raise DecompositionError(f"w{choice} is not allowed for factor {k + 1} ({d.factors[k]})")
        return choice
    support = {i for p in projections for i, x in enumerate(p) if x}
    if len(support) > 1:
        raise DecompositionError(f"factor {k + 1}: projections {projections} are not multiples of one coweight")
    if support:
        i = support.pop() + 1
        if not is_allowed_fundamental(d, i, k):
            raise DecompositionError(f"factor {k + 1}: w{i} is not an allowed coweight")
        return i
    allowed = [i for i in range(1, n + 1) if is_allowed_fundamental(d, i, k)]
    if not allowed:
        raise DecompositionError(f"factor {k + 1} ({d.factors[k]}) has no allowed coweight")
    return allowed[0]


def special_rgon(mus: Sequence[WeightVec], allowed_choice: Sequence[int | None] | None = None) -> RGonWitness:
    """Certificate that the fiber over ``e_0`` meets ``Q_mu``, one tree per factor.

    ``allowed_choice`` gives, for each simple factor, the 1-based index of the
    allowed fundamental coweight used; ``None`` entries are inferred.
    """
    if not mus:
        raise PreconditionError("need at least one coweight")
    d = mus[0].datum
    vecs = [as_vec(d, m) for m in mus]
    if not d.in_coroot_lattice(_add(vecs, d.rank)):
        raise PreconditionError("the sum of the coweights is not in the coroot lattice")
    choices = list(allowed_choice) if allowed_choice is not None else [None] * len(d.factors)
    if len(choices) != len(d.factors):
        raise PreconditionError(f"{d.label} has {len(d.factors)} simple factors")
    polys, used = [], []
    for k, ix in enumerate(d.factor_indices):
        proj = [tuple(d.pair(d.simple_roots[i], v) for i in ix) for v in vecs]
        i = _allowed_index(d, k, proj, choices[k])
        coeffs = []
        for p in proj:
            if any(x for j, x in enumerate(p) if j != i - 1):
                raise DecompositionError(f"projection {p} on factor {k + 1} is not a multiple of w{i}")
            coeffs.append(p[i - 1])
        polys.append(tree_rgon(coeffs))
        used.append(i)
    if not weak_triangle_check(mus):
        raise TriangleInequalityError("the weak triangle inequalities fail")
    return RGonWitness(tuple(polys), tuple(used), tuple(d.group_factors))


def special_rgon_crosscheck(mus: Sequence[WeightVec], allowed_choice=None) -> dict:
    """Build the certificate and compare with Hecke nonvanishing at ``lam = 0``."""
    from .hecke import hecke_nonvanishing

    d = mus[0].datum
    witness = special_rgon(mus, allowed_choice)
    out = {"witness": witness.to_json(), "mu": [m.to_json() for m in mus], "type": d.label}
    try:
        nonzero = hecke_nonvanishing(mus, WeightVec(d.zero(), d))
    except CapabilityError as exc:
        out.update(hecke="SKIPPED", status="SKIPPED", reason=str(exc))
        return out
    out.update(hecke=nonzero, status="PASS" if nonzero and witness.check() else "FAIL")
    return out


def hecke_adjoint_reduction(mus: Sequence[WeightVec], lam: WeightVec) -> dict:
    """Compare nonvanishing for ``G`` with the image instance in ``G_ad``."""
    from .hecke import hecke_nonvanishing

    if not mus:
        raise PreconditionError("need at least one coweight")
    d = mus[0].datum
    vecs = [as_vec(d, m) for m in mus]
    lv = as_vec(d, lam)
    diff = tuple(a - b for a, b in zip(_add(vecs, d.rank), lv))
    if not d.in_coroot_lattice(diff):
        raise PreconditionError("sum of the mu_i minus lambda is not in the coroot lattice")
    ad = d.adjoint
    bar_mus = [WeightVec(d.to_adjoint(v), ad) for v in vecs]
    bar_lam = WeightVec(d.to_adjoint(lv), ad)
    report: dict = {
        "type": d.label,
        "adjoint_type": ad.label,
        "mu": [list(v) for v in vecs],
        "lambda": list(lv),
        "mu_bar": [m.to_json() for m in bar_mus],
        "lambda_bar": bar_lam.to_json(),
    }
    for side, args in (("G", (list(mus), lam)), ("G_ad", (bar_mus, bar_lam))):
        try:
            report[side] = hecke_nonvanishing(*args)
        except CapabilityError as exc:
            report[side] = "SKIPPED"
            report[f"{side}_reason"] = str(exc)
    if "SKIPPED" in (report["G"], report["G_ad"]):
        report["status"] = "SKIPPED"
    else:
        report["status"] = "PASS" if report["G"] == report["G_ad"] else "FAIL"
    return report


_K = {"GL": 1, "GSp": 2, "E7": 12}


def saturation_factor(group) -> int | None:
    """Known Hecke saturation factors: ``GL_n`` 1, ``GSp_2n`` 2, ``E_7`` 12; ``None`` otherwise.

    ``group`` is a name such as ``"GL3"``, ``"GSp4"``, ``"E7"`` or a
    :class:`RootDatum`, read on the coweight side ``G``.
    """
    if isinstance(group, RootDatum):
        if group.model == "gl" and len(group.factors) == 1:
            return 1
        if group.group_factors == ("E7",):
            return 12
        return None
    name = str(group).replace("_", "").replace("{", "").replace("}", "")
    for prefix in ("GSp", "GL"):
        if name.startswith(prefix) and name[len(prefix):].isdigit():
            size = int(name[len(prefix):])
            if prefix == "GSp" and size % 2:
                return None
            return _K[prefix]
    return _K.get(name)
