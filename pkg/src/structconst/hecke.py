"""Spherical Hecke structure constants through the Iwahori-Hecke algebra.

Elements are expanded in the basis ``T_x`` indexed by the extended affine Weyl
group, with the Iwahori-Matsumoto relations

    T_s T_x = T_{sx}                        if l(sx) > l(x)
    T_s T_x = q T_{sx} + (q - 1) T_x        otherwise
    T_w T_x = T_{wx}                        for l(w) = 0.

``T_x h`` is evaluated by peeling a reduced word off ``x``.  The spherical
function of ``K mu K`` is ``f_mu = sum of T_x over x in W t_mu W``, and with
Haar measure of ``K`` equal to one

    f_{mu_1} * ... * f_{mu_r} = sum over lam of c^lam(q) f_lam,

where ``c^lam`` is the coefficient of ``T_{t_lam}`` in the Iwahori product
divided by ``P_W(q)^{r-1}``.

Two routes are available.  ``method="direct"`` forms the Iwahori product
literally.  ``method="spherical"`` (the default) folds pairwise products of
spherical functions and uses ``f_nu = T_W A_nu`` and ``f_mu = B_mu T_W``, where
``T_W`` is the sum over the finite Weyl group and ``A``, ``B`` sum the minimal
coset representatives.  For a single ``z`` in ``W t_kappa W`` the element
``T_W T_z T_W`` is ``q^{l(z)} P_W^2 / M_kappa`` times ``f_kappa``, where
``M_kappa`` sums ``q^l`` over the double coset (compare both sides under the
character ``T_x -> q^{l(x)}``).  Hence only ``A_nu B_mu`` has to be expanded.
"""

from __future__ import annotations

import threading
from typing import Iterable, Sequence

from .errors import CapabilityError, PreconditionError
from .qpoly import ONE, Q, QPoly
from .rootdata import RootDatum, Vec, WeightVec, as_vec
from .weyl import Affine, AffineElement, WeylGroup

__all__ = [
    "HeckeAlgebra",
    "HeckeElement",
    "hecke_algebra",
    "t_basis_product",
    "spherical_basis_element",
    "structure_constants",
    "hecke_nonvanishing",
    "leading_term_check",
    "rho_pairing",
]

Q_MINUS_1 = QPoly([-1, 1])


def rho_pairing(datum: RootDatum, v: Sequence[int]) -> int:
    """``<rho, v>`` computed as half of ``<2 rho, v>``, which must be even."""
    two = sum(a * b for a, b in zip(datum.two_rho, v))
    if two % 2:
        raise PreconditionError(f"<2rho, {tuple(v)}> = {two} is odd; the vector is off the coroot lattice")
    return two // 2


class HeckeAlgebra:
    """Iwahori-Hecke algebra of the extended affine Weyl group of a datum."""

    def __init__(self, datum: RootDatum):
        self.datum = datum
        self.W: WeylGroup = datum.weyl_group
        self.simple = self.W.affine_simple
        self._length: dict[Affine, int] = {}
        self._word: dict[Affine, tuple[tuple[int, ...], Affine]] = {}
        self._pairs: dict[tuple[Vec, Vec], dict[Vec, QPoly]] = {}
        self._reps: dict[tuple[str, Vec], tuple[Affine, ...]] = {}
        self._mass: dict[Vec, QPoly] = {}
        self._lock = threading.Lock()

    # -- group-level helpers -----------------------------------------------------

    def length(self, x: Affine) -> int:
        ell = self._length.get(x)
        if ell is None:
            ell = self.W.affine_length(x)
            self._length[x] = ell
        return ell

    def reduced(self, x: Affine) -> tuple[tuple[int, ...], Affine]:
        """``(k_1..k_m, omega)`` with ``x = s_{k_1} ... s_{k_m} omega`` reduced."""
        got = self._word.get(x)
        if got is not None:
            return got
        chain = []
        y = x
        while True:
            cached = self._word.get(y)
            if cached is not None:
                word, omega = cached
                break
            ell = self.length(y)
            if ell == 0:
                word, omega = (), y
                break
            for k, s in enumerate(self.simple):
                z = self.W.compose(s, y)
                if self.length(z) < ell:
                    chain.append((y, k))
                    y = z
                    break
            else:  # pragma: no cover - the length function guarantees a descent
                raise AssertionError(f"no left descent for {x}")
        for y, k in reversed(chain):
            word = (k,) + word
            self._word[y] = (word, omega)
        self._word.setdefault(x, (word, omega))
        return self._word[x]

    # -- module operations ---------------------------------------------------------

    def apply_simple(self, k: int, h: dict[Affine, QPoly]) -> dict[Affine, QPoly]:
        s = self.simple[k]
        out: dict[Affine, QPoly] = {}
        for z, c in h.items():
            sz = self.W.compose(s, z)
            if self.length(sz) > self.length(z):
                out[sz] = out[sz] + c if sz in out else c
            else:
                qc = c.shift(1)
                out[sz] = out[sz] + qc if sz in out else qc
                rest = qc - c
                out[z] = out[z] + rest if z in out else rest
        return {z: c for z, c in out.items() if c}

    def apply(self, x: Affine, h: dict[Affine, QPoly]) -> dict[Affine, QPoly]:
        """``T_x h``."""
        word, omega = self.reduced(x)
        out = {self.W.compose(omega, z): c for z, c in h.items()}
        for k in reversed(word):
            out = self.apply_simple(k, out)
        return out

    def multiply(self, a: dict[Affine, QPoly], b: dict[Affine, QPoly]) -> dict[Affine, QPoly]:
        out: dict[Affine, QPoly] = {}
        for x, c in a.items():
            for z, d in self.apply(x, b).items():
                val = c * d
                out[z] = out[z] + val if z in out else val
        return {z: c for z, c in out.items() if c}

    # -- spherical data ------------------------------------------------------------

    @property
    def poincare(self) -> QPoly:
        return QPoly(self.W.poincare)

    def double_coset(self, mu: Vec) -> list[Affine]:
        return [(nu, w) for nu in self.datum.orbit(mu) for w in range(self.W.order)]

    def spherical(self, mu: Vec) -> dict[Affine, QPoly]:
        return {x: ONE for x in self.double_coset(mu)}

    def _descend(self, x: Affine, side: str) -> Affine:
        W = self.W
        zero = self.datum.zero()
        while True:
            ell = self.length(x)
            for s in range(self.datum.semisimple_rank):
                g = (zero, W.rmul[s][0])
                y = W.compose(g, x) if side == "left" else W.compose(x, g)
                if self.length(y) < ell:
                    x = y
                    break
            else:
                return x

    def coset_reps(self, mu: Vec, side: str) -> tuple[Affine, ...]:
        """Minimal representatives of ``W \\ W t_mu W`` (left) or ``W t_mu W / W`` (right)."""
        key = (side, mu)
        got = self._reps.get(key)
        if got is None:
            if side == "left":
                starts = [(mu, u) for u in range(self.W.order)]
            else:
                starts = [(nu, 0) for nu in self.datum.orbit(mu)]
            got = tuple(sorted({self._descend(x, side) for x in starts}))
            self._reps[key] = got
        return got

    def mass(self, lam: Vec) -> QPoly:
        """``M_lam``: the sum of ``q^{l(x)}`` over ``W t_lam W``."""
        got = self._mass.get(lam)
        if got is None:
            inner = [0] * 1
            for x in self.coset_reps(lam, "left"):
                ell = self.length(x)
                if ell >= len(inner):
                    inner += [0] * (ell + 1 - len(inner))
                inner[ell] += 1
            got = self.poincare * QPoly(inner)
            self._mass[lam] = got
        return got

    def pair_constants(self, nu: Vec, mu: Vec) -> dict[Vec, QPoly]:
        """Structure constants of ``f_nu * f_mu`` (Haar measure of ``K`` equal to one)."""
        key = (nu, mu)
        got = self._pairs.get(key)
        if got is not None:
            return got
        right = {y: ONE for y in self.coset_reps(mu, "right")}
        sums: dict[Vec, QPoly] = {}
        for x in self.coset_reps(nu, "left"):
            for z, c in self.apply(x, right).items():
                lam = self.datum.dominant(z[0])
                val = c.shift(self.length(z))
                sums[lam] = sums[lam] + val if lam in sums else val
        pw = self.poincare
        out = {}
        for lam, s in sums.items():
            c = (pw * s).exact_div(self.mass(lam))
            if c:
                out[lam] = c
        with self._lock:
            self._pairs[key] = out
        return out

    def constants(self, mus: Sequence[Vec], method: str = "spherical") -> dict[Vec, QPoly]:
        if not mus:
            raise PreconditionError("need at least one coweight")
        for mu in mus:
            if not self.datum.is_dominant(mu):
                raise PreconditionError(f"{mu} is not dominant")
        if method == "direct":
            return self._direct(mus)
        if method != "spherical":
            raise ValueError(f"unknown method {method!r}")
        acc: dict[Vec, QPoly] = {tuple(mus[0]): ONE}
        for mu in mus[1:]:
            nxt: dict[Vec, QPoly] = {}
            for nu, a in acc.items():
                for lam, c in self.pair_constants(nu, tuple(mu)).items():
                    val = a * c
                    nxt[lam] = nxt[lam] + val if lam in nxt else val
            acc = {lam: c for lam, c in nxt.items() if c}
        return acc

    def _direct(self, mus: Sequence[Vec]) -> dict[Vec, QPoly]:
        prod = self.spherical(tuple(mus[0]))
        for mu in mus[1:]:
            prod = self.multiply(prod, self.spherical(tuple(mu)))
        norm = self.poincare ** (len(mus) - 1)
        out = {}
        for (lam, w), c in prod.items():
            if w == 0 and self.datum.is_dominant(lam):
                out[lam] = c.exact_div(norm)
        return {lam: c for lam, c in out.items() if c}


_ALGEBRAS: dict[int, HeckeAlgebra] = {}
_ALG_LOCK = threading.Lock()


def hecke_algebra(datum: RootDatum) -> HeckeAlgebra:
    alg = _ALGEBRAS.get(id(datum))
    if alg is None:
        try:
            alg = HeckeAlgebra(datum)
        except CapabilityError:
            raise
        with _ALG_LOCK:
            alg = _ALGEBRAS.setdefault(id(datum), alg)
    return alg


class HeckeElement:
    """Finite T-basis expansion ``sum c_x T_x``."""

    def __init__(self, datum: RootDatum, support: dict[Affine, QPoly] | None = None):
        self.datum = datum
        self.support = {x: c for x, c in (support or {}).items() if c}

    @property
    def algebra(self) -> HeckeAlgebra:
        return hecke_algebra(self.datum)

    @classmethod
    def basis(cls, x: AffineElement) -> "HeckeElement":
        return cls(x.translation.datum, {x.key: ONE})

    def __add__(self, other: "HeckeElement") -> "HeckeElement":
        out = dict(self.support)
        for x, c in other.support.items():
            out[x] = out[x] + c if x in out else c
        return HeckeElement(self.datum, out)

    def __sub__(self, other: "HeckeElement") -> "HeckeElement":
        return self + HeckeElement(self.datum, {x: -c for x, c in other.support.items()})

    def __mul__(self, other) -> "HeckeElement":
        if isinstance(other, (int, QPoly)):
            return HeckeElement(self.datum, {x: c * other for x, c in self.support.items()})
        return HeckeElement(self.datum, self.algebra.multiply(self.support, other.support))

    def __eq__(self, other) -> bool:
        return isinstance(other, HeckeElement) and other.datum is self.datum and other.support == self.support

    def __len__(self) -> int:
        return len(self.support)

    def coefficient(self, x: AffineElement | Affine) -> QPoly:
        key = x.key if isinstance(x, AffineElement) else x
        return self.support.get(key, QPoly())

    def items(self) -> Iterable[tuple[AffineElement, QPoly]]:
        for x in sorted(self.support):
            yield AffineElement.from_key(self.datum, x), self.support[x]

    def __repr__(self) -> str:
        terms = [f"({c})*T[{x[0]},{self.algebra.W.words[x[1]]}]" for x, c in sorted(self.support.items())]
        return " + ".join(terms) or "0"


def t_basis_product(x: AffineElement, y: AffineElement) -> HeckeElement:
    datum = x.translation.datum
    alg = hecke_algebra(datum)
    return HeckeElement(datum, alg.apply(x.key, {y.key: ONE}))


def spherical_basis_element(mu: WeightVec) -> HeckeElement:
    d = mu.datum
    if not d.is_dominant(mu.coords):
        raise PreconditionError(f"{mu} is not dominant")
    return HeckeElement(d, hecke_algebra(d).spherical(mu.coords))


def _datum_of(mus: Sequence[WeightVec]) -> RootDatum:
    if not mus:
        raise PreconditionError("need at least one coweight")
    d = mus[0].datum
    for m in mus:
        as_vec(d, m)
    return d


def structure_constants(mus: Sequence[WeightVec], method: str = "spherical") -> dict[WeightVec, QPoly]:
    """Map each dominant ``lam`` to ``c^lam_{mu_1..mu_r}(q)``; zero entries are omitted."""
    d = _datum_of(mus)
    raw = hecke_algebra(d).constants([m.coords for m in mus], method)
    return {WeightVec(lam, d): c for lam, c in sorted(raw.items(), reverse=True)}


def _check_coset(d: RootDatum, mus: Sequence[WeightVec], lam: WeightVec) -> Vec:
    total = [0] * d.rank
    for m in mus:
        total = [a + b for a, b in zip(total, m.coords)]
    diff = tuple(a - b for a, b in zip(total, as_vec(d, lam)))
    if not d.in_coroot_lattice(diff):
        raise PreconditionError(f"sum of {list(mus)} minus {lam} is not in the coroot lattice")
    return diff


def hecke_constant(mus: Sequence[WeightVec], lam: WeightVec, method: str = "spherical") -> QPoly:
    d = _datum_of(mus)
    _check_coset(d, mus, lam)
    if not d.is_dominant(lam.coords):
        raise PreconditionError(f"{lam} is not dominant")
    return hecke_algebra(d).constants([m.coords for m in mus], method).get(lam.coords, QPoly())


def hecke_nonvanishing(mus: Sequence[WeightVec], lam: WeightVec) -> bool:
    return bool(hecke_constant(mus, lam))


def leading_term_check(mus: Sequence[WeightVec], lam: WeightVec) -> dict:
    """Compare the top coefficient of ``c^lam`` with the tensor multiplicity."""
    from .repring import tensor_multiplicity

    d = _datum_of(mus)
    diff = _check_coset(d, mus, lam)
    c = hecke_constant(mus, lam)
    bound = rho_pairing(d, diff)
    dim = tensor_multiplicity(mus, lam)
    ok = c.degree <= bound and c.coeff(bound) == dim
    return {
        "instance": {"type": d.label, "mu": [m.to_json() for m in mus], "lambda": lam.to_json()},
        "c": c.to_json(),
        "c_text": repr(c),
        "degree": c.degree,
        "bound": bound,
        "coefficient_at_bound": c.coeff(bound),
        "dim": dim,
        "status": "PASS" if ok else "FAIL",
    }
