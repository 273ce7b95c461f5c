"""Root data of split reductive groups, seen from the coweight side.

A :class:`RootDatum` describes a group ``G`` through the lattice ``X = X_*(T)``
of cocharacters, which is also the weight lattice of the dual group.  Vectors
of ``X`` are integer tuples in a fixed lattice basis.  Roots of ``G`` are
integer covectors (rows in the dual basis) and coroots of ``G`` are integer
vectors, so every pairing ``<alpha, v>`` is a plain dot product.

Type labels name the *dual* group, i.e. the group whose representations the
weights describe.  ``root_datum("C2")`` is ``Sp4`` on the weight side, so its
coweights are those of ``SO5``.  Shipped models:

* ``A{n}``: ``GL_{n+1}`` on ``Z^{n+1}`` (self dual).
* ``C{n}``: ``Sp_{2n}`` in the epsilon basis of ``Z^n``.
* ``B{n}``, ``D{n}``, ``E6``, ``E7``, ``E8``, ``F4``, ``G2``: the simply
  connected dual group in fundamental-weight (Dynkin label) coordinates.
  Epsilon coordinates for ``B``/``D`` are available through :meth:`RootDatum.to_ambient`.

Labels may be joined with ``x`` for products, e.g. ``"A1xC2"``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from importlib import resources
from typing import Iterable, Sequence

from .errors import DatumMismatchError, PreconditionError

Vec = tuple[int, ...]

__all__ = [
    "RootDatum",
    "WeightVec",
    "root_datum",
    "adjoint_group",
    "cartan_matrix",
    "dual_type",
    "pairing",
    "is_dominant",
    "dominance_leq",
    "dominant_representative",
    "dual_coweight",
    "is_minuscule",
    "is_quasi_minuscule",
    "is_allowed_fundamental",
    "allowed_fundamental_indices",
    "minuscule_fundamental_indices",
    "sum_of_minuscules_decomposition",
    "project_to_adjoint",
]

_LABEL = re.compile(r"^([A-G])(\d+)$")
_ROOT_COUNTS = {"E6": 72, "E7": 126, "E8": 240, "F4": 48, "G2": 12}


def split_type(label: str) -> tuple[str, int]:
    m = _LABEL.match(label)
    if not m:
        raise ValueError(f"not a Cartan type: {label!r}")
    kind, rank = m.group(1), int(m.group(2))
    ok = {
        "A": rank >= 1,
        "B": rank >= 2,
        "C": rank >= 2,
        "D": rank >= 4,
        "E": rank in (6, 7, 8),
        "F": rank == 4,
        "G": rank == 2,
    }[kind]
    if not ok:
        raise ValueError(f"no root system of type {label}")
    return kind, rank


def dual_type(label: str) -> str:
    """Type of the dual root system (B and C swap, others are self dual)."""
    kind, rank = split_type(label)
    return {"B": "C", "C": "B"}.get(kind, kind) + str(rank)


def root_count(label: str) -> int:
    kind, n = split_type(label)
    if kind == "A":
        return n * (n + 1)
    if kind in "BC":
        return 2 * n * n
    if kind == "D":
        return 2 * n * (n - 1)
    return _ROOT_COUNTS[label]


def _load_table(label: str) -> tuple[tuple[int, ...], ...] | None:
    try:
        text = resources.files("structconst").joinpath(f"data/types/{label}.txt").read_text()
    except FileNotFoundError:
        return None
    return parse_table(text)["cartan"]


def parse_table(text: str) -> dict:
    """Parse a shipped type table.

    The format is line based; ``#`` starts a comment.  A header line
    ``rank N`` is followed by blocks introduced by ``cartan``,
    ``positive_roots`` and ``fundamental_coweights``, each holding one
    whitespace-separated row per line.  Entries may be fractions ``p/q``.
    """
    out: dict = {}
    block = None
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head = line.split()
        if head[0] in ("type", "rank"):
            out[head[0]] = head[1] if head[0] == "type" else int(head[1])
            continue
        if head[0] in ("cartan", "positive_roots", "fundamental_coweights"):
            block = head[0]
            out[block] = []
            continue
        row = tuple(Fraction(x) for x in head)
        if block == "cartan" or block == "positive_roots":
            row = tuple(int(x) for x in row)
        out[block].append(row)
    for key in ("cartan", "positive_roots", "fundamental_coweights"):
        if key in out:
            out[key] = tuple(out[key])
    return out


def cartan_matrix(label: str) -> tuple[tuple[int, ...], ...]:
    """Bourbaki Cartan matrix with entries ``a_ij = <alpha_i, alpha_j^vee>``."""
    kind, n = split_type(label)
    shipped = _load_table(label)
    if shipped is not None:
        return shipped
    a = [[0] * n for _ in range(n)]
    for i in range(n):
        a[i][i] = 2
    if kind in "ABCD":
        chain = n - 1 if kind != "D" else n - 2
        for i in range(chain):
            a[i][i + 1] = a[i + 1][i] = -1
        if kind == "B":
            a[n - 2][n - 1] = -2
        elif kind == "C":
            a[n - 1][n - 2] = -2
        elif kind == "D":
            a[n - 3][n - 1] = a[n - 1][n - 3] = -1
    elif kind == "E":
        edges = [(0, 2), (2, 3), (3, 4), (1, 3)] + [(i, i + 1) for i in range(4, n - 1)]
        for i, j in edges:
            a[i][j] = a[j][i] = -1
    elif kind == "F":
        a[0][1] = a[1][0] = -1
        a[1][2], a[2][1] = -2, -1
        a[2][3] = a[3][2] = -1
    else:
        a[0][1], a[1][0] = -1, -3
    return tuple(tuple(r) for r in a)


def _transpose(m: Sequence[Sequence]) -> tuple[tuple, ...]:
    return tuple(zip(*m)) if m else ()


def _inverse(m: Sequence[Sequence[int]]) -> tuple[tuple[Fraction, ...], ...]:
    n = len(m)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m)]
    for c in range(n):
        p = next(r for r in range(c, n) if a[r][c] != 0)
        a[c], a[p] = a[p], a[c]
        pv = a[c][c]
        a[c] = [x / pv for x in a[c]]
        for r in range(n):
            if r != c and a[r][c] != 0:
                f = a[r][c]
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return tuple(tuple(row[n:]) for row in a)


def _dot(x: Sequence, v: Sequence) -> int:
    return sum(a * b for a, b in zip(x, v))


class RootDatum:
    """Immutable root datum; build through :func:`root_datum`, which interns.

    ``simple_roots`` are covectors, ``simple_coroots`` vectors, both in the
    lattice basis.  ``factors`` lists the weight-side Cartan type of each
    simple factor and ``factor_indices`` the simple indices belonging to it.
    """

    def __init__(
        self,
        label: str,
        factors: Sequence[str],
        factor_indices: Sequence[Sequence[int]],
        simple_roots: Sequence[Vec],
        simple_coroots: Sequence[Vec],
        fundamental_coweights: Sequence[Vec],
        ambient: Sequence[Sequence[Fraction]] | None = None,
        model: str = "",
    ):
        self.label = label
        self.factors = tuple(factors)
        self.factor_indices = tuple(tuple(ix) for ix in factor_indices)
        self.simple_roots = tuple(tuple(r) for r in simple_roots)
        self.simple_coroots = tuple(tuple(c) for c in simple_coroots)
        self._fund = tuple(tuple(v) for v in fundamental_coweights)
        self._ambient = None if ambient is None else tuple(tuple(Fraction(x) for x in r) for r in ambient)
        self.model = model
        self.rank = len(self.simple_coroots[0]) if self.simple_coroots else len(self._fund[0])
        self.semisimple_rank = len(self.simple_roots)

    def __repr__(self) -> str:
        return f"RootDatum({self.label!r})"

    # -- basic linear algebra ------------------------------------------------

    @staticmethod
    def pair(x: Sequence, v: Sequence) -> int:
        return _dot(x, v)

    def zero(self) -> Vec:
        return (0,) * self.rank

    def vec(self, *coords) -> "WeightVec":
        if len(coords) == 1 and not isinstance(coords[0], int):
            coords = tuple(coords[0])
        return WeightVec(tuple(int(c) for c in coords), self)

    def reflect(self, i: int, v: Vec) -> Vec:
        k = _dot(self.simple_roots[i], v)
        if k == 0:
            return tuple(v)
        c = self.simple_coroots[i]
        return tuple(a - k * b for a, b in zip(v, c))

    def reflect_covector(self, i: int, x: Vec) -> Vec:
        k = _dot(x, self.simple_coroots[i])
        if k == 0:
            return tuple(x)
        r = self.simple_roots[i]
        return tuple(a - k * b for a, b in zip(x, r))

    # -- derived data --------------------------------------------------------

    @cached_property
    def cartan(self) -> tuple[tuple[int, ...], ...]:
        """``a_ij = <alpha_i, alpha_j^vee>`` for the coweight-side group ``G``."""
        return tuple(tuple(_dot(a, c) for c in self.simple_coroots) for a in self.simple_roots)

    @cached_property
    def group_factors(self) -> tuple[str, ...]:
        """Cartan type of each factor of ``G`` itself (the dual of ``factors``)."""
        return tuple(dual_type(f) for f in self.factors)

    @cached_property
    def fundamental_coweights(self) -> tuple[Vec, ...]:
        return self._fund

    @cached_property
    def rho_shift(self) -> Vec:
        """An integral vector pairing to 1 with every simple root.

        It differs from the half sum of positive coroots by a central vector,
        so it can replace rho in every W-equivariant formula.
        """
        out = [0] * self.rank
        for w in self._fund:
            out = [a + b for a, b in zip(out, w)]
        return tuple(out)

    @cached_property
    def _root_pairs(self) -> tuple[tuple[Vec, Vec], ...]:
        seen = {}
        todo = list(zip(self.simple_roots, self.simple_coroots))
        for a, c in todo:
            seen[a] = c
        while todo:
            a, c = todo.pop()
            for i in range(self.semisimple_rank):
                b = self.reflect_covector(i, a)
                if b not in seen:
                    d = self.reflect(i, c)
                    seen[b] = d
                    todo.append((b, d))
        return tuple(sorted(seen.items()))

    @cached_property
    def positive_roots(self) -> tuple[Vec, ...]:
        return tuple(a for a, _ in self._positive_pairs)

    @cached_property
    def positive_coroots(self) -> tuple[Vec, ...]:
        return tuple(c for _, c in self._positive_pairs)

    @cached_property
    def _positive_pairs(self) -> tuple[tuple[Vec, Vec], ...]:
        pos = [(a, c) for a, c in self._root_pairs if _dot(a, self.rho_shift) > 0]
        pos.sort(key=lambda p: (_dot(p[0], self.rho_shift), p[0]))
        return tuple(pos)

    @cached_property
    def roots(self) -> tuple[Vec, ...]:
        return tuple(a for a, _ in self._root_pairs)

    @cached_property
    def coroots(self) -> tuple[Vec, ...]:
        return tuple(c for _, c in self._root_pairs)

    @cached_property
    def two_rho(self) -> Vec:
        """Sum of the positive roots of ``G`` (a covector)."""
        out = [0] * self.rank
        for a in self.positive_roots:
            out = [x + y for x, y in zip(out, a)]
        return tuple(out)

    @cached_property
    def fundamental_weights(self) -> tuple[tuple[Fraction, ...], ...]:
        """Covectors ``f_i`` in the span of the roots with ``<f_i, alpha_j^vee> = delta_ij``.

        These are the fundamental weights of ``G``, i.e. the fundamental
        coweights of the dual group; entries are rational in general.
        """
        inv = _inverse(self.cartan)
        out = []
        for i in range(self.semisimple_rank):
            row = [Fraction(0)] * self.rank
            for k, coeff in enumerate(inv[i]):
                if coeff:
                    row = [x + coeff * y for x, y in zip(row, self.simple_roots[k])]
            out.append(tuple(row))
        return tuple(out)

    @cached_property
    def highest_roots(self) -> tuple[tuple[Vec, Vec], ...]:
        """(highest root, its coroot) for each simple factor."""
        out = []
        for ix in self.factor_indices:
            best = None
            for a, c in self._positive_pairs:
                if not self._in_factor(a, ix):
                    continue
                h = _dot(a, self.rho_shift)
                if best is None or h > best[0]:
                    best = (h, a, c)
            out.append((best[1], best[2]))
        return tuple(out)

    def _in_factor(self, root: Vec, ix: Sequence[int]) -> bool:
        coeffs = self.root_coefficients(root)
        return all(coeffs[j] == 0 for j in range(self.semisimple_rank) if j not in ix)

    def root_coefficients(self, x: Vec) -> tuple[int, ...]:
        """Coefficients of a root (covector) in the simple roots."""
        return tuple(_dot(x, fc) for fc in self._dual_fund_for_roots)

    def root_coefficients_of_coroot(self, c: Vec) -> tuple[int, ...]:
        """Coefficients of a coroot (vector) in the simple coroots."""
        coeffs = self.coroot_coefficients(c)
        return tuple(int(x) for x in coeffs)

    @cached_property
    def _dual_fund_for_roots(self) -> tuple[tuple[Fraction, ...], ...]:
        # vectors g_i in the span of the coroots with <alpha_j, g_i> = delta_ij
        inv = _inverse(_transpose(self.cartan))
        out = []
        for i in range(self.semisimple_rank):
            v = [Fraction(0)] * self.rank
            for k, coeff in enumerate(inv[i]):
                if coeff:
                    v = [x + coeff * y for x, y in zip(v, self.simple_coroots[k])]
            out.append(tuple(v))
        return tuple(out)

    @cached_property
    def weyl_group(self):
        from .weyl import WeylGroup

        return WeylGroup(self)

    # -- predicates on raw tuples -------------------------------------------

    def is_dominant(self, v: Vec) -> bool:
        return all(_dot(a, v) >= 0 for a in self.simple_roots)

    def dominant(self, v: Vec) -> Vec:
        v = tuple(v)
        while True:
            for i, a in enumerate(self.simple_roots):
                if _dot(a, v) < 0:
                    v = self.reflect(i, v)
                    break
            else:
                return v

    def coroot_coefficients(self, d: Vec) -> tuple[Fraction, ...] | None:
        """Coefficients of ``d`` in the simple coroots, or None if ``d`` is off their span."""
        coeffs = tuple(_dot(f, d) for f in self.fundamental_weights)
        back = [Fraction(0)] * self.rank
        for c, cor in zip(coeffs, self.simple_coroots):
            if c:
                back = [x + c * y for x, y in zip(back, cor)]
        if tuple(back) != tuple(d):
            return None
        return coeffs

    def in_coroot_lattice(self, d: Vec) -> bool:
        coeffs = self.coroot_coefficients(d)
        return coeffs is not None and all(c.denominator == 1 for c in coeffs)

    def leq(self, a: Vec, b: Vec) -> bool:
        """Dominance order without the dominance precondition."""
        coeffs = self.coroot_coefficients(tuple(y - x for x, y in zip(a, b)))
        return coeffs is not None and all(c.denominator == 1 and c >= 0 for c in coeffs)

    def dual(self, v: Vec) -> Vec:
        return self.dominant(tuple(-x for x in v))

    def minuscule(self, v: Vec) -> bool:
        return all(-1 <= _dot(a, v) <= 1 for a in self.positive_roots)

    def dynkin_labels(self, v: Vec) -> tuple[int, ...]:
        return tuple(_dot(a, v) for a in self.simple_roots)

    def is_central(self, v: Vec) -> bool:
        return all(_dot(a, v) == 0 for a in self.simple_roots)

    def height(self, d: Vec) -> Fraction:
        """Sum of the simple-coroot coefficients of ``d`` (assumed in their span)."""
        return sum(_dot(f, d) for f in self.fundamental_weights)

    def orbit(self, v: Vec, limit: int = 200_000) -> list[Vec]:
        from .errors import CapabilityError

        v = tuple(v)
        seen = {v}
        todo = [v]
        while todo:
            x = todo.pop()
            for i in range(self.semisimple_rank):
                y = self.reflect(i, x)
                if y not in seen:
                    seen.add(y)
                    if len(seen) > limit:
                        raise CapabilityError(f"orbit of {v} in {self.label} exceeds {limit} elements")
                    todo.append(y)
        return sorted(seen, reverse=True)

    # -- coordinates -----------------------------------------------------------

    def to_ambient(self, v: Vec) -> tuple[Fraction, ...]:
        """Epsilon-basis coordinates where a standard ambient space exists."""
        if self._ambient is None:
            return tuple(Fraction(x) for x in v)
        out = [Fraction(0)] * len(self._ambient[0])
        for c, row in zip(v, self._ambient):
            if c:
                out = [x + c * y for x, y in zip(out, row)]
        return tuple(out)

    def from_ambient(self, coords: Sequence) -> Vec:
        if self._ambient is None:
            return tuple(int(Fraction(c)) for c in coords)
        inv = _inverse(_transpose(self._ambient))
        vals = [sum(Fraction(c) * m for c, m in zip(coords, row)) for row in inv]
        if any(x.denominator != 1 for x in vals):
            raise PreconditionError(f"{coords} is not in the weight lattice of {self.label}")
        return tuple(int(x) for x in vals)

    def parse(self, text: str) -> "WeightVec":
        """Parse ``"1,0,-1"`` (lattice coordinates), ``"e:1/2,1/2"`` (ambient),
        ``"0"``, or sums of fundamental coweights such as ``"w6"``, ``"2w1+w3"``."""
        text = text.strip().replace(" ", "")
        if text in ("0", ""):
            return self.vec(self.zero())
        if text.startswith("e:"):
            return self.vec(self.from_ambient(text[2:].split(",")))
        if "w" in text:
            out = [0] * self.rank
            for term in re.split(r"\+", text):
                m = re.fullmatch(r"(-?\d*)w(\d+)", term)
                if not m:
                    raise ValueError(f"cannot parse weight term {term!r}")
                k = int(m.group(1)) if m.group(1) not in ("", "-") else (-1 if m.group(1) == "-" else 1)
                i = int(m.group(2)) - 1
                if not 0 <= i < len(self._fund):
                    raise ValueError(f"{self.label} has no fundamental coweight w{i + 1}")
                out = [a + k * b for a, b in zip(out, self._fund[i])]
            return self.vec(out)
        coords = tuple(int(x) for x in text.split(","))
        if len(coords) != self.rank:
            raise ValueError(f"{self.label} expects {self.rank} coordinates, got {len(coords)}")
        return self.vec(coords)

    # -- products and reductions ---------------------------------------------

    @cached_property
    def adjoint(self) -> "RootDatum":
        """The adjoint group of ``G``: Dynkin-label coordinates, one block per factor."""
        return product_datum(self._factor_data)

    @cached_property
    def _factor_data(self) -> tuple["RootDatum", ...]:
        return tuple(_from_group_cartan(self._factor_cartan(k), lab, sc_label(lab))
                     for k, lab in enumerate(self.factors))

    def _factor_cartan(self, k: int) -> tuple[tuple[int, ...], ...]:
        ix = self.factor_indices[k]
        return tuple(tuple(self.cartan[i][j] for j in ix) for i in ix)

    def factor_datum(self, k: int) -> "RootDatum":
        """Adjoint datum of the ``k``-th simple factor."""
        return self._factor_data[k]

    def to_adjoint(self, v: Vec) -> Vec:
        return tuple(_dot(self.simple_roots[i], v) for ix in self.factor_indices for i in ix)

    @cached_property
    def center_data(self) -> tuple[tuple[int, ...], int]:
        """``X / Q^vee`` as (torsion invariant factors, free rank)."""
        from sympy import Matrix
        from sympy.matrices.normalforms import invariant_factors

        if not self.simple_coroots:
            return (), self.rank
        m = Matrix([list(c) for c in self.simple_coroots]).T
        inv = [int(abs(x)) for x in invariant_factors(m)]
        return tuple(x for x in inv if x != 1), self.rank - len(inv)


@dataclass(frozen=True, eq=False)
class WeightVec:
    """An integer coweight of ``G`` tied to its root datum."""

    coords: Vec
    datum: RootDatum

    def _check(self, other: "WeightVec") -> None:
        if not isinstance(other, WeightVec):
            raise TypeError(f"expected WeightVec, got {type(other).__name__}")
        if other.datum is not self.datum:
            raise DatumMismatchError(f"{self.datum.label} vs {other.datum.label}")

    def __add__(self, other: "WeightVec") -> "WeightVec":
        self._check(other)
        return WeightVec(tuple(a + b for a, b in zip(self.coords, other.coords)), self.datum)

    def __sub__(self, other: "WeightVec") -> "WeightVec":
        self._check(other)
        return WeightVec(tuple(a - b for a, b in zip(self.coords, other.coords)), self.datum)

    def __neg__(self) -> "WeightVec":
        return WeightVec(tuple(-a for a in self.coords), self.datum)

    def __mul__(self, k: int) -> "WeightVec":
        return WeightVec(tuple(k * a for a in self.coords), self.datum)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        return isinstance(other, WeightVec) and other.datum is self.datum and other.coords == self.coords

    def __hash__(self) -> int:
        return hash((self.coords, id(self.datum)))

    def __lt__(self, other: "WeightVec") -> bool:
        return self.coords < other.coords

    def __iter__(self):
        return iter(self.coords)

    def __len__(self) -> int:
        return len(self.coords)

    def __repr__(self) -> str:
        return f"{self.datum.label}{self.coords}"

    def to_json(self) -> list[int]:
        return list(self.coords)

    @property
    def is_zero(self) -> bool:
        return not any(self.coords)


def _as_vec(datum: RootDatum, v) -> Vec:
    if isinstance(v, WeightVec):
        if v.datum is not datum:
            raise DatumMismatchError(f"{datum.label} vs {v.datum.label}")
        return v.coords
    return tuple(v)


# -- construction --------------------------------------------------------------

_INTERN: dict[str, RootDatum] = {}
_SC: dict = {}


def sc_label(type_label: str) -> str:
    """Label of the Dynkin-coordinate model of a type."""
    return type_label if type_label[0] in "BDEFG" else type_label + ":sc"


def _from_group_cartan(a_group: Sequence[Sequence[int]], type_label: str, label: str, ambient=None) -> RootDatum:
    """Simply connected dual group in Dynkin coordinates, given the Cartan matrix of ``G``."""
    a_group = tuple(tuple(r) for r in a_group)
    key = (label, a_group)
    if key in _SC:
        return _SC[key]
    n = len(a_group)
    roots = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    coroots = [tuple(a_group[i][j] for i in range(n)) for j in range(n)]
    d = RootDatum(label, [type_label], [tuple(range(n))], roots, coroots, roots, ambient, model="sc")
    _SC[key] = d
    return d


def _epsilon_fundamentals(kind: str, n: int) -> list[list[Fraction]]:
    half = Fraction(1, 2)
    rows = []
    for i in range(1, n + 1):
        row = [Fraction(int(j < i)) for j in range(n)]
        if kind == "B" and i == n:
            row = [half] * n
        if kind == "D" and i == n - 1:
            row = [half] * (n - 1) + [-half]
        if kind == "D" and i == n:
            row = [half] * n
        rows.append(row)
    return rows


def _build_simple(label: str, model: str | None) -> RootDatum:
    kind, n = split_type(label)
    if kind == "A" and model in (None, "gl"):
        m = n + 1
        e = [tuple(int(i == j) for j in range(m)) for i in range(m)]
        simple = [tuple(x - y for x, y in zip(e[i], e[i + 1])) for i in range(n)]
        fund = [tuple(int(j < i) for j in range(m)) for i in range(1, m)]
        return RootDatum(label, [label], [tuple(range(n))], simple, simple, fund, model="gl")
    if kind == "C" and model in (None, "eps"):
        e = [tuple(int(i == j) for j in range(n)) for i in range(n)]
        roots = [tuple(x - y for x, y in zip(e[i], e[i + 1])) for i in range(n - 1)] + [e[n - 1]]
        coroots = roots[:-1] + [tuple(2 * x for x in e[n - 1])]
        fund = [tuple(int(j < i) for j in range(n)) for i in range(1, n + 1)]
        return RootDatum(label, [label], [tuple(range(n))], roots, coroots, fund, model="eps")
    ambient = _epsilon_fundamentals(kind, n) if kind in "BD" else None
    return _from_group_cartan(_transpose(cartan_matrix(label)), label, sc_label(label), ambient)


def product_datum(parts: Sequence[RootDatum]) -> RootDatum:
    if len(parts) == 1:
        return parts[0]
    label = "x".join(p.label for p in parts)
    if label in _INTERN and all(a is b for a, b in zip(_INTERN[label]._parts, parts)):
        return _INTERN[label]
    total = sum(p.rank for p in parts)
    roots, coroots, fund, factors, indices = [], [], [], [], []
    off = simple_off = 0
    for p in parts:
        def pad(v, off=off, p=p):
            return (0,) * off + tuple(v) + (0,) * (total - off - p.rank)

        roots += [pad(a) for a in p.simple_roots]
        coroots += [pad(c) for c in p.simple_coroots]
        fund += [pad(w) for w in p.fundamental_coweights]
        indices += [tuple(i + simple_off for i in ix) for ix in p.factor_indices]
        factors += list(p.factors)
        off += p.rank
        simple_off += p.semisimple_rank
    ambient = None
    if any(p._ambient is not None for p in parts):
        blocks = [p._ambient or tuple(tuple(Fraction(int(i == j)) for j in range(p.rank)) for i in range(p.rank))
                  for p in parts]
        width = sum(len(b[0]) for b in blocks)
        ambient, lead = [], 0
        for b in blocks:
            ambient += [[Fraction(0)] * lead + list(r) + [Fraction(0)] * (width - lead - len(r)) for r in b]
            lead += len(b[0])
    d = RootDatum(label, factors, indices, roots, coroots, fund, ambient, model="product")
    d._parts = tuple(parts)
    _INTERN.setdefault(label, d)
    return d


def root_datum(label: str) -> RootDatum:
    """Interned root datum for a label such as ``"A2"``, ``"C2"``, ``"D6"``,
    ``"GL3"``, ``"SL3"``, ``"A1xC2"`` or ``"C2:sc"`` (Dynkin coordinates)."""
    if label in _INTERN:
        return _INTERN[label]
    parts = label.split("x")
    if len(parts) > 1:
        d = product_datum([root_datum(p) for p in parts])
        _INTERN[label] = d
        return d
    model = None
    base = label
    if ":" in label:
        base, model = label.split(":", 1)
    m = re.fullmatch(r"(GL|SL|Sp)(\d+)", base)
    if m:
        k = int(m.group(2))
        if m.group(1) == "GL":
            base, model = f"A{k - 1}", "gl"
        elif m.group(1) == "SL":
            base, model = f"A{k - 1}", "sc"
        else:
            if k % 2:
                raise ValueError("Sp needs an even size")
            base, model = f"C{k // 2}", "eps"
    d = _build_simple(base, model)
    _INTERN[label] = d
    return d


def adjoint_group(h_label: str) -> RootDatum:
    """Coweight datum of the adjoint group of type ``h_label``.

    Its coweight lattice is the full coweight lattice ``P^vee(H)`` and the
    simple roots carry the Bourbaki numbering of ``H`` itself.
    """
    return _from_group_cartan(cartan_matrix(h_label), dual_type(h_label), f"adj{h_label}")


# -- public operations on WeightVec --------------------------------------------

def pairing(x: Sequence, v: WeightVec):
    """``<x, v>`` for a covector ``x`` (integer or rational entries) and a coweight ``v``."""
    if isinstance(x, WeightVec):
        raise TypeError("the first argument of pairing is a covector, not a coweight")
    if len(x) != len(v.coords):
        raise DatumMismatchError(f"covector of length {len(x)} against rank {len(v.coords)}")
    val = sum(Fraction(a) * b for a, b in zip(x, v.coords))
    return int(val) if val.denominator == 1 else val


def is_dominant(v: WeightVec) -> bool:
    return v.datum.is_dominant(v.coords)


def _require_dominant(*vs: WeightVec) -> None:
    for v in vs:
        if not v.datum.is_dominant(v.coords):
            raise PreconditionError(f"{v} is not dominant")


def dominance_leq(a: WeightVec, b: WeightVec) -> bool:
    """``a`` precedes ``b``: ``b - a`` is a nonnegative integer sum of simple coroots."""
    a._check(b)
    _require_dominant(a, b)
    return a.datum.leq(a.coords, b.coords)


def dominant_representative(v: WeightVec) -> WeightVec:
    return WeightVec(v.datum.dominant(v.coords), v.datum)


def dual_coweight(v: WeightVec) -> WeightVec:
    """``-w_0 v``."""
    _require_dominant(v)
    return WeightVec(v.datum.dual(v.coords), v.datum)


def is_minuscule(v: WeightVec) -> bool:
    _require_dominant(v)
    return v.datum.minuscule(v.coords)


def is_quasi_minuscule(v: WeightVec) -> bool:
    from .repring import weight_system

    _require_dominant(v)
    if v.is_zero:
        raise PreconditionError("quasi-minuscule is defined for nonzero coweights")
    weights = set(weight_system(v).entries)
    orbit = {WeightVec(x, v.datum) for x in v.datum.orbit(v.coords)}
    zero = WeightVec(v.datum.zero(), v.datum)
    return weights == orbit | {zero}


def _factor_of(datum: RootDatum, factor: int) -> RootDatum:
    if not 0 <= factor < len(datum.factors):
        raise IndexError(f"{datum.label} has {len(datum.factors)} factors")
    return datum.factor_datum(factor) if len(datum.factors) > 1 else datum


def _fundamental_order(cartan: Sequence[Sequence[int]], i: int) -> int:
    """Order of the i-th fundamental coweight modulo the coroot lattice."""
    inv = _inverse(cartan)
    from math import lcm

    out = 1
    for row in inv:
        out = lcm(out, row[i].denominator)
    return out


def is_allowed_fundamental(datum: RootDatum, i: int, factor: int = 0) -> bool:
    """Whether the ``i``-th (1-based, Bourbaki) fundamental coweight of a factor of
    the adjoint group is self dual and has order exactly 2 modulo coroots."""
    h = _factor_of(datum, factor)
    n = h.semisimple_rank
    if not 1 <= i <= n:
        raise IndexError(f"fundamental index {i} out of range 1..{n}")
    adj = h.adjoint
    w = tuple(int(j == i - 1) for j in range(n))
    if adj.dual(w) != w:
        return False
    return _fundamental_order(h._factor_cartan(0), i - 1) == 2


def minuscule_fundamental_indices(datum: RootDatum, factor: int = 0) -> list[int]:
    h = _factor_of(datum, factor).adjoint
    n = h.semisimple_rank
    return [i + 1 for i in range(n) if h.minuscule(tuple(int(j == i) for j in range(n)))]


def allowed_fundamental_indices(datum: RootDatum, factor: int = 0) -> list[int]:
    n = len(datum.factor_indices[factor])
    return [i for i in range(1, n + 1) if is_allowed_fundamental(datum, i, factor)]


def sum_of_minuscules_decomposition(v: WeightVec) -> list[tuple[WeightVec, int]] | None:
    """Write a dominant ``v`` as a sum of dominant minuscule coweights.

    Modulo the center a dominant coweight is determined by its Dynkin labels,
    so ``v`` is such a sum exactly when its labels vanish off the minuscule
    nodes.  The central remainder is itself minuscule (it pairs to zero with
    every root) and is returned as one extra term.
    """
    d = v.datum
    _require_dominant(v)
    labels = d.dynkin_labels(v.coords)
    n = d.semisimple_rank
    out: list[tuple[WeightVec, int]] = []
    rest = list(v.coords)
    for i in range(n):
        if labels[i] == 0:
            continue
        w = d.fundamental_coweights[i]
        if not d.minuscule(w):
            return None
        out.append((WeightVec(w, d), labels[i]))
        rest = [a - labels[i] * b for a, b in zip(rest, w)]
    if any(rest):
        out.append((WeightVec(tuple(rest), d), 1))
    total = [0] * d.rank
    for w, k in out:
        total = [a + k * b for a, b in zip(total, w.coords)]
    assert tuple(total) == v.coords
    return out


def project_to_adjoint(v: WeightVec) -> list[WeightVec]:
    """Image of ``v`` in the coweight lattice of each simple factor of the adjoint group."""
    d = v.datum
    out = []
    for k, ix in enumerate(d.factor_indices):
        fd = d.factor_datum(k)
        out.append(WeightVec(tuple(_dot(d.simple_roots[i], v.coords) for i in ix), fd))
    return out


def dominant_weights_below(datum: RootDatum, top: Vec) -> list[Vec]:
    """All dominant ``lambda`` with ``lambda <= top`` in the dominance order.

    Covers in the dominance order on dominant weights subtract a single
    positive coroot, so a search through dominant vectors reaches them all.
    """
    top = tuple(top)
    seen = {top}
    todo = [top]
    while todo:
        x = todo.pop()
        for c in datum.positive_coroots:
            y = tuple(a - b for a, b in zip(x, c))
            if y not in seen and datum.is_dominant(y):
                seen.add(y)
                todo.append(y)
    return sorted(seen, key=lambda y: (datum.height(tuple(a - b for a, b in zip(top, y))), y))


def as_vec(datum: RootDatum, v) -> Vec:
    return _as_vec(datum, v)


def ensure_weights(datum: RootDatum, vs: Iterable) -> list[Vec]:
    return [_as_vec(datum, v) for v in vs]
