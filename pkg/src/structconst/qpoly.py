"""Integer polynomials in one variable ``q``."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping

from .errors import InconsistencyError

ZERO_DEGREE = -1
"""Degree reported for the zero polynomial."""


def _trim(c: Iterable[int]) -> tuple[int, ...]:
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


class QPoly:
    """Immutable polynomial with integer coefficients, stored densely by degree."""

    __slots__ = ("_c",)

    def __init__(self, coeffs: Iterable[int] = ()):
        self._c = _trim(int(x) for x in coeffs)

    @classmethod
    def from_dict(cls, coeffs: Mapping) -> "QPoly":
        if not coeffs:
            return cls()
        top = max(int(k) for k in coeffs)
        out = [0] * (top + 1)
        for k, v in coeffs.items():
            if int(k) < 0:
                raise ValueError("negative degree")
            out[int(k)] += int(v)
        return cls(out)

    @classmethod
    def monomial(cls, degree: int, coeff: int = 1) -> "QPoly":
        return cls([0] * degree + [coeff])

    @property
    def coeffs(self) -> dict[int, int]:
        return {k: v for k, v in enumerate(self._c) if v}

    @property
    def dense(self) -> tuple[int, ...]:
        return self._c

    @property
    def degree(self) -> int:
        return len(self._c) - 1 if self._c else ZERO_DEGREE

    @property
    def leading(self) -> int:
        return self._c[-1] if self._c else 0

    def coeff(self, k: int) -> int:
        return self._c[k] if 0 <= k < len(self._c) else 0

    def __bool__(self) -> bool:
        return bool(self._c)

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = QPoly([other])
        return isinstance(other, QPoly) and self._c == other._c

    def __hash__(self) -> int:
        return hash(self._c)

    def __add__(self, other) -> "QPoly":
        if isinstance(other, int):
            other = QPoly([other])
        a, b = self._c, other._c
        if len(a) < len(b):
            a, b = b, a
        return QPoly([x + (b[i] if i < len(b) else 0) for i, x in enumerate(a)])

    __radd__ = __add__

    def __neg__(self) -> "QPoly":
        return QPoly([-x for x in self._c])

    def __sub__(self, other) -> "QPoly":
        if isinstance(other, int):
            other = QPoly([other])
        return self + (-other)

    def __rsub__(self, other) -> "QPoly":
        return (-self) + other

    def __mul__(self, other) -> "QPoly":
        if isinstance(other, int):
            return QPoly([other * x for x in self._c])
        a, b = self._c, other._c
        if not a or not b:
            return QPoly()
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return QPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "QPoly":
        out = QPoly([1])
        for _ in range(k):
            out = out * self
        return out

    def shift(self, k: int) -> "QPoly":
        """Multiply by ``q**k``."""
        return QPoly([0] * k + list(self._c)) if self._c else self

    def __call__(self, q):
        val = 0
        for x in reversed(self._c):
            val = val * q + x
        return val

    def divmod(self, other: "QPoly") -> tuple["QPoly", "QPoly"]:
        if not other:
            raise ZeroDivisionError("division by the zero polynomial")
        rem = [Fraction(x) for x in self._c]
        d = other._c
        quot = [Fraction(0)] * max(len(rem) - len(d) + 1, 0)
        for k in range(len(quot) - 1, -1, -1):
            c = rem[k + len(d) - 1] / d[-1]
            quot[k] = c
            if c:
                for j, y in enumerate(d):
                    rem[k + j] -= c * y
        if any(x.denominator != 1 for x in quot + rem):
            raise InconsistencyError(f"({self}) / ({other}) leaves non-integral coefficients")
        return QPoly(int(x) for x in quot), QPoly(int(x) for x in rem)

    def exact_div(self, other: "QPoly") -> "QPoly":
        quot, rem = self.divmod(other)
        if rem:
            raise InconsistencyError(f"({self}) is not divisible by ({other})")
        return quot

    def to_json(self) -> dict[str, int]:
        return {str(k): v for k, v in self.coeffs.items()}

    def __repr__(self) -> str:
        if not self._c:
            return "0"
        terms = []
        for k in range(len(self._c) - 1, -1, -1):
            c = self._c[k]
            if not c:
                continue
            mono = "" if k == 0 else ("q" if k == 1 else f"q^{k}")
            mag = abs(c)
            body = str(mag) if not mono else (mono if mag == 1 else f"{mag}*{mono}")
            terms.append(("-" if c < 0 else "+", body))
        sign, body = terms[0]
        out = ("-" if sign == "-" else "") + body
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out


Q = QPoly([0, 1])
ONE = QPoly([1])
ZERO = QPoly()
