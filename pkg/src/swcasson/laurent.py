"""Exact Laurent polynomials over Q and truncated chamber series.

Coefficients are :class:`fractions.Fraction`; nothing in this module touches
floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Union

Number = Union[int, Fraction]

EXPAND_IN_T = "expand-in-t"
EXPAND_IN_T_INVERSE = "expand-in-t-inverse"
DIRECTIONS = (EXPAND_IN_T, EXPAND_IN_T_INVERSE)


def format_rational(q: Number) -> str:
    """Render a rational as ``"num/den"``, or ``"num"`` when integral."""
    return str(Fraction(q))


def parse_rational(text: Union[str, int]) -> Fraction:
    if isinstance(text, int):
        return Fraction(text)
    return Fraction(text.strip())


class LaurentPoly:
    """Sparse Laurent polynomial in one variable ``t`` with rational coefficients.

    The coefficient map never stores zeros, so equality is equality of maps.
    Instances are immutable.
    """

    __slots__ = ("_c",)

    def __init__(self, coeffs: Mapping[int, Number] | None = None):
        c = {}
        for e, v in (coeffs or {}).items():
            v = Fraction(v)
            if v:
                c[int(e)] = v
        self._c = c

    @classmethod
    def const(cls, value: Number) -> "LaurentPoly":
        return cls({0: value})

    @classmethod
    def monomial(cls, exponent: int, coeff: Number = 1) -> "LaurentPoly":
        return cls({exponent: coeff})

    @classmethod
    def from_list(cls, coeffs: Iterable[Number], lowest: int = 0) -> "LaurentPoly":
        """Build from a dense coefficient list starting at exponent ``lowest``."""
        return cls({lowest + i: c for i, c in enumerate(coeffs)})

    @property
    def coeffs(self) -> dict[int, Fraction]:
        return dict(self._c)

    def __getitem__(self, exponent: int) -> Fraction:
        return self._c.get(exponent, Fraction(0))

    def items(self):
        return sorted(self._c.items())

    def is_zero(self) -> bool:
        return not self._c

    def min_exp(self) -> int:
        if not self._c:
            raise ValueError("zero polynomial has no exponents")
        return min(self._c)

    def max_exp(self) -> int:
        if not self._c:
            raise ValueError("zero polynomial has no exponents")
        return max(self._c)

    def __add__(self, other) -> "LaurentPoly":
        other = _coerce(other)
        out = dict(self._c)
        for e, v in other._c.items():
            out[e] = out.get(e, 0) + v
        return LaurentPoly(out)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly({e: -v for e, v in self._c.items()})

    def __sub__(self, other) -> "LaurentPoly":
        return self + (-_coerce(other))

    def __rsub__(self, other) -> "LaurentPoly":
        return _coerce(other) - self

    def __mul__(self, other) -> "LaurentPoly":
        other = _coerce(other)
        out: dict[int, Fraction] = {}
        for e1, v1 in self._c.items():
            for e2, v2 in other._c.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + v1 * v2
        return LaurentPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "LaurentPoly":
        if n < 0:
            raise ValueError("negative powers are not Laurent polynomials in general")
        out = LaurentPoly.const(1)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        try:
            other = _coerce(other)
        except TypeError:
            return NotImplemented
        return self._c == other._c

    def __hash__(self) -> int:
        return hash(frozenset(self._c.items()))

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by ``t**k``."""
        return LaurentPoly({e + k: v for e, v in self._c.items()})

    def substitute_square(self) -> "LaurentPoly":
        return LaurentPoly({2 * e: v for e, v in self._c.items()})

    def invert_variable(self) -> "LaurentPoly":
        """The substitution ``t -> 1/t``."""
        return LaurentPoly({-e: v for e, v in self._c.items()})

    def evaluate(self, x: Number) -> Fraction:
        x = Fraction(x)
        if not x and any(e < 0 for e in self._c):
            raise ZeroDivisionError("negative exponent evaluated at 0")
        return sum((v * x**e for e, v in self._c.items()), Fraction(0))

    def derivative(self) -> "LaurentPoly":
        return LaurentPoly({e - 1: e * v for e, v in self._c.items() if e})

    def second_derivative_at_one(self) -> Fraction:
        return sum((e * (e - 1) * v for e, v in self._c.items()), Fraction(0))

    def is_symmetric(self) -> bool:
        return all(self[-e] == v for e, v in self._c.items())

    def divmod_exact(self, divisor: "LaurentPoly") -> "LaurentPoly":
        """Divide in the Laurent ring; raise ``ArithmeticError`` on a nonzero remainder."""
        if divisor.is_zero():
            raise ZeroDivisionError("division by the zero Laurent polynomial")
        if self.is_zero():
            return LaurentPoly()
        # Reduce to ordinary polynomials: divisor = t^s * D(t) with D(0) != 0.
        s = divisor.min_exp()
        d = divisor.shift(-s)
        a0 = self.min_exp()
        num = self.shift(-a0)
        rem = dict(num._c)
        dn = d.max_exp()
        lead = d[dn]
        quot: dict[int, Fraction] = {}
        while rem:
            top = max(rem)
            if top < dn:
                break
            q = rem[top] / lead
            quot[top - dn] = q
            for e, v in d._c.items():
                k = e + top - dn
                nv = rem.get(k, 0) - q * v
                if nv:
                    rem[k] = nv
                else:
                    rem.pop(k, None)
        if rem:
            raise ArithmeticError(f"{self} is not divisible by {divisor} in Q[t, 1/t]")
        return LaurentPoly(quot).shift(a0 - s)

    def to_json(self) -> dict:
        return {"coeffs": {str(e): format_rational(v) for e, v in self.items()}}

    @classmethod
    def from_json(cls, obj: Mapping) -> "LaurentPoly":
        coeffs = obj["coeffs"]
        return cls({int(e): parse_rational(v) for e, v in coeffs.items()})

    def __repr__(self) -> str:
        return f"LaurentPoly({self})"

    def __str__(self) -> str:
        if not self._c:
            return "0"
        parts = []
        for e, v in sorted(self._c.items(), reverse=True):
            mag = abs(v)
            sign = "-" if v < 0 else "+"
            if e == 0:
                body = str(mag)
            else:
                var = "t" if e == 1 else f"t^{e}"
                body = var if mag == 1 else f"{mag}*{var}"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out


def _coerce(x) -> LaurentPoly:
    if isinstance(x, LaurentPoly):
        return x
    if isinstance(x, (int, Fraction)):
        return LaurentPoly.const(x)
    raise TypeError(f"cannot use {type(x).__name__} as a Laurent polynomial")


T = LaurentPoly.monomial(1)
ONE = LaurentPoly.const(1)
ZERO = LaurentPoly()


def lp_add(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    return a + b


def lp_mul(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    return a * b


def lp_substitute_square(p: LaurentPoly) -> LaurentPoly:
    return p.substitute_square()


def second_derivative_at_one(p: LaurentPoly) -> Fraction:
    """Second derivative of the full Laurent expression, evaluated at ``t = 1``."""
    return p.second_derivative_at_one()


@dataclass(frozen=True)
class ChamberSeries:
    """A formal Laurent series known only on the closed exponent window ``window``.

    Reading a coefficient outside the window raises ``IndexError``; the series
    is never silently extended.
    """

    coeffs: Mapping[int, Fraction]
    direction: str
    window: tuple[int, int]

    def __post_init__(self):
        lo, hi = self.window
        if lo > hi:
            raise ValueError(f"empty window {self.window}")
        if self.direction not in DIRECTIONS:
            raise ValueError(f"unknown expansion direction {self.direction!r}")
        clean = {}
        for e, v in self.coeffs.items():
            if not lo <= e <= hi:
                raise ValueError(f"coefficient at {e} lies outside window {self.window}")
            if v:
                clean[e] = Fraction(v)
        object.__setattr__(self, "coeffs", clean)

    def coefficient(self, exponent: int) -> Fraction:
        lo, hi = self.window
        if not lo <= exponent <= hi:
            raise IndexError(f"exponent {exponent} is outside the known window {self.window}")
        return self.coeffs.get(exponent, Fraction(0))

    def mul_poly(self, p: LaurentPoly) -> "ChamberSeries":
        """Product with a Laurent polynomial, restricted to where it is fully determined."""
        lo, hi = self.window
        if p.is_zero():
            return ChamberSeries({}, self.direction, self.window)
        new_lo, new_hi = lo + p.max_exp(), hi + p.min_exp()
        if new_lo > new_hi:
            raise ValueError(
                f"window {self.window} too narrow for a factor spanning "
                f"[{p.min_exp()}, {p.max_exp()}]"
            )
        out = {}
        for e in range(new_lo, new_hi + 1):
            s = sum((v * self.coefficient(e - pe) for pe, v in p.items()), Fraction(0))
            if s:
                out[e] = s
        return ChamberSeries(out, self.direction, (new_lo, new_hi))

    def truncated(self) -> LaurentPoly:
        """The known part as a Laurent polynomial (for display and tests)."""
        return LaurentPoly(self.coeffs)


def expand_inverse_square_wall(direction: str, window: tuple[int, int]) -> ChamberSeries:
    """Expansion of ``(t - 1/t)**-2`` in the given chamber, cut to ``window``.

    ``expand-in-t`` gives sum_{m>=1} m t^{2m}; ``expand-in-t-inverse`` gives
    sum_{m>=1} m t^{-2m}.
    """
    lo, hi = window
    if lo > hi:
        raise ValueError(f"empty window {window}")
    sign = 1 if direction == EXPAND_IN_T else -1
    if direction not in DIRECTIONS:
        raise ValueError(f"unknown expansion direction {direction!r}")
    coeffs = {}
    for e in range(lo, hi + 1):
        m = sign * e
        if m > 0 and m % 2 == 0:
            coeffs[e] = Fraction(m // 2)
    return ChamberSeries(coeffs, direction, (lo, hi))


WALL_SQUARED = (T - LaurentPoly.monomial(-1)) ** 2  # (t - t^-1)^2
