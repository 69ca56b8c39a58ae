"""Sparse multivariate polynomials over Q with named variables.

A monomial is a sorted tuple of ``(name, exponent)`` pairs; the empty tuple is
the constant monomial. Used as the coefficient ring for differential forms and
Clifford elements, where every identity is checked exactly.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Mapping, Union

Monomial = tuple[tuple[str, int], ...]
Scalar = Union[int, Fraction]


@lru_cache(maxsize=1 << 16)
def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    out = dict(a)
    for v, e in b:
        out[v] = out.get(v, 0) + e
    return tuple(sorted(out.items()))


def _mono_str(m: Monomial) -> str:
    return "*".join(v if e == 1 else f"{v}^{e}" for v, e in m)


class Poly:
    __slots__ = ("_t",)

    def __init__(self, terms: Mapping[Monomial, Scalar] | None = None):
        self._t: dict[Monomial, Fraction] = {}
        for m, c in (terms or {}).items():
            if c:
                self._t[m] = Fraction(c)

    @classmethod
    def var(cls, name: str) -> "Poly":
        return cls({((name, 1),): 1})

    @classmethod
    def const(cls, c: Scalar) -> "Poly":
        return cls({(): c})

    @staticmethod
    def _raw(terms: dict) -> "Poly":
        p = Poly.__new__(Poly)
        p._t = terms
        return p

    @property
    def terms(self) -> dict[Monomial, Fraction]:
        return dict(self._t)

    def is_zero(self) -> bool:
        return not self._t

    def __bool__(self) -> bool:
        return bool(self._t)

    def variables(self) -> set[str]:
        return {v for m in self._t for v, _ in m}

    def __add__(self, other) -> "Poly":
        other = _coerce(other)
        if not other._t:
            return self
        out = dict(self._t)
        for m, c in other._t.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return Poly._raw(out)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly._raw({m: -c for m, c in self._t.items()})

    def __sub__(self, other) -> "Poly":
        return self + (-_coerce(other))

    def __rsub__(self, other) -> "Poly":
        return _coerce(other) - self

    def __mul__(self, other) -> "Poly":
        if isinstance(other, (int, Fraction)):
            if not other:
                return Poly()
            return Poly._raw({m: c * other for m, c in self._t.items()})
        other = _coerce(other)
        out: dict[Monomial, Fraction] = {}
        for m1, c1 in self._t.items():
            for m2, c2 in other._t.items():
                m = _mono_mul(m1, m2)
                s = out.get(m, 0) + c1 * c2
                if s:
                    out[m] = s
                else:
                    out.pop(m, None)
        return Poly._raw(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Poly":
        out = Poly.const(1)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        try:
            other = _coerce(other)
        except TypeError:
            return NotImplemented
        return self._t == other._t

    def __hash__(self) -> int:
        return hash(frozenset(self._t.items()))

    def diff(self, name: str) -> "Poly":
        out: dict[Monomial, Fraction] = {}
        for m, c in self._t.items():
            for i, (v, e) in enumerate(m):
                if v == name:
                    rest = m[:i] + ((v, e - 1),) + m[i + 1:] if e > 1 else m[:i] + m[i + 1:]
                    out[rest] = out.get(rest, 0) + c * e
                    break
        return Poly(out)

    def subs(self, name: str, value: Union[Scalar, "Poly"]) -> "Poly":
        value = _coerce(value)
        out = Poly()
        powers: dict[int, Poly] = {}
        for m, c in self._t.items():
            rest = []
            k = 0
            for v, e in m:
                if v == name:
                    k = e
                else:
                    rest.append((v, e))
            if k not in powers:
                powers[k] = value**k
            out = out + Poly._raw({tuple(rest): c}) * powers[k]
        return out

    def integrate(self, name: str, lo: Scalar = 0, hi: Scalar = 1) -> "Poly":
        """Definite integral in ``name`` over ``[lo, hi]``."""
        anti: dict[Monomial, Fraction] = {}
        for m, c in self._t.items():
            d = dict(m)
            e = d.get(name, 0) + 1
            d[name] = e
            key = tuple(sorted(d.items()))
            anti[key] = anti.get(key, 0) + c / e
        a = Poly(anti)
        return a.subs(name, hi) - a.subs(name, lo)

    def degree(self) -> int:
        return max((sum(e for _, e in m) for m in self._t), default=-1)

    def to_json(self) -> dict:
        return {(_mono_str(m) or "1"): str(c) for m, c in sorted(self._t.items())}

    def __repr__(self) -> str:
        return f"Poly({self})"

    def __str__(self) -> str:
        if not self._t:
            return "0"
        parts = []
        for m, c in sorted(self._t.items()):
            body = _mono_str(m)
            if not body:
                parts.append(str(c))
            elif c == 1:
                parts.append(body)
            elif c == -1:
                parts.append("-" + body)
            else:
                parts.append(f"{c}*{body}")
        return " + ".join(parts).replace("+ -", "- ")


def _coerce(x) -> Poly:
    if isinstance(x, Poly):
        return x
    if isinstance(x, (int, Fraction)):
        return Poly.const(x)
    raise TypeError(f"cannot use {type(x).__name__} as a polynomial")


ZERO = Poly()
ONE = Poly.const(1)
