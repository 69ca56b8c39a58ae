"""Three-dimensional Seiberg-Witten data of 0-surgery on a knot.

``SW^-`` is read off the Meng-Taubes identity
``SW^-(t) * (t - 1/t)^2 = Delta_K(t^2)`` by expanding ``(t - 1/t)^-2`` in
powers of ``t``; the coefficient of ``t^{2k}`` is ``SW^-(s_k)``. ``SW^+`` comes
from the opposite chamber, and the small-perturbation invariant ``SW^0``
takes ``SW^+`` for ``k > 0``, ``SW^-`` for ``k < 0``, and their common value at
the wall ``k = 0``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .knots import NormalizedAlexander
from .laurent import (
    EXPAND_IN_T,
    EXPAND_IN_T_INVERSE,
    expand_inverse_square_wall,
    format_rational,
)


def _chamber_coefficient(alex: NormalizedAlexander, k: int, direction: str) -> int:
    lifted = alex.poly.substitute_square()
    d = 2 * alex.degree
    # the product coefficient at 2k needs the series on [2k - d, 2k + d]
    series = expand_inverse_square_wall(direction, (2 * k - d, 2 * k + d))
    value = series.mul_poly(lifted).coefficient(2 * k)
    assert value.denominator == 1
    return int(value)


def sw_minus(alex: NormalizedAlexander, k: int) -> int:
    """``SW^-(s_k) = sum_{m>=1} m * a_{k-m}``."""
    return _chamber_coefficient(alex, k, EXPAND_IN_T)


def sw_plus(alex: NormalizedAlexander, k: int) -> int:
    """``SW^+(s_k) = sum_{m>=1} m * a_{k+m}``."""
    return _chamber_coefficient(alex, k, EXPAND_IN_T_INVERSE)


def sw_zero(alex: NormalizedAlexander, k: int) -> int:
    """Small-perturbation invariant; equals ``sum_{m>=1} m * a_{m+|k|}``."""
    if k > 0:
        return sw_plus(alex, k)
    if k < 0:
        return sw_minus(alex, k)
    left, right = sw_minus(alex, 0), sw_plus(alex, 0)
    if left != right:
        raise ArithmeticError(f"chambers disagree at the wall: {left} != {right}")
    return left


def support_bound(alex: NormalizedAlexander) -> int:
    """``N`` with ``sw_zero(k) == 0`` for every ``|k| >= N``."""
    return max(alex.degree, 1)


def sw_sum(alex: NormalizedAlexander) -> int:
    n = support_bound(alex)
    return sum(sw_zero(alex, k) for k in range(-n + 1, n))


@dataclass(frozen=True)
class SWSeries:
    minus: dict[int, int]
    plus: dict[int, int]
    zero: dict[int, int]
    support_bound: int

    def to_json(self) -> dict:
        def enc(m):
            return {str(k): v for k, v in sorted(m.items())}
        return {"sw_minus": enc(self.minus), "sw_plus": enc(self.plus),
                "sw_zero": enc(self.zero), "support_bound": self.support_bound}


def sw_series(alex: NormalizedAlexander, k_range: int | None = None) -> SWSeries:
    """Tabulate all three invariants for ``|k| <= k_range`` (default: support bound)."""
    n = support_bound(alex)
    if k_range is None:
        k_range = n
    ks = range(-k_range, k_range + 1)
    minus = {k: sw_minus(alex, k) for k in ks}
    plus = {k: sw_plus(alex, k) for k in ks}
    zero = {k: sw_zero(alex, k) for k in ks}
    return SWSeries(minus, plus, zero, n)


@dataclass(frozen=True)
class Theorem1Report:
    sw_sum: int
    delta_second: Fraction
    half_delta_second: Fraction
    matches_half: bool
    matches_full: bool

    def to_json(self) -> dict:
        return {
            "sw_sum": self.sw_sum,
            "delta_second_at_1": format_rational(self.delta_second),
            "half_delta_second_at_1": format_rational(self.half_delta_second),
            "matches": {"full": self.matches_full, "half": self.matches_half},
        }


def theorem1_check(alex: NormalizedAlexander) -> Theorem1Report:
    """Compare the SW^0 total against both ``Delta''(1)`` and ``Delta''(1)/2``."""
    total = sw_sum(alex)
    second = alex.poly.second_derivative_at_one()
    half = second / 2
    return Theorem1Report(total, second, half, total == half, total == second)


def sw_report(name: str, alex: NormalizedAlexander, k_range: int | None = None) -> dict:
    series = sw_series(alex, k_range)
    check = theorem1_check(alex)
    out = {"knot": name}
    out.update(series.to_json())
    out.update(check.to_json())
    return out


def direct_square_sum(alex: NormalizedAlexander) -> int:
    """``sum_{j>=1} j^2 a_j`` straight from the coefficients."""
    return sum(j * j * alex.coefficient(j) for j in range(1, alex.degree + 1))


def sw_identity_check(alex: NormalizedAlexander) -> dict:
    """sw_sum against the square sum and half of Delta''(1); wall crossing for |k| <= span + 3."""
    total = sw_sum(alex)
    squares = direct_square_sum(alex)
    half = alex.poly.second_derivative_at_one() / 2
    reach = 2 * alex.degree + 3
    bad_k = [k for k in range(-reach, reach + 1) if sw_minus(alex, k) - sw_plus(alex, k) != k]
    return {
        "sw_sum": total,
        "square_sum": squares,
        "half_delta_second_at_1": format_rational(half),
        "sum_identity": total == squares == half,
        "wall_crossing_range": reach,
        "wall_crossing_failures": bad_k,
        "ok": total == squares == half and not bad_k,
    }
