from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from swcasson.laurent import (
    EXPAND_IN_T,
    EXPAND_IN_T_INVERSE,
    ONE,
    T,
    WALL_SQUARED,
    ChamberSeries,
    LaurentPoly,
    expand_inverse_square_wall,
    format_rational,
    lp_add,
    lp_mul,
    lp_substitute_square,
    parse_rational,
    second_derivative_at_one,
)

TI = LaurentPoly.monomial(-1)
TREFOIL = T - 1 + TI
FIG8 = -T + 3 - TI


def lp(d):
    return LaurentPoly(d)


def test_add_examples():
    assert lp_add(TREFOIL, FIG8) == LaurentPoly.const(2)
    assert lp_add(TREFOIL, LaurentPoly()) == TREFOIL
    assert lp_add(lp({2: 1, 1: -1, 0: 1}), lp({1: 1, 0: -1})) == lp({2: 1})


def test_mul_examples():
    w = T - TI
    assert lp_mul(w, w) == lp({2: 1, 0: -2, -2: 1})
    assert lp_mul(TREFOIL, ONE) == TREFOIL
    # brute-force convolution of the coefficient lists
    expected = lp({3: 1, 2: -1, 1: -1, 0: 2, -1: -1, -2: -1, -3: 1})
    assert lp_mul(TREFOIL, WALL_SQUARED) == expected


def test_substitute_square():
    assert lp_substitute_square(TREFOIL) == lp({2: 1, 0: -1, -2: 1})
    assert lp_substitute_square(ONE) == ONE
    assert lp_substitute_square(FIG8) == lp({2: -1, 0: 3, -2: -1})


def test_second_derivative_at_one():
    assert second_derivative_at_one(TREFOIL) == 2
    assert second_derivative_at_one(ONE) == 0
    assert second_derivative_at_one(FIG8) == -2
    # t^-1 has second derivative 2 t^-3
    assert second_derivative_at_one(TI) == 2


def test_zero_coefficients_dropped():
    p = lp({0: 0, 3: Fraction(0)})
    assert p.is_zero() and p.coeffs == {}


def test_divmod_exact():
    prod = lp_mul(TREFOIL, T + 1)
    assert prod.divmod_exact(T + 1) == TREFOIL
    with pytest.raises(ArithmeticError):
        (T + 2).divmod_exact(T + 1)


def test_json_round_trip():
    p = lp({-2: Fraction(1, 2), 5: -3})
    assert p.to_json() == {"coeffs": {"-2": "1/2", "5": "-3"}}
    assert LaurentPoly.from_json(p.to_json()) == p


def test_rational_format():
    assert format_rational(Fraction(-4, 3)) == "-4/3"
    assert format_rational(Fraction(2)) == "2"
    assert parse_rational("3/32") == Fraction(3, 32)


def test_expand_examples():
    s = expand_inverse_square_wall(EXPAND_IN_T, (0, 6))
    assert s.truncated() == lp({2: 1, 4: 2, 6: 3})
    s = expand_inverse_square_wall(EXPAND_IN_T_INVERSE, (-4, 0))
    assert s.truncated() == lp({-2: 1, -4: 2})
    assert expand_inverse_square_wall(EXPAND_IN_T, (0, 0)).truncated().is_zero()


@pytest.mark.parametrize("direction", [EXPAND_IN_T, EXPAND_IN_T_INVERSE])
def test_expansion_multiplies_back_to_one(direction):
    s = expand_inverse_square_wall(direction, (-20, 20))
    back = s.mul_poly(WALL_SQUARED)
    lo, hi = back.window
    assert (lo, hi) == (-18, 18)
    for e in range(lo, hi + 1):
        assert back.coefficient(e) == (1 if e == 0 else 0)


def test_window_is_enforced():
    s = expand_inverse_square_wall(EXPAND_IN_T, (0, 6))
    with pytest.raises(IndexError):
        s.coefficient(8)
    with pytest.raises(ValueError):
        ChamberSeries({9: 1}, EXPAND_IN_T, (0, 6))
    with pytest.raises(ValueError):
        expand_inverse_square_wall("sideways", (0, 2))
    with pytest.raises(ValueError):
        s.mul_poly(lp({-5: 1, 5: 1}))


small = st.dictionaries(st.integers(-4, 4), st.builds(Fraction, st.integers(-9, 9), st.integers(1, 5)),
                        max_size=5).map(LaurentPoly)


@given(small, small, small)
def test_ring_axioms(p, q, r):
    assert lp_mul(p, q) == lp_mul(q, p)
    assert lp_mul(p, lp_add(q, r)) == lp_add(lp_mul(p, q), lp_mul(p, r))
    assert lp_add(p, q) - q == p


@given(small)
def test_symmetry_of_palindromes(p):
    s = p + p.invert_variable()
    assert s.is_symmetric()
    assert lp_substitute_square(s).is_symmetric()
