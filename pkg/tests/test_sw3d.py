import random

import pytest
from hypothesis import given, settings, strategies as st

from swcasson.corpus import random_seifert, sw_identity_corpus
from swcasson.knots import alexander_from_seifert, alexander_of, parse_seifert
from swcasson.sw3d import (
    direct_square_sum,
    sw_identity_check,
    sw_minus,
    sw_plus,
    sw_report,
    sw_series,
    sw_sum,
    sw_zero,
    theorem1_check,
)

TREFOIL = alexander_of(parse_seifert("[[-1,1],[0,-1]]"))
FIG8 = alexander_of(parse_seifert("[[1,1],[0,-1]]"))
UNKNOT = alexander_of(parse_seifert("[]"))


def brute_minus(alex, k):
    # sum_{m>=1} m a_{k-m}
    return sum(m * alex.coefficient(k - m) for m in range(1, abs(k) + alex.degree + 2))


def brute_plus(alex, k):
    return sum(m * alex.coefficient(k + m) for m in range(1, abs(k) + alex.degree + 2))


def test_sw_minus_examples():
    assert sw_minus(TREFOIL, 0) == 1
    assert sw_minus(TREFOIL, 2) == 2  # 1*a1 + 2*a0 + 3*a-1
    for k in range(-6, 1):
        assert sw_minus(UNKNOT, k) == 0


def test_sw_zero_examples():
    assert sw_zero(TREFOIL, 0) == 1
    assert sw_zero(TREFOIL, 1) == sw_zero(TREFOIL, -1) == 0
    assert sw_zero(FIG8, 0) == -1


def test_sw_sum_examples():
    assert sw_sum(TREFOIL) == 1
    assert sw_sum(UNKNOT) == 0
    assert sw_sum(FIG8) == -1


def test_theorem1_examples():
    t = theorem1_check(TREFOIL)
    assert (t.sw_sum, t.delta_second, t.matches_half, t.matches_full) == (1, 2, True, False)
    u = theorem1_check(UNKNOT)
    assert (u.sw_sum, u.delta_second, u.matches_half, u.matches_full) == (0, 0, True, True)
    f = theorem1_check(FIG8)
    assert (f.sw_sum, f.delta_second, f.matches_half) == (-1, -2, True)


@pytest.mark.parametrize("name,knot", sw_identity_corpus())
def test_chamber_formulas_match_brute_force(name, knot):
    alex = alexander_of(knot)
    reach = 2 * alex.degree + 3
    for k in range(-reach, reach + 1):
        assert sw_minus(alex, k) == brute_minus(alex, k)
        assert sw_plus(alex, k) == brute_plus(alex, k)
        assert sw_minus(alex, k) - sw_plus(alex, k) == k
    assert sw_identity_check(alex)["ok"]


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10_000), st.sampled_from([2, 4]))
def test_identities_on_random_knots(seed, size):
    alex = alexander_from_seifert(random_seifert(random.Random(seed), size))
    assert sw_sum(alex) == direct_square_sum(alex) == alex.poly.second_derivative_at_one() / 2
    for k in range(1, alex.degree + 4):
        assert sw_zero(alex, k) == sw_zero(alex, -k)
    # SW^0 vanishes outside the support bound
    assert sw_zero(alex, alex.degree + 1) == 0


def test_series_and_report_shape():
    s = sw_series(TREFOIL, 2)
    assert sorted(s.minus) == [-2, -1, 0, 1, 2]
    rep = sw_report("trefoil", TREFOIL)
    assert rep["knot"] == "trefoil"
    assert rep["sw_sum"] == 1
    assert rep["delta_second_at_1"] == "2"
    assert rep["matches"] == {"full": False, "half": True}
    assert rep["sw_zero"]["0"] == 1
