from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from swcasson.eta import (
    BundleGeometry,
    CorrectionInput,
    GeometryError,
    closed_form_omega,
    correction_r_independence_grid,
    correction_term,
    eta_dirac,
    eta_signature,
)


def g(l, chi, r, h=0, **kw):
    return BundleGeometry(l, chi, F(r), h, **kw)


def test_eta_dirac_examples():
    assert eta_dirac(g(1, 0, 1)) == F(1, 3)
    assert eta_dirac(g(1, 2, F(1, 2))) == F(3, 32)
    assert eta_dirac(g(-1, 0, 1)) == F(-1, 3)


def test_eta_signature_examples():
    assert eta_signature(g(1, 0, 1)) == F(-4, 3)
    assert eta_signature(g(1, 2, 1)) == 0
    assert eta_signature(g(-1, 0, 1)) == F(4, 3)


def test_signature_needs_normalized_volume():
    with pytest.raises(GeometryError):
        eta_signature(g(1, 0, 1, vol_normalized=False))


@pytest.mark.parametrize("bad", [dict(l=0, chi=0, r=1), dict(l=1, chi=3, r=1),
                                 dict(l=1, chi=4, r=1), dict(l=1, chi=0, r=0),
                                 dict(l=1, chi=0, r=-1)])
def test_geometry_validation(bad):
    with pytest.raises(GeometryError):
        g(**bad)


def test_correction_examples():
    assert correction_term(CorrectionInput(g(1, 0, 1), 0)).omega == 0
    assert correction_term(CorrectionInput(g(1, 2, F(1, 2)), 2)).omega == -1
    assert correction_term(CorrectionInput(g(1, 0, F(7, 3), 3), 0)).omega == 3


def test_grid_is_r_independent():
    grid = correction_r_independence_grid()
    assert len(grid) == 6 * 4 * 9
    assert all(rec["r_independent"] for rec in grid)
    assert all(rec["matches_l1_form"] for rec in grid if rec["l"] == 1)


@given(st.sampled_from([-3, -2, -1, 1, 2, 3]), st.sampled_from([2, 0, -2, -4, -6]),
       st.fractions(min_value=F(1, 100), max_value=10), st.integers(0, 4), st.integers(0, 4))
def test_omega_matches_closed_form(l, chi, r, h_half, h_dirac):
    res = correction_term(CorrectionInput(g(l, chi, r, h_half), h_dirac))
    assert res.omega == closed_form_omega(l, h_half, h_dirac)
    assert res.closed_form_check


def test_result_json():
    js = correction_term(CorrectionInput(g(1, 0, 1), 0)).to_json()
    assert js["omega"] == "0"
    assert js["eta_dirac"] == "1/3"
