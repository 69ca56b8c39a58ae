import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from swcasson.clifford import (
    PIN_DOWN,
    TWO_FORM_SIGN,
    CliffordElement,
    adjudicate_two_form_sign,
    blade_product,
    clifford_mul,
    dirac_path_lemma_check,
    dirac_path_sides,
    dirac_path_transcript,
    matrix_to_two_form,
)
from swcasson.frames import (
    DETA_HALF_INTERIOR_SUM,
    DETA_LITERAL,
    OPAQUE_LABELS,
    build_omega_rt,
    build_omega_tilde,
    is_antisymmetric,
    matrix_difference,
    matrix_labels,
)
from swcasson.poly import ONE, ZERO, Poly

E = [CliffordElement.generator(i) for i in range(4)]
BLADES = [b for k in range(5) for b in itertools.combinations(range(4), k)]


def brute_blade_product(a, b):
    # multiply generator by generator from the left, using only e_i e_i = -1 and
    # anticommutation of distinct generators
    word = list(a) + list(b)
    sign = 1
    changed = True
    while changed:
        changed = False
        for i in range(len(word) - 1):
            if word[i] > word[i + 1]:
                word[i], word[i + 1] = word[i + 1], word[i]
                sign = -sign
                changed = True
            elif word[i] == word[i + 1]:
                del word[i:i + 2]
                sign = -sign
                changed = True
                break
    return sign, tuple(word)


def test_clifford_relations_exhaustive():
    for i in range(4):
        for j in range(4):
            anti = E[i] * E[j] + E[j] * E[i]
            assert anti == CliffordElement.scalar(-2 if i == j else 0)


def test_blade_products_against_brute_force():
    for a in BLADES:
        for b in BLADES:
            assert blade_product(a, b) == brute_blade_product(a, b)


def test_examples():
    assert E[0] * E[0] == CliffordElement.scalar(-1)
    assert E[1] * E[2] == CliffordElement({(1, 2): 1})
    assert E[2] * E[1] == CliffordElement({(1, 2): -1})
    vol = clifford_mul(CliffordElement({(0, 1): 1}), CliffordElement({(2, 3): 1}))
    assert vol == CliffordElement({(0, 1, 2, 3): 1})
    assert vol * vol == CliffordElement.scalar(brute_blade_product((0, 1, 2, 3), (0, 1, 2, 3))[0])
    assert vol * vol == CliffordElement.scalar(1)


def _random_element(rng):
    names = ["p", "q"]
    terms = {}
    for b in rng.sample(BLADES, 3):
        c = Poly.const(rng.randint(-2, 2)) + Poly.var(rng.choice(names)) * rng.randint(-1, 1)
        terms[b] = c
    return CliffordElement(terms)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 100_000))
def test_associativity(seed):
    rng = random.Random(seed)
    a, b, c = (_random_element(rng) for _ in range(3))
    assert (a * b) * c == a * (b * c)


def test_matrix_to_two_form():
    zero = [[ZERO] * 4 for _ in range(4)]
    assert matrix_to_two_form(zero).is_zero()
    m = [row[:] for row in zero]
    m[1][2], m[2][1] = Poly.const(2), Poly.const(-2)
    assert matrix_to_two_form(m) == CliffordElement({(1, 2): 1})
    assert matrix_to_two_form(m, -1) == CliffordElement({(1, 2): -1})
    m[0][3] = ONE
    with pytest.raises(ValueError):
        matrix_to_two_form(m)


def test_connection_matrices():
    rt, tilde = build_omega_rt(), build_omega_tilde()
    assert is_antisymmetric(rt) and is_antisymmetric(tilde)
    r, t, a12, a13 = (Poly.var(n) for n in ("r", "t", "a12", "a13"))
    entry = rt[0][1]
    assert entry.coefficient((2,)) == r * t * a12
    assert entry.coefficient((3,)) == r * t * a13
    assert len(entry.terms) == 2
    diff = matrix_difference(rt, tilde)
    assert not matrix_labels(diff) & OPAQUE_LABELS
    at_zero = [[f.subs("t", 0) for f in row] for row in diff]
    assert all(f.is_zero() for row in at_zero for f in row)


def test_t_zero_case():
    lhs, rhs = dirac_path_sides(specialize={"t": 0})
    assert lhs.is_zero() and rhs.is_zero()


def test_literal_pin_down_has_no_passing_sign():
    # both sides are single-blade in e0e1e2 but the left is linear in t
    lhs, rhs = dirac_path_sides(sign=1, specialize=PIN_DOWN)
    assert set(lhs.terms) == set(rhs.terms) == {(0, 1, 2)}
    assert adjudicate_two_form_sign(DETA_LITERAL, 1) == []


def test_literal_lemma_fails():
    assert not dirac_path_lemma_check()
    tr = dirac_path_transcript()
    assert not tr["holds"]
    assert tr["t_zero_holds"]
    assert tr["residual"]


def test_corrected_reading_holds_and_fixes_sign():
    assert adjudicate_two_form_sign(DETA_HALF_INTERIOR_SUM, 2) == [TWO_FORM_SIGN] == [-1]
    assert dirac_path_lemma_check(DETA_HALF_INTERIOR_SUM, 2)
    assert not dirac_path_lemma_check(DETA_HALF_INTERIOR_SUM, 2, sign=1)
    assert not dirac_path_lemma_check(DETA_LITERAL, 2)
    assert not dirac_path_lemma_check(DETA_HALF_INTERIOR_SUM, 1)


def test_transcript_variants():
    tr = dirac_path_transcript()
    passing = [v for v in tr["variants"] if v["holds_with_frozen_sign"]]
    assert passing == [{"d_eta_reading": DETA_HALF_INTERIOR_SUM, "t_power": 2,
                        "pin_down_signs": [-1], "holds_with_frozen_sign": True}]
