from swcasson.frames import (
    FIBER_DIRECTION,
    HORIZONTAL_X,
    KAPPA,
    R,
    TORSION_MINUS,
    CoframeForm,
    coframe_derivatives,
    d_eta,
    eq1_matrix,
    fiber_metric_compatibility_check,
    fiber_metric_lines,
    is_antisymmetric,
    solve_unknown_deta,
    torsion,
    torsion_check_eq1,
    torsion_outcome,
)
from swcasson.poly import ONE, Poly

E1, E2 = CoframeForm.basis(1), CoframeForm.basis(2)


def test_wedge_signs():
    assert E1.wedge(E2) == -E2.wedge(E1)
    assert E1.wedge(E1).is_zero()


def test_eq1_matrix_antisymmetric():
    assert is_antisymmetric(eq1_matrix())
    assert is_antisymmetric(eq1_matrix(variant=True))


def test_literal_signs_force_zero():
    out = torsion_check_eq1()
    assert out["matrix_antisymmetric"]
    shown = out["literal"]
    assert shown.connection_term_t0.is_zero()
    assert shown.forced_deta is not None and shown.forced_deta.is_zero()


def test_variant_forces_nonzero_deta():
    out = torsion_check_eq1()
    var = out["variant"]
    # with T = de + w^e the variant is torsion free in every row
    assert var.forced_deta == E1.wedge(E2).scale(R * -2)
    assert all(t.is_zero() for t in var.torsion_rows)


def test_other_convention_flips_the_sign():
    var = torsion_outcome(True, TORSION_MINUS)
    assert var.forced_deta == E1.wedge(E2).scale(R * 2)
    assert var.torsion_rows[1] == E1.wedge(E2).scale(KAPPA * 2)


def test_t1_t2_rows_symbolic():
    rows = torsion(eq1_matrix(), coframe_derivatives())
    assert rows[1].is_zero()
    assert rows[2] == CoframeForm.basis(0).wedge(E1).scale(R * -2)


def test_solver_rejects_inconsistent_rows():
    bad = CoframeForm(2, {(0, 1): Poly.var("c01") * 2, (0, 2): Poly.var("c02"), (1, 2): Poly.var("c12")})
    assert solve_unknown_deta(bad) is None


def test_deta_readings():
    lit = d_eta()
    a12, a13, a23 = (Poly.var(n) for n in ("a12", "a13", "a23"))
    assert lit.coefficient((1, 2)) == 2 * a12
    assert lit.coefficient((1, 3)) == 2 * a13
    assert lit.coefficient((2, 3)) == a13 + a23
    alt = d_eta("half-interior-sum")
    assert alt.coefficient((1, 2)) == a12 and alt.coefficient((2, 3)) == a23


def test_fiber_metric_examples():
    assert fiber_metric_compatibility_check()
    assert fiber_metric_compatibility_check(FIBER_DIRECTION)
    lines = fiber_metric_lines(HORIZONTAL_X)
    assert all(line.is_zero() for line in lines)
    assert fiber_metric_compatibility_check(HORIZONTAL_X)


def test_fiber_metric_cross_term():
    line1 = fiber_metric_lines()[0]
    cross = line1.diff("i")
    assert cross == 2 * Poly.var("eta(Z)") * Poly.var("eta(X)") * Poly.var("eta(Y)")
    assert fiber_metric_lines(FIBER_DIRECTION)[0] == 2 * Poly.var("i") * ONE
