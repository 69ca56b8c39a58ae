"""Exterior algebra on an abstract orthonormal coframe, and the connection matrices
of circle bundles written in such coframes.

Forms here are expressed in a coframe ``{e^0, e^1, ...}`` rather than in
coordinates; the only derivative information is whatever structure equations
the caller supplies. Opaque 1-forms (base Levi-Civita entries) are extra
basis labels that are never differentiated.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from .poly import ONE, ZERO, Poly

Label = int
Index = tuple[Label, ...]


def _merge(i: Index, j: Index):
    if set(i) & set(j):
        return None
    inversions = sum(1 for a in i for b in j if a > b)
    return (-1 if inversions % 2 else 1), tuple(sorted(i + j))


class CoframeForm:
    """A homogeneous form ``sum_I c_I e^I`` with polynomial coefficients."""

    __slots__ = ("degree", "terms")

    def __init__(self, degree: int, terms: Mapping[Index, Poly] | None = None):
        self.degree = degree
        clean = {}
        for idx, c in (terms or {}).items():
            idx = tuple(idx)
            if len(idx) != degree or list(idx) != sorted(set(idx)):
                raise ValueError(f"bad index {idx} for a {degree}-form")
            if not isinstance(c, Poly):
                c = Poly.const(c)
            if c:
                clean[idx] = c
        self.terms = clean

    @classmethod
    def basis(cls, label: Label, coeff: Poly = ONE) -> "CoframeForm":
        return cls(1, {(label,): coeff})

    @classmethod
    def zero(cls, degree: int) -> "CoframeForm":
        return cls(degree)

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, idx: Index) -> Poly:
        return self.terms.get(tuple(idx), ZERO)

    def labels(self) -> set[Label]:
        return {x for idx in self.terms for x in idx}

    def __add__(self, other: "CoframeForm") -> "CoframeForm":
        if other.is_zero():
            return self
        if self.is_zero():
            return other
        if other.degree != self.degree:
            raise ValueError("cannot add forms of different degree")
        out = dict(self.terms)
        for idx, c in other.terms.items():
            out[idx] = out.get(idx, ZERO) + c
        return CoframeForm(self.degree, out)

    def __neg__(self) -> "CoframeForm":
        return self.scale(-1)

    def __sub__(self, other: "CoframeForm") -> "CoframeForm":
        return self + (-other)

    def scale(self, c) -> "CoframeForm":
        return CoframeForm(self.degree, {i: v * c for i, v in self.terms.items()})

    def wedge(self, other: "CoframeForm") -> "CoframeForm":
        out: dict[Index, Poly] = {}
        for i, a in self.terms.items():
            for j, b in other.terms.items():
                m = _merge(i, j)
                if m is None:
                    continue
                sign, idx = m
                out[idx] = out.get(idx, ZERO) + a * b * sign
        return CoframeForm(self.degree + other.degree, out)

    __xor__ = wedge

    def subs(self, name: str, value) -> "CoframeForm":
        return CoframeForm(self.degree, {i: c.subs(name, value) for i, c in self.terms.items()})

    def __eq__(self, other) -> bool:
        if not isinstance(other, CoframeForm):
            return NotImplemented
        if self.is_zero() and other.is_zero():
            return True
        return self.degree == other.degree and self.terms == other.terms

    def render(self, names: Sequence[str]) -> str:
        if not self.terms:
            return "0"
        parts = []
        for idx, c in sorted(self.terms.items()):
            basis = "^".join(names[i] for i in idx) or "1"
            parts.append(f"({c})*{basis}")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"CoframeForm({self.degree}, {self.terms})"


FormMatrix = list[list[CoframeForm]]


def is_antisymmetric(m: FormMatrix) -> bool:
    n = len(m)
    return all(m[i][j] == -m[j][i] for i in range(n) for j in range(n))


def matrix_labels(m: FormMatrix) -> set[Label]:
    return {x for row in m for f in row for x in f.labels()}


def render_matrix(m: FormMatrix, names: Sequence[str]) -> list[list[str]]:
    return [[f.render(names) for f in row] for row in m]


# -- 4-manifold frame {e^0 = r eta, e^1, e^2, e^3} plus opaque base entries -----------

FOUR_FRAME = ("e0", "e1", "e2", "e3", "w12", "w13", "w23")
W12, W13, W23 = 4, 5, 6
OPAQUE_LABELS = {W12, W13, W23}

R, T = Poly.var("r"), Poly.var("t")
A12, A13, A23 = Poly.var("a12"), Poly.var("a13"), Poly.var("a23")


def _e(label: Label, coeff=ONE) -> CoframeForm:
    return CoframeForm.basis(label, coeff if isinstance(coeff, Poly) else Poly.const(coeff))


def build_omega_rt(t_power: int = 1) -> FormMatrix:
    """The connection matrix of the path ``nabla^{r,t}`` with ``a^{(t)}_{ij} = t^p a_{ij}``.

    The path as defined uses ``p = 1``; ``t_power`` exists only to explore the
    alternative scaling in diagnostics.
    """
    tp = T**t_power
    b12, b13, b23 = R * tp * A12, R * tp * A13, R * tp * A23  # r a^{(t)}_{ij}
    z = CoframeForm.zero(1)
    return [
        [z, _e(2, b12) + _e(3, b13), _e(1, -b12) + _e(3, b23), _e(1, -b13) + _e(2, -b23)],
        [_e(2, -b12) + _e(3, -b13), z, _e(0, -b12) + _e(W12), _e(0, -b13) + _e(W13)],
        [_e(1, b12) + _e(3, -b23), _e(0, b12) - _e(W12), z, _e(0, -b23) + _e(W23)],
        [_e(1, b13) + _e(2, b23), _e(0, b13) - _e(W13), _e(0, b23) - _e(W23), z],
    ]


def build_omega_tilde() -> FormMatrix:
    """Connection matrix of the bundle-compatible connection ``d + pi^* nabla``."""
    z = CoframeForm.zero(1)
    return [
        [z, z, z, z],
        [z, z, _e(W12), _e(W13)],
        [z, -_e(W12), z, _e(W23)],
        [z, -_e(W13), -_e(W23), z],
    ]


def matrix_difference(a: FormMatrix, b: FormMatrix) -> FormMatrix:
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


DETA_LITERAL = "literal"
DETA_HALF_INTERIOR_SUM = "half-interior-sum"
DETA_READINGS = (DETA_LITERAL, DETA_HALF_INTERIOR_SUM)


def d_eta(reading: str = DETA_LITERAL) -> CoframeForm:
    """``d eta`` in the frame ``e^1, e^2, e^3``.

    ``literal`` takes ``e1^(a12 e2 + a13 e3) + e2^(-a12 e1 + a13 e3) +
    e3^(-a13 e1 - a23 e2)`` at face value. ``half-interior-sum`` reads that
    expression as ``sum_i e^i ^ i_{e_i} d eta`` (which is twice ``d eta``) with
    the middle ``a13`` taken as ``a23``, i.e. ``a12 e12 + a13 e13 + a23 e23``.
    """
    e1, e2, e3 = _e(1), _e(2), _e(3)
    if reading == DETA_LITERAL:
        return (e1.wedge(e2.scale(A12) + e3.scale(A13))
                + e2.wedge(e1.scale(-A12) + e3.scale(A13))
                + e3.wedge(e1.scale(-A13) + e2.scale(-A23)))
    if reading == DETA_HALF_INTERIOR_SUM:
        return e1.wedge(e2).scale(A12) + e1.wedge(e3).scale(A13) + e2.wedge(e3).scale(A23)
    raise ValueError(f"unknown d(eta) reading {reading!r}")


# -- 3-manifold coframe (eta_r, eta^1, eta^2) --------------------------------------------

THREE_FRAME = ("eta_r", "eta1", "eta2")
KAPPA = Poly.var("kappa")
UNKNOWN_DETA = {(0, 1): "c01", (0, 2): "c02", (1, 2): "c12"}


def eq1_matrix(variant: bool = False) -> FormMatrix:
    """The connection matrix of the rescaled metric in the coframe (eta_r, eta1, eta2).

    ``variant=True`` flips the sign of the (0, 2) entry to ``+r eta1`` (and the
    (2, 0) entry to match).
    """
    er, e1, e2 = (CoframeForm.basis(i) for i in range(3))
    z = CoframeForm.zero(1)
    w02 = e1.scale(R) if variant else e1.scale(-R)
    return [
        [z, e2.scale(-R), w02],
        [e2.scale(R), z, er.scale(R) - e1.scale(KAPPA)],
        [-w02, er.scale(-R) + e1.scale(KAPPA), z],
    ]


def coframe_derivatives() -> list[CoframeForm]:
    """``d eta_r`` (unknown coefficients c01, c02, c12), ``d eta1 = kappa eta1^eta2``, ``d eta2 = 0``."""
    d_er = CoframeForm(2, {idx: Poly.var(name) for idx, name in UNKNOWN_DETA.items()})
    d_e1 = CoframeForm(2, {(1, 2): KAPPA})
    return [d_er, d_e1, CoframeForm.zero(2)]


TORSION_PLUS = 1   # T^i = d e^i + sum_j w^i_j ^ e^j
TORSION_MINUS = -1  # T^i = d e^i - sum_j w^i_j ^ e^j


def torsion(matrix: FormMatrix, derivatives: Sequence[CoframeForm],
            convention: int = TORSION_PLUS) -> list[CoframeForm]:
    """Torsion rows ``T^i = d e^i + convention * sum_j w^i_j ^ e^j``."""
    n = len(matrix)
    out = []
    for i in range(n):
        acc = CoframeForm.zero(2)
        for j in range(n):
            acc = acc + matrix[i][j].wedge(CoframeForm.basis(j))
        out.append(derivatives[i] + acc.scale(convention))
    return out


def solve_unknown_deta(t0: CoframeForm) -> CoframeForm | None:
    """Solve ``T^0 = 0`` for the unknown coefficients of ``d eta_r``; None if impossible."""
    unknowns = set(UNKNOWN_DETA.values())
    solution = {}
    for idx, name in UNKNOWN_DETA.items():
        c = t0.coefficient(idx)
        slope = c.diff(name)
        rest = c - Poly.var(name) * slope
        if slope != ONE or rest.variables() & unknowns:
            return None
        solution[idx] = -rest
    for idx, c in t0.terms.items():
        if idx not in UNKNOWN_DETA and c:
            return None
    return CoframeForm(2, solution)


@dataclass(frozen=True)
class TorsionOutcome:
    variant: bool
    convention: int
    matrix_antisymmetric: bool
    connection_term_t0: CoframeForm
    forced_deta: CoframeForm | None
    torsion_rows: tuple[CoframeForm, ...]

    def to_json(self) -> dict:
        names = THREE_FRAME
        return {
            "variant": "w^0_2 = +r eta1" if self.variant else "literal signs",
            "torsion_convention": "T = de %s w^e" % ("+" if self.convention > 0 else "-"),
            "matrix_antisymmetric": self.matrix_antisymmetric,
            "connection_term_T0": self.connection_term_t0.render(names),
            "T0_connection_terms_cancel": self.connection_term_t0.is_zero(),
            "forced_d_eta_r": None if self.forced_deta is None else self.forced_deta.render(names),
            "torsion_with_forced_d_eta_r": [t.render(names) for t in self.torsion_rows],
        }


def torsion_outcome(variant: bool, convention: int = TORSION_PLUS) -> TorsionOutcome:
    m = eq1_matrix(variant)
    derivs = coframe_derivatives()
    rows = torsion(m, derivs, convention)
    conn_t0 = rows[0] - derivs[0]
    forced = solve_unknown_deta(rows[0])
    if forced is not None:
        derivs = [forced] + derivs[1:]
        rows = torsion(m, derivs, convention)
    return TorsionOutcome(variant, convention, is_antisymmetric(m), conn_t0, forced, tuple(rows))


def torsion_check_eq1(convention: int = TORSION_PLUS) -> dict:
    """Audit the 3-manifold connection matrix; returns both transcripts.

    ``forced_deta`` is the 2-form that ``T^0 = 0`` forces for the literal
    signs; the sign variant is reported alongside.
    """
    literal = torsion_outcome(False, convention)
    variant = torsion_outcome(True, convention)
    return {
        "matrix_antisymmetric": literal.matrix_antisymmetric,
        "forced_deta": literal.forced_deta,
        "literal": literal,
        "variant": variant,
    }


# -- fiber metric compatibility ----------------------------------------------------------

I_UNIT = Poly.var("i")
ETA_X, ETA_Y, ETA_Z = Poly.var("eta(X)"), Poly.var("eta(Y)"), Poly.var("eta(Z)")
Z_ETA_X, Z_ETA_Y = Poly.var("Z(eta(X))"), Poly.var("Z(eta(Y))")


def _eta_of_nabla(z_eta_v: Poly, eta_v: Poly) -> Poly:
    """``eta(nabla~_Z V) = Z(eta(V)) + i eta(Z) eta(V)`` for the connection d + i eta."""
    return z_eta_v + I_UNIT * ETA_Z * eta_v


def _eta_eta(u: Poly, v: Poly) -> Poly:
    return u * v


def fiber_metric_lines(subs: Mapping[str, int] | None = None) -> list[Poly]:
    """The four lines of the compatibility computation, each fully expanded."""
    # line 1: nabla~_Z on eta(x)eta (charge one per factor) acting on the product
    leibniz = Z_ETA_X * ETA_Y + ETA_X * Z_ETA_Y
    line1 = leibniz + 2 * I_UNIT * ETA_Z * _eta_eta(ETA_X, ETA_Y)
    line2 = Z_ETA_X * ETA_Y + ETA_X * Z_ETA_Y + 2 * I_UNIT * ETA_Z * ETA_X * ETA_Y
    line3 = _eta_of_nabla(Z_ETA_X, ETA_X) * ETA_Y + ETA_X * _eta_of_nabla(Z_ETA_Y, ETA_Y)
    line4 = (_eta_eta(_eta_of_nabla(Z_ETA_X, ETA_X), ETA_Y)
             + _eta_eta(ETA_X, _eta_of_nabla(Z_ETA_Y, ETA_Y)))
    lines = [line1, line2, line3, line4]
    for name, value in (subs or {}).items():
        lines = [p.subs(name, value) for p in lines]
    return lines


FIBER_DIRECTION = {"eta(X)": 1, "eta(Y)": 1, "eta(Z)": 1, "Z(eta(X))": 0, "Z(eta(Y))": 0}
HORIZONTAL_X = {"eta(X)": 0, "Z(eta(X))": 0}


def fiber_metric_compatibility_check(subs: Mapping[str, int] | None = None) -> bool:
    lines = fiber_metric_lines(subs)
    return all(line == lines[0] for line in lines[1:])
