"""Matrix-valued differential forms on a coordinate chart, with exact coefficients.

A :class:`MatrixForm` of degree ``p`` on ``R^n`` stores, for each strictly
increasing multi-index ``I = (i_1 < ... < i_p)``, an ``m x m`` matrix of
polynomials in the coordinates ``x1..xn`` (and any extra formal parameters).
Scalar forms are the case ``m = 1``.

The Chern-Weil transgression identity for a linear path of connections
``w_t = w_0 + t a`` is checked as an exact polynomial identity in all
variables including ``t``.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .poly import ONE, ZERO, Poly

MultiIndex = tuple[int, ...]
Matrix = tuple[tuple[Poly, ...], ...]

PATH_PARAMETER = "t"


def coordinate(i: int) -> str:
    """Name of the ``i``-th chart coordinate (0-based): ``x1, x2, ...``."""
    return f"x{i + 1}"


def _zero_matrix(m: int) -> Matrix:
    return tuple(tuple(ZERO for _ in range(m)) for _ in range(m))


def _is_zero_matrix(a: Matrix) -> bool:
    return all(e.is_zero() for row in a for e in row)


def _mat_add(a: Matrix, b: Matrix) -> Matrix:
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def _mat_scale(a: Matrix, c) -> Matrix:
    return tuple(tuple(x * c for x in row) for row in a)


def _mat_mul(a: Matrix, b: Matrix) -> Matrix:
    m = len(a)
    out = []
    for i in range(m):
        row = []
        for j in range(m):
            s = ZERO
            for k in range(m):
                if a[i][k] and b[k][j]:
                    s = s + a[i][k] * b[k][j]
            row.append(s)
        out.append(tuple(row))
    return tuple(out)


def _mat_map(a: Matrix, f) -> Matrix:
    return tuple(tuple(f(x) for x in row) for row in a)


def _merge(i: MultiIndex, j: MultiIndex) -> tuple[int, MultiIndex] | None:
    """Sign and sorted index of ``dx_I ^ dx_J``, or None if they share an index."""
    if set(i) & set(j):
        return None
    seq = list(i) + list(j)
    # parity of the sorting permutation = number of inversions
    inversions = sum(1 for a in i for b in j if a > b)
    return (-1 if inversions % 2 else 1), tuple(sorted(seq))


class FormError(ValueError):
    pass


@dataclass(frozen=True)
class MatrixForm:
    degree: int
    chart_dim: int
    matrix_dim: int
    terms: Mapping[MultiIndex, Matrix]

    def __post_init__(self):
        clean = {}
        for idx, mat in self.terms.items():
            idx = tuple(idx)
            if len(idx) != self.degree or list(idx) != sorted(set(idx)):
                raise FormError(f"multi-index {idx} is not strictly increasing of length {self.degree}")
            if any(i < 0 or i >= self.chart_dim for i in idx):
                raise FormError(f"multi-index {idx} out of range for chart dimension {self.chart_dim}")
            mat = tuple(tuple(row) for row in mat)
            if len(mat) != self.matrix_dim or any(len(r) != self.matrix_dim for r in mat):
                raise FormError("inconsistent matrix dimension")
            if not _is_zero_matrix(mat):
                clean[idx] = mat
        object.__setattr__(self, "terms", clean)

    @classmethod
    def zero(cls, degree: int, chart_dim: int, matrix_dim: int) -> "MatrixForm":
        return cls(degree, chart_dim, matrix_dim, {})

    @classmethod
    def scalar(cls, degree: int, chart_dim: int, components: Mapping[MultiIndex, Poly]) -> "MatrixForm":
        return cls(degree, chart_dim, 1, {i: ((c,),) for i, c in components.items()})

    def is_zero(self) -> bool:
        return not self.terms

    def component(self, idx: MultiIndex) -> Matrix:
        return self.terms.get(tuple(idx), _zero_matrix(self.matrix_dim))

    def _check_compatible(self, other: "MatrixForm"):
        if (self.chart_dim, self.matrix_dim) != (other.chart_dim, other.matrix_dim):
            raise FormError("forms live on different charts or matrix sizes")

    def __add__(self, other: "MatrixForm") -> "MatrixForm":
        self._check_compatible(other)
        if other.is_zero():
            return self
        if self.is_zero():
            return other
        if self.degree != other.degree:
            raise FormError(f"cannot add forms of degrees {self.degree} and {other.degree}")
        out = dict(self.terms)
        for idx, mat in other.terms.items():
            out[idx] = _mat_add(out[idx], mat) if idx in out else mat
        return MatrixForm(self.degree, self.chart_dim, self.matrix_dim, out)

    def __neg__(self) -> "MatrixForm":
        return self.scale(-1)

    def __sub__(self, other: "MatrixForm") -> "MatrixForm":
        return self + (-other)

    def scale(self, c) -> "MatrixForm":
        return MatrixForm(self.degree, self.chart_dim, self.matrix_dim,
                          {i: _mat_scale(m, c) for i, m in self.terms.items()})

    def map_coefficients(self, f) -> "MatrixForm":
        return MatrixForm(self.degree, self.chart_dim, self.matrix_dim,
                          {i: _mat_map(m, f) for i, m in self.terms.items()})

    def matmul_constant(self, c: Matrix, left: bool = True) -> "MatrixForm":
        """Multiply every component by a constant matrix on the left (or right)."""
        return MatrixForm(self.degree, self.chart_dim, self.matrix_dim,
                          {i: (_mat_mul(c, m) if left else _mat_mul(m, c))
                           for i, m in self.terms.items()})

    def diff_parameter(self, name: str = PATH_PARAMETER) -> "MatrixForm":
        return self.map_coefficients(lambda p: p.diff(name))

    def integrate_parameter(self, name: str = PATH_PARAMETER, lo=0, hi=1) -> "MatrixForm":
        return self.map_coefficients(lambda p: p.integrate(name, lo, hi))

    def subs(self, name: str, value) -> "MatrixForm":
        return self.map_coefficients(lambda p: p.subs(name, value))

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "chart_dim": self.chart_dim,
            "matrix_dim": self.matrix_dim,
            "terms": {
                ",".join(str(i) for i in idx): [[p.to_json() for p in row] for row in mat]
                for idx, mat in sorted(self.terms.items())
            },
        }


def exterior_d(f: MatrixForm) -> MatrixForm:
    """Coordinate exterior derivative; a top-degree form maps to the zero form."""
    n = f.chart_dim
    if f.degree >= n:
        return MatrixForm.zero(f.degree + 1, n, f.matrix_dim)
    out: dict[MultiIndex, Matrix] = {}
    for idx, mat in f.terms.items():
        for j in range(n):
            merged = _merge((j,), idx)
            if merged is None:
                continue
            sign, new = merged
            dm = _mat_map(mat, lambda p: p.diff(coordinate(j)) * sign)
            out[new] = _mat_add(out[new], dm) if new in out else dm
    return MatrixForm(f.degree + 1, n, f.matrix_dim, out)


def wedge_mul(a: MatrixForm, b: MatrixForm) -> MatrixForm:
    """``a ^ b`` with matrix multiplication on values: (A dx_I) ^ (B dx_J) = AB dx_I ^ dx_J."""
    a._check_compatible(b)
    out: dict[MultiIndex, Matrix] = {}
    for i, ma in a.terms.items():
        for j, mb in b.terms.items():
            merged = _merge(i, j)
            if merged is None:
                continue
            sign, idx = merged
            prod = _mat_mul(ma, mb)
            if sign < 0:
                prod = _mat_scale(prod, -1)
            out[idx] = _mat_add(out[idx], prod) if idx in out else prod
    return MatrixForm(a.degree + b.degree, a.chart_dim, a.matrix_dim, out)


def graded_commutator(a: MatrixForm, b: MatrixForm) -> MatrixForm:
    """``[a, b] = a ^ b - (-1)^{|a||b|} b ^ a``."""
    sign = -1 if (a.degree * b.degree) % 2 else 1
    return wedge_mul(a, b) - wedge_mul(b, a).scale(sign)


def curvature(omega: MatrixForm) -> MatrixForm:
    if omega.degree != 1:
        raise FormError("curvature needs a connection 1-form")
    return exterior_d(omega) + wedge_mul(omega, omega)


def bianchi_residual(omega: MatrixForm) -> MatrixForm:
    """``dOmega - (Omega ^ omega - omega ^ Omega)``; identically zero for any connection."""
    big = curvature(omega)
    return exterior_d(big) - (wedge_mul(big, omega) - wedge_mul(omega, big))


def trace(f: MatrixForm) -> MatrixForm:
    return MatrixForm(f.degree, f.chart_dim, 1, {
        idx: ((sum((mat[i][i] for i in range(f.matrix_dim)), ZERO),),)
        for idx, mat in f.terms.items()
    })


@dataclass(frozen=True)
class InvariantPolynomial:
    """Symmetrized trace ``F(A_1..A_k) = (1/k!) sum_sigma tr(A_s(1) ^ ... ^ A_s(k))``.

    Arguments are multiplied with the wedge product and no Koszul signs are
    inserted, so at most one argument may have odd degree.
    """

    arity: int

    def __call__(self, *forms: MatrixForm) -> MatrixForm:
        if len(forms) != self.arity:
            raise FormError(f"expected {self.arity} arguments, got {len(forms)}")
        if sum(f.degree % 2 for f in forms) > 1:
            raise FormError("symmetrized trace needs at most one odd-degree argument")
        total = None
        for perm in itertools.permutations(range(self.arity)):
            prod = forms[perm[0]]
            for p in perm[1:]:
                prod = wedge_mul(prod, forms[p])
            term = trace(prod)
            total = term if total is None else total + term
        return total.scale(Fraction(1, math.factorial(self.arity)))

    def to_json(self) -> dict:
        return {"kind": "symmetrized-trace", "arity": self.arity}


def path_connection(omega0: MatrixForm, alpha: MatrixForm, name: str = PATH_PARAMETER) -> MatrixForm:
    """``omega_t = omega0 + t * alpha`` with ``t`` a polynomial variable."""
    return omega0 + alpha.scale(Poly.var(name))


def transgression_sides(omega0: MatrixForm, alpha: MatrixForm, F: InvariantPolynomial):
    """Return ``(d/dt F(W_t,..,W_t), k d F(alpha, W_t, .., W_t))``."""
    if omega0.degree != 1 or alpha.degree != 1:
        raise FormError("transgression needs degree-1 connection forms")
    big_t = curvature(path_connection(omega0, alpha))
    lhs = F(*([big_t] * F.arity)).diff_parameter()
    rhs = exterior_d(F(alpha, *([big_t] * (F.arity - 1)))).scale(F.arity)
    return lhs, rhs


def transgression_lemma_check(omega0: MatrixForm, alpha: MatrixForm, F: InvariantPolynomial) -> bool:
    lhs, rhs = transgression_sides(omega0, alpha, F)
    return (lhs - rhs).is_zero()


def transgression_form(omega0: MatrixForm, omega1: MatrixForm, F: InvariantPolynomial) -> MatrixForm:
    """``TF = k * int_0^1 F(alpha, W_t, ..., W_t) dt`` with ``alpha = omega1 - omega0``."""
    alpha = omega1 - omega0
    big_t = curvature(path_connection(omega0, alpha))
    integrand = F(alpha, *([big_t] * (F.arity - 1)))
    return integrand.integrate_parameter().scale(F.arity)


def characteristic_form(omega: MatrixForm, F: InvariantPolynomial) -> MatrixForm:
    big = curvature(omega)
    return F(*([big] * F.arity))


def one_form(chart_dim: int, components: Sequence[Matrix]) -> MatrixForm:
    """``sum_j components[j] dx_j``."""
    m = len(components[0])
    return MatrixForm(1, chart_dim, m, {(j,): c for j, c in enumerate(components)})


def rotation_generator() -> Matrix:
    """The so(2) generator ``J = [[0, -1], [1, 0]]``."""
    return ((ZERO, -ONE), (ONE, ZERO))


def random_poly(rng: random.Random, chart_dim: int, max_degree: int, terms: int = 2) -> Poly:
    out = Poly()
    for _ in range(rng.randint(1, terms)):
        mono = Poly.const(rng.choice([-3, -2, -1, 1, 2, 3]))
        for _ in range(rng.randint(0, max_degree)):
            mono = mono * Poly.var(coordinate(rng.randrange(chart_dim)))
        out = out + mono
    return out


def random_so_connection(rng: random.Random, chart_dim: int, so_dim: int,
                         max_degree: int = 2, density: float = 0.6) -> MatrixForm:
    """Random so(m)-valued 1-form with sparse polynomial entries of degree <= max_degree."""
    comps = []
    for _ in range(chart_dim):
        mat = [[ZERO] * so_dim for _ in range(so_dim)]
        for i in range(so_dim):
            for j in range(i + 1, so_dim):
                if rng.random() < density:
                    p = random_poly(rng, chart_dim, max_degree)
                    mat[i][j] = p
                    mat[j][i] = -p
        comps.append(tuple(tuple(r) for r in mat))
    return one_form(chart_dim, comps)


@dataclass(frozen=True)
class TransgressionInstance:
    seed: int
    chart_dim: int
    so_dim: int
    arity: int
    omega0: MatrixForm
    alpha: MatrixForm

    @property
    def omega1(self) -> MatrixForm:
        return self.omega0 + self.alpha

    def to_json(self) -> dict:
        return {"seed": self.seed, "chart_dim": self.chart_dim, "so_dim": self.so_dim,
                "arity": self.arity, "omega0": self.omega0.to_json(), "alpha": self.alpha.to_json()}


def random_instances(seed: int, trials: int, dims: Sequence[int] = (2, 3, 4),
                     so_dims: Sequence[int] = (2, 3, 4), arities: Sequence[int] = (1, 2),
                     max_degree: int = 2) -> list[TransgressionInstance]:
    rng = random.Random(seed)
    out = []
    for k in range(trials):
        n = rng.choice(list(dims))
        m = rng.choice(list(so_dims))
        arity = rng.choice(list(arities))
        inner = random.Random(rng.getrandbits(64))
        w0 = random_so_connection(inner, n, m, max_degree)
        a = random_so_connection(inner, n, m, max_degree)
        out.append(TransgressionInstance(seed * 100003 + k, n, m, arity, w0, a))
    return out


@dataclass(frozen=True)
class InstanceResult:
    lemma: bool
    transgression: bool
    d_squared: bool
    bianchi: bool

    @property
    def ok(self) -> bool:
        return self.lemma and self.transgression and self.d_squared and self.bianchi

    def to_json(self) -> dict:
        return {"lemma": self.lemma, "transgression": self.transgression,
                "d_squared": self.d_squared, "bianchi": self.bianchi}


def check_instance(inst: TransgressionInstance) -> InstanceResult:
    F = InvariantPolynomial(inst.arity)
    lemma = transgression_lemma_check(inst.omega0, inst.alpha, F)
    tf = transgression_form(inst.omega0, inst.omega1, F)
    diff = characteristic_form(inst.omega1, F) - characteristic_form(inst.omega0, F)
    trans = (exterior_d(tf) - diff).is_zero()
    dd = all(exterior_d(exterior_d(f)).is_zero()
             for f in (inst.omega0, inst.alpha, curvature(inst.omega0)))
    bianchi = bianchi_residual(inst.omega0).is_zero() and bianchi_residual(inst.omega1).is_zero()
    return InstanceResult(lemma, trans, dd, bianchi)
