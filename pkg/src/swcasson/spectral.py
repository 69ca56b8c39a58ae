"""Interval-arithmetic checks of the neck-stretching operator bounds.

The 2x2 matrix ``B`` describes the operator ``T_{+,r}(lambda, R)`` on one pair of
eigenspaces. Entries and bounds are evaluated with ``mpmath.iv``; an inequality
is accepted when the lower end of ``bound - entry`` is positive, or when the two
sides coincide exactly (decided with rationals before any rounding).
"""

from __future__ import annotations

import json
from contextlib import contextmanager
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from mpmath import iv, mp, nstr

from .laurent import format_rational, parse_rational

DEFAULT_DPS = 60


@contextmanager
def _precision(dps: int):
    # mpmath's interval context has no workdps helper
    saved = iv.dps
    iv.dps = dps
    try:
        yield
    finally:
        iv.dps = saved


def _iv(x):
    if isinstance(x, Fraction):
        return iv.mpf(x.numerator) / iv.mpf(x.denominator)
    if isinstance(x, int):
        return iv.mpf(x)
    return x


def _lo(x) -> str:
    return nstr(mp.mpf(x.a), 20)


def _hi(x) -> str:
    return nstr(mp.mpf(x.b), 20)


@dataclass(frozen=True)
class SpectralSample:
    lambda_ir: Fraction
    lam: Fraction
    R: Fraction

    def __post_init__(self):
        for name in ("lambda_ir", "lam", "R"):
            object.__setattr__(self, name, Fraction(getattr(self, name)))
        if self.lambda_ir <= 0:
            raise ValueError("lambda_ir must be positive")
        if self.lam < 0:
            raise ValueError("lam must be nonnegative")
        if self.R <= 0:
            raise ValueError("R must be positive")

    @property
    def omega_squared(self) -> Fraction:
        return self.lambda_ir**2 + self.lam**2

    def omega_ir(self):
        return iv.sqrt(_iv(self.omega_squared))

    def to_json(self) -> dict:
        return {"lambda_ir": format_rational(self.lambda_ir), "lam": format_rational(self.lam),
                "R": format_rational(self.R)}

    @classmethod
    def from_json(cls, obj: dict) -> "SpectralSample":
        return cls(parse_rational(str(obj["lambda_ir"])), parse_rational(str(obj["lam"])),
                   parse_rational(str(obj["R"])))


def _b_entries(lambda_ir, lam, R):
    """Diagonal and off-diagonal entries of B for interval arguments."""
    omega = iv.sqrt(lambda_ir**2 + lam**2)
    e2 = iv.exp(2 * omega * R)
    denom = (lambda_ir - omega) - (lambda_ir + omega) * e2
    diag = lam * (e2 - 1) / denom
    off = -2 * omega * iv.exp(omega * R) / denom
    return omega, diag, off


def b_matrix(s: SpectralSample, dps: int = DEFAULT_DPS):
    """The matrix B as a 2x2 list of ``mpmath.iv`` intervals."""
    with _precision(dps):
        _, diag, off = _b_entries(_iv(s.lambda_ir), _iv(s.lam), _iv(s.R))
        return [[diag, off], [off, -diag]]


def decay_profile(x, R):
    """``2 e^{xR} / (e^{2xR} - 1)``, the off-diagonal majorant."""
    return 2 * iv.exp(x * R) / (iv.exp(2 * x * R) - 1)


@dataclass
class Inequality:
    lhs: object
    rhs: object
    exact_equal: bool = False

    @property
    def margin(self):
        return self.rhs - self.lhs

    @property
    def holds(self) -> bool:
        return self.exact_equal or self.margin.a > 0

    def to_json(self) -> dict:
        return {"lhs": [_lo(self.lhs), _hi(self.lhs)], "rhs": [_lo(self.rhs), _hi(self.rhs)],
                "margin_lower": "0 (exact equality)" if self.exact_equal else _lo(self.margin),
                "holds": self.holds}


@dataclass
class BoundReport:
    sample: SpectralSample
    lambda0: Fraction
    offdiag_entry: object
    offdiag_bound1: object
    offdiag_bound2: object
    diag_entry: object
    diag_bound: object
    diag_bound2: object
    checks: dict = field(default_factory=dict)

    @property
    def all_hold(self) -> bool:
        return all(c.holds for c in self.checks.values())

    def to_json(self) -> dict:
        out = self.sample.to_json()
        out["lambda0"] = format_rational(self.lambda0)
        out["entries"] = {"offdiag": _lo(self.offdiag_entry), "diag": _lo(self.diag_entry)}
        out["checks"] = {name: c.to_json() for name, c in self.checks.items()}
        out["all_hold"] = self.all_hold
        return out


def norm_bounds_check(s: SpectralSample, lambda0, dps: int = DEFAULT_DPS) -> BoundReport:
    """Evaluate both bound chains for one sample."""
    lambda0 = Fraction(lambda0)
    if lambda0 <= 0:
        raise ValueError("lambda0 must be positive")
    if lambda0 > s.lambda_ir:
        raise ValueError(f"precondition violated: lambda0 {lambda0} > lambda_ir {s.lambda_ir}")
    with _precision(dps):
        R, lam, l0 = _iv(s.R), _iv(s.lam), _iv(lambda0)
        omega, diag, off = _b_entries(_iv(s.lambda_ir), lam, R)
        off_abs, diag_abs = abs(off), abs(diag)
        b1 = decay_profile(omega, R)
        b2 = decay_profile(l0, R)
        d1 = lam / omega
        d2 = lam / l0
        omega_is_l0 = s.omega_squared == lambda0**2
        zero_lam = s.lam == 0
        checks = {
            "offdiag_le_bound1": Inequality(off_abs, b1),
            "bound1_le_bound2": Inequality(b1, b2, exact_equal=omega_is_l0),
            "diag_le_lam_over_omega": Inequality(diag_abs, d1, exact_equal=zero_lam),
            "lam_over_omega_le_lam_over_lambda0": Inequality(d1, d2, exact_equal=zero_lam or omega_is_l0),
        }
        return BoundReport(s, lambda0, off_abs, b1, b2, diag_abs, d1, d2, checks)


def monotone_decrease_check(xs: Iterable, R, dps: int = DEFAULT_DPS) -> bool:
    """``x -> 2e^{xR}/(e^{2xR}-1)`` is strictly decreasing along the sorted points ``xs``."""
    pts = sorted(set(Fraction(x) for x in xs))
    with _precision(dps):
        vals = [decay_profile(_iv(x), _iv(Fraction(R))) for x in pts]
        return all((a - b).a > 0 for a, b in zip(vals, vals[1:]))


def offdiag_decay_check(lambda_ir, lam, R_start=1, steps: int = 6, dps: int = DEFAULT_DPS) -> dict:
    """Off-diagonal entries on R, 2R, 4R, ...: every successive ratio is below 1 and shrinking."""
    with _precision(dps):
        li, la = _iv(Fraction(lambda_ir)), _iv(Fraction(lam))
        vals = []
        for k in range(steps):
            _, _, off = _b_entries(li, la, _iv(Fraction(R_start) * 2**k))
            vals.append(abs(off))
        ratios = [b / a for a, b in zip(vals, vals[1:])]
        ok = all(q.b < 1 for q in ratios) and all(q2.b < q1.a for q1, q2 in zip(ratios, ratios[1:]))
        return {"offdiag": [_hi(v) for v in vals], "ratios": [_hi(q) for q in ratios], "ok": ok}


def _poly_value(coeffs: Sequence, r: Fraction) -> Fraction:
    return sum((Fraction(c) * r**i for i, c in enumerate(coeffs)), Fraction(0))


def adiabatic_threshold_check(epsilon, P_coeffs: Sequence, grid: Iterable, n_lam: int = 10,
                              n_R: int = 10, dps: int = DEFAULT_DPS, detail: bool = False):
    """Sweep ``lambda < eps_2(r)``, ``R >= R_0(r)``, ``lambda_ir in {P, 2P, 5P}`` and require both
    operator bounds and both matrix entries to stay below ``epsilon``.

    ``P_coeffs`` lists the coefficients of P(r) from the constant term up. With
    ``eps_2 = eps P / 2`` and ``R_0 = ln(4/eps + 1) / P`` the bounds become
    ``lambda / P < eps / 2`` and ``2y/(y^2-1) < eps / 2`` for ``y = e^{P R}``.
    """
    eps = Fraction(epsilon)
    if eps <= 0:
        raise ValueError("epsilon must be positive")
    records = []
    ok = True
    with _precision(dps):
        eps_iv = _iv(eps)
        for r in grid:
            r = Fraction(r)
            p = _poly_value(P_coeffs, r)
            if p <= 0:
                raise ValueError(f"P(r) must be positive on the grid, got P({r}) = {p}")
            eps2 = eps * p / 2
            R0 = iv.log(4 / eps_iv + 1) / _iv(p)
            worst = iv.mpf(0)
            for j in range(n_lam):
                lam = _iv(eps2 * Fraction(j, n_lam))
                for k in range(n_R):
                    R = R0 * (1 + iv.mpf(k) / 3)
                    for mult in (1, 2, 5):
                        _, diag, off = _b_entries(_iv(p * mult), lam, R)
                        b_off = decay_profile(_iv(p), R)
                        b_diag = lam / _iv(p)
                        for v in (abs(diag), abs(off), b_off, b_diag):
                            if v.b > worst.b:
                                worst = v
            holds = worst.b < eps_iv.a
            ok = ok and holds
            records.append({"r": format_rational(r), "P": format_rational(p),
                            "eps2": format_rational(eps2), "R0": _hi(R0),
                            "worst_upper": _hi(worst), "holds": holds})
    return (ok, records) if detail else ok


ACCEPTANCE_EIGENVALUES = (Fraction(1, 2), Fraction(1), Fraction(2), Fraction(3), Fraction(5))
ACCEPTANCE_LAMS = (Fraction(0), Fraction(1, 2), Fraction(1), Fraction(2), Fraction(5))
ACCEPTANCE_RS = (Fraction(1, 10), Fraction(1, 2), Fraction(1), Fraction(5), Fraction(20))


def default_grid() -> dict:
    samples = [SpectralSample(li, la, R) for li in ACCEPTANCE_EIGENVALUES
               for la in ACCEPTANCE_LAMS for R in ACCEPTANCE_RS]
    return {"lambda0": min(ACCEPTANCE_EIGENVALUES), "samples": samples}


def load_grid(path: str) -> dict:
    """Read ``{"lambda0": "1/2", "samples": [{"lambda_ir": .., "lam": .., "R": ..}, ...]}``.

    ``lambda0`` defaults to the smallest ``lambda_ir`` in the file.
    """
    with open(path) as fh:
        obj = json.load(fh)
    samples = [SpectralSample.from_json(s) for s in obj["samples"]]
    if not samples:
        raise ValueError("grid file has no samples")
    l0 = obj.get("lambda0")
    lambda0 = parse_rational(str(l0)) if l0 is not None else min(s.lambda_ir for s in samples)
    return {"lambda0": lambda0, "samples": samples}


def save_grid(path: str, grid: dict) -> None:
    obj = {"lambda0": format_rational(grid["lambda0"]),
           "samples": [s.to_json() for s in grid["samples"]]}
    with open(path, "w") as fh:
        json.dump(obj, fh, indent=1)


def grid_check(grid: dict, dps: int = DEFAULT_DPS) -> dict:
    """All bound chains on a grid plus the monotonicity the second chain step relies on."""
    reports = [norm_bounds_check(s, grid["lambda0"], dps) for s in grid["samples"]]
    eigen = {s.lambda_ir for s in grid["samples"]} | {grid["lambda0"]}
    monotone = {format_rational(R): monotone_decrease_check(eigen, R, dps)
                for R in sorted({s.R for s in grid["samples"]})}
    return {
        "precision_digits": dps,
        "lambda0": format_rational(grid["lambda0"]),
        "samples": [r.to_json() for r in reports],
        "monotone_decrease": monotone,
        "all_hold": all(r.all_hold for r in reports) and all(monotone.values()),
    }
