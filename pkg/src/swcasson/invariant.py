"""Assembly of lambda_SW = #M - omega for circle bundles of Euler number 1.

``#M`` is the total of the small-perturbation invariants ``SW^0(s_k)`` of the
base 3-manifold (pullback of the moduli space along the circle bundle), and
``omega`` is the closed-form correction term from :mod:`swcasson.eta`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .eta import REGIME_CAVEAT, BundleGeometry, CorrectionInput, CorrectionResult, correction_term
from .knots import BraidWord, NormalizedAlexander, SeifertMatrix, alexander_of
from .laurent import format_rational, parse_rational
from .sw3d import Theorem1Report, sw_sum, theorem1_check

EULER_NUMBER = 1
FO_VALUE = 0

Knot = Union[SeifertMatrix, BraidWord, NormalizedAlexander]


@dataclass(frozen=True)
class LambdaInput:
    knot: Knot
    h_dirac: int = 0
    h_half: int = 0
    r: Fraction = Fraction(1)
    chi: int = 0

    def __post_init__(self):
        object.__setattr__(self, "r", Fraction(self.r))
        if self.h_dirac < 0 or self.h_half < 0:
            raise ValueError("h_dirac and h_half must be nonnegative")

    def geometry(self) -> BundleGeometry:
        return BundleGeometry(EULER_NUMBER, self.chi, self.r, self.h_half)


@dataclass(frozen=True)
class ConjectureCheck:
    applicable: bool
    consistent: bool
    fo_value: int = FO_VALUE

    def to_json(self) -> dict:
        return {"applicable": self.applicable, "fo_value": self.fo_value,
                "consistent": self.consistent}


@dataclass(frozen=True)
class LambdaReport:
    alexander: NormalizedAlexander
    sw_sum: int
    omega: Fraction
    lambda_sw: Fraction
    theorem1: Theorem1Report
    correction: CorrectionResult
    conjecture_check: ConjectureCheck

    def to_json(self) -> dict:
        return {
            "alexander": self.alexander.to_json(),
            "sw_sum": self.sw_sum,
            "omega": format_rational(self.omega),
            "lambda_sw": format_rational(self.lambda_sw),
            "theorem1": self.theorem1.to_json(),
            "correction": self.correction.to_json(),
            "conjecture_check": self.conjecture_check.to_json(),
            "metadata": {
                "euler_number": EULER_NUMBER,
                "count_source": "#M taken as the sum of SW^0 over spin-c structures of the base",
                "regime_caveat": REGIME_CAVEAT,
            },
        }


def conjecture_report(alexander: NormalizedAlexander, lambda_value: Fraction) -> ConjectureCheck:
    """lambda_SW = -lambda_FO can only be tested when Delta is trivial (lambda_FO = 0)."""
    applicable = alexander.is_trivial()
    return ConjectureCheck(applicable, applicable and lambda_value == -FO_VALUE)


def lambda_sw(inp: LambdaInput) -> LambdaReport:
    alex = alexander_of(inp.knot)
    total = sw_sum(alex)
    corr = correction_term(CorrectionInput(inp.geometry(), inp.h_dirac))
    value = total - corr.omega
    return LambdaReport(
        alexander=alex,
        sw_sum=total,
        omega=corr.omega,
        lambda_sw=value,
        theorem1=theorem1_check(alex),
        correction=corr,
        conjecture_check=conjecture_report(alex, value),
    )


def validate_report(obj: dict) -> list[str]:
    """Re-derive the report's arithmetic from its own JSON fields; return problems found."""
    problems = []
    sw = Fraction(obj["sw_sum"])
    omega = parse_rational(obj["omega"])
    lam = parse_rational(obj["lambda_sw"])
    if lam != sw - omega:
        problems.append(f"lambda_sw {lam} != sw_sum {sw} - omega {omega}")
    if parse_rational(obj["correction"]["omega"]) != omega:
        problems.append("omega disagrees with the correction sub-report")
    trivial = obj["alexander"] == {"coeffs": {"0": "1"}}
    conj = obj["conjecture_check"]
    if conj["applicable"] != trivial:
        problems.append("conjecture applicability does not match triviality of Delta")
    if conj["applicable"] and conj["consistent"] != (lam == 0):
        problems.append("conjecture consistency flag is wrong")
    t1 = obj["theorem1"]
    if t1["sw_sum"] != obj["sw_sum"]:
        problems.append("theorem1 sw_sum disagrees with top-level sw_sum")
    return problems
