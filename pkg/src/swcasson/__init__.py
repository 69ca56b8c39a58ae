"""Exact calculator for the Seiberg-Witten-Casson invariant of circle-bundle
homology S^1 x S^3 manifolds, with symbolic and interval checks of the
identities the computation rests on."""

from .invariant import LambdaInput, LambdaReport, lambda_sw
from .knots import BraidWord, NormalizedAlexander, SeifertMatrix, alexander_of

__version__ = "0.1.0"

__all__ = ["BraidWord", "LambdaInput", "LambdaReport", "NormalizedAlexander",
           "SeifertMatrix", "alexander_of", "lambda_sw"]
