"""Knot presentations and the normalized Alexander polynomial.

Two input routes are supported: an integer Seifert matrix ``V`` (via
``det(V - t V^T)``) and a braid word whose closure is a knot (via the reduced
Burau representation). Both are normalized to the unique representative that
is symmetric under ``t -> 1/t`` and takes the value 1 at ``t = 1``.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from typing import Iterator, Sequence

from .laurent import ONE, T, ZERO, LaurentPoly


class KnotParseError(ValueError):
    """Malformed or invalid knot presentation."""


def determinant(matrix: Sequence[Sequence[LaurentPoly]]) -> LaurentPoly:
    """Bareiss fraction-free determinant over the Laurent ring Q[t, 1/t]."""
    n = len(matrix)
    if n == 0:
        return ONE
    a = [list(row) for row in matrix]
    if any(len(row) != n for row in a):
        raise ValueError("determinant of a non-square matrix")
    sign = 1
    prev = ONE
    for k in range(n - 1):
        if a[k][k].is_zero():
            for i in range(k + 1, n):
                if not a[i][k].is_zero():
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return ZERO
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]).divmod_exact(prev)
        prev = a[k][k]
    return a[n - 1][n - 1] * sign


def integer_determinant(rows: Sequence[Sequence[int]]) -> int:
    d = determinant([[LaurentPoly.const(x) for x in row] for row in rows])
    value = d[0]
    assert value.denominator == 1
    return int(value)


@dataclass(frozen=True)
class SeifertMatrix:
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        n = len(self.entries)
        if any(len(row) != n for row in self.entries):
            raise KnotParseError(f"Seifert matrix must be square, got rows of lengths "
                                 f"{[len(r) for r in self.entries]}")
        skew = [[self.entries[i][j] - self.entries[j][i] for j in range(n)] for i in range(n)]
        if abs(integer_determinant(skew)) != 1:
            raise KnotParseError("not a knot Seifert matrix: det(V - V^T) is not +-1")

    @property
    def size(self) -> int:
        return len(self.entries)

    def mirror(self) -> "SeifertMatrix":
        """The Seifert matrix ``-V^T``."""
        n = self.size
        return SeifertMatrix(tuple(tuple(-self.entries[j][i] for j in range(n)) for i in range(n)))

    def to_json(self) -> list:
        return [list(row) for row in self.entries]


@dataclass(frozen=True)
class BraidWord:
    strands: int
    letters: tuple[int, ...]

    def __post_init__(self):
        if self.strands < 1:
            raise KnotParseError("strand count must be positive")
        for pos, g in enumerate(self.letters):
            if g == 0:
                raise KnotParseError(f"zero letter at position {pos}")
            if abs(g) >= self.strands:
                raise KnotParseError(
                    f"generator {g} at position {pos} needs |i| <= {self.strands - 1}")
        cycles = closure_components(self.strands, self.letters)
        if cycles != 1:
            raise KnotParseError(f"closure is not a knot: closure has {cycles} components")

    def to_json(self) -> dict:
        return {"strands": self.strands, "letters": list(self.letters)}


def closure_components(strands: int, letters: Sequence[int]) -> int:
    """Number of cycles of the permutation a braid word induces on its strands."""
    perm = list(range(strands))
    for g in letters:
        i = abs(g) - 1
        perm[i], perm[i + 1] = perm[i + 1], perm[i]
    seen = [False] * strands
    cycles = 0
    for s in range(strands):
        if not seen[s]:
            cycles += 1
            while not seen[s]:
                seen[s] = True
                s = perm[s]
    return cycles


@dataclass(frozen=True)
class NormalizedAlexander:
    """Symmetric integral Alexander polynomial with value 1 at ``t = 1``."""

    poly: LaurentPoly

    def __post_init__(self):
        p = self.poly
        if not p.is_symmetric():
            raise ValueError(f"Alexander polynomial {p} is not symmetric")
        if p.evaluate(1) != 1:
            raise ValueError(f"Alexander polynomial {p} does not take the value 1 at t=1")
        if any(v.denominator != 1 for _, v in p.items()):
            raise ValueError(f"Alexander polynomial {p} has non-integral coefficients")

    def coefficient(self, i: int) -> int:
        return int(self.poly[i])

    @property
    def degree(self) -> int:
        """Largest exponent; the polynomial spans ``[-degree, degree]``."""
        return self.poly.max_exp()

    def is_trivial(self) -> bool:
        return self.poly == ONE

    def to_json(self) -> dict:
        return self.poly.to_json()


def normalize_alexander(p: LaurentPoly) -> NormalizedAlexander:
    """Multiply by the unique unit ``+-t^k`` making ``p`` symmetric with ``p(1) = 1``."""
    if p.is_zero():
        raise ValueError("zero polynomial is not an Alexander polynomial")
    lo, hi = p.min_exp(), p.max_exp()
    if (lo + hi) % 2:
        raise ValueError(f"{p} has odd span and cannot be made symmetric")
    q = p.shift(-(lo + hi) // 2)
    value = q.evaluate(1)
    if value not in (1, -1):
        raise ValueError(f"{p} evaluates to {value} at t=1, not a unit")
    return NormalizedAlexander(q * int(value))


def parse_seifert(text: str) -> SeifertMatrix:
    """Accept a JSON nested list or CSV rows of integers. Empty input is the unknot."""
    text = text.strip()
    if text in ("", "[]"):
        return SeifertMatrix(())
    try:
        if text.startswith("["):
            rows = json.loads(text)
        else:
            rows = [[field for field in row if field.strip()]
                    for row in csv.reader(io.StringIO(text)) if row]
        matrix = tuple(tuple(_as_int(x) for x in row) for row in rows)
    except (ValueError, TypeError) as exc:
        raise KnotParseError(f"malformed Seifert matrix: {exc}") from exc
    return SeifertMatrix(matrix)


def _as_int(x) -> int:
    if isinstance(x, bool):
        raise TypeError("boolean entry")
    if isinstance(x, int):
        return x
    if isinstance(x, str):
        return int(x.strip())
    raise TypeError(f"non-integer entry {x!r}")


def parse_braid(text: str, strands: int) -> BraidWord:
    letters = []
    for pos, tok in enumerate(text.split()):
        try:
            letters.append(int(tok))
        except ValueError:
            raise KnotParseError(f"braid letter {tok!r} at position {pos} is not an integer")
    return BraidWord(strands, tuple(letters))


def alexander_from_seifert(v: SeifertMatrix) -> NormalizedAlexander:
    n = v.size
    m = [[LaurentPoly.const(v.entries[i][j]) - T * v.entries[j][i] for j in range(n)]
         for i in range(n)]
    return normalize_alexander(determinant(m))


_T_INV = LaurentPoly.monomial(-1)
_BURAU_BLOCK = ((ONE, T, ZERO), (ZERO, -T, ZERO), (ZERO, ONE, ONE))
_BURAU_BLOCK_INV = ((ONE, ONE, ZERO), (ZERO, -_T_INV, ZERO), (ZERO, _T_INV, ONE))


def burau_generator(strands: int, letter: int) -> list[list[LaurentPoly]]:
    """Reduced Burau matrix of sigma_i^{+-1}, of size (n-1) x (n-1)."""
    m = strands - 1
    block = _BURAU_BLOCK if letter > 0 else _BURAU_BLOCK_INV
    i = abs(letter) - 1  # 0-based row of the block's centre
    out = [[ONE if r == c else ZERO for c in range(m)] for r in range(m)]
    for br in range(3):
        for bc in range(3):
            r, c = i - 1 + br, i - 1 + bc
            if 0 <= r < m and 0 <= c < m:
                out[r][c] = block[br][bc]
    return out


def _matmul(a, b):
    n = len(a)
    return [[sum((a[i][k] * b[k][j] for k in range(n)), ZERO) for j in range(n)]
            for i in range(n)]


def burau_matrix(b: BraidWord) -> list[list[LaurentPoly]]:
    m = b.strands - 1
    out = [[ONE if r == c else ZERO for c in range(m)] for r in range(m)]
    for g in b.letters:
        out = _matmul(out, burau_generator(b.strands, g))
    return out


def alexander_from_braid(b: BraidWord) -> NormalizedAlexander:
    m = b.strands - 1
    if m == 0:
        return NormalizedAlexander(ONE)
    burau = burau_matrix(b)
    i_minus = [[(ONE if r == c else ZERO) - burau[r][c] for c in range(m)] for r in range(m)]
    det = determinant(i_minus)
    cyclotomic = LaurentPoly({k: 1 for k in range(b.strands)})
    try:
        quotient = det.divmod_exact(cyclotomic)
    except ArithmeticError as exc:
        raise RuntimeError(f"Burau determinant not divisible for braid {b}: {exc}") from exc
    return normalize_alexander(quotient)


@dataclass(frozen=True)
class KnotRow:
    name: str
    kind: str
    payload: str
    strands: int | None = None

    def presentation(self):
        """Parse the row into a SeifertMatrix or BraidWord."""
        if self.kind == "seifert":
            return parse_seifert(self.payload)
        if self.kind == "braid":
            if self.strands is None:
                raise KnotParseError(f"braid row {self.name!r} has no strand count")
            text = self.payload.strip()
            if text.startswith("["):
                try:
                    text = " ".join(str(_as_int(x)) for x in json.loads(text))
                except (ValueError, TypeError) as exc:
                    raise KnotParseError(f"malformed braid payload: {exc}") from exc
            elif text.startswith('"'):
                text = json.loads(text)
            return parse_braid(text, self.strands)
        raise KnotParseError(f"unknown presentation type {self.kind!r}")

    def alexander(self) -> NormalizedAlexander:
        return alexander_of(self.presentation())


def alexander_of(knot) -> NormalizedAlexander:
    if isinstance(knot, NormalizedAlexander):
        return knot
    if isinstance(knot, SeifertMatrix):
        return alexander_from_seifert(knot)
    if isinstance(knot, BraidWord):
        return alexander_from_braid(knot)
    raise TypeError(f"unsupported knot presentation {type(knot).__name__}")


KNOT_TABLE_COLUMNS = ("name", "type", "payload", "strands")


def read_knot_table(text: str) -> Iterator[tuple[int, KnotRow | KnotParseError]]:
    """Yield ``(line_number, row)`` for each CSV row; bad rows yield the error instead.

    A header row naming the columns is optional.
    """
    reader = csv.reader(io.StringIO(text))
    for lineno, fields in enumerate(reader, start=1):
        if not fields or all(not f.strip() for f in fields):
            continue
        fields = [f.strip() for f in fields]
        if lineno == 1 and tuple(f.lower() for f in fields[:3]) == KNOT_TABLE_COLUMNS[:3]:
            continue
        if len(fields) < 3:
            yield lineno, KnotParseError(f"line {lineno}: expected at least 3 columns")
            continue
        strands = None
        if len(fields) > 3 and fields[3]:
            try:
                strands = int(fields[3])
            except ValueError:
                yield lineno, KnotParseError(f"line {lineno}: bad strand count {fields[3]!r}")
                continue
        yield lineno, KnotRow(fields[0], fields[1].lower(), fields[2], strands)

