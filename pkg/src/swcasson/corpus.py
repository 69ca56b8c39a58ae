"""Bundled knots and seeded random Seifert matrices."""

from __future__ import annotations

import random

from .knots import BraidWord, KnotRow, SeifertMatrix

# name -> (Seifert matrix, braid word, strands)
BUILTIN = {
    "unknot": ([], [], 1),
    "trefoil": ([[-1, 1], [0, -1]], [1, 1, 1], 2),
    "figure-8": ([[1, 1], [0, -1]], [1, -2, 1, -2], 3),
    "5_2": ([[-1, 1], [0, -2]], [1, 1, 1, 2, -1, 2], 3),
}


def builtin_seifert(name: str) -> SeifertMatrix:
    return SeifertMatrix(tuple(tuple(row) for row in BUILTIN[name][0]))


def builtin_braid(name: str) -> BraidWord:
    _, word, strands = BUILTIN[name]
    return BraidWord(strands, tuple(word))


def random_seifert(rng: random.Random, size: int, bound: int = 2) -> SeifertMatrix:
    """``V = S + U`` with ``S`` symmetric and ``U - U^T`` the standard symplectic form.

    Then ``V - V^T`` is that symplectic form, so ``det(V - V^T) = 1`` always.
    """
    if size % 2:
        raise ValueError("Seifert matrices of knots have even size")
    v = [[0] * size for _ in range(size)]
    for i in range(size):
        for j in range(i, size):
            x = rng.randint(-bound, bound)
            v[i][j] += x
            if i != j:
                v[j][i] += x
    for i in range(0, size, 2):
        v[i][i + 1] += 1
    return SeifertMatrix(tuple(tuple(row) for row in v))


def random_corpus(seed: int = 0, count: int = 6, sizes=(2, 4)) -> list[tuple[str, SeifertMatrix]]:
    rng = random.Random(seed)
    return [(f"random-{seed}-{i}", random_seifert(rng, sizes[i % len(sizes)])) for i in range(count)]


def sw_identity_corpus(seed: int = 0) -> list[tuple[str, object]]:
    """Builtin Seifert and braid presentations plus the seeded random matrices."""
    out = []
    for name in BUILTIN:
        out.append((name + " (seifert)", builtin_seifert(name)))
        if name != "unknot":
            out.append((name + " (braid)", builtin_braid(name)))
    return out + list(random_corpus(seed))


def builtin_rows(names=("unknot", "trefoil", "figure-8")) -> list[KnotRow]:
    return [KnotRow(n, "seifert", str(BUILTIN[n][0])) for n in names]
