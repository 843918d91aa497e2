"""Naive reference implementations and small helpers for the test suite."""
from typing import Optional

import numpy as np

from scarpis.field.gf import FieldSpec, field_make

PALEY_ORDERS = [3, 7, 11, 19, 23, 27, 31]


def field_for_order(q: int) -> FieldSpec:
    """GF(q) for the prime powers used in the tests (27 is the only non-prime)."""
    if q == 27:
        return field_make(3, 3)
    return field_make(q, 1)


def naive_dot(signs: np.ndarray, i: int, j: int) -> int:
    total = 0
    for t in range(signs.shape[1]):
        total += int(signs[i, t]) * int(signs[j, t])
    return total


def naive_first_violation(signs: np.ndarray) -> Optional[tuple[int, int, int]]:
    """Triple loop over row pairs in lexicographic order."""
    m = signs.shape[0]
    for i in range(m):
        for j in range(i + 1, m):
            dot = naive_dot(signs, i, j)
            if dot != 0:
                return (i, j, dot)
    return None


def random_signs(rng: np.random.Generator, rows: int, cols: int) -> np.ndarray:
    return rng.choice(np.array([1, -1], dtype=np.int8), size=(rows, cols))
