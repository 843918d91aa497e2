"""
Paley Type I Hadamard matrices of order q + 1 for q = 3 (mod 4).

The matrix is bordered: the first row is all +1, the rest of the first
column is -1, and the q x q block is I + S where S[i, j] = chi(a_i - a_j)
over the canonical enumeration a_1, ..., a_q of GF(q). The zero diagonal of
S is never stored; the diagonal is written as +1 directly.

Rows are built in chunks so working memory stays a small multiple of the
packed output.
"""
from __future__ import annotations

import logging

import numpy as np

from scarpis.errors import ConstructionError
from scarpis.field.gf import FieldSpec, quadratic_character_table
from scarpis.matrix.sign import DEFAULT_MAX_MATRIX_ORDER, SignMatrix

logger = logging.getLogger(__name__)

# Upper bound on digit entries materialized per chunk.
_CHUNK_ENTRIES = 1 << 22


def _digits(spec: FieldSpec) -> tuple[np.ndarray, np.ndarray]:
    place = spec.p ** np.arange(spec.k, dtype=np.int64)
    digits = (np.arange(spec.q, dtype=np.int64)[:, None] // place) % spec.p
    return digits, place


def difference_indices(spec: FieldSpec, start: int, stop: int) -> np.ndarray:
    """Index of a_i - a_j for rows start <= i < stop and every j.

    Returns:
        A (stop - start, q) int64 array.
    """
    if not 0 <= start <= stop <= spec.q:
        raise ConstructionError(
            f"Rows [{start}, {stop}) out of range for {spec} with q = {spec.q}"
        )
    digits, place = _digits(spec)
    diff = (digits[start:stop, None, :] - digits[None, :, :]) % spec.p
    return diff @ place


def difference_index_table(spec: FieldSpec) -> np.ndarray:
    """Index of a_i - a_j for every pair of element indices (i, j)."""
    return difference_indices(spec, 0, spec.q)


def paley_hadamard(
    spec: FieldSpec, *, max_order: int = DEFAULT_MAX_MATRIX_ORDER
) -> SignMatrix:
    """Build the Paley Type I Hadamard matrix of order q + 1.

    Args:
        spec: The field GF(q); q must be 3 mod 4.
        max_order: Largest accepted matrix side.

    Returns:
        The order q + 1 matrix.

    Raises:
        ConstructionError: If q is not 3 mod 4 (this includes even q), or
            q + 1 exceeds max_order.
    """
    q = spec.q
    if q % 4 != 3:
        raise ConstructionError(
            f"Paley Type I needs q = 3 (mod 4), got q = {q} (= {q % 4} mod 4)"
        )
    if q + 1 > max_order:
        raise ConstructionError(
            f"Paley matrix over {spec} has order {q + 1}, "
            f"which exceeds the bound {max_order}"
        )
    chi = np.array(quadratic_character_table(spec), dtype=np.int8)
    matrix = SignMatrix(q + 1, q + 1, max_order=max_order)
    chunk = max(1, _CHUNK_ENTRIES // (q * spec.k))
    for start in range(0, q, chunk):
        stop = min(start + chunk, q)
        rows = np.arange(stop - start)
        bits = np.zeros((stop - start, q + 1), dtype=np.uint8)
        bits[:, 1:] = chi[difference_indices(spec, start, stop)] == 1
        bits[rows, start + 1 + rows] = 1
        matrix.set_row_bits(start + 1, bits)
    logger.debug("Paley matrix of order %d over %s", q + 1, spec)
    return matrix
