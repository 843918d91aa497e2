"""
Extension of a Hadamard matrix of order n = q + 1 to one of order q * n.

Given a prime power q = 3 (mod 4), a labeling alpha of GF(q), and a Hadamard
matrix A of order n, the output B is assembled as follows:

1. If a_11 = -1, replace A by -A.
2. Negate every row and column of A whose first entry is -1. A is now
   normalized; C is its core, with rows c_1, ..., c_q, and c(alpha_t) = c_t.
3. B is stacked from bands B_0, B_1, ..., B_q of q rows each.
   B_0 = A' (x) j, where A' is A without its first row and j is the all-ones
   row of length q.
4. Band B_r (r >= 1) is split into blocks B_r0, B_r1, ..., B_rq of q columns;
   B_r0 = j^T (x) c_r.
5. Row k of B_ri (i >= 1) is c(alpha_i alpha_r + alpha_k), so B_ri is C with
   its rows permuted.
"""
from __future__ import annotations

import logging
import time
from dataclasses import dataclass
from typing import Optional

import numpy as np

from scarpis.construction.labeling import Labeling, RowPermutation, default_labeling
from scarpis.errors import ConstructionError, NotHadamardError
from scarpis.field.gf import FieldSpec, inv
from scarpis.matrix.sign import DEFAULT_MAX_MATRIX_ORDER, SignMatrix, core, normalize
from scarpis.matrix.verify import check_hadamard

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ConstructionParams:
    """Field and labeling that fix one extension map.

    Attributes:
        field: GF(q) with q = 3 (mod 4).
        labeling: Bijection {1..q} -> GF(q) over the same field.
    """

    field: FieldSpec
    labeling: Labeling

    def __post_init__(self) -> None:
        if self.field.q % 4 != 3:
            raise ConstructionError(
                f"The extension needs q = 3 (mod 4), got q = {self.field.q}"
            )
        if self.labeling.field != self.field:
            raise ConstructionError(
                f"Labeling is over {self.labeling.field}, parameters over {self.field}"
            )

    @classmethod
    def for_field(
        cls, spec: FieldSpec, labeling: Optional[Labeling] = None
    ) -> ConstructionParams:
        """Parameters over spec, with the canonical labeling unless one is given."""
        return cls(spec, labeling if labeling is not None else default_labeling(spec))

    @property
    def q(self) -> int:
        return self.field.q

    @property
    def n(self) -> int:
        return self.field.q + 1


def _check_label(name: str, value: int, q: int) -> None:
    if not 1 <= value <= q:
        raise ConstructionError(f"{name} must lie in [1, {q}], got {value!r}")


def row_permutation(params: ConstructionParams, r: int, i: int) -> RowPermutation:
    """Row order of block B_ri: entry k is the label of alpha_i alpha_r + alpha_k."""
    q = params.q
    _check_label("r", r, q)
    _check_label("i", i, q)
    alpha = params.labeling
    shift = alpha.alpha(i) * alpha.alpha(r)
    return RowPermutation(
        tuple(alpha.index_of(shift + alpha.alpha(k)) for k in range(1, q + 1))
    )


def unique_collision(
    params: ConstructionParams, r: int, s: int, k: int, ell: int
) -> int:
    """The label i with alpha_i alpha_r + alpha_k = alpha_i alpha_s + alpha_ell.

    For r != s it is unique: alpha_i = (alpha_ell - alpha_k) / (alpha_r - alpha_s).

    Raises:
        ConstructionError: If r == s or a label is out of range.
    """
    q = params.q
    for name, value in (("r", r), ("s", s), ("k", k), ("ell", ell)):
        _check_label(name, value, q)
    if r == s:
        raise ConstructionError(f"Collision needs r != s, got r = s = {r}")
    alpha = params.labeling
    numerator = alpha.alpha(ell) - alpha.alpha(k)
    solution = numerator * inv(alpha.alpha(r) - alpha.alpha(s))
    return alpha.index_of(solution)


def extended_order(
    params: ConstructionParams, *, max_order: int = DEFAULT_MAX_MATRIX_ORDER
) -> int:
    """Order q(q + 1) of the extension, checked against max_order.

    Raises:
        ConstructionError: If q(q + 1) exceeds max_order.
    """
    m = params.q * params.n
    if m > max_order:
        raise ConstructionError(
            f"Extension over {params.field} has order {m}, "
            f"which exceeds the bound {max_order}"
        )
    return m


def scarpis_extend(
    a: SignMatrix,
    params: ConstructionParams,
    *,
    workers: int = 1,
    max_order: int = DEFAULT_MAX_MATRIX_ORDER,
) -> SignMatrix:
    """Build a Hadamard matrix of order q(q + 1) from one of order q + 1.

    The input is validated with the exact Gram check first, then normalized
    (even if it already is) and extended band by band.

    Args:
        a: Hadamard matrix of order n = q + 1.
        params: Field and labeling.
        workers: Threads for validating the input.
        max_order: Largest accepted output side.

    Returns:
        The extended matrix B of order q * n.

    Raises:
        ConstructionError: If a has the wrong shape or the output exceeds
            max_order.
        NotHadamardError: If a fails the Gram check.
    """
    q, n = params.q, params.n
    m = extended_order(params, max_order=max_order)
    if not a.is_square or a.rows != n:
        raise ConstructionError(
            f"Input for q = {q} must be square of order {n}, got {a.rows}x{a.cols}"
        )
    report = check_hadamard(a, workers=workers)
    if not report.is_hadamard:
        raise NotHadamardError(
            f"Input of order {n} is not Hadamard: {report.first_violation}", report
        )

    started = time.perf_counter()
    normalized = normalize(a)
    a_bits = normalized.to_bits()
    c_bits = core(normalized).to_bits()

    result = SignMatrix(m, m, max_order=max_order)
    result.set_row_bits(0, np.repeat(a_bits[1:, :], q, axis=1))
    band = np.empty((q, m), dtype=np.uint8)
    for r in range(1, q + 1):
        band[:, :q] = c_bits[r - 1]
        for i in range(1, q + 1):
            rows = row_permutation(params, r, i).as_array()
            band[:, q * i : q * (i + 1)] = c_bits[rows]
        result.set_row_bits(q * r, band)

    logger.debug(
        "Extended order %d to %d in %.3fs", n, m, time.perf_counter() - started
    )
    return result
