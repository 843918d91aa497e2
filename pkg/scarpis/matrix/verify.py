"""
Exact certification that a sign matrix is Hadamard.

A square {+1, -1} matrix H of order m is Hadamard when H H^T = m I, i.e. when
every pair of distinct rows has dot product 0 (the diagonal is m for free).
All arithmetic is integer; row pairs are scanned in lexicographic order so the
reported first violation is well defined, also when chunks of rows are
checked on several threads.
"""
from __future__ import annotations

import enum
import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from scarpis.errors import MatrixError
from scarpis.matrix.sign import SignMatrix

logger = logging.getLogger(__name__)


class Violation(BaseModel):
    """A pair of rows whose dot product breaks an expected value."""

    model_config = ConfigDict(frozen=True)

    row_i: int
    row_j: int
    dot: int

    def __str__(self) -> str:
        return f"rows ({self.row_i}, {self.row_j}) have dot product {self.dot}"


class VerificationReport(BaseModel):
    """Outcome of the exact Gram check.

    pairs_checked counts the row pairs up to and including the first
    violation in lexicographic order (all m(m-1)/2 pairs when none exists),
    so it is identical for every worker count.
    """

    model_config = ConfigDict(frozen=True)

    order: int
    is_hadamard: bool
    first_violation: Optional[Violation] = None
    pairs_checked: int = Field(ge=0)

    @model_validator(mode="after")
    def _verdict_matches_violation(self) -> VerificationReport:
        if self.is_hadamard != (self.first_violation is None):
            raise ValueError("is_hadamard must be true exactly when no violation exists")
        return self


class CoreInvariantReport(BaseModel):
    """Diagnostics on the core of a normalized Hadamard matrix."""

    model_config = ConfigDict(frozen=True)

    order: int
    bad_row_sums: list[int] = Field(default_factory=list)
    bad_col_sums: list[int] = Field(default_factory=list)
    first_bad_pair: Optional[Violation] = None

    @property
    def passed(self) -> bool:
        return not self.bad_row_sums and not self.bad_col_sums and self.first_bad_pair is None


class ProofCase(str, enum.Enum):
    """The four kinds of row pairs in an extended matrix of order q(q+1)."""

    BASE_ROWS = "base-rows"  # two rows of B_0
    SAME_BAND = "same-band"  # two rows of one B_r, r >= 1
    BASE_VS_BAND = "base-vs-band"  # a row of B_0 and a row of B_s
    DIFFERENT_BANDS = "different-bands"  # rows of B_r and B_s, 0 < r < s


class CaseResult(BaseModel):
    pairs_checked: int = 0
    first_violation: Optional[Violation] = None

    @property
    def passed(self) -> bool:
        return self.first_violation is None


class ProofCaseReport(BaseModel):
    """Per-case orthogonality results for a matrix of order q(q+1)."""

    q: int
    cases: dict[ProofCase, CaseResult]

    @property
    def passed(self) -> bool:
        return all(result.passed for result in self.cases.values())


def _pairs_before(i: int, m: int) -> int:
    """Number of pairs (s, t), s < t, with s < i."""
    return i * (m - 1) - i * (i - 1) // 2


def _first_violation_in(
    matrix: SignMatrix, start: int, stop: int
) -> Optional[Violation]:
    for i in range(start, stop):
        dots = matrix.dots_with_later_rows(i)
        bad = np.flatnonzero(dots)
        if bad.size:
            t = int(bad[0])
            return Violation(row_i=i, row_j=i + 1 + t, dot=int(dots[t]))
    return None


def check_hadamard(
    matrix: SignMatrix, *, workers: int = 1, chunk_rows: int = 64
) -> VerificationReport:
    """Exactly decide whether matrix is Hadamard.

    Args:
        matrix: Square sign matrix.
        workers: Threads used to scan row chunks; 1 scans serially and stops
            at the first violation.
        chunk_rows: Rows per work unit when workers > 1.

    Returns:
        Report with the lexicographically first violating pair, if any.

    Raises:
        MatrixError: If matrix is not square.
    """
    if not matrix.is_square:
        raise MatrixError(
            f"Hadamard check needs a square matrix, got {matrix.rows}x{matrix.cols}"
        )
    m = matrix.rows
    total = m * (m - 1) // 2
    chunk_rows = max(1, chunk_rows)
    bounds = [(s, min(s + chunk_rows, m)) for s in range(0, m, chunk_rows)]

    first: Optional[Violation] = None
    if workers <= 1:
        for start, stop in bounds:
            first = _first_violation_in(matrix, start, stop)
            if first is not None:
                break
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            found = pool.map(lambda b: _first_violation_in(matrix, *b), bounds)
            candidates = [v for v in found if v is not None]
        if candidates:
            first = min(candidates, key=lambda v: (v.row_i, v.row_j))

    if first is None:
        report = VerificationReport(order=m, is_hadamard=True, pairs_checked=total)
    else:
        checked = _pairs_before(first.row_i, m) + (first.row_j - first.row_i)
        report = VerificationReport(
            order=m, is_hadamard=False, first_violation=first, pairs_checked=checked
        )
    logger.info(
        "Order %d: %s",
        m,
        "Hadamard" if report.is_hadamard else f"not Hadamard, {first}",
    )
    return report


def check_core_invariants(core: SignMatrix) -> CoreInvariantReport:
    """Check the facts a core of a normalized Hadamard matrix must satisfy.

    Every row and column sums to -1 and distinct rows have dot product -1.

    Raises:
        MatrixError: If core is not square.
    """
    if not core.is_square:
        raise MatrixError(f"Core must be square, got {core.rows}x{core.cols}")
    q = core.rows
    bad_rows = [i for i in range(q) if core.row_sum(i) != -1]
    bad_cols = [j for j in range(q) if core.col_sum(j) != -1]
    first: Optional[Violation] = None
    for i in range(q - 1):
        dots = core.dots_with_later_rows(i)
        bad = np.flatnonzero(dots != -1)
        if bad.size:
            t = int(bad[0])
            first = Violation(row_i=i, row_j=i + 1 + t, dot=int(dots[t]))
            break
    return CoreInvariantReport(
        order=q, bad_row_sums=bad_rows, bad_col_sums=bad_cols, first_bad_pair=first
    )


def check_proof_cases(matrix: SignMatrix, q: int) -> ProofCaseReport:
    """Check orthogonality of an order q(q+1) matrix case by case.

    Rows are grouped in bands of q: band 0 is B_0, band r is B_r. Every pair
    of distinct rows is assigned to one ProofCase and must be orthogonal.

    Raises:
        MatrixError: If matrix is not square of order q(q+1).
    """
    m = q * (q + 1)
    if not matrix.is_square or matrix.rows != m:
        raise MatrixError(
            f"Expected a square matrix of order {m} for q={q}, "
            f"got {matrix.rows}x{matrix.cols}"
        )
    order = [
        ProofCase.BASE_ROWS,
        ProofCase.SAME_BAND,
        ProofCase.BASE_VS_BAND,
        ProofCase.DIFFERENT_BANDS,
    ]
    counts = [0, 0, 0, 0]
    firsts: list[Optional[Violation]] = [None, None, None, None]
    for i in range(m - 1):
        dots = matrix.dots_with_later_rows(i)
        band_i = i // q
        band_j = np.arange(i + 1, m) // q
        if band_i == 0:
            kinds = np.where(band_j == 0, 0, 2)
        else:
            kinds = np.where(band_j == band_i, 1, 3)
        for kind in range(4):
            mask = kinds == kind
            counts[kind] += int(mask.sum())
            if firsts[kind] is None:
                bad = np.flatnonzero(mask & (dots != 0))
                if bad.size:
                    t = int(bad[0])
                    firsts[kind] = Violation(row_i=i, row_j=i + 1 + t, dot=int(dots[t]))
    return ProofCaseReport(
        q=q,
        cases={
            case: CaseResult(pairs_checked=counts[n], first_violation=firsts[n])
            for n, case in enumerate(order)
        },
    )
