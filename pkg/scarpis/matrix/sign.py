"""
Dense {+1, -1} matrices stored one bit per entry.

Packing uses an LSB-first, row-major layout:
- entry (i, j) lives in word j // 64 of row i, at bit position j % 64;
- a set bit encodes +1, a clear bit encodes -1;
- rows are padded to whole uint64 words and padding bits stay zero.

Row dot products are computed as cols - 2 * popcount(row_i XOR row_j), with
the last word masked so padding never contributes.
"""
from __future__ import annotations

import logging
from typing import Iterable, Sequence

import numpy as np

from scarpis.errors import MatrixError

logger = logging.getLogger(__name__)

DEFAULT_MAX_MATRIX_ORDER = 1 << 15

_WORD_BITS = 64
_ALL_ONES = np.uint64(0xFFFF_FFFF_FFFF_FFFF)


def _words_for(cols: int) -> int:
    return (cols + _WORD_BITS - 1) // _WORD_BITS


def _tail_mask(cols: int) -> np.uint64:
    used = cols % _WORD_BITS
    if used == 0:
        return _ALL_ONES
    return np.uint64((1 << used) - 1)


def pack_bits(bits: np.ndarray) -> np.ndarray:
    """Pack a 2D {0,1} array into uint64 words, LSB-first."""
    bits = np.asarray(bits, dtype=np.uint8)
    rows, cols = bits.shape
    n_words = _words_for(cols)
    packed = np.packbits(bits, axis=1, bitorder="little")
    padded = np.zeros((rows, n_words * 8), dtype=np.uint8)
    padded[:, : packed.shape[1]] = packed
    return padded.view("<u8").astype(np.uint64)


def unpack_bits(words: np.ndarray, cols: int) -> np.ndarray:
    """Inverse of pack_bits: a (rows, cols) uint8 array of {0,1}."""
    as_bytes = np.ascontiguousarray(words.astype("<u8")).view(np.uint8)
    return np.unpackbits(as_bytes, axis=1, bitorder="little")[:, :cols]


class SignMatrix:
    """Rectangular {+1, -1} matrix with bit-packed rows.

    Mutable while a construction assembles it; treat it as read-only once
    handed to callers. Read-only sharing across threads is safe.

    Attributes:
        rows: Number of rows.
        cols: Number of columns.
    """

    __slots__ = ("rows", "cols", "_words", "_mask")

    def __init__(
        self,
        rows: int,
        cols: int,
        *,
        fill: int = 1,
        max_order: int = DEFAULT_MAX_MATRIX_ORDER,
    ) -> None:
        """Allocate a rows x cols matrix with every entry equal to fill.

        Args:
            rows: Number of rows (>= 1).
            cols: Number of columns (>= 1).
            fill: Initial sign, +1 or -1.
            max_order: Largest accepted side length.

        Raises:
            MatrixError: If a dimension is out of range or fill is not a sign.
        """
        for name, size in (("rows", rows), ("cols", cols)):
            if not 1 <= size <= max_order:
                raise MatrixError(
                    f"{name} must lie in [1, {max_order}], got {size!r}"
                )
        _check_sign(fill)
        self.rows = rows
        self.cols = cols
        self._mask = _tail_mask(cols)
        self._words = np.zeros((rows, _words_for(cols)), dtype=np.uint64)
        if fill == 1:
            self._words[:] = _ALL_ONES
            self._words[:, -1] &= self._mask

    # -- construction helpers ------------------------------------------------

    @classmethod
    def from_bits(
        cls, bits: np.ndarray, *, max_order: int = DEFAULT_MAX_MATRIX_ORDER
    ) -> SignMatrix:
        """Build from a 2D {0,1} array (1 means +1)."""
        bits = np.asarray(bits)
        if bits.ndim != 2 or bits.size == 0:
            raise MatrixError("Expected a non-empty 2D array")
        rows, cols = bits.shape
        matrix = cls(rows, cols, fill=-1, max_order=max_order)
        matrix._words = pack_bits(bits != 0)
        return matrix

    @classmethod
    def from_array(
        cls, signs: np.ndarray, *, max_order: int = DEFAULT_MAX_MATRIX_ORDER
    ) -> SignMatrix:
        """Build from a 2D integer array with entries in {+1, -1}."""
        signs = np.asarray(signs)
        if signs.ndim != 2 or signs.size == 0:
            raise MatrixError("Expected a non-empty 2D array")
        if not np.isin(signs, (1, -1)).all():
            raise MatrixError("Entries must be +1 or -1")
        return cls.from_bits(signs == 1, max_order=max_order)

    def set_row_bits(self, start: int, bits: np.ndarray) -> None:
        """Overwrite rows start, start+1, ... with a 2D {0,1} block (1 means +1).

        Raises:
            MatrixError: If the block does not fit the matrix.
        """
        bits = np.asarray(bits)
        if bits.ndim != 2 or bits.shape[1] != self.cols:
            raise MatrixError(
                f"Row block must have {self.cols} columns, got shape {bits.shape}"
            )
        stop = start + bits.shape[0]
        if start < 0 or stop > self.rows:
            raise MatrixError(f"Rows [{start}, {stop}) out of range [0, {self.rows})")
        self._words[start:stop] = pack_bits(bits != 0)

    def to_bits(self) -> np.ndarray:
        """Unpacked (rows, cols) uint8 array, 1 for +1 and 0 for -1."""
        return unpack_bits(self._words, self.cols)

    def to_array(self) -> np.ndarray:
        """Unpacked (rows, cols) int8 array of +1/-1."""
        return self.to_bits().astype(np.int8) * 2 - 1

    def copy(self) -> SignMatrix:
        clone = SignMatrix.__new__(SignMatrix)
        clone.rows = self.rows
        clone.cols = self.cols
        clone._mask = self._mask
        clone._words = self._words.copy()
        return clone

    def negated(self) -> SignMatrix:
        """Return -M."""
        clone = self.copy()
        clone._words ^= _ALL_ONES
        clone._words[:, -1] &= self._mask
        return clone

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    # -- entry access --------------------------------------------------------

    def _check_row(self, i: int) -> None:
        if not 0 <= i < self.rows:
            raise MatrixError(f"Row index {i} out of range [0, {self.rows})")

    def _check_col(self, j: int) -> None:
        if not 0 <= j < self.cols:
            raise MatrixError(f"Column index {j} out of range [0, {self.cols})")

    def entry(self, i: int, j: int) -> int:
        self._check_row(i)
        self._check_col(j)
        bit = (int(self._words[i, j >> 6]) >> (j & 63)) & 1
        return 1 if bit else -1

    def set_entry(self, i: int, j: int, sign: int) -> None:
        self._check_row(i)
        self._check_col(j)
        _check_sign(sign)
        bit = np.uint64(1 << (j & 63))
        if sign == 1:
            self._words[i, j >> 6] |= bit
        else:
            self._words[i, j >> 6] &= ~bit

    def row(self, i: int) -> np.ndarray:
        """Row i as an int8 array of +1/-1."""
        self._check_row(i)
        return unpack_bits(self._words[i : i + 1], self.cols)[0].astype(np.int8) * 2 - 1

    # -- arithmetic ------------------------------------------------------------

    def dot_rows(self, i: int, j: int) -> int:
        """Exact integer dot product of rows i and j."""
        self._check_row(i)
        self._check_row(j)
        diff = self._words[i] ^ self._words[j]
        diff[-1] &= self._mask
        return self.cols - 2 * int(np.bitwise_count(diff).sum())

    def dots_with_later_rows(self, i: int) -> np.ndarray:
        """Dot products of row i with rows i+1, ..., rows-1 (int64 array)."""
        self._check_row(i)
        diff = self._words[i + 1 :] ^ self._words[i]
        diff[:, -1] &= self._mask
        flips = np.bitwise_count(diff).sum(axis=1, dtype=np.int64)
        return self.cols - 2 * flips

    def row_sum(self, i: int) -> int:
        self._check_row(i)
        plus = int(np.bitwise_count(self._words[i]).sum())
        return 2 * plus - self.cols

    def col_sum(self, j: int) -> int:
        self._check_col(j)
        plus = int(((self._words[:, j >> 6] >> np.uint64(j & 63)) & np.uint64(1)).sum())
        return 2 * plus - self.rows

    def negate_row(self, i: int) -> None:
        self._check_row(i)
        self._words[i] ^= _ALL_ONES
        self._words[i, -1] &= self._mask

    def negate_col(self, j: int) -> None:
        self._check_col(j)
        self._words[:, j >> 6] ^= np.uint64(1 << (j & 63))

    def is_normalized(self) -> bool:
        """True if the first row and first column are all +1."""
        return self.row_sum(0) == self.cols and self.col_sum(0) == self.rows

    # -- dunder ----------------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SignMatrix):
            return NotImplemented
        return (
            self.rows == other.rows
            and self.cols == other.cols
            and bool(np.array_equal(self._words, other._words))
        )

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"SignMatrix(rows={self.rows}, cols={self.cols})"


def _check_sign(sign: int) -> None:
    if sign not in (1, -1):
        raise MatrixError(f"Sign must be +1 or -1, got {sign!r}")


def from_signs(rows: Iterable[Sequence[int]]) -> SignMatrix:
    """Build a matrix from nested sequences of +1/-1."""
    return SignMatrix.from_array(np.array([list(r) for r in rows]))


def kronecker(
    x: SignMatrix, y: SignMatrix, *, max_order: int = DEFAULT_MAX_MATRIX_ORDER
) -> SignMatrix:
    """Kronecker product: the block matrix [x_ij * Y].

    Raises:
        MatrixError: If the result would exceed max_order on either side.
    """
    rows, cols = x.rows * y.rows, x.cols * y.cols
    if rows > max_order or cols > max_order:
        raise MatrixError(
            f"Kronecker product of size {rows}x{cols} exceeds the bound {max_order}"
        )
    return SignMatrix.from_array(
        np.kron(x.to_array(), y.to_array()), max_order=max_order
    )


def sylvester_hadamard(
    order: int, *, max_order: int = DEFAULT_MAX_MATRIX_ORDER
) -> SignMatrix:
    """Sylvester Hadamard matrix of a power-of-two order by Kronecker doubling."""
    if order < 1 or order & (order - 1):
        raise MatrixError(f"Sylvester order must be a power of two, got {order!r}")
    h2 = from_signs([[1, 1], [1, -1]])
    result = from_signs([[1]])
    while result.rows < order:
        result = kronecker(result, h2, max_order=max_order)
    return result


def normalize(a: SignMatrix) -> SignMatrix:
    """Normalize a square matrix so its first row and column are all +1.

    Negates the whole matrix if a_11 = -1, then negates every row whose
    first entry is -1 and every column whose first entry is -1. With
    a_11 = +1 the row and column choices do not interact, so the result does
    not depend on the order of the negations.

    Raises:
        MatrixError: If a is not square.
    """
    if not a.is_square:
        raise MatrixError(f"normalize needs a square matrix, got {a.rows}x{a.cols}")
    result = a.negated() if a.entry(0, 0) == -1 else a.copy()
    bits = result.to_bits()
    flip_rows = np.flatnonzero(bits[:, 0] == 0)
    flip_cols = np.flatnonzero(bits[0, :] == 0)
    for j in flip_cols:
        result.negate_col(int(j))
    for i in flip_rows:
        result.negate_row(int(i))
    logger.debug(
        "Normalized order %d: %d rows and %d columns negated",
        a.rows,
        len(flip_rows),
        len(flip_cols),
    )
    return result


def core(a: SignMatrix) -> SignMatrix:
    """Delete the first row and column of a normalized square matrix.

    Raises:
        MatrixError: If a is not square, has order < 2, or is not normalized.
    """
    if not a.is_square or a.rows < 2:
        raise MatrixError(
            f"core needs a square matrix of order >= 2, got {a.rows}x{a.cols}"
        )
    if not a.is_normalized():
        raise MatrixError("core needs a normalized matrix (first row and column +1)")
    return SignMatrix.from_bits(a.to_bits()[1:, 1:])
