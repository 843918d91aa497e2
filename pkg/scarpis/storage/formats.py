"""
Text formats for sign matrices.

Two formats share one layout: optional comment lines starting with '#',
then one line per row, '\\n' line endings and a mandatory trailing newline.

- pm:  rows of '+' and '-' characters without separators ("++\\n+-\\n").
- int: rows of space-separated "1" / "-1" tokens ("1 1\\n1 -1\\n").

Comments carry provenance (generator, field, modulus, labeling, input hash,
timestamp) and are ignored by the parsers.

Writes are atomic (write to .tmp, then rename); parsing is strict.
"""
from __future__ import annotations

import hashlib
import io
import os
from datetime import datetime
from pathlib import Path
from typing import Iterable, Optional, TextIO

import numpy as np
from pydantic import BaseModel

from scarpis.config.models import MatrixFormat
from scarpis.errors import MatrixError, MatrixFormatError
from scarpis.matrix.sign import SignMatrix

_PLUS = ord("+")
_MINUS = ord("-")


class Provenance(BaseModel):
    """Metadata written as '#' comment lines above a matrix."""

    generator: str
    field: Optional[str] = None
    q: Optional[int] = None
    modulus: Optional[str] = None
    labeling: Optional[str] = None
    input_sha256: Optional[str] = None
    order: Optional[int] = None
    created_at: Optional[datetime] = None

    def comment_lines(self) -> list[str]:
        """Render one 'key: value' line per populated field, in declaration order."""
        lines = []
        for key, value in self.model_dump(exclude_none=True).items():
            if isinstance(value, datetime):
                value = value.isoformat(timespec="seconds")
            lines.append(f"{key}: {value}")
        return lines


def _split_lines(text: str) -> tuple[list[str], list[tuple[int, str]]]:
    """Split text into comment bodies and numbered data lines."""
    if not text:
        raise MatrixFormatError("Empty matrix: no rows")
    if not text.endswith("\n"):
        raise MatrixFormatError("Matrix text must end with a newline")
    comments: list[str] = []
    rows: list[tuple[int, str]] = []
    for number, line in enumerate(text[:-1].split("\n"), start=1):
        if line.startswith("#"):
            comments.append(line[1:].strip())
        else:
            rows.append((number, line))
    if not rows:
        raise MatrixFormatError("Empty matrix: no rows")
    return comments, rows


def _build(bit_rows: list[np.ndarray], line_numbers: list[int]) -> SignMatrix:
    cols = bit_rows[0].size
    for number, bits in zip(line_numbers, bit_rows):
        if bits.size == 0:
            raise MatrixFormatError(f"Line {number}: empty row")
        if bits.size != cols:
            raise MatrixFormatError(
                f"Ragged row at line {number}: expected {cols} entries, got {bits.size}"
            )
    try:
        return SignMatrix.from_bits(np.vstack(bit_rows))
    except MatrixError as e:
        raise MatrixFormatError(str(e)) from e


def parse_pm(text: str) -> SignMatrix:
    """Parse '+'/'-' text."""
    _, rows = _split_lines(text)
    bit_rows = []
    for number, line in rows:
        raw = np.frombuffer(line.encode("utf-8"), dtype=np.uint8)
        bad = np.flatnonzero((raw != _PLUS) & (raw != _MINUS))
        if bad.size:
            char = line.encode("utf-8")[int(bad[0]) : int(bad[0]) + 1].decode(
                "utf-8", errors="replace"
            )
            raise MatrixFormatError(
                f"Line {number}: unexpected character {char!r} at column {int(bad[0]) + 1}"
            )
        bit_rows.append((raw == _PLUS).astype(np.uint8))
    return _build(bit_rows, [number for number, _ in rows])


def parse_int(text: str) -> SignMatrix:
    """Parse rows of space-separated 1 / -1 tokens."""
    _, rows = _split_lines(text)
    bit_rows = []
    for number, line in rows:
        tokens = line.split()
        for token in tokens:
            if token not in ("1", "-1"):
                raise MatrixFormatError(
                    f"Line {number}: token {token!r} is not 1 or -1"
                )
        bit_rows.append(np.array([t == "1" for t in tokens], dtype=np.uint8))
    return _build(bit_rows, [number for number, _ in rows])


def detect_format(text: str) -> MatrixFormat:
    """Guess the format from the first data line."""
    _, rows = _split_lines(text)
    first = rows[0][1]
    if first and set(first) <= {"+", "-"}:
        return MatrixFormat.PM
    return MatrixFormat.INT


def parse_text(text: str, fmt: Optional[MatrixFormat] = None) -> SignMatrix:
    """Parse text in the given format, detecting it when fmt is None."""
    fmt = fmt or detect_format(text)
    return parse_pm(text) if fmt is MatrixFormat.PM else parse_int(text)


def read_comments(text: str) -> list[str]:
    """Comment bodies (without the leading '#') in file order."""
    comments, _ = _split_lines(text)
    return comments


def _write_comments(sink: TextIO, comments: Iterable[str]) -> None:
    for comment in comments:
        for line in str(comment).splitlines() or [""]:
            sink.write(f"# {line}\n" if line else "#\n")


def write_pm(matrix: SignMatrix, sink: TextIO, comments: Iterable[str] = ()) -> None:
    """Write '+'/'-' rows, preceded by '# ' comment lines."""
    _write_comments(sink, comments)
    chars = np.where(matrix.to_bits() == 1, _PLUS, _MINUS).astype(np.uint8)
    for row in chars:
        sink.write(row.tobytes().decode("ascii"))
        sink.write("\n")


def write_int(matrix: SignMatrix, sink: TextIO, comments: Iterable[str] = ()) -> None:
    """Write rows of space-separated 1 / -1 tokens."""
    _write_comments(sink, comments)
    for bits in matrix.to_bits():
        sink.write(" ".join("1" if b else "-1" for b in bits.tolist()))
        sink.write("\n")


def read_pm(source: TextIO) -> SignMatrix:
    return parse_pm(source.read())


def read_int(source: TextIO) -> SignMatrix:
    return parse_int(source.read())


def render_text(
    matrix: SignMatrix, fmt: MatrixFormat = MatrixFormat.PM, comments: Iterable[str] = ()
) -> str:
    """Serialize to a string in the given format."""
    buffer = io.StringIO()
    writer = write_pm if fmt is MatrixFormat.PM else write_int
    writer(matrix, buffer, comments)
    return buffer.getvalue()


def convert_text(text: str, target: MatrixFormat) -> str:
    """Re-serialize matrix text into another format, keeping its comments."""
    return render_text(parse_text(text), target, read_comments(text))


def matrix_digest(matrix: SignMatrix) -> str:
    """SHA-256 of the canonical '+'/'-' body, independent of format and comments."""
    return hashlib.sha256(render_text(matrix).encode("ascii")).hexdigest()


def load_matrix(path: Path, fmt: Optional[MatrixFormat] = None) -> SignMatrix:
    """Read a matrix file, detecting the format when fmt is None.

    Raises:
        FileNotFoundError: If path does not exist.
        MatrixFormatError: If the content is malformed.
    """
    if not path.exists():
        raise FileNotFoundError(f"Matrix file not found: {path}")
    try:
        text = path.read_text(encoding="utf-8")
    except UnicodeDecodeError as e:
        raise MatrixFormatError(f"{path} is not UTF-8 text") from e
    return parse_text(text, fmt)


def save_matrix(
    path: Path,
    matrix: SignMatrix,
    fmt: MatrixFormat = MatrixFormat.PM,
    comments: Iterable[str] = (),
) -> None:
    """Write a matrix file atomically.

    Raises:
        OSError: If the file cannot be written.
    """
    text = render_text(matrix, fmt, comments)
    path.parent.mkdir(parents=True, exist_ok=True)
    # Atomic write: write to temp file, then rename
    tmp_path = path.with_name(path.name + ".tmp")
    try:
        tmp_path.write_text(text, encoding="utf-8", newline="\n")
        os.replace(str(tmp_path), str(path))
    except Exception:
        # Clean up temp file on failure
        if tmp_path.exists():
            tmp_path.unlink()
        raise
