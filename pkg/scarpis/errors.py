"""
Exception hierarchy for the scarpis package.

Every error raised on purpose by the library derives from ScarpisError and
from ValueError, so callers that only know about ValueError keep working
while the CLI can map each family onto an exit code.
"""
from __future__ import annotations

from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from scarpis.matrix.verify import VerificationReport


class ScarpisError(Exception):
    """Base class for all scarpis errors."""


class FieldError(ScarpisError, ValueError):
    """Invalid field parameters or mixed field contexts."""


class MatrixError(ScarpisError, ValueError):
    """Invalid matrix shape, index, or precondition."""


class ConstructionError(ScarpisError, ValueError):
    """Construction parameters are inconsistent."""


class NotHadamardError(ConstructionError):
    """An input matrix failed the exact Gram check.

    Attributes:
        report: The verification report describing the first violation.
    """

    def __init__(self, message: str, report: VerificationReport) -> None:
        super().__init__(message)
        self.report = report


class MatrixFormatError(ScarpisError, ValueError):
    """Matrix text could not be parsed."""


class ConfigError(ScarpisError, ValueError):
    """Configuration file or environment override is invalid."""
