"""
Rich consoles and log handler setup for the CLI.

Matrices are written to stdout as plain text; status lines, warnings and log
records go to stderr so piped output stays clean.
"""
import logging

from rich.console import Console
from rich.logging import RichHandler

console = Console(highlight=False)
err_console = Console(stderr=True, highlight=False)


def configure_logging(verbose: bool = False) -> None:
    """Route the package logger to stderr through Rich."""
    logger = logging.getLogger("scarpis")
    for handler in list(logger.handlers):
        logger.removeHandler(handler)
    logger.addHandler(
        RichHandler(console=err_console, show_path=False, rich_tracebacks=False)
    )
    logger.setLevel(logging.DEBUG if verbose else logging.WARNING)
    logger.propagate = False
