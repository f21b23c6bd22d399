"""Logging setup: stdlib loggers rendered by rich on stderr."""

import logging

from rich.console import Console
from rich.logging import RichHandler

from lattice_floquet.core.config import debug_enabled

stderr_console = Console(stderr=True)

_HANDLER_NAME = "lattice-floquet"


def configure_logging(verbose: bool = False) -> logging.Logger:
    """
    Attach a single RichHandler to the package logger.

    Args:
        verbose: Log INFO messages (DEBUG when LATTICE_FLOQUET_DEBUG is set)

    Returns:
        The package logger
    """
    logger = logging.getLogger("lattice_floquet")

    if debug_enabled():
        level = logging.DEBUG
    elif verbose:
        level = logging.INFO
    else:
        level = logging.WARNING

    if not any(getattr(h, "name", None) == _HANDLER_NAME for h in logger.handlers):
        handler = RichHandler(
            console=stderr_console,
            show_path=False,
            rich_tracebacks=True,
        )
        handler.name = _HANDLER_NAME
        handler.setFormatter(logging.Formatter("%(message)s", datefmt="[%X]"))
        logger.addHandler(handler)

    logger.setLevel(level)
    logger.propagate = False
    return logger
