"""
Bridge from Python's standard logging to the gentlecalc Logger.

Library modules log through ``logging.getLogger(__name__)``; the CLI installs
this bridge so those records share the Logger's colored console and file output.

Usage:
    from gentlecalc import Level, Logger, configure_stdlib_logging

    logger = Logger(level=Level.DEBUG)
    configure_stdlib_logging(logger, level=logging.DEBUG, logger_names=["gentlecalc"])
"""

import logging
from typing import List, Optional

from gentlecalc.logger import Level, Logger


def _to_level(levelno: int) -> Level:
    for lvl in sorted(Level, reverse=True):
        if levelno >= lvl:
            return lvl
    return Level.DEBUG


class GentleCalcLogHandler(logging.Handler):
    """
    Logging handler that forwards records to a gentlecalc Logger.

    Records map to the nearest Level at or below their levelno; CRITICAL logs as ERROR.
    """

    def __init__(self, target: Logger):
        super().__init__()
        self.target = target

    def emit(self, record: logging.LogRecord) -> None:
        try:
            self.target.log(_to_level(record.levelno), self.format(record))
        except Exception:
            self.handleError(record)


def configure_stdlib_logging(
    target: Logger,
    level: int = logging.INFO,
    format_string: Optional[str] = None,
    logger_names: Optional[List[str]] = None,
) -> GentleCalcLogHandler:
    """
    Route standard logging records through a gentlecalc Logger.

    Args:
        target: Logger receiving the records
        level: Minimum level captured (default: logging.INFO)
        format_string: Record format; defaults to "[%(name)s] %(message)s"
            since the Logger adds its own timestamp
        logger_names: Loggers to configure; None configures the root logger

    Returns:
        The installed handler
    """
    handler = GentleCalcLogHandler(target)
    handler.setLevel(level)
    handler.setFormatter(logging.Formatter(format_string or "[%(name)s] %(message)s"))

    if logger_names:
        for name in logger_names:
            log = logging.getLogger(name)
            log.setLevel(level)
            log.addHandler(handler)
            log.propagate = False
    else:
        root = logging.getLogger()
        root.setLevel(level)
        root.addHandler(handler)
    return handler


def reset_stdlib_logging(logger_names: Optional[List[str]] = None) -> None:
    """
    Remove bridge handlers installed by configure_stdlib_logging.

    Args:
        logger_names: Loggers to reset; None resets the root logger
    """
    for name in logger_names or [""]:
        log = logging.getLogger(name) if name else logging.getLogger()
        for handler in log.handlers[:]:
            if isinstance(handler, GentleCalcLogHandler):
                log.removeHandler(handler)
        if name:
            log.propagate = True
