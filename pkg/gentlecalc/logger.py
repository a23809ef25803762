"""
Console and file logger for gentle-calculus.

Lines below the logger's level are dropped. The console colors lines by level
(DEBUG cyan, INFO white, WARN yellow, ERROR red) when the stream is a TTY and
NO_COLOR is unset. With a log directory, every shown line is also appended to
gentlecalc_YYYY_MM_DD_HH_MM_SS.log there.

Results belong on stdout; the logger writes to stderr unless told otherwise.

Usage:
    from gentlecalc import Level, Logger

    with Logger(level=Level.DEBUG, log_dir="logs") as log:
        with log.timed("resolve a5 a7^- a6"):
            ...
"""

from __future__ import annotations

import datetime as dt
import os
import sys
import time
from contextlib import contextmanager
from enum import IntEnum
from functools import partialmethod
from typing import Iterator, Optional, TextIO, Union

_RESET = "\033[0m"
_STAMP = "%Y-%m-%d %H:%M:%S"
_RULE = "=" * 80


class Level(IntEnum):
    DEBUG = 10
    INFO = 20
    WARN = 30
    ERROR = 40

    @classmethod
    def parse(cls, name: Union[str, "Level"]) -> "Level":
        """Level from a name; "warning" is accepted for WARN."""
        if isinstance(name, Level):
            return name
        key = name.strip().upper()
        if key == "WARNING":
            key = "WARN"
        try:
            return cls[key]
        except KeyError:
            raise ValueError(f"unknown log level: {name!r}") from None


_COLOR = {
    Level.DEBUG: "\033[36m",
    Level.INFO: "\033[37m",
    Level.WARN: "\033[33m",
    Level.ERROR: "\033[31m",
}


class Logger:
    """
    Leveled logger writing to a stream and, optionally, a timestamped file.

    Args:
        level: Lowest level that is written (default: INFO)
        timestamps: Prefix lines with the wall-clock time (default: True)
        color: True, False, or "auto" to color only TTY streams (default: "auto")
        stream: Console stream (default: sys.stderr)
        log_dir: Directory for the log file; None disables file logging
    """

    def __init__(
        self,
        *,
        level: Union[str, Level] = Level.INFO,
        timestamps: bool = True,
        color: bool | str = "auto",
        stream: Optional[TextIO] = None,
        log_dir: Optional[str] = None,
    ):
        self.level = Level.parse(level)
        self._timestamps = timestamps
        self._color = color
        self._stream = stream if stream is not None else sys.stderr
        self._file: Optional[TextIO] = None
        self._path: Optional[str] = None
        if log_dir:
            self._open(log_dir)

    def _colored(self) -> bool:
        if isinstance(self._color, bool):
            return self._color
        if "NO_COLOR" in os.environ:
            return False
        isatty = getattr(self._stream, "isatty", None)
        return bool(isatty and isatty())

    def _open(self, log_dir: str) -> None:
        """Open the log file; on failure warn on stderr and keep console-only logging."""
        folder = os.path.abspath(log_dir)
        path = os.path.join(folder, f"gentlecalc_{dt.datetime.now():%Y_%m_%d_%H_%M_%S}.log")
        try:
            os.makedirs(folder, exist_ok=True)
            handle = open(path, "w", encoding="utf-8", buffering=1)
        except OSError as e:
            print(f"[WARN] File logging disabled for '{log_dir}': {e}", file=sys.stderr)
            return
        handle.write(f"{_RULE}\ngentle-calculus log\nStarted: {dt.datetime.now():{_STAMP}}\n")
        handle.write(f"{_RULE}\n\n")
        self._file, self._path = handle, path
        self.debug(f"File logging initialized: {path}")

    def log(self, level: Union[str, Level], msg: object, *, end: str = "\n") -> None:
        """Write msg at ``level`` if it reaches the logger's level."""
        lvl = Level.parse(level)
        if lvl < self.level:
            return
        line = f"[{lvl.name}] {msg}"
        if self._timestamps:
            line = f"{dt.datetime.now():{_STAMP}} {line}"
        shown = f"{_COLOR[lvl]}{line}{_RESET}" if self._colored() else line
        for target, text in ((self._stream, shown), (self._file, line)):
            if target is None:
                continue
            try:
                target.write(text + end)
                target.flush()
            except (OSError, ValueError):
                pass

    debug = partialmethod(log, Level.DEBUG)
    info = partialmethod(log, Level.INFO)
    warn = partialmethod(log, Level.WARN)
    error = partialmethod(log, Level.ERROR)

    @contextmanager
    def timed(self, label: str) -> Iterator[None]:
        """Log the wall time of the enclosed block at DEBUG."""
        start = time.perf_counter()
        try:
            yield
        finally:
            self.debug(f"{label}: {time.perf_counter() - start:.3f} s")

    def close(self) -> None:
        """Finish and close the log file, if any."""
        handle, self._file, self._path = self._file, None, None
        if handle is None:
            return
        try:
            handle.write(f"\n{_RULE}\nLog ended: {dt.datetime.now():{_STAMP}}\n")
            handle.close()
        except (OSError, ValueError):
            pass

    @property
    def log_file_path(self) -> Optional[str]:
        return self._path

    def __enter__(self) -> "Logger":
        return self

    def __exit__(self, exc_type, exc_val, exc_tb) -> bool:
        self.close()
        return False
