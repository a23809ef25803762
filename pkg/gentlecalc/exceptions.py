"""
Custom exceptions for the gentle-calculus package.

Every error carries an ``exit_code`` used by the command-line interface:
2 for unreadable input, 3 for violated preconditions, 4 for oracle mismatches.
"""

from typing import Any, Optional, Sequence


class GentleCalcError(Exception):
    """Base exception for all gentle-calculus errors."""

    exit_code = 3


class ParseError(GentleCalcError):
    """Raised when a text description cannot be parsed."""

    exit_code = 2

    def __init__(self, source: str, line_no: Optional[int], reason: str):
        self.source = source
        self.line_no = line_no
        self.reason = reason
        where = f"{source}:{line_no}" if line_no is not None else source
        super().__init__(f"Parse error at {where}: {reason}")


class UnknownReferenceError(ParseError):
    """Raised when a line references an undeclared vertex, arrow or arc."""

    def __init__(self, kind: str, name: str, line_no: Optional[int] = None, source: str = "<text>"):
        self.kind = kind
        self.name = name
        super().__init__(source, line_no, f"unknown {kind} '{name}'")


class DuplicateIdError(ParseError):
    """Raised when an identifier is declared twice."""

    def __init__(self, kind: str, name: str, line_no: Optional[int] = None, source: str = "<text>"):
        self.kind = kind
        self.name = name
        super().__init__(source, line_no, f"duplicate {kind} '{name}'")


class NotGentleError(GentleCalcError):
    """Raised when an operation requires a gentle algebra and gets something else."""

    def __init__(self, violations: Sequence[Any]):
        self.violations = list(violations)
        summary = "; ".join(str(v) for v in self.violations[:3])
        super().__init__(f"Algebra is not gentle ({len(self.violations)} violations): {summary}")


class NotComposableError(GentleCalcError):
    """Raised when two paths are composed whose endpoints do not match."""

    def __init__(self, left: Any, right: Any):
        self.left = left
        self.right = right
        super().__init__(f"Paths {left} and {right} are not composable")


class InvalidWalkError(GentleCalcError):
    """Raised when a walk is not a string or band where one is required."""

    def __init__(self, walk: Any, reason: str = ""):
        self.walk = walk
        super().__init__(f"Invalid walk '{walk}': {reason}")


class SurfaceError(GentleCalcError):
    """Raised when a polygon complex violates its invariants."""

    def __init__(self, reason: str):
        self.reason = reason
        super().__init__(f"Invalid surface: {reason}")


class CurveError(GentleCalcError):
    """Raised when a curve operation gets an invalid or incompatible curve."""

    def __init__(self, reason: str):
        self.reason = reason
        super().__init__(f"Invalid curve: {reason}")


class InfiniteDimensionError(GentleCalcError):
    """Raised when a finite quantity is requested at a puncture."""

    def __init__(self, what: str):
        self.what = what
        super().__init__(f"{what} is infinite (puncture endpoint)")


class InsufficientDepthError(GentleCalcError):
    """Raised when a truncated resolution is too short for the requested degree."""

    def __init__(self, omega: int, depth: int):
        self.omega = omega
        self.depth = depth
        super().__init__(f"Degree {omega} exceeds truncation depth {depth}")


class UnsupportedProductError(GentleCalcError):
    """Raised when a Yoneda product is requested outside a common marked point."""

    def __init__(self, reason: str):
        self.reason = reason
        super().__init__(f"Unsupported Yoneda product: {reason}")


class OracleMismatchError(GentleCalcError):
    """Raised when the linear-algebra oracle disagrees with the combinatorics."""

    exit_code = 4

    def __init__(self, check: str, expected: Any, actual: Any):
        self.check = check
        self.expected = expected
        self.actual = actual
        super().__init__(f"Oracle mismatch in {check}: combinatorial={expected} oracle={actual}")
