"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations


class GrossError(Exception):
    """Base class for all errors raised by grossdiff."""


class InvalidDigit(GrossError, ValueError):
    """A grossdigit is NaN or infinite."""


class DivisionByZero(GrossError, ZeroDivisionError):
    pass


class MissingTruncationFloor(GrossError, ValueError):
    """An operation with an infinite expansion was asked to run without a floor."""


class InfinitePart(GrossError, ValueError):
    """An elementary function was applied to a number with positive grosspowers."""


class NonIntegerInfinitesimal(GrossError, ValueError):
    pass


class DomainError(GrossError, ValueError):
    """Argument outside the domain of an elementary function or operation."""

    def __init__(self, func: str, value: object, reason: str = "") -> None:
        self.func = func
        self.value = value
        msg = f"{func}: argument {value!r} outside domain"
        if reason:
            msg += f" ({reason})"
        super().__init__(msg)


class ParseError(GrossError, ValueError):
    """Syntax error in an expression.

    ``offset`` is a byte offset into the UTF-8 encoded input.
    """

    def __init__(self, offset: int, expected: str, found: str) -> None:
        self.offset = offset
        self.expected = expected
        self.found = found
        super().__init__(f"at offset {offset}: expected {expected}, found {found}")


class EvaluationError(GrossError):
    """An error raised while evaluating an expression, tagged with the
    source span of the offending node (``None`` for hand-built trees)."""

    def __init__(self, message: str, span: tuple[int, int] | None = None) -> None:
        self.span = span
        if span is not None:
            message = f"{message} [at {span[0]}:{span[1]}]"
        super().__init__(message)


class OrderTooLarge(GrossError, ValueError):
    pass


class DerivativeVanished(GrossError, ArithmeticError):
    def __init__(self, x: float) -> None:
        self.x = x
        super().__init__(f"derivative vanished at x = {x!r}")


class PreconditionViolated(GrossError, ValueError):
    pass
