"""Exception hierarchy shared by every module.

The CLI maps each class to one exit code, so new errors should subclass one
of the three roots below.
"""

from __future__ import annotations


class QDualError(Exception):
    """Root of the package's errors."""


class MathError(QDualError, ArithmeticError):
    """Mathematical failure (CLI exit code 3)."""


class NonTerminating(MathError):
    """Rewriting exceeded its step budget."""


class WindowExceeded(MathError):
    """A lattice computation needed a larger exponent window than allowed."""


class VerificationFailed(QDualError):
    """A machine check of catalog or user data failed (CLI exit code 1)."""


class HopfCheckFailed(VerificationFailed):
    """A presentation does not satisfy the Hopf axioms."""


class NotCommutativeAtLimit(VerificationFailed):
    pass


class NotCocommutativeAtLimit(VerificationFailed):
    pass


class InputError(QDualError):
    """Malformed user input (CLI exit code 2)."""


class ParseError(InputError):
    def __init__(self, message: str, line: int = 1, col: int = 1):
        super().__init__(f"{line}:{col}: {message}")
        self.message = message
        self.line = line
        self.col = col


class UnknownGenerator(ParseError):
    pass


class ArityMismatch(ParseError):
    pass


class UnknownEntry(InputError, KeyError):
    def __str__(self) -> str:
        return str(self.args[0]) if self.args else "unknown entry"


class BadParameter(InputError, ValueError):
    pass
