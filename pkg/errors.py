# errors.py
"""Exception hierarchy shared by every grossnum module.

Each error carries a ``code`` naming it on the command line, so the CLI can
report "<code>: <message>" without knowing the concrete class.
"""


class GrossError(Exception):
    """Base class for all domain errors"""
    code = "GrossError"

    def describe(self) -> str:
        return str(self)


class DivisionByZero(GrossError, ZeroDivisionError):
    code = "DivisionByZero"


class InexactDivision(GrossError):
    """Long division did not terminate within the term budget"""
    code = "InexactDivision"

    def __init__(self, partial, remainder, max_terms: int):
        self.partial = partial
        self.remainder = remainder
        self.max_terms = max_terms
        super().__init__(f"quotient not exact after {max_terms} terms")

    def describe(self) -> str:
        return f"{self} (partial quotient {self.partial}, remainder {self.remainder})"


class NotRepresentable(GrossError):
    """The result leaves the finite-sum-of-terms form"""
    code = "NotRepresentable"


class ZeroToNegativePower(GrossError, ZeroDivisionError):
    code = "ZeroToNegativePower"


class Indeterminate(GrossError):
    code = "Indeterminate"


class GrossSyntaxError(GrossError):
    """Malformed expression or set text"""
    code = "SyntaxError"

    def __init__(self, message: str, position: int, expected=()):
        self.position = position
        self.expected = tuple(expected)
        super().__init__(message)

    def describe(self) -> str:
        text = f"{self} at position {self.position}"
        if self.expected:
            text += f" (expected one of: {', '.join(self.expected)})"
        return text


class InvalidDescriptor(GrossError):
    code = "InvalidDescriptor"


class AmbiguousComparison(GrossError):
    """A floor annotation could flip the ordering"""
    code = "AmbiguousComparison"


class NotAnAdmissibleLength(GrossError):
    code = "NotAnAdmissibleLength"


class InvalidScoreVector(GrossError):
    code = "InvalidScoreVector"


class NonIntegerScore(GrossError):
    code = "NonIntegerScore"


class DimensionMismatch(GrossError):
    code = "DimensionMismatch"


class CommandError(GrossError):
    """Malformed command; reported as a usage error"""
    code = "UsageError"
