"""
Custom exception classes for the engine
Every error carries an HTTP status code and a CLI exit code
"""

from typing import Optional, Dict, Any


class AppException(Exception):
    """
    Base exception class for engine errors
    """
    exit_code: int = 1

    def __init__(self, message: str, status_code: int = 500, details: Optional[Dict[str, Any]] = None):
        self.message = message
        self.status_code = status_code
        self.details = details or {}
        super().__init__(self.message)


class InputError(AppException):
    """
    Malformed or unsupported input (exit code 2)
    """
    exit_code = 2

    def __init__(self, message: str, details: Optional[Dict[str, Any]] = None):
        super().__init__(message, status_code=400, details=details)


class MathematicalError(AppException):
    """
    A computation could not certify its result (exit code 1)
    """
    exit_code = 1

    def __init__(self, message: str, details: Optional[Dict[str, Any]] = None):
        super().__init__(message, status_code=422, details=details)


# ---------------------------------------------------------------------------
# Input errors
# ---------------------------------------------------------------------------

class ExpressionSyntaxError(InputError):
    """Polynomial text does not follow the expression grammar"""

    def __init__(self, position: int, expected: str, source: str = ""):
        self.position = position
        self.expected = expected
        super().__init__(
            f"Syntax error at position {position}: expected {expected}",
            details={"position": position, "expected": expected, "source": source},
        )


class UnknownVariable(InputError):
    def __init__(self, name: str, position: Optional[int] = None):
        self.name = name
        super().__init__(f"Unknown variable: {name}", details={"name": name, "position": position})


class MalformedDocument(InputError):
    pass


class InvalidField(InputError):
    def __init__(self, field: str, reason: str):
        super().__init__(f"Invalid field '{field}': {reason}", details={"field": field, "reason": reason})


class ClosureUnsupported(InputError):
    pass


class ArityMismatch(InputError):
    def __init__(self, left: int, right: int):
        super().__init__(
            f"Polynomials live in rings of different arity or characteristic ({left} vs {right})",
            details={"left": left, "right": right},
        )


class ZeroPolynomial(InputError):
    def __init__(self, operation: str = "leading_term"):
        super().__init__(f"{operation} is undefined for the zero polynomial", details={"operation": operation})


class NotMonomial(InputError):
    pass


class ZeroDivisorGenerator(InputError):
    """Raised when a colon is taken by an ideal with a zero generator"""
    pass


class ZeroDimensionalRing(InputError):
    pass


class NotMPrimary(InputError):
    pass


class WrongDimension(InputError):
    def __init__(self, expected: int, actual: int, operation: str):
        super().__init__(
            f"{operation} requires dim R = {expected}, got {actual}",
            details={"expected": expected, "actual": actual, "operation": operation},
        )


class NotNested(InputError):
    pass


class RangeExceeded(InputError):
    def __init__(self, n: int, bound: int):
        super().__init__(f"n = {n} lies outside the tabulated range [1, {bound}]", details={"n": n, "bound": bound})


# ---------------------------------------------------------------------------
# Mathematical errors
# ---------------------------------------------------------------------------

class ResourceCap(MathematicalError):
    pass


class NoStabilization(MathematicalError):
    pass


class NotAdmissibleUpTo(MathematicalError):
    def __init__(self, n: int):
        self.n = n
        super().__init__(f"Lower containment I^n ⊆ I_n fails at n = {n}", details={"n": n})


class RegularityFails(MathematicalError):
    def __init__(self, n: int, witness: str):
        self.n = n
        self.witness = witness
        super().__init__(
            f"(I_n : x) ≠ I_(n-1) at n = {n}; witness generator {witness}",
            details={"n": n, "witness": witness},
        )


class NoReductionFound(MathematicalError):
    pass


class NotAReduction(MathematicalError):
    pass


class NotRegularSequence(MathematicalError):
    pass


class HomologyRouteUnavailable(MathematicalError):
    pass


class InconsistentReport(MathematicalError):
    pass
