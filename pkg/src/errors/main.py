from typing import Any, Optional, Tuple


class CanonSymmetryError(Exception):
    """Base class for every error raised by the toolkit."""


# ---------------- Expressions ----------------

class ExpressionError(CanonSymmetryError):
    pass


class ParseError(ExpressionError):
    """
    Base class for diagnostics produced while reading expression text.

    Args:
        message: Human readable description
        offset: Byte offset into the original text
        origin: Input label (e.g. "candidates[0].expression")
    """

    def __init__(self, message: str, offset: int, origin: Optional[str] = None):
        self.offset = offset
        self.origin = origin
        where = f"{origin}@{offset}" if origin else f"offset {offset}"
        super().__init__(f"{message} ({where})")


class UnexpectedToken(ParseError):
    def __init__(self, token: str, offset: int, origin: Optional[str] = None):
        self.token = token
        super().__init__(f"Unexpected token '{token}'", offset, origin)


class UnexpectedEnd(ParseError):
    def __init__(self, offset: int, origin: Optional[str] = None):
        super().__init__("Unexpected end of input", offset, origin)


class UnknownIdentifier(ParseError):
    def __init__(self, name: str, offset: int, origin: Optional[str] = None):
        self.name = name
        super().__init__(f"Unknown identifier '{name}'", offset, origin)


class ArityMismatch(ParseError):
    def __init__(self, function: str, offset: int, origin: Optional[str] = None):
        self.function = function
        super().__init__(f"Function '{function}' takes exactly one argument", offset, origin)


class NonIntegerExponent(ParseError):
    def __init__(self, offset: int, origin: Optional[str] = None):
        super().__init__("Exponent must be an integer constant", offset, origin)


class ZeroDivisorInExponent(ParseError):
    def __init__(self, offset: int, origin: Optional[str] = None):
        super().__init__("Exponent divides by zero", offset, origin)


class DivisionByZeroConstant(ExpressionError):
    pass


class DomainError(ExpressionError):
    pass


class UnboundVariable(ExpressionError):
    def __init__(self, name: str):
        self.name = name
        super().__init__(f"Variable '{name}' has no value")


class ProbeDomainExhausted(ExpressionError):
    def __init__(self, wanted: int, attempts: int):
        self.wanted = wanted
        self.attempts = attempts
        super().__init__(f"Found fewer than {wanted} valid probe points after {attempts} attempts")


class NotPolynomialInMomenta(ExpressionError):
    def __init__(self, expression: str):
        self.expression = expression
        super().__init__(f"Expression is not polynomial in the momenta: {expression}")


# ---------------- Mechanics ----------------

class MechanicsError(CanonSymmetryError):
    pass


class JetVariablePresent(MechanicsError):
    def __init__(self, names: Tuple[str, ...]):
        self.names = names
        super().__init__(f"Jet variables not allowed here: {', '.join(names)}")


class NotContactField(MechanicsError):
    """
    The increments are not derivable from a single characteristic function.

    Args:
        kind: Which closedness condition failed ("xi_p", "pi_x" or "xi_x_pi_p")
        pair: Indices (i, j) of the violated mixed partials, 1-based
        residual: Rendered difference of the two partials
    """

    def __init__(self, kind: str, pair: Tuple[int, int], residual: str):
        self.kind = kind
        self.pair = pair
        self.residual = residual
        super().__init__(f"Field is not contact: condition {kind} fails for {pair} (difference {residual})")


class BasePointSingular(MechanicsError):
    pass


class NonIntegrableAlongPath(MechanicsError):
    pass


class NotInvariant(MechanicsError):
    def __init__(self, residual: str):
        self.residual = residual
        super().__init__(f"Residual depends on x or p, the field is not a symmetry: {residual}")


class NoClosedFormAntiderivative(MechanicsError):
    def __init__(self, residual: str):
        self.residual = residual
        super().__init__(f"No closed-form antiderivative in t for residual: {residual}")


class HNotKineticMinusPotential(MechanicsError):
    pass


class WNotLinearHomogeneous(MechanicsError):
    def __init__(self, report: Any):
        self.report = report
        super().__init__("Candidate is not linear and homogeneous in the momenta")


# ---------------- Discovery ----------------

class DiscoveryError(CanonSymmetryError):
    pass


class DegreeTooLarge(DiscoveryError):
    def __init__(self, size: int, cap: int):
        self.size = size
        self.cap = cap
        super().__init__(f"Ansatz basis would have {size} monomials, cap is {cap}")


class HNotPolynomial(DiscoveryError):
    pass


# ---------------- Numerics ----------------

class NumericalError(CanonSymmetryError):
    pass


class NotSeparable(NumericalError):
    pass


class NewtonDivergence(NumericalError):
    pass


# ---------------- Input ----------------

class ProblemFileError(CanonSymmetryError):
    pass
