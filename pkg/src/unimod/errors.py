"""Exception hierarchy.

Verdict-style failures (a row that is not unimodular, a relation that does not
map to zero) are exceptions carrying the offending data; boolean verifiers
return ``False`` instead of raising.
"""


class UnimodError(Exception):
    """Base class for every error raised by this package."""


class VariableMismatch(UnimodError, ValueError):
    pass


class ParseError(UnimodError, ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at offset {position}")
        self.position = position


class ZeroRingError(UnimodError):
    """The presented ideal contains 1."""


class RingMismatch(UnimodError, ValueError):
    pass


class IllDefinedHom(UnimodError):
    def __init__(self, relation, image):
        super().__init__(f"relation {relation} maps to {image}, not 0")
        self.relation = relation
        self.image = image


class CompositionError(UnimodError, ValueError):
    pass


class NotUnimodular(UnimodError):
    pass


class DimensionError(UnimodError, ValueError):
    pass


class CertificateError(UnimodError):
    pass


class NotExpressible(UnimodError):
    pass


class DegenerateTransition(UnimodError):
    pass


class NotAUnit(UnimodError):
    pass


class CodimensionError(UnimodError, ValueError):
    pass


class ValuationError(UnimodError):
    pass


class InvariantViolation(UnimodError):
    """An internally constructed object failed its own postcondition."""


class UnknownScenario(UnimodError, KeyError):
    pass


class SchemaVersionError(UnimodError):
    pass
