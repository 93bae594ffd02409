"""Exception hierarchy.

Everything raised on bad mathematical input derives from ``DomainError`` so
the CLI can map it to exit code 1.
"""


class DomainError(ValueError):
    pass


class DegenerateCurveError(DomainError):
    """Aa^2 + Bb^r = 0, or a singular model where a smooth one is required."""


class HypothesisError(DomainError):
    """A local hypothesis such as v_q(z) = 1 or v_q(s) >= (r+1)/2 fails."""


class UnsupportedCaseError(DomainError):
    pass


class InconsistentCountsError(DomainError):
    pass


class NotGL2ConsistentError(DomainError):
    """Frobenius data that does not factor over Z[phi]."""


class DataError(DomainError):
    pass


class ParseError(DataError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
