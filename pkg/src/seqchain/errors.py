"""Exception types raised across the package."""


class SeqchainError(Exception):
    """Base class for all errors raised by this package."""


class BudgetExceeded(SeqchainError):
    """A search or refinement loop hit its configured work bound."""


class FiniteSupportSet(SeqchainError):
    """An operation requiring an infinite index set received a finite one."""


class LengthMismatch(SeqchainError):
    """Coefficient and sequence lists have different lengths."""


class MissingTailOracle(SeqchainError):
    """A certified upper bound was requested but the sequence carries no
    tail metadata for the metric or exponent in question."""


class TopOfChain(SeqchainError):
    """No gap sequence exists above the last member of the chain."""


class NotStrictPair(SeqchainError):
    """The two spaces are not in strict chain order."""


class UnsupportedSpace(SeqchainError):
    """The requested space has no closed-family decomposition."""


class UnsupportedOuter(SeqchainError):
    """The dense-family construction excludes this outer space."""


class AllZeroCoefficients(SeqchainError):
    """Every coefficient in the combination is exactly zero."""


class AllCoefficientsPossiblyZero(SeqchainError):
    """No recovered coefficient interval excludes zero at this precision."""


class NoNonzeroSupportPoint(SeqchainError):
    """No support point with a provably nonzero value was found in budget."""


class ParseError(SeqchainError):
    """Malformed sequence/support spec or rational literal."""

    def __init__(self, message, position=None):
        super().__init__(message if position is None else f"{message} (at {position})")
        self.position = position


class UnknownSpace(SeqchainError):
    """Space identifier not in the chain grammar."""
