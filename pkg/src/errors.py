"""
Exception hierarchy for the antilattice toolkit.

Predicates return booleans and never raise on well-formed input; the
errors below come from constructors, bounded oracles and operations
whose preconditions are not met.
"""


class AntilatticeError(Exception):
    """Base class for every error raised by this package."""


class ValidationError(AntilatticeError, ValueError):
    """Malformed input: bad table entries, sizes, symbols or settings."""


class ShapeError(ValidationError):
    """Ragged tables or carriers of mismatched size."""


class AlgebraFormatError(ValidationError):
    """An algebra / partition JSON document could not be read."""


class UnknownVarietyError(ValidationError):
    """A variety symbol outside the sixteen known ones."""

    def __init__(self, symbol: str, valid: list[str]):
        self.symbol = symbol
        self.valid = valid
        super().__init__(
            f"unknown variety symbol {symbol!r}; valid symbols: {', '.join(valid)}"
        )


class CapacityError(AntilatticeError):
    """A configured size bound would be exceeded."""


class ContractViolation(AntilatticeError):
    """An operation was called on input outside its precondition."""


class WellDefinednessError(ContractViolation):
    """Quotient by an equivalence that is not a congruence."""


class ConsistencyError(AntilatticeError, AssertionError):
    """An internal check backed by a theorem failed (indicates a bug)."""
