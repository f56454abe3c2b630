"""Exception types shared across the package."""


class MfhmrsError(Exception):
    """Base class for all package-specific errors."""


class NotInvertible(MfhmrsError):
    """Requested modular inverse does not exist (gcd != 1)."""


class ModuliNotCoprime(MfhmrsError):
    """CRT moduli share a common factor."""


class OutOfRange(MfhmrsError):
    """Argument outside the supported range of an exact oracle."""


class RandomnessFailure(MfhmrsError):
    """The injected entropy source failed or is unusable."""


class InvalidParams(MfhmrsError):
    """Parameter set violates one or more size constraints.

    Carries the full list of violated inequalities so callers can report
    every failure, not just the first.
    """

    def __init__(self, violations, report=None):
        self.violations = list(violations)
        self.report = report
        super().__init__("; ".join(self.violations) or "invalid parameters")


class MessageTooLarge(MfhmrsError):
    """Plaintext exceeds the fresh-message bound 2^l_m."""


class ConstantTooLarge(MfhmrsError):
    """Constant operand exceeds the bound assumed by the budget arithmetic."""


class ShareCountMismatch(MfhmrsError):
    """Ciphertext share count does not match the key (or peer ciphertext)."""


class BudgetExceeded(MfhmrsError):
    """A homomorphic operation would exceed the multiplication or addition budget."""

    def __init__(self, kind, message=None):
        self.kind = kind  # "multiplications" | "additions"
        super().__init__(message or f"{kind} budget exceeded")


class DegenerateBasis(MfhmrsError):
    """Lattice basis rows are linearly dependent."""


class SearchSpaceTooLarge(MfhmrsError):
    """Exhaustive search bounds exceed the toy-scale cap."""


class Infeasible(MfhmrsError):
    """No parameter assignment satisfies all constraints within the search limits."""


class FileFormatError(MfhmrsError):
    """Key or ciphertext file does not conform to the expected format."""


class CircuitSyntaxError(MfhmrsError):
    """Circuit expression failed to parse.

    ``column`` is the 1-based position of the offending character.
    """

    def __init__(self, message, column):
        self.column = column
        super().__init__(f"{message} (column {column})")
