"""Exception hierarchy shared by all crossfam modules.

The CLI maps these onto exit codes: bad input / bad usage -> 2,
verification failure -> 1, budget overrun -> 3.
"""


class CrossfamError(Exception):
    """Base class for all crossfam errors."""


class ParameterError(CrossfamError, ValueError):
    """Invalid argument or unmet operation precondition."""


class FamilyFormatError(CrossfamError, ValueError):
    """Malformed family text (parse or validation failure).

    ``line`` is the 1-based line number, or None when the problem is not
    tied to a single line.
    """

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class BudgetExceededError(CrossfamError):
    """Requested computation exceeds the enumeration budget."""


class HypothesisNotMet(CrossfamError):
    """A check's hypothesis does not apply to the given instance.

    Deliberately distinct from a False result so sweeps can never
    silently conflate "inapplicable" with "violated".
    """


class VerificationError(CrossfamError):
    """Base class for hard failures: a machine-checked claim broke."""


class BoundViolationError(VerificationError):
    """An exact search exceeded a proven bound (implementation bug)."""


class UniquenessViolationError(VerificationError):
    """A conflict pair had a non-unique disjoint partner (implementation bug)."""


class IdentityViolationError(VerificationError):
    """A bookkeeping identity failed to hold exactly (implementation bug)."""
