"""Exception hierarchy shared by the library and the CLI exit-code mapping."""


class GapIndexError(Exception):
    """Base class for all library errors."""


class FormatError(GapIndexError):
    """Malformed input text, query line, or container file (CLI exit 2)."""


class GuardError(GapIndexError):
    """Universe/overflow guard tripped (CLI exit 3)."""


class BudgetError(GuardError):
    """A build would exceed the configured memory budget (CLI exit 3)."""


class VerificationError(GapIndexError):
    """Oracle verification found a counterexample (CLI exit 4)."""
