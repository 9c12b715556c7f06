"""Exception types. Each carries a short machine-readable ``code`` used by the CLI."""


class BuildcoverError(Exception):
    code = "error"


class InvalidArgument(BuildcoverError, ValueError):
    code = "invalid-argument"


class InvalidInput(InvalidArgument):
    """Malformed or inconsistent input document."""

    code = "invalid-input"


class InvalidFolding(InvalidArgument):
    code = "invalid-folding"


class BudgetExceeded(BuildcoverError, RuntimeError):
    code = "budget-exhausted"


class GroupTooLarge(BuildcoverError, RuntimeError):
    code = "group-too-large"


class NotABuilding(BuildcoverError, ValueError):
    """A building failed verification where a verified one was required."""

    code = "not-a-building"
