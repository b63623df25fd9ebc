"""Exception hierarchy.

Three families matter to callers (and to the CLI exit codes): bad input,
exhausted budget/precision, and violated internal invariants.
"""


class QcfError(Exception):
    """Base class for all library errors."""


class InputError(QcfError):
    """Caller passed something structurally invalid."""


class ResourceError(QcfError):
    """A configured budget or working precision was exhausted."""


class InvariantError(QcfError):
    """An internal consistency check failed; indicates a bug."""


# -- input errors -------------------------------------------------------------

class InvalidRadicand(InputError):
    pass


class ZeroDenominator(InputError):
    pass


class OutOfRange(InputError):
    pass


class InvalidPattern(InputError):
    pass


class InvalidField(InputError):
    pass


class NotCompactType(InputError):
    pass


class InvalidRadius(InputError):
    pass


class NoNegativePell(InputError):
    pass


class OutOfDomain(InputError):
    pass


class InsufficientData(InputError):
    pass


# -- budget / precision errors -------------------------------------------------

class PeriodTooLong(ResourceError):
    pass


class PrecisionError(ResourceError):
    pass


class OrderBudgetExceeded(ResourceError):
    pass
