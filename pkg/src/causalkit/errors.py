"""Exception hierarchy.

Three families map onto the CLI exit codes: configuration problems (2),
data problems (3) and numerical failures (4).
"""


class CausalKitError(Exception):
    """Base class for every error raised by the package."""

    exit_code = 1


class ConfigError(CausalKitError, ValueError):
    exit_code = 2


class DataError(CausalKitError, ValueError):
    exit_code = 3


class NumericalError(CausalKitError, ArithmeticError):
    exit_code = 4


# -- panel -----------------------------------------------------------------

class EmptyFile(DataError):
    pass


class ParseError(DataError):
    def __init__(self, row, column, value=None):
        self.row = row
        self.column = column
        self.value = value
        super().__init__(f"row {row}, column {column!r}: cannot parse {value!r} as a number")


class DuplicateColumnName(DataError):
    pass


class NonPositiveValue(DataError):
    def __init__(self, column, row):
        self.column = column
        self.row = row
        super().__init__(f"column {column!r} has a non-positive value at row {row}")


class LengthTooShort(DataError):
    pass


class OutOfRange(DataError):
    pass


# -- embedding -------------------------------------------------------------

class UnknownColumn(DataError, KeyError):
    def __str__(self):
        return Exception.__str__(self)


class InsufficientLength(DataError):
    pass


class EmptyVariantGroup(ConfigError):
    pass


class ShiftTooLarge(DataError):
    pass


# -- kernels / regression ----------------------------------------------------

class DimensionMismatch(DataError):
    pass


class AlreadyCentered(ConfigError):
    pass


class AllPointsIdentical(DataError):
    pass


class SolveFailure(NumericalError):
    pass


class DegenerateVariance(NumericalError):
    pass


# -- information theory ------------------------------------------------------

class ExplicitRangeExcludesSample(DataError):
    pass


class LengthMismatch(DataError):
    pass


class LagTooLarge(DataError):
    pass


# -- significance / model selection / generators ---------------------------

class WindowTooLong(DataError):
    pass


class TooFewRows(DataError):
    pass


class NotPositiveDefinite(ConfigError):
    pass
