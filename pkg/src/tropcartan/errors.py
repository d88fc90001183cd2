"""Exception hierarchy shared across the package.

Every error carries a stable ``code`` string so the CLI and the HTTP
service can report failures uniformly.
"""

from __future__ import annotations


class TropicalError(Exception):
    code = "error"


class DivisionByBottom(TropicalError):
    code = "division-by-bottom"


class BottomPower(TropicalError):
    code = "bottom-power"


class DimensionMismatch(TropicalError):
    code = "dimension-mismatch"


class NotSquare(TropicalError):
    code = "not-square"


class PermutationEngineTooLarge(TropicalError):
    code = "permutation-engine-too-large"


class TooManyFunctions(TropicalError):
    code = "too-many-functions"


class NotEntire(TropicalError):
    code = "not-entire"

    def __init__(self, message: str = "function is not entire", index: int | None = None):
        super().__init__(message if index is None else f"{message} (index {index})")
        self.index = index


class CommonRoot(TropicalError):
    code = "common-root"

    def __init__(self, location):
        super().__init__(f"coordinates share a root at {location}")
        self.location = location


class CommonRoots(TropicalError):
    code = "common-roots"


class BadCoefficients(TropicalError):
    code = "bad-coefficients"


class EmptyColumn(TropicalError):
    code = "empty-column"

    def __init__(self, column: int):
        super().__init__(f"coefficient column {column} has no finite entry")
        self.column = column


class NotInSpan(TropicalError):
    code = "not-in-span"

    def __init__(self, message: str = "function is not in the span", index: int | None = None):
        super().__init__(message if index is None else f"{message} (member {index})")
        self.index = index


class InsufficientSamples(TropicalError):
    code = "insufficient-samples"


class ConditionViolated(TropicalError):
    code = "condition-violated"

    def __init__(self, value, bound):
        super().__init__(f"target value {value} is not below the pole infimum {bound}")
        self.value = value
        self.bound = bound


class ConstantFunction(TropicalError):
    code = "constant-function"


class DependentBasis(TropicalError):
    code = "dependent-basis"


class ParseError(TropicalError):
    code = "parse-error"

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class NonLinearTerm(ParseError):
    code = "non-linear-term"
