"""Exception types raised across the package.

Each exception carries a short ``kind`` string that the CLI copies into its
machine-readable error object.
"""


class WeakPathError(Exception):
    kind = "error"


class ConstructionError(WeakPathError, ValueError):
    kind = "construction error"


class ArgumentError(WeakPathError, ValueError):
    kind = "argument error"


class DegeneratePostSelection(WeakPathError, ArithmeticError):
    """Post-selected and pre-selected states are (numerically) orthogonal."""

    kind = "degenerate post-selection"


class PostSelectionFailure(DegeneratePostSelection):
    """The post-selection succeeds with vanishing probability."""

    kind = "total post-selection failure"


class UndefinedRatio(WeakPathError, ArithmeticError):
    kind = "undefined ratio"


class DegenerateAngle(WeakPathError, ArithmeticError):
    kind = "degenerate angle"


class NonInvertibleCoupling(WeakPathError, ArithmeticError):
    kind = "non-invertible coupling"
