"""Exception taxonomy shared across the package.

Exit-code mapping used by the CLI: InvalidArgumentError -> 2,
ResourceLimitError -> 3, PrecisionError -> 4.
"""


class InvalidArgumentError(ValueError):
    """Malformed or out-of-contract input (bad partition string, n=0, ...)."""


class ResourceLimitError(RuntimeError):
    """A configured cap was exceeded (bond dimension, oracle size, memory guard)."""


class NumericalError(RuntimeError):
    """A dense linear-algebra primitive failed (e.g. SVD non-convergence)."""


class PrecisionError(RuntimeError):
    """Integer rounding or the norm certificate cannot be trusted."""


class InternalError(AssertionError):
    """An invariant that valid inputs cannot violate was violated anyway."""


class EngineInconsistencyError(RuntimeError):
    """A character engine produced values violating an exact identity."""
