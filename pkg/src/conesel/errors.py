"""Exception types shared across the package."""


class DimensionError(ValueError):
    """Inconsistent array shapes."""


class NonFiniteError(ValueError):
    """NaN or inf where a finite number is required."""


class InfeasibleError(RuntimeError):
    """The requested polyhedron is empty."""


class InfeasibleInput(ValueError):
    """An operation that needs a feasible constraint set received an infeasible one."""


class HardInfeasibleError(RuntimeError):
    """The hard constraints alone are infeasible (modeling bug upstream)."""


class SamplingExhausted(RuntimeError):
    """Rejection sampling hit its attempt cap."""


class SelectorContractError(RuntimeError):
    """A selector returned an infeasible configuration or cleared a hard bit."""
