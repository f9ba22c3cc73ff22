"""Online selection of feasible constraint subsets via nullspace feasibility tests."""
from .constraints import Configuration, ConstraintSet, NullspaceBasis, mask, nullspace_basis
from .errors import (DimensionError, HardInfeasibleError, InfeasibleError, InfeasibleInput,
                     NonFiniteError, SamplingExhausted, SelectorContractError)
from .feasibility import (FeasibilityCertificate, PolarConeReport, farkas_feasible, fc,
                          multiplier_lp, polar_components, simplicial_bounds)
from .lp import LpProblem, LpSolution, LpStatus, solve_lp
from .qp import solve_min_norm_qp
from .selection import ica, init_config, lcs

__all__ = [
    "Configuration", "ConstraintSet", "NullspaceBasis", "mask", "nullspace_basis",
    "DimensionError", "HardInfeasibleError", "InfeasibleError", "InfeasibleInput",
    "NonFiniteError", "SamplingExhausted", "SelectorContractError",
    "FeasibilityCertificate", "PolarConeReport", "farkas_feasible", "fc", "multiplier_lp",
    "polar_components", "simplicial_bounds",
    "LpProblem", "LpSolution", "LpStatus", "solve_lp", "solve_min_norm_qp",
    "ica", "init_config", "lcs",
]
