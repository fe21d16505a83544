"""qmaplab: a numerical stress lab for reduced Bloch-vector maps of one qubit
in an interacting qubit pair.

The package carries the exact two-qubit dynamics in two mutually checking
forms, the family of reduced affine maps with their positivity and
compatibility domains, a conjunction engine that reuses one frozen map across
consecutive time steps and reports the unphysical states this produces, a
slipped-initial-condition analysis, and an independent feasibility oracle
that certifies domain membership with explicit witness states.
"""
from .conjunction import (
    ConjunctionSchedule,
    EdgeState,
    HazardReport,
    brute_force_max,
    conjunct,
    first_unphysical_n,
    greedy_extremal_growth,
    hazard_slope_at_join,
    sigma2_conjunction,
)
from .dynamics import MeanValueState, crosscheck, evolve_density, evolve_mean_values, unitary
from .feasibility import (
    CrossValidationReport,
    CrossValidationSpec,
    ExtensionSearchConfig,
    cross_validate,
    feasibility_search,
    is_compatible_oracle,
)
from .pauli import (
    DEFAULT_TOL,
    PhysicalityVerdict,
    TwoQubitState,
    density_from_params,
    embed_mean_values,
    is_physical,
    kron,
    min_eigenvalue,
    params_from_density,
    partial_trace_env,
    pauli,
)
from .reduced import (
    DomainVerdict,
    ReducedMap,
    compat_slice_check,
    in_compatibility_domain,
    in_positivity_domain,
    sup_norm_grid,
    sup_norm_over_time,
)
from .slippage import SlippagePolicy, max_safe_repetitions, slip_state, slipped_domain_check

__all__ = [
    "DEFAULT_TOL",
    "ConjunctionSchedule",
    "CrossValidationReport",
    "CrossValidationSpec",
    "DomainVerdict",
    "EdgeState",
    "ExtensionSearchConfig",
    "HazardReport",
    "MeanValueState",
    "PhysicalityVerdict",
    "ReducedMap",
    "SlippagePolicy",
    "TwoQubitState",
    "brute_force_max",
    "compat_slice_check",
    "conjunct",
    "cross_validate",
    "crosscheck",
    "density_from_params",
    "embed_mean_values",
    "evolve_density",
    "evolve_mean_values",
    "feasibility_search",
    "first_unphysical_n",
    "greedy_extremal_growth",
    "hazard_slope_at_join",
    "in_compatibility_domain",
    "in_positivity_domain",
    "is_compatible_oracle",
    "is_physical",
    "kron",
    "max_safe_repetitions",
    "min_eigenvalue",
    "params_from_density",
    "partial_trace_env",
    "pauli",
    "sigma2_conjunction",
    "slip_state",
    "slipped_domain_check",
    "sup_norm_grid",
    "sup_norm_over_time",
    "unitary",
]
__version__ = "0.1.0"
