"""Steady-state entanglement of levitated nanoparticle arrays.

Simulates three nanoparticles coupled to three cavity modes by coherent
scattering, computes the Gaussian steady state of the linearized
dynamics, classifies dyadic and triadic entanglement of the mechanical
modes, and optimizes the coupling rates of cyclic Bogoliubov collective
modes to map out entanglement landscapes.
"""

from .analysis import (
    EntanglementReport,
    FiguresOfMerit,
    all_quadrature_variances,
    analyze_mechanical_state,
    collective_mode_occupations,
    dyadic_negativities,
    figures_of_merit,
    mechanical_block,
    quadrature_catalog,
    shared_pair,
    squeezing_scan,
    steady_state,
    triadic_negativities,
)
from .errors import (
    AllUnstableError,
    ConfigError,
    LevarrayError,
    NotNormalizedError,
    NotStableError,
    NumericalFailureError,
    ShapeMismatchError,
    SolveFailureError,
    UnsortedInputError,
    ZeroVectorError,
)
from .gaussian import (
    log_negativity,
    lyapunov_solve,
    min_variance_quadrature,
    partial_transpose,
    quadrature_variance,
    reduce_state,
    symplectic_eigenvalues,
    symplectic_form,
    thermal_state,
    two_mode_squeezed_state,
    vacuum_state,
)
from .optimize import (
    OptimizationProblem,
    OptimizationResult,
    SweepGrid,
    SweepPoint,
    brute_force_verify,
    cyclic_align,
    evaluate,
    mechanical_steady_state,
    optimize_couplings,
    sweep_lambda,
    sweep_point,
    two_particle_bogoliubov_scenario,
)
from .system import (
    BogoliubovSpec,
    CouplingMatrix,
    StabilityReport,
    SystemParams,
    assemble_diffusion,
    assemble_drift,
    bogoliubov_commutators,
    cooperativity,
    couplings_from_bogoliubov,
    effective_coupling,
    nonorthogonal_cooling_bound,
    stability_check,
)

__version__ = "0.1.0"

__all__ = [
    "AllUnstableError",
    "BogoliubovSpec",
    "ConfigError",
    "CouplingMatrix",
    "EntanglementReport",
    "FiguresOfMerit",
    "LevarrayError",
    "NotNormalizedError",
    "NotStableError",
    "NumericalFailureError",
    "OptimizationProblem",
    "OptimizationResult",
    "ShapeMismatchError",
    "SolveFailureError",
    "StabilityReport",
    "SweepGrid",
    "SweepPoint",
    "SystemParams",
    "UnsortedInputError",
    "ZeroVectorError",
    "all_quadrature_variances",
    "analyze_mechanical_state",
    "assemble_diffusion",
    "assemble_drift",
    "bogoliubov_commutators",
    "brute_force_verify",
    "collective_mode_occupations",
    "cooperativity",
    "couplings_from_bogoliubov",
    "cyclic_align",
    "dyadic_negativities",
    "effective_coupling",
    "evaluate",
    "figures_of_merit",
    "log_negativity",
    "lyapunov_solve",
    "mechanical_block",
    "mechanical_steady_state",
    "min_variance_quadrature",
    "nonorthogonal_cooling_bound",
    "optimize_couplings",
    "partial_transpose",
    "quadrature_catalog",
    "quadrature_variance",
    "reduce_state",
    "shared_pair",
    "squeezing_scan",
    "stability_check",
    "steady_state",
    "sweep_lambda",
    "sweep_point",
    "symplectic_eigenvalues",
    "symplectic_form",
    "thermal_state",
    "triadic_negativities",
    "two_mode_squeezed_state",
    "two_particle_bogoliubov_scenario",
    "vacuum_state",
]
