"""Solver and regime analyzer for the hard-core Blume-Capel model on the
wand constraint graph over Cayley trees of order k >= 2.

The package finds all translation-invariant boundary-law fixed points at a
given activity, computes the critical activity and the Kesten-Stigum /
contraction-certificate thresholds, and classifies each (k, theta) as
non-extremal, extremal, or undetermined.  An exact finite-volume enumeration
oracle independently validates the fixed-point machinery on small trees.
"""

from .model import (
    DEFAULT_RESIDUAL_TOL,
    SPINS,
    SPIN_INDEX,
    BoundaryLaw,
    InteractionGraph,
    ModelParams,
    is_admissible,
    wand_graph,
)
from .solver import (
    DegenerateDenominatorError,
    IterationFailureError,
    NearBifurcationWarning,
    QuarticDomainError,
    SolverError,
    TisgmSet,
    boundary_law,
    detect_bifurcation_onset,
    find_asymmetric,
    rhs_general,
    solve_ferrari_k3,
    solve_symmetric,
    symmetric_gain,
    theta_critical,
    tisgm_set,
)
from .chain import (
    ComplexSpectrumError,
    KsSweepReport,
    SpectralReport,
    TransitionMatrix,
    kesten_stigum_nonextremal,
    ks_all_theta_nonextremal,
    ks_gap,
    ks_threshold_pair,
    ks_thresholds_k3,
    spectrum,
    transition_matrix,
)
from .extremality import (
    ConditionalSpinDistribution,
    ExtremalityReport,
    conditional_distributions,
    extremality_certificate,
    extremality_thresholds_k3,
    gamma_bound,
    kappa,
    kappa_from_rows,
    msw_gap,
    msw_threshold_pair,
    pairwise_differences,
    pairwise_max_discrepancy,
)
from .oracle import (
    ENUMERATION_CAP,
    FiniteCayleyTree,
    FiniteVolumeMeasure,
    SizeCapError,
    admissible_count_formula,
    cayley_tree,
    check_consistency,
    enumerate_admissible,
    finite_volume_measure,
    hamiltonian,
    root_marginal,
)
from .rootfind import NoBracketError
from .scan import (
    CLASS_EXTREMAL_MSW,
    CLASS_NONEXTREMAL_KS,
    CLASS_UNDETERMINED,
    CSV_COLUMNS,
    ScanRow,
    classify,
    scan_row,
    scan_rows,
    theta_grid,
)

__version__ = "0.1.0"
