"""Szegedy quantization of finite Markov chains and the lazy line walk."""

from .errors import DomainError, ParseError
from .line import (
    SUPPORT_RADIUS,
    LightConeOverflow,
    LineInitialState,
    LinePositionDistribution,
    LineState,
    MomentumPoint,
    QuadratureFailure,
    SingularK,
    WeakLimitDensity,
    cdf,
    cdf_grid,
    density,
    density_coefficients,
    density_moment,
    eigen_line,
    empirical_rescaled_cdf,
    group_velocity,
    kolmogorov_distance,
    max_group_speed,
    moment,
    simulate,
    step,
    u_of_k,
)
from .linalg import NoConvergence, NotSymmetric, SymmetricSpectrum, symmetric_eig, unitarity_defect
from .markov import (
    ChainProfile,
    NonUniqueStationary,
    TransitionMatrix,
    ZeroOutDegree,
    classify,
    from_adjacency,
    parse_edge_file,
    parse_matrix_file,
    stationary_distribution,
)
from .szegedy import (
    DegenerateNormalization,
    EdgeState,
    IdentityCheck,
    LemmaReport,
    PreconditionViolation,
    QuantizedWalk,
    SpectralBasis,
    StateOutsideInvariantSubspace,
    cesaro_average,
    evolve,
    limiting_distribution,
    position_distribution,
    quantize,
    spectral_basis,
    uniform_initial_state,
    verify_lemma_identities,
)
from .tolerances import TOL, Tolerances

__version__ = "0.1.0"
