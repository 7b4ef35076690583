"""Calculus and optimization with compact-interval-valued functions.

Three layers:

* :mod:`ivopt.intervals` — interval arithmetic (including the generalized
  Hukuhara difference), the endpointwise dominance order, and linear
  (in)dependence of interval systems;
* :mod:`ivopt.calculus` / :mod:`ivopt.optimality` — sampled-schedule
  estimation of directional, Gateaux, Hadamard and Frechet derivatives of
  interval-valued functions, plus efficiency / Fritz John / KKT certificates
  for interval optimization problems;
* :mod:`ivopt.svm` — an exact hard-margin SVM for interval-valued samples.

Everything is deterministic given a :class:`~ivopt.config.Config` (one seed
drives all sampling), and :mod:`ivopt.gallery` carries runnable worked
examples with frozen expectations.
"""

from .config import Config, DEFAULT_CONFIG
from .exceptions import (
    DimensionError,
    DivisionByIntervalContainingZero,
    DomainError,
    EmptyBiasSet,
    InfeasiblePoint,
    InvalidIVF,
    IvoptError,
    LinearIndependenceViolated,
    NotComparableError,
    NotComparableFamily,
    NotLinearCandidate,
    NotSeparable,
    ParseError,
    PreconditionFailed,
    ScaleExceeded,
    SlacknessViolated,
    UnknownCaseId,
    ZeroDirection,
)
from .intervals import (
    DominanceKind,
    DominanceVerdict,
    Interval,
    IntervalVector,
    LinearIndependenceResult,
    ONE,
    ZERO,
    add,
    better_strictly_dominates,
    combination_value,
    compare,
    contains_zero,
    distance,
    div,
    dominates,
    gh_difference,
    interval_eq,
    linearly_independent,
    max_comparable,
    moore_sub,
    mul,
    neg,
    norm,
    not_strictly_comparable,
    scalar_mul,
    strictly_dominates,
    zero_containment_residual,
)
from .calculus import (
    AdversarialSchedule,
    Box,
    ChainRuleReport,
    ContinuityReport,
    ContinuityVerdict,
    ConvexityReport,
    ConvexityVerdict,
    DerivativeEstimate,
    DerivativeKind,
    DerivativeQuery,
    DiffVerdict,
    DifferentiabilityReport,
    Existence,
    FrechetReport,
    IVF,
    LinearMapSample,
    LinearityReport,
    LinearityVerdict,
    MaxFamilyReport,
    PathReport,
    ScheduleTrace,
    chain_rule,
    convexity_inequality,
    directional_derivative,
    estimate_derivative,
    frechet_check,
    gateaux_derivative,
    gateaux_differentiable_at,
    hadamard_derivative,
    hadamard_differentiable_at,
    is_convex_on,
    is_gh_continuous_at,
    is_linear_ivf,
    max_family_derivative,
    path_derivative_check,
    pointwise_max,
    sample_linear_map,
)
from .optimality import (
    CertificateReport,
    EfficiencyReport,
    FeasibleRegion,
    IOPInstance,
    RegionKind,
    SufficientReport,
    active_set,
    descent_cone_member,
    descent_feasible_intersection,
    feasible_cone_member,
    fritz_john_check,
    is_efficient,
    kkt_necessary_check,
    kkt_sufficient_check,
    sample_directions,
)
from .svm import (
    SVMDataset,
    SVMSolution,
    bias_set,
    classify,
    constraint_eval,
    dot_interval,
    kkt_verify,
    train,
    worst_margin,
)
from . import fileformats, gallery

__version__ = "0.1.0"
