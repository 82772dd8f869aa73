"""Sharp bounds on distortion risk measures over Wasserstein balls with fixed moments."""

__version__ = "0.1.0"

from .errors import (  # noqa: F401
    AssumptionViolation,
    DegenerateDistributionError,
    DomainError,
    GridMismatchError,
    InfeasibleBallError,
    NumericError,
    RobustDRMError,
    UnsupportedMeasureError,
    UsageError,
)
from .quantile import (  # noqa: F401
    DiscreteQuantile,
    MomentSpec,
    ParametricReference,
    correlation,
    discretize,
    feasibility_floor,
    moments,
    read_quantile_csv,
    wasserstein,
)
from .distortions import (  # noqa: F401
    RiskMeasureSpec,
    WeightFunction,
    build_weight,
    choquet_value,
    parse_measure,
    weight_statistics,
)
from .isotonic import ProjectionResult, lambda_path, project_nondecreasing, project_nonincreasing  # noqa: F401
from .bounds import (  # noqa: F401
    BoundReport,
    BreakpointProjection,
    UncertaintyBall,
    bound,
    concave_worst,
    frontier,
    general_best,
    general_worst,
    rvar_best,
    rvar_worst,
    tvar_worst,
    var_bounds,
)
from .extensions import (  # noqa: F401
    MomentRegion,
    PortfolioProblem,
    portfolio_objective,
    portfolio_optimize,
    wasserstein_only_worst,
    worst_with_moment_region,
)
from .case_study import fit_alternative_model, insurance_case_study  # noqa: F401
