"""hpfrac: Prabhakar-type fractional calculus toolkit.

Evaluation of the three-parameter Mittag-Leffler function, discrete
Prabhakar / Hilfer-Prabhakar operators, series solvers for fractional heat
and free-electron-laser equations, a generalized fractional Poisson process
(analytics and Monte Carlo), and a numerical Laplace-transform verification
layer.
"""

from .errors import (
    BranchError,
    ConfigError,
    ContourError,
    DomainError,
    HpfracError,
    NonConvergence,
    PoleError,
    TableError,
    TailError,
)
from .specfun import MLParams, SeriesEvaluation, gamma_fn, gamma_ratio_asymptotic, ml3, prabhakar_kernel
from .operators import (
    HPOperatorSpec,
    QuadratureConfig,
    SampledSignal,
    hilfer_prabhakar_derivative,
    laplace_symbol,
    prabhakar_derivative,
    prabhakar_integral,
    regularized_prabhakar_derivative,
)
from .laplace import ContourConfig, ConstraintMap, constraint_map, forward_lt, invert_lt
from .heat import FourierSolution, HeatProblem, solve_fourier, solve_physical, truncation_ratio
from .fel import FelProblem, FelSolution, Forcing, classical_fel, fel_residual, solve_fel, solve_fel_grid
from .gfpp import (
    GfppModel,
    PathSample,
    fractional_integral_mean,
    mean_count,
    pgf,
    pmf,
    pmf_lt,
    sample_paths,
    survival,
    validate,
    waiting_density,
    waiting_lt,
)

__version__ = "0.1.0"
