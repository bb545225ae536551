"""Fractional calculus and linear viscoelasticity toolkit.

Spring-pot, fractional Voigt, Maxwell and Zener constitutive models; the
physically meaningful Riemann-Liouville initial conditions they induce
(non-zero exactly for impulse loads); Grunwald-Letnikov quadrature and
exact power-law rules; Mittag-Leffler evaluation; two independent
fractional-ODE solvers; and the twin-history measurement procedure that
recovers initial conditions from recordings.
"""

from .errors import (
    AccuracyLossError,
    DimensionMismatchError,
    FracRheoError,
    InvalidArgumentError,
    InvalidProblemError,
    SingularityError,
    UnrealizableLoadError,
    UnsupportedForcingError,
    UnsupportedOrderError,
    UnsupportedPairingError,
    UnsupportedSamplingError,
)
from .fracops import PowerTerm, caputo_deriv, gl_deriv, gl_weights, power_law_deriv
from .grids import (
    LoadingProgram,
    Signal,
    SingularSignal,
    TimeGrid,
    make_grid,
    read_signal_csv,
    sample_program,
    write_signal_csv,
)
from .ic_estimate import (
    ExtrapolationResult,
    TwinHistory,
    box_impulse,
    estimate_at,
    extrapolate,
)
from .mittag_leffler import MLParams, ml, ml_values
from .models import (
    MaxwellParams,
    ModelParams,
    SpringPotParams,
    VoigtParams,
    ZenerParams,
    analytic_response,
    build_problem,
    dirac_content,
    initial_condition,
    initial_value,
)
from .solver import (
    ConvergenceRow,
    FDEProblem,
    Forcing,
    InitialCondition,
    convergence_study,
    ic_limit,
    solve_gl,
    solve_green,
)

__version__ = "0.1.0"

__all__ = [
    "AccuracyLossError",
    "ConvergenceRow",
    "DimensionMismatchError",
    "ExtrapolationResult",
    "FDEProblem",
    "Forcing",
    "FracRheoError",
    "InitialCondition",
    "InvalidArgumentError",
    "InvalidProblemError",
    "LoadingProgram",
    "MLParams",
    "MaxwellParams",
    "ModelParams",
    "PowerTerm",
    "Signal",
    "SingularSignal",
    "SingularityError",
    "SpringPotParams",
    "TimeGrid",
    "TwinHistory",
    "UnrealizableLoadError",
    "UnsupportedForcingError",
    "UnsupportedOrderError",
    "UnsupportedPairingError",
    "UnsupportedSamplingError",
    "VoigtParams",
    "ZenerParams",
    "analytic_response",
    "box_impulse",
    "build_problem",
    "caputo_deriv",
    "convergence_study",
    "dirac_content",
    "estimate_at",
    "extrapolate",
    "gl_deriv",
    "gl_weights",
    "ic_limit",
    "initial_condition",
    "initial_value",
    "make_grid",
    "ml",
    "ml_values",
    "power_law_deriv",
    "read_signal_csv",
    "sample_program",
    "solve_gl",
    "solve_green",
    "write_signal_csv",
]
