"""hardylab: numerical verification of weighted L1 Hardy inequalities
with distance-to-boundary weights, on a catalogue of analytic domains.

All radial quantities use normalized units: the unit-sphere area constant
is set to 1 (it cancels in every quotient), and strip integrals are per
unit transverse area/mass.
"""

from .constants import (
    CheegerEstimate,
    PredictedConstant,
    StudyReport,
    b1_bounds,
    cheeger_estimate,
    convergence_study,
    interpolation_constant,
    interpolation_endpoints_check,
    predicted_constant,
)
from .errors import (
    DivergentIntegralError,
    DomainSpecError,
    HardylabError,
    HypothesisViolationError,
    NonconvergenceError,
    ProfileSupportError,
    RidgeError,
    SingularityError,
    ZeroDenominatorError,
)
from .functionals import (
    EvaluationReport,
    Kernel,
    div_T_residual,
    gradient_quotient,
    inequality_gap,
    inequality_gap_report,
    lp_ratio,
    lp_ratio_closed_form,
    meanlap_ratio,
    quotient_Qbeta,
    quotient_Qgamma,
    quotient_Qgamma_general,
    ratio_plain,
    remainder_ratio_Im,
    x_chain_rule_residual,
    x_log,
)
from .geometry import (
    CurvatureSummary,
    Domain,
    DomainSpec,
    RadialReduction,
    annulus,
    ball,
    catalogue,
    convexity_defect,
    make_domain,
    punctured_ball,
    punctured_space,
    scalar_triangle_slack,
    strip,
)
from .profiles import (
    ProductProfile,
    TestProfile,
    annulus_indicator,
    ball_shell_indicator,
    cheeger_concentric,
    power_profile,
    radial_bump,
    strip_slab_profile,
)
from .quadrature import (
    QuadResult,
    integrate,
    integrate_log_weighted,
    integrate_power_endpoint,
    log_weight_integral,
    power_binomial_integral,
    power_integral,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
