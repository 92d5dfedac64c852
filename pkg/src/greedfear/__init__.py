"""Behavioral option pricing: prospect-theory transforms, Esscher Levy
pricers, greed-fear diffusion and binomial models, and implied-parameter
calibration.
"""

from .binomial import (
    GreedFearBinomialSpec,
    TreeConfigError,
    TreeNode,
    build_tree,
    hedge_ratio_node,
    node_greed_fear,
    price_binomial,
    price_closed_form_dividend,
)
from .calibration import (
    CalibrationResult,
    CalibrationSettings,
    OptionQuote,
    QuoteError,
    calibrate_generic,
    calibrate_sigma_dy,
    load_quotes,
    objective,
)
from .diffusion import (
    DerivedCoefficients,
    GreedFearDiffusionSpec,
    MonteCarloSettings,
    constant_diffusion_spec,
    derived_coefficients,
    hedge_ratios,
    price_call_closed_form,
    price_fk_monte_carlo,
)
from .distributions import (
    Cauchy,
    Distribution,
    DoublePareto,
    Gaussian,
    GenGamma,
    Gumbel,
    Laplace,
    Logistic,
    MomentSummary,
    NegGumbel,
    Uniform,
    Weibull,
    from_json,
    numeric_moments,
)
from .levy import (
    Call,
    Custom,
    EsscherSolution,
    EuropeanClaim,
    LevyMarket,
    LogisticLevy,
    ModelError,
    NegGumbelLevy,
    Put,
    esscher_pdf,
    levy_mgf,
    logistic_levy_cf,
    neggumbel_rn_location,
    price_call_logistic,
    price_ecc_logistic,
    price_ecc_neggumbel,
    solve_martingale_h,
)
from .numerics import (
    EULER_MASCHERONI,
    ZETA3,
    DomainError,
    NumericsError,
    QuadratureSettings,
    cf_to_pdf,
    cf_to_pdf_grid,
    erfc,
    erfc_inv,
    find_root,
    integrate,
    log_beta,
    log_gamma,
)
from .transforms import (
    ComposedValue,
    ComposedWeight,
    GoldsteinEinhorn,
    LogForm,
    Luce,
    ModifiedPrelec,
    PosteriorStats,
    Prelec,
    PrelecExpPower,
    PrelecHyperLog,
    TKValue,
    TKWeight,
    classify_disposition,
    eval_value_function,
    eval_wpf,
    fit_logform_to_tk,
    fosd_check,
    mpwpf_posterior,
    penalized_cdf,
    posterior_stats,
    specialize_wpf,
    value_function_from_cdfs,
    wpf_from_cdfs,
)

__version__ = "0.1.0"
