"""Numerical verification of critical mixed-norm inequalities for
multilinear forms on finite-dimensional l_p spaces.

Exact exponent arithmetic lives in critnorm.exponents, form containers and
mixed norms in critnorm.tensor, operator-norm estimation in critnorm.opnorm,
canonical test forms in critnorm.witnesses, and the reporting experiment
runner in critnorm.harness.
"""

from .exponents import (
    CONSTANT_CHOICES,
    ExponentVector,
    ExtRational,
    INF,
    InapplicableError,
    PowerOfTwo,
    VARIANTS,
    admissible_bilinear,
    as_ext,
    bilinear_admissibility,
    conjugate,
    criterion,
    critical_bilinear_admissible,
    critical_exponents,
    inclusion_exponents,
    inequality_constant,
    tail_sum,
    theorem_constant,
)
from .harness import (
    ExperimentConfig,
    ExperimentReport,
    GrowthFit,
    SLACK_ASCENT,
    SLACK_EXACT,
    fit_growth,
    run_base_hl,
    run_bilinear_law,
    run_inclusion_instance,
    run_sharpness,
    run_verify,
)
from .opnorm import (
    NormEstimate,
    ascent_norm,
    dual_argmax,
    operator_norm,
    spectral_norm,
    upper_bound_l1,
)
from .rng import child_rng, child_seed
from .tensor import (
    MultilinearForm,
    evaluate,
    from_dict,
    load_tensor,
    lp_norm,
    minkowski_gap,
    mixed_norm,
    save_tensor,
    to_dict,
    weak_norm,
)
from .witnesses import (
    FormFactory,
    make_dot,
    make_gaussian_random,
    make_partial_dot,
    make_sign_random,
    make_t0,
    parse_form_spec,
)

__version__ = "0.1.0"

__all__ = [
    "CONSTANT_CHOICES",
    "ExponentVector",
    "ExperimentConfig",
    "ExperimentReport",
    "ExtRational",
    "FormFactory",
    "GrowthFit",
    "INF",
    "InapplicableError",
    "MultilinearForm",
    "NormEstimate",
    "PowerOfTwo",
    "SLACK_ASCENT",
    "SLACK_EXACT",
    "VARIANTS",
    "admissible_bilinear",
    "as_ext",
    "ascent_norm",
    "bilinear_admissibility",
    "child_rng",
    "child_seed",
    "conjugate",
    "criterion",
    "critical_bilinear_admissible",
    "critical_exponents",
    "dual_argmax",
    "evaluate",
    "fit_growth",
    "from_dict",
    "inclusion_exponents",
    "inequality_constant",
    "load_tensor",
    "lp_norm",
    "make_dot",
    "make_gaussian_random",
    "make_partial_dot",
    "make_sign_random",
    "make_t0",
    "minkowski_gap",
    "mixed_norm",
    "operator_norm",
    "parse_form_spec",
    "run_base_hl",
    "run_bilinear_law",
    "run_inclusion_instance",
    "run_sharpness",
    "run_verify",
    "save_tensor",
    "spectral_norm",
    "tail_sum",
    "theorem_constant",
    "to_dict",
    "upper_bound_l1",
    "weak_norm",
    "__version__",
]
