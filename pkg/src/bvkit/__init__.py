"""bvkit: exact generalized variations of step functions on [0,1] and the
compactness machinery built on them (interval-induced seminorms, equivariation
certificates, separated-sequence witnesses, Kolmogorov-Riesz / uniform-
integrability diagnostics).

Hot kernels run through numba by default; set BVKIT_NUMBA=0 for the pure
numpy fallback.
"""

from ._kernels import current_backend, use_backend
from .equivar import (
    CompactnessReport,
    EquivariationCertificate,
    Family,
    VariationKind,
    best_subsequence_seminorm,
    build_certificate,
    certificate_from_json,
    certificate_to_json,
    check_certificate,
    compactness_report,
    kind_from_json,
    kind_to_json,
    kolmogorov_riesz_scan,
    plain_equivariation_check,
    seminorm_for_kind,
    separated_witness_search,
    uniform_lq_integrability,
    variation_for_kind,
    variation_with_witness,
)
from .ibv import (
    CutConfig,
    build_cuts,
    ivar,
    ivar_absolute_continuity_profile,
    ivar_norm,
    l1_embedding_bound,
    sigma_pq,
)
from .lqmod import (
    ShiftProfile,
    omega_q,
    omega_q_shift_truncation_gap,
    omega_q_subadditivity_gap,
    shift_profile,
    translation_integral,
)
from .oracle import OracleBudget, bf_ivar, bf_jordan, bf_lambda, bf_omega_q, bf_phi
from .stepfun import (
    Interval,
    IntervalCollection,
    StepFunction,
    TraceSequence,
    UNIT,
    add,
    constant,
    eval_at,
    lq_norm,
    make_step_function,
    restrict,
    scale,
    spike,
    step_from_json,
    step_to_json,
    subtract,
    trace_positions,
    trace_sequence,
    two_point_pair,
    two_value,
)
from .waterman import (
    LambdaBudget,
    VariationCertificate,
    WatermanSequence,
    jordan_variation,
    lambda_norm,
    lambda_term,
    lambda_variation,
    sequence_from_json,
    sequence_to_json,
    sigma_lambda_best_order,
    sigma_lambda_ordered,
)
from .young import (
    PhiFunction,
    phi_eval,
    phi_from_json,
    phi_norm,
    phi_to_json,
    phi_variation,
    s_phi,
    sigma_phi,
    v_phi,
)

__version__ = "0.1.0"
