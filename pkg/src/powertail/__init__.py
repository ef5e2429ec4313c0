"""Calculus of generalized power series for heavy-tailed probability laws.

The package revolves around three layers:

* exponent semigroups and series (``semigroup``, ``series``): sparse
  complex series whose exponents live in a finitely generated additive
  semigroup, with products, reciprocals, binomial powers, composition
  and reversion of reciprocal-resolvent forms;
* transform calculus (``transforms``, ``pareto``): moment, Fourier,
  resolvent, reciprocal-resolvent and subordination representations of
  one law, conversions between them, tail-density models, and the four
  convolutions (classical, free, boolean, monotone);
* law constructors and diagnostics (``stable``, ``diophantine``,
  ``oracles``): stable laws in all four independences, stable mixtures,
  extreme-value and last-passage densities, the two-parameter resolvent
  deformation, Diophantine certificates for exponent generators, and
  the independent quadrature oracles everything is tested against.
"""

from .errors import (
    CertificateError,
    DivergenceGuardWarning,
    DomainBranchError,
    InconclusiveError,
    IncompatibleSeriesError,
    InvalidArgumentError,
    InvalidFormError,
    InvalidModelError,
    LogTermObstructionError,
    NearIntegerWarning,
    NonConvergentReversionError,
    NormalizationError,
    NotInvertibleError,
    OutsideValidityRegionError,
    PowertailError,
    ResonanceError,
    ResourceGuardError,
    TruncationWarning,
    UnsupportedSemigroupError,
)
from .semigroup import (
    ExponentGrid,
    ExponentIndex,
    SemigroupSpec,
    density_constant,
    enumerate_up_to,
    exponent_grid,
)
from .series import (
    DEFAULT_CUTOFF,
    BoundShape,
    Branch,
    EvalResult,
    GenSeries,
    GrowthBound,
    Normalization,
    Variable,
    binomial_power,
    compose_F,
    divergence_guard_radius,
    evaluate,
    f_form,
    growth_fit,
    identity_f_form,
    is_f_form,
    linear_combine,
    product,
    reciprocal,
    revert_F,
    scale,
    unit_series,
)
from .transforms import (
    FourierEvaluator,
    MomentSeries,
    TailDensityModel,
    F_from_moments,
    boolean_convolve,
    classical_convolve,
    delta_zero,
    fourier_from_moments,
    free_convolve,
    moment_series,
    moments_from_F,
    moments_from_stieltjes,
    moments_from_tail,
    moments_from_voiculescu,
    monotone_convolve,
    stieltjes_from_moments,
    stieltjes_guard_radius,
    tail_from_moments,
    tail_real_to_complex,
    voiculescu_from_moments,
)
from .pareto import (
    CancellationResidual,
    ParetoExpansion,
    SingularPart,
    cancellation_residual,
    negative_tail_fourier,
    oscillatory_constant,
    pareto_fourier,
)
from .stable import (
    LastPassageDensity,
    LastPassageParams,
    MembershipDiagnosis,
    PositiveStableDensity,
    StableKind,
    StableParams,
    SupremumDensity,
    SupremumSeriesParams,
    boolean_stable,
    classical_stable,
    classical_stable_scale_skew,
    free_stable,
    last_passage_coefficient,
    last_passage_density,
    monotone_stable,
    monotone_stable_form,
    mu_br,
    positive_stable_density,
    scale_skew_to_b,
    stable_mixture,
    supremum_coefficient,
    supremum_density,
)
from .diophantine import (
    ApproximationWitness,
    CFCertificate,
    ClassifyParams,
    DiophantineEvidence,
    ExtremeGrowthCertificate,
    FloatCertificate,
    QuadraticCertificate,
    RationalCertificate,
    RealCertificate,
    SinGrowthProfile,
    TransformOp,
    TransformedCertificate,
    Verdict,
    classify,
    convergents,
    golden_ratio_certificate,
    sin_growth_profile,
    super_liouville_certificate,
    transform_certificate,
)
from .oracles import (
    IntegrableDensity,
    LaplaceLink,
    QuadratureResult,
    brute_revert,
    brute_series_product,
    laplace_link_check,
    quadrature_fourier,
    quadrature_stieltjes,
    rotated_pareto_transform,
    stieltjes_inversion,
)

__version__ = "0.1.0"
