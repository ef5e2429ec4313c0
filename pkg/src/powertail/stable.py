"""Constructors for the concrete law families.

Classical stable laws come from expanding exp(i gamma z + i^alpha b z^alpha)
as a graded exponential; the non-commutative stable laws are declared
directly on the transform side: the free one by its Voiculescu series
-gamma + b z^(1-alpha), the Boolean one by F(z) = z + gamma - b z^(1-alpha),
the monotone one by F(z) = (z^alpha - b)^(1/alpha).  Positive stable,
stable mixtures, supremum and last-passage densities, and the mu^alpha_{b,r}
family are explicit series with known coefficients.

The admissible phase window for b (classical/free/Boolean kinds):
arg b in [(1-alpha)pi, pi] for alpha in (0,1], and in [0, (2-alpha)pi]
for alpha in (1,2].  At alpha = 1 both windows are [0, pi] and every
admissible law is a point mass or a Cauchy law.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import Enum

from scipy.special import gamma as _scipy_gamma

from .errors import (
    InvalidArgumentError,
    OutsideValidityRegionError,
    ResonanceError,
)
from .semigroup import SemigroupSpec, density_constant
from .series import (
    DEFAULT_CUTOFF,
    Branch,
    GenSeries,
    Normalization,
    Variable,
    binomial_power,
    gamma_factor,
    growth_fit,
    product,
    scale,
)
from .transforms import (
    MomentSeries,
    TailDensityModel,
    moment_series,
    moments_from_F,
    moments_from_voiculescu,
    tail_from_moments,
)

RESONANCE_TOL = 1e-8
_PHASE_TOL = 1e-12


class StableKind(Enum):
    CLASSICAL = "classical"
    FREE = "free"
    BOOLEAN = "boolean"
    MONOTONE = "monotone"


@dataclass(frozen=True)
class StableParams:
    alpha: float
    b: complex = 0j
    gamma_shift: float = 0.0
    kind: StableKind = StableKind.CLASSICAL

    def __post_init__(self):
        alpha = float(self.alpha)
        if not 0.0 < alpha <= 2.0:
            raise InvalidArgumentError("stability index must lie in (0, 2], got %r" % alpha)
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "b", complex(self.b))
        object.__setattr__(self, "gamma_shift", float(self.gamma_shift))
        if self.kind is not StableKind.MONOTONE:
            _require_admissible_phase(alpha, self.b)


def _require_admissible_phase(alpha: float, b: complex) -> None:
    if b == 0:
        return
    w = cmath.phase(b)
    if alpha <= 1.0:
        lo, hi = (1.0 - alpha) * math.pi, math.pi
    else:
        lo, hi = 0.0, (2.0 - alpha) * math.pi
    if not (lo - _PHASE_TOL <= w <= hi + _PHASE_TOL):
        raise InvalidArgumentError(
            "arg b = %g is outside the admissible window [%g, %g] for alpha = %g"
            % (w, lo, hi, alpha))


def scale_skew_to_b(alpha: float, c: float, beta_hat: float) -> complex:
    """Convert the (scale, skew) parametrization: i^alpha b = -c (1 - i beta_hat tan(pi alpha/2))."""
    if c < 0:
        raise InvalidArgumentError("scale must be non-negative")
    if not -1.0 <= beta_hat <= 1.0:
        raise InvalidArgumentError("skew must lie in [-1, 1]")
    if alpha == 1.0 and beta_hat != 0.0:
        raise InvalidArgumentError(
            "alpha = 1 with nonzero skew produces a logarithmic term; not representable")
    rhs = -c * (1.0 - 1j * beta_hat * math.tan(math.pi * alpha / 2.0))
    return rhs * cmath.exp(-1j * math.pi * alpha / 2.0)


@dataclass(frozen=True)
class MembershipDiagnosis:
    """Growth-fit stability across two truncations of the same series.

    A fit that keeps rising as the cutoff grows diagnoses a series
    whose coefficients escape every geometric bound.
    """

    A_coarse: float
    A_fine: float
    relative_increase: float
    cutoff_stable: bool
    note: str


def _diagnose(m: MomentSeries) -> MembershipDiagnosis:
    fine = growth_fit(m.series).A
    coarse = growth_fit(m.series.truncated(m.cutoff / 2.0)).A
    rel = (fine - coarse) / coarse if coarse > 0 else 0.0
    stable = rel < 0.05
    note = ("coefficient growth stable under cutoff refinement" if stable else
            "growth fit increases %.1f%% under cutoff refinement; no geometric "
            "coefficient bound" % (100.0 * rel))
    return MembershipDiagnosis(A_coarse=coarse, A_fine=fine,
                               relative_increase=rel, cutoff_stable=stable, note=note)


def _graded_exp(f: GenSeries) -> GenSeries:
    """exp of a series with no constant term, summed by total grade."""
    if 0.0 in f.terms:
        raise InvalidArgumentError("graded exponential needs a zero constant term")
    acc = dict(f.terms)
    acc[0.0] = 1.0 + 0j
    term = f
    k = 1
    while not term.is_zero():
        k += 1
        term = scale(product(term, f), 1.0 / k)
        for key, c in term.terms.items():
            acc[key] = acc.get(key, 0j) + c
    return f.with_terms(acc)


def classical_stable(params: StableParams, cutoff: float = DEFAULT_CUTOFF
                     ) -> tuple[MomentSeries, MembershipDiagnosis]:
    """Moments of the classical stable law with transform
    exp(i gamma z + i^alpha b z^alpha), plus a growth diagnosis.

    The exponent series is expanded raw in z; the coefficient of
    z^tau is converted to the moment m_tau = coef * Gamma(tau+1) / i^tau.
    """
    if params.kind is not StableKind.CLASSICAL:
        raise InvalidArgumentError("params.kind must be CLASSICAL")
    alpha, b, g0 = params.alpha, params.b, params.gamma_shift
    spec = SemigroupSpec.with_alphas(alpha)
    exponent: dict[float, complex] = {}
    if g0 != 0.0:
        exponent[1.0] = 1j * g0
    if b != 0:
        phase = cmath.exp(1j * math.pi * alpha / 2.0)
        exponent[alpha] = exponent.get(alpha, 0j) + phase * b
    raw = GenSeries(spec, Variable.ASCENDING, Normalization.RAW, exponent, cutoff)
    ft = _graded_exp(raw)
    moments = {
        tau: c * gamma_factor(tau + 1.0) * cmath.exp(-1j * math.pi * tau / 2.0)
        for tau, c in ft.terms.items()
    }
    m = moment_series(spec, moments, cutoff)
    return m, _diagnose(m)


def classical_stable_scale_skew(alpha: float, c: float, beta_hat: float,
                                gamma_shift: float = 0.0,
                                cutoff: float = DEFAULT_CUTOFF
                                ) -> tuple[MomentSeries, MembershipDiagnosis]:
    b = scale_skew_to_b(alpha, c, beta_hat)
    return classical_stable(StableParams(alpha, b, gamma_shift), cutoff)


def free_stable(params: StableParams, cutoff: float = DEFAULT_CUTOFF) -> MomentSeries:
    """Free stable law declared by its Voiculescu series -gamma + b z^(1-alpha)."""
    if params.kind is not StableKind.FREE:
        raise InvalidArgumentError("params.kind must be FREE")
    alpha, b, g0 = params.alpha, params.b, params.gamma_shift
    spec = SemigroupSpec.with_alphas(alpha)
    phi_terms: dict[float, complex] = {}
    if g0 != 0.0:
        phi_terms[1.0] = -g0
    if b != 0:
        phi_terms[alpha] = phi_terms.get(alpha, 0j) + b
    phi = GenSeries(spec, Variable.DESCENDING, Normalization.RAW,
                    phi_terms, cutoff, exponent_shift=-1)
    return moments_from_voiculescu(phi)


def boolean_stable(params: StableParams, cutoff: float = DEFAULT_CUTOFF) -> MomentSeries:
    """Boolean stable law: F(z) = z + gamma - b z^(1-alpha)."""
    if params.kind is not StableKind.BOOLEAN:
        raise InvalidArgumentError("params.kind must be BOOLEAN")
    alpha, b, g0 = params.alpha, params.b, params.gamma_shift
    spec = SemigroupSpec.with_alphas(alpha)
    tail: dict[float, complex] = {}
    if g0 != 0.0:
        tail[1.0] = complex(g0)
    if b != 0:
        tail[alpha] = tail.get(alpha, 0j) - b
    F = GenSeries(spec, Variable.DESCENDING, Normalization.RAW,
                  {0.0: 1.0 + 0j, **tail}, cutoff, exponent_shift=-1)
    return moments_from_F(F)


def monotone_stable_form(alpha: float, b: complex,
                         cutoff: float = DEFAULT_CUTOFF) -> tuple[GenSeries, Branch]:
    """Reciprocal-Cauchy form of the monotone stable law,
    F(z) = (z^alpha - b)^(1/alpha), with its evaluation branch.

    Powers for monotone laws live on the branch with Im log z in
    (-2 pi, 0), which is what the returned Branch records.
    """
    if not 0.0 < float(alpha) <= 2.0:
        raise InvalidArgumentError("stability index must lie in (0, 2]")
    spec = SemigroupSpec.with_alphas(alpha)
    base = GenSeries(spec, Variable.DESCENDING, Normalization.RAW,
                     {0.0: 1.0 + 0j, float(alpha): -complex(b)}, cutoff)
    B = binomial_power(base, 1.0 / float(alpha))
    F = B.with_terms(B.terms, exponent_shift=-1)
    return F, Branch.MONOTONE


def monotone_stable(alpha: float, b: complex,
                    cutoff: float = DEFAULT_CUTOFF) -> MomentSeries:
    F, _ = monotone_stable_form(alpha, b, cutoff)
    return moments_from_F(F)


class PositiveStableDensity:
    """Density series of the one-sided alpha-stable law, 0 < alpha < 1:

        (1/pi) sum_{n>=1} (-1)^(n-1) sin(pi alpha n) Gamma(n alpha + 1)/n! x^(-1-n alpha)

    valid for x above the divergence guard x_min.
    """

    def __init__(self, alpha: float, cutoff: float = DEFAULT_CUTOFF):
        alpha = float(alpha)
        if not 0.0 < alpha < 1.0:
            raise InvalidArgumentError("one-sided stable laws need alpha in (0, 1)")
        self.alpha = alpha
        self.cutoff = float(cutoff)
        self.spec = SemigroupSpec.with_alphas(alpha)
        self.coefficients: dict[float, float] = {}
        A = 0.0
        n = 1
        while n * alpha <= self.cutoff:
            e = n * alpha
            if e == round(e):
                # n alpha integral: sin(pi n alpha) is exactly zero and
                # float evaluation must not leave a ~1e-16 ghost term
                n += 1
                continue
            mag = gamma_factor(e + 1.0) / gamma_factor(n + 1.0)
            coef = math.sin(math.pi * e) * mag / math.pi
            if n % 2 == 0:
                coef = -coef
            if coef != 0.0:
                self.coefficients[e] = coef
            A = max(A, mag ** (1.0 / e))
            n += 1
        c = density_constant(self.spec, max(1, int(math.ceil(self.cutoff))))
        self.x_min = 1.25 * c * A

    def density(self, x: float) -> float:
        x = float(x)
        if x <= self.x_min:
            raise OutsideValidityRegionError(
                "series density is trusted only for x > %g" % self.x_min)
        return sum(c * x ** (-1.0 - e) for e, c in sorted(self.coefficients.items()))

    __call__ = density


def positive_stable_density(alpha: float, cutoff: float = DEFAULT_CUTOFF
                            ) -> PositiveStableDensity:
    return PositiveStableDensity(alpha, cutoff)


def stable_mixture(nu_moments: list, alpha: float,
                   cutoff: float = DEFAULT_CUTOFF
                   ) -> tuple[MomentSeries, TailDensityModel]:
    """Mixture of symmetric alpha-stable laws with mixing moments m_n(nu):
    the Fourier side is sum (-1)^n m_n(nu) z^(alpha n) / n! for z > 0.

    Moments: m_{alpha n} = (-1)^n m_n(nu) Gamma(alpha n + 1) e^(-i pi alpha n / 2) / n!.
    The phase converts the real Fourier coefficients to gamma-complex
    moments (at alpha = 1, nu = delta_1 this lands on the Cauchy law).
    """
    alpha = float(alpha)
    if not 0.0 < alpha <= 1.0:
        raise InvalidArgumentError("mixture index must lie in (0, 1]")
    nu = [float(v) for v in nu_moments]
    if not nu or nu[0] != 1.0:
        raise InvalidArgumentError("mixing moments must start with m_0(nu) = 1")
    spec = SemigroupSpec.with_alphas(alpha)
    terms: dict[float, complex] = {}
    for n, mn in enumerate(nu):
        e = alpha * n
        if e > cutoff:
            break
        coef = ((-1) ** n) * mn * gamma_factor(e + 1.0) / gamma_factor(n + 1.0)
        terms[e] = coef * cmath.exp(-1j * math.pi * e / 2.0)
    m = moment_series(spec, terms, cutoff)
    return m, tail_from_moments(m)


@dataclass(frozen=True)
class SupremumSeriesParams:
    alpha: float
    rho: float
    M: int = 12
    N: int = 12

    def __post_init__(self):
        if not 0.0 < float(self.alpha) < 1.0:
            raise InvalidArgumentError("supremum series needs alpha in (0, 1)")
        if not 0.0 < float(self.rho) < 1.0:
            raise InvalidArgumentError("positivity parameter rho must lie in (0, 1)")
        if int(self.M) < 0 or int(self.N) < 1:
            raise InvalidArgumentError("truncation orders must be non-negative (N >= 1)")
        object.__setattr__(self, "alpha", float(self.alpha))
        object.__setattr__(self, "rho", float(self.rho))
        object.__setattr__(self, "M", int(self.M))
        object.__setattr__(self, "N", int(self.N))


def supremum_coefficient(alpha: float, rho: float, m: int, n: int) -> float:
    """Coefficient b_{m,n} of the supremum density series:

        (-1)^(m+n) / (Gamma(1 + m/alpha + n) Gamma(-m - alpha n))
        * prod_{j=1..m} sin(pi (alpha rho + j - 1)/alpha) / sin(pi j / alpha)
        * prod_{j=1..n} sin(pi alpha (rho + j - 1)) / sin(pi alpha j)
    """
    for j in range(1, m + 1):
        if abs(math.sin(math.pi * j / alpha)) < RESONANCE_TOL:
            raise ResonanceError(
                "sin(pi %d / alpha) vanishes; alpha = %g is effectively rational"
                % (j, alpha))
    for j in range(1, n + 1):
        if abs(math.sin(math.pi * alpha * j)) < RESONANCE_TOL:
            raise ResonanceError(
                "sin(pi alpha %d) vanishes; alpha = %g is effectively rational"
                % (j, alpha))
    val = ((-1.0) ** (m + n)) / (
        float(_scipy_gamma(1.0 + m / alpha + n)) * float(_scipy_gamma(-m - alpha * n)))
    for j in range(1, m + 1):
        val *= math.sin(math.pi * (alpha * rho + j - 1.0) / alpha) / math.sin(math.pi * j / alpha)
    for j in range(1, n + 1):
        val *= math.sin(math.pi * alpha * (rho + j - 1.0)) / math.sin(math.pi * alpha * j)
    return val


class SupremumDensity:
    """Truncated double series for the supremum density:
    x^(-1-alpha) * sum_{m<=M, 1<=n<=N} b_{m,n} x^(-m-(n-1) alpha)."""

    def __init__(self, params: SupremumSeriesParams):
        self.params = params
        a, rho = params.alpha, params.rho
        self.spec = SemigroupSpec.with_alphas(a)
        self.coefficients: dict[tuple[int, int], float] = {}
        for m in range(params.M + 1):
            for n in range(1, params.N + 1):
                self.coefficients[(m, n)] = supremum_coefficient(a, rho, m, n)
        A = 0.0
        for (m, n), c in self.coefficients.items():
            e = m + n * a
            if c != 0.0:
                A = max(A, abs(c) ** (1.0 / e))
        cd = density_constant(self.spec, 24)
        self.x_min = 1.25 * cd * A

    def _terms(self, x: float):
        a = self.params.alpha
        for (m, n), c in self.coefficients.items():
            yield (m, n), c * x ** (-1.0 - m - n * a)

    def density(self, x: float) -> float:
        x = float(x)
        if x <= self.x_min:
            raise OutsideValidityRegionError(
                "supremum series is trusted only for x > %g" % self.x_min)
        return sum(t for _, t in self._terms(x))

    def remainder_estimate(self, x: float) -> float:
        """Size of the truncation boundary: the dropped terms are
        dominated by the outermost retained row and column."""
        x = float(x)
        a = self.params.alpha
        M, N = self.params.M, self.params.N
        edge = 0.0
        for (m, n), t in self._terms(x):
            if m == M or n == N:
                edge += abs(t)
        return 2.0 * edge

    __call__ = density


def supremum_density(params: SupremumSeriesParams) -> SupremumDensity:
    return SupremumDensity(params)


@dataclass(frozen=True)
class LastPassageParams:
    alpha: float
    d: int
    M: int = 20

    def __post_init__(self):
        if int(self.d) != self.d or int(self.d) < 2:
            raise InvalidArgumentError("dimension d must be an integer >= 2")
        if not 1.0 < float(self.alpha) < float(self.d):
            raise InvalidArgumentError("last passage needs 1 < alpha < d")
        if int(self.M) < 0:
            raise InvalidArgumentError("truncation order must be non-negative")
        object.__setattr__(self, "alpha", float(self.alpha))
        object.__setattr__(self, "d", int(self.d))
        object.__setattr__(self, "M", int(self.M))


def last_passage_coefficient(alpha: float, d: int, m: int) -> float:
    """Coefficient of t^(-(d+2m)/alpha):
    2/(alpha Gamma((d-alpha)/2)) * (-1)^m Gamma((d+2m)/alpha) / (m! Gamma((d-alpha)/2 + m + 1))."""
    lead = 2.0 / (alpha * float(_scipy_gamma((d - alpha) / 2.0)))
    val = lead * ((-1.0) ** m) * float(_scipy_gamma((d + 2.0 * m) / alpha))
    val /= gamma_factor(m + 1.0) * float(_scipy_gamma((d - alpha) / 2.0 + m + 1.0))
    return val


class LastPassageDensity:
    """Series density of the last passage time, exponents (d+2m)/alpha."""

    def __init__(self, params: LastPassageParams):
        self.params = params
        a, d = params.alpha, params.d
        self.spec = SemigroupSpec.with_alphas(1.0 / a)
        self.coefficients: dict[float, float] = {}
        A = 0.0
        for m in range(params.M + 1):
            e = (d + 2.0 * m) / a
            c = last_passage_coefficient(a, d, m)
            self.coefficients[e] = c
            if c != 0.0 and e > 1.0:
                A = max(A, abs(c) ** (1.0 / (e - 1.0)))
        cd = density_constant(self.spec, 24)
        self.t_min = 1.25 * cd * A

    def density(self, t: float) -> float:
        t = float(t)
        if t <= self.t_min:
            raise OutsideValidityRegionError(
                "last passage series is trusted only for t > %g" % self.t_min)
        return sum(c * t ** (-e) for e, c in sorted(self.coefficients.items()))

    __call__ = density


def last_passage_density(params: LastPassageParams) -> LastPassageDensity:
    return LastPassageDensity(params)


def mu_br(alpha: float, b: complex, r: float,
          cutoff: float = DEFAULT_CUTOFF) -> GenSeries:
    """Stieltjes series of the mu^alpha_{b,r} family, whose transform is

        G(z) = r^(1/alpha) * ((1 - (1 - b z^-alpha)^(1/r)) / b)^(1/alpha).

    Peeling one factor of z^-alpha out of the inner bracket shows
    G = (1/z) (1 + h)^(1/alpha) with h of positive order, so the series
    is one binomial power inside another; the leading coefficient is
    exactly 1 by construction.
    """
    alpha = float(alpha)
    r = float(r)
    b = complex(b)
    if b == 0:
        raise InvalidArgumentError("b must be nonzero")
    if r < 1.0:
        raise InvalidArgumentError("parameter r must satisfy r >= 1")
    if not 0.0 < alpha <= 2.0:
        raise InvalidArgumentError("alpha must lie in (0, 2]")
    _require_admissible_phase(alpha, b)
    spec = SemigroupSpec.with_alphas(alpha)
    base = GenSeries(spec, Variable.DESCENDING, Normalization.RAW,
                     {0.0: 1.0 + 0j, alpha: -b}, cutoff)
    inner = binomial_power(base, 1.0 / r)
    grid = inner.grid()
    # u = 1 - inner has order alpha; divide out the monomial w^alpha
    shifted: dict[float, complex] = {}
    for k, c in inner.terms.items():
        if k == 0.0:
            c = c - 1.0
            if c == 0:
                continue
        kk = k - alpha
        if kk < -1e-12:
            raise InvalidArgumentError("inner expansion has unexpected low-order term")
        shifted[grid.canonical(max(kk, 0.0))] = -c
    if not shifted:
        # b z^-alpha fully cancels only if the law degenerates; G = 1/z
        return GenSeries(spec, Variable.DESCENDING, Normalization.RAW,
                         {0.0: 1.0 + 0j}, cutoff, exponent_shift=1)
    lead = shifted.get(0.0, 0j)
    if lead == 0:
        raise InvalidArgumentError("leading mixture coefficient vanished")
    # normalizing by the computed leading term keeps the constant exactly 1;
    # algebraically lead == b/r, so no compensating prefactor is needed
    normalized = {k: c / lead for k, c in shifted.items()}
    M = GenSeries(spec, Variable.DESCENDING, Normalization.RAW, normalized, cutoff)
    outer = binomial_power(M, 1.0 / alpha)
    return GenSeries(spec, Variable.DESCENDING, Normalization.RAW,
                     dict(outer.terms), cutoff, exponent_shift=1)
