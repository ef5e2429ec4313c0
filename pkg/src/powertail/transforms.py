"""Conversions among the five representations of a power-law measure.

The representations: moment series (GAMMA-normalized coefficients
m_gamma), Fourier-side evaluator, Stieltjes series (descending, with
d_gamma = m_gamma stored at key gamma and one structural power of 1/z),
reciprocal-Cauchy form, and the Voiculescu series.  On top of the
conversions sit the four convolutions: classical (GAMMA product),
Boolean (tails of the reciprocal-Cauchy forms add), monotone (forms
compose), free (Voiculescu series add).

Integer exponents are special throughout: a tail density only pins
down the imaginary part of an integer-indexed moment (the real part
belongs to the compactly supported inner piece), and real tail data at
an integer exponent cannot be lifted to a complex coefficient at all
(the would-be lift hits a logarithmic term).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

from .errors import (
    InvalidFormError,
    InvalidModelError,
    LogTermObstructionError,
    OutsideValidityRegionError,
)
from .semigroup import SemigroupSpec, density_constant
from .series import (
    DEFAULT_CUTOFF,
    Branch,
    EvalResult,
    GenSeries,
    Normalization,
    Variable,
    compose_F,
    evaluate,
    growth_fit,
    is_f_form,
    linear_combine,
    product,
    reciprocal,
    revert_F,
)

__all__ = [
    "MomentSeries", "moment_series", "TailDensityModel",
    "fourier_from_moments", "stieltjes_from_moments", "moments_from_stieltjes",
    "F_from_moments", "moments_from_F",
    "voiculescu_from_moments", "moments_from_voiculescu",
    "moments_from_tail", "tail_from_moments", "tail_real_to_complex",
    "classical_convolve", "boolean_convolve", "monotone_convolve", "free_convolve",
]


@dataclass(frozen=True)
class MomentSeries:
    """Moment coefficients m_gamma as a GAMMA-normalized ascending series.

    m_0 = 1 always (probability normalization).
    """

    series: GenSeries

    def __post_init__(self):
        s = self.series
        if s.variable is not Variable.ASCENDING or s.normalization is not Normalization.GAMMA:
            raise InvalidFormError("moment series must be ascending and GAMMA-normalized")
        if s.exponent_shift != 0:
            raise InvalidFormError("moment series carries no structural shift")
        if s.terms.get(0.0, 0j) != 1:
            raise InvalidFormError("moment series needs m_0 = 1")

    @property
    def spec(self) -> SemigroupSpec:
        return self.series.spec

    @property
    def cutoff(self) -> float:
        return self.series.cutoff

    @property
    def terms(self) -> dict:
        return self.series.terms

    def moment(self, gamma: float) -> complex:
        return self.series.coefficient(gamma)

    def truncated(self, cutoff: float) -> "MomentSeries":
        return MomentSeries(self.series.truncated(cutoff))


def moment_series(spec: SemigroupSpec, moments: dict,
                  cutoff: float = DEFAULT_CUTOFF) -> MomentSeries:
    terms = dict(moments)
    terms.setdefault(0.0, 1.0 + 0j)
    return MomentSeries(GenSeries(spec, Variable.ASCENDING, Normalization.GAMMA,
                                  terms, cutoff))


def delta_zero(spec: SemigroupSpec | None = None,
               cutoff: float = DEFAULT_CUTOFF) -> MomentSeries:
    """Point mass at the origin: the unit of every convolution here."""
    return moment_series(spec or SemigroupSpec.natural(), {}, cutoff)


# -- Fourier side --------------------------------------------------------


class FourierEvaluator:
    """Callable for sum of m_gamma i^gamma z^gamma / Gamma(gamma+1), z > 0.

    The phases i^gamma ride inside the coefficient map so evaluation
    reduces to the plain GAMMA-normalized series at real z.
    """

    def __init__(self, m: MomentSeries):
        self.moments = m
        phased = {g: c * cmath.exp(1j * math.pi * g / 2.0)
                  for g, c in m.terms.items()}
        self.series = m.series.with_terms(phased)
        self.growth = growth_fit(self.series)

    def __call__(self, z: float) -> EvalResult:
        z = complex(z)
        if z.imag != 0.0 or z.real <= 0.0:
            raise OutsideValidityRegionError(
                "Fourier-side evaluator is defined for real z > 0, got %r" % (z,))
        return evaluate(self.series, z.real, Branch.PRINCIPAL, self.growth)


def fourier_from_moments(m: MomentSeries) -> FourierEvaluator:
    return FourierEvaluator(m)


# -- Stieltjes side ------------------------------------------------------


def stieltjes_from_moments(m: MomentSeries) -> GenSeries:
    """Descending series with d_gamma = m_gamma stored at key gamma and a
    structural extra power of 1/z (shift +1): G(z) = sum m_g z^(-g-1)."""
    return GenSeries(m.spec, Variable.DESCENDING, Normalization.RAW,
                     dict(m.terms), m.cutoff, exponent_shift=1)


def moments_from_stieltjes(G: GenSeries) -> MomentSeries:
    if (G.variable is not Variable.DESCENDING or G.normalization is not Normalization.RAW
            or G.exponent_shift != 1):
        raise InvalidFormError("expected a Stieltjes-type series (descending, shift +1)")
    return MomentSeries(GenSeries(G.spec, Variable.ASCENDING, Normalization.GAMMA,
                                  dict(G.terms), G.cutoff))


def stieltjes_guard_radius(G: GenSeries) -> float:
    c = density_constant(G.spec, max(1, int(math.ceil(G.cutoff))))
    return 1.25 * c * growth_fit(G).A


# -- reciprocal-Cauchy form ----------------------------------------------


def F_from_moments(m: MomentSeries) -> GenSeries:
    """Form F(z) = z * reciprocal of sum m_gamma z^(-gamma)."""
    D = GenSeries(m.spec, Variable.DESCENDING, Normalization.RAW,
                  dict(m.terms), m.cutoff)
    B = reciprocal(D)
    return B.with_terms(B.terms, exponent_shift=-1)


def moments_from_F(F: GenSeries) -> MomentSeries:
    if not is_f_form(F):
        raise InvalidFormError("expected a reciprocal-Cauchy form")
    B = F.with_terms(F.terms, exponent_shift=0)
    D = reciprocal(B)
    return MomentSeries(GenSeries(F.spec, Variable.ASCENDING, Normalization.GAMMA,
                                  dict(D.terms), F.cutoff))


# -- Voiculescu series -----------------------------------------------------


def voiculescu_from_moments(m: MomentSeries) -> GenSeries:
    """Series of F^(-1)(z) - z in descending powers.

    Stored at key gamma is the coefficient of z^(1-gamma); the key-0
    slot (the unit of the reverted form) is dropped, so a pure point
    mass gives the empty series.
    """
    Finv = revert_F(F_from_moments(m))
    tail = {g: c for g, c in Finv.terms.items() if g > 0}
    return GenSeries(m.spec, Variable.DESCENDING, Normalization.RAW,
                     tail, m.cutoff, exponent_shift=-1)


def _require_voiculescu(phi: GenSeries) -> None:
    if (phi.variable is not Variable.DESCENDING
            or phi.normalization is not Normalization.RAW
            or phi.exponent_shift != -1 or 0.0 in phi.terms):
        raise InvalidFormError(
            "expected a Voiculescu-type series (descending, shift -1, no unit term)")


_REVERSION_NOISE_FLOOR = 1e-9


def _trim_reversion_noise(m: MomentSeries) -> MomentSeries:
    """Drop the untrustworthy tail of a deeply reverted moment series.

    Reversion is a triangular recurrence, so rounding error amplifies
    order by order; once the true coefficients have decayed far below
    the head of the series the residue takes over and eventually dwarfs
    the signal, spoiling growth fits.  A geometric envelope that has
    dropped nine decades below its peak can never climb back, so the
    series is cut at the first unit-wide exponent window whose largest
    coefficient sits below the floor.  The window matters: single slots
    can vanish by exact cancellation (and carry pure residue) while
    their neighbours still hold signal.
    """
    keys = sorted(m.terms)
    peak = 0.0
    cut = None
    for i, g in enumerate(keys):
        if peak > 0.0:
            wmax = 0.0
            for h in keys[i:]:
                if h > g + 1.0:
                    break
                wmax = max(wmax, abs(m.terms[h]))
            if wmax < _REVERSION_NOISE_FLOOR * peak:
                cut = g
                break
        peak = max(peak, abs(m.terms[g]))
    if cut is None:
        return m
    kept = {g: c for g, c in m.terms.items() if g < cut}
    return MomentSeries(m.series.with_terms(kept))


def moments_from_voiculescu(phi: GenSeries) -> MomentSeries:
    _require_voiculescu(phi)
    terms = dict(phi.terms)
    terms[0.0] = 1.0 + 0j
    Finv = GenSeries(phi.spec, Variable.DESCENDING, Normalization.RAW,
                     terms, phi.cutoff, exponent_shift=-1)
    return _trim_reversion_noise(moments_from_F(revert_F(Finv)))


# -- tail density ---------------------------------------------------------


@dataclass(frozen=True)
class TailDensityModel:
    """Tail density sum over beta of Im(a_beta (1/x)^(beta+1)) on |x| >= R.

    ``inner_moments`` carries the integer-exponent moment data the tail
    cannot see: by convention entry n holds the real part of m_n, with
    m_0 = 1 when absent.  The negative-axis convention reads
    (1/x)^(beta+1) as e^(i(beta+1)pi) |x|^(-beta-1).
    """

    spec: SemigroupSpec
    a: dict
    r: float
    R: float
    inner_moments: dict = field(default_factory=dict)
    guard_radius: float = 0.0  # extra validity floor, e.g. from a moment fit

    def __post_init__(self):
        a = {}
        for beta, coef in self.a.items():
            beta = float(beta)
            coef = complex(coef)
            if beta <= 0 or not math.isfinite(beta):
                raise InvalidModelError("tail exponents must be positive reals")
            if coef != 0:
                a[beta] = coef
        object.__setattr__(self, "a", dict(sorted(a.items())))
        r = float(self.r)
        R = float(self.R)
        if not (r > 0 and R > 0):
            raise InvalidModelError("scales r and R must be positive")
        c = density_constant(self.spec, 20)
        if not r < R / c * (1 + 1e-12):
            raise InvalidModelError(
                "coefficient scale r = %g must stay below R/c = %g" % (r, R / c))
        for beta, coef in a.items():
            if abs(coef) > r ** beta * (1 + 1e-9):
                raise InvalidModelError(
                    "|a_%g| = %g exceeds the geometric bound r^beta = %g"
                    % (beta, abs(coef), r ** beta))
        inner = {int(k): complex(v) for k, v in self.inner_moments.items()}
        inner.setdefault(0, 1.0 + 0j)
        object.__setattr__(self, "inner_moments", inner)

    def validity_radius(self) -> float:
        A = max((abs(c) ** (1.0 / (b + 1.0)) for b, c in self.a.items()), default=0.0)
        c = density_constant(self.spec, 20)
        return max(1.25 * c * A, self.guard_radius)

    def density(self, x: float) -> float:
        x = float(x)
        B = max(self.validity_radius(), 0.0)
        if abs(x) <= B or abs(x) < self.R:
            raise OutsideValidityRegionError(
                "tail density is only evaluated for |x| > %g" % max(B, self.R))
        total = 0.0
        if x > 0:
            for beta, coef in self.a.items():
                total += (coef * x ** (-beta - 1.0)).imag
        else:
            ax = -x
            for beta, coef in self.a.items():
                phase = cmath.exp(1j * math.pi * (beta + 1.0))
                total += (coef * phase * ax ** (-beta - 1.0)).imag
        return total

    __call__ = density


def tail_from_moments(m: MomentSeries) -> TailDensityModel:
    """Tail model with a_gamma = m_gamma / pi; the density series is
    (1/pi) sum over gamma > 0 of Im(m_gamma (1/x)^(gamma+1)).

    Real parts of integer moments go to the inner descriptor so the
    inverse conversion is exact.
    """
    a = {}
    inner = {}
    for g, c in m.terms.items():
        if g == math.floor(g):
            inner[int(g)] = complex(c.real)
            if g > 0 and c.imag != 0.0:
                a[g] = 1j * c.imag / math.pi
        elif g > 0:
            a[g] = c / math.pi
    A = growth_fit(m.series).A
    r = max(A, 1e-6)
    c_dens = density_constant(m.spec, 20)
    R = 2.0 * r * c_dens
    return TailDensityModel(spec=m.spec, a=a, r=r * (1 + 1e-9), R=R,
                            inner_moments=inner, guard_radius=1.25 * c_dens * A)


def moments_from_tail(model: TailDensityModel,
                      cutoff: float = DEFAULT_CUTOFF) -> MomentSeries:
    """m_gamma = pi a_gamma off the integers; integer moments take their
    real part from the inner descriptor and imaginary part from the tail."""
    terms: dict[float, complex] = {}
    for beta, coef in model.a.items():
        if beta == math.floor(beta):
            terms[beta] = 1j * math.pi * coef.imag
        else:
            terms[beta] = math.pi * coef
    for n, re_part in model.inner_moments.items():
        terms[float(n)] = terms.get(float(n), 0j) + complex(re_part.real)
    if terms.get(0.0, 0j) != 1:
        raise InvalidModelError("inner moments must normalize to m_0 = 1")
    return moment_series(model.spec, terms, cutoff)


def tail_real_to_complex(b: dict, spec: SemigroupSpec) -> dict:
    """Lift real tail data b_beta to complex coefficients a_beta with
    Im a = b and Re a = -cot(pi beta) b.

    Integer exponents admit no such lift (the cotangent pole signals a
    logarithmic term), so nonzero integer entries are rejected.
    """
    out = {}
    for beta, val in b.items():
        beta = float(beta)
        val = float(val)
        if val == 0.0:
            continue
        if beta == math.floor(beta):
            raise LogTermObstructionError(
                "real tail data at integer exponent %g has no complex lift" % beta)
        out[beta] = complex(-val / math.tan(math.pi * beta), val)
    return out


# -- convolutions ----------------------------------------------------------


def classical_convolve(m1: MomentSeries, m2: MomentSeries) -> MomentSeries:
    """Classical convolution: plain product in the GAMMA grading."""
    return MomentSeries(product(m1.series, m2.series))


def boolean_convolve(m1: MomentSeries, m2: MomentSeries) -> MomentSeries:
    """Boolean convolution: reciprocal-Cauchy tails add."""
    F1 = F_from_moments(m1)
    F2 = F_from_moments(m2)
    combined = linear_combine(1.0, F1, 1.0, F2)
    terms = dict(combined.terms)
    terms[0.0] = terms.get(0.0, 0j) - 1.0  # the two unit terms collapse to one
    F = GenSeries(combined.spec, Variable.DESCENDING, Normalization.RAW,
                  terms, combined.cutoff, exponent_shift=-1)
    return moments_from_F(F)


def monotone_convolve(m1: MomentSeries, m2: MomentSeries) -> MomentSeries:
    """Monotone convolution: reciprocal-Cauchy forms compose (left acts)."""
    return moments_from_F(compose_F(F_from_moments(m1), F_from_moments(m2)))


def free_convolve(m1: MomentSeries, m2: MomentSeries) -> MomentSeries:
    """Free convolution: Voiculescu series add."""
    p1 = voiculescu_from_moments(m1)
    p2 = voiculescu_from_moments(m2)
    return moments_from_voiculescu(linear_combine(1.0, p1, 1.0, p2))
