"""Independent numerical ground truth.

Nothing in here reuses the series kernel's fast paths: transforms are
done by adaptive quadrature, densities by Stieltjes inversion, products
by nested dictionary loops, reversion by order-by-order back
substitution.  Tests compare these against the series machinery; the
CLI ``verify`` command does the same on demand.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, NamedTuple, Sequence

import numpy as np
from scipy.integrate import quad

from .errors import (
    IncompatibleSeriesError,
    InvalidArgumentError,
    OutsideValidityRegionError,
)
from .semigroup import density_constant, exponent_grid
from .series import GenSeries, Normalization, Variable, evaluate, is_f_form
from .transforms import MomentSeries, FourierEvaluator, stieltjes_from_moments

_QUAD_OPTS = dict(epsabs=1e-13, epsrel=1e-12, limit=600)


@dataclass(frozen=True)
class QuadratureResult:
    value: complex
    error_estimate: float
    tail_bound: float

    def __post_init__(self):
        if self.error_estimate < 0 or self.tail_bound < 0:
            raise InvalidArgumentError("error bounds cannot be negative")

    def __complex__(self) -> complex:
        return self.value

    @property
    def total_uncertainty(self) -> float:
        return self.error_estimate + self.tail_bound


@dataclass(frozen=True)
class IntegrableDensity:
    """Pointwise density with enough support/decay metadata to integrate.

    Beyond |x| >= envelope_start the density is promised to obey
    |f(x)| <= envelope_scale * |x|^(-envelope_exponent - 1).
    """

    fn: Callable[[float], complex]
    lower: float = -math.inf
    upper: float = math.inf
    envelope_scale: float = 1.0
    envelope_exponent: float = 1.0
    envelope_start: float = 1.0

    def __post_init__(self):
        if self.lower >= self.upper:
            raise InvalidArgumentError("empty support")
        if self.envelope_start <= 0:
            raise InvalidArgumentError("envelope must start at a positive abscissa")
        unbounded = math.isinf(self.lower) or math.isinf(self.upper)
        if unbounded and self.envelope_exponent <= 0:
            raise InvalidArgumentError(
                "envelope exponent %g gives a non-integrable tail"
                % self.envelope_exponent)


def _quad_complex(fn: Callable[[float], complex], a: float, b: float,
                  **opts) -> tuple[complex, float]:
    kw = {**_QUAD_OPTS, **opts}
    re, re_err = quad(lambda x: fn(x).real, a, b, **kw)
    im, im_err = quad(lambda x: fn(x).imag, a, b, **kw)
    return complex(re, im), re_err + im_err


def _oscillatory_halfline(fn: Callable[[float], complex], a: float,
                          z: float) -> tuple[complex, float]:
    """integral_a^inf e^{ixz} fn(x) dx for decaying fn, z != 0."""
    w = abs(z)
    kw = dict(epsabs=1e-12, limit=400, limlst=200)
    cr, er1 = quad(lambda x: fn(x).real, a, math.inf, weight="cos", wvar=w, **kw)
    sr, er2 = quad(lambda x: fn(x).real, a, math.inf, weight="sin", wvar=w, **kw)
    ci, er3 = quad(lambda x: fn(x).imag, a, math.inf, weight="cos", wvar=w, **kw)
    si, er4 = quad(lambda x: fn(x).imag, a, math.inf, weight="sin", wvar=w, **kw)
    # e^{ixz} = cos(wx) + i sign(z) sin(wx)
    s = 1.0 if z > 0 else -1.0
    value = complex(cr - s * si, ci + s * sr)
    return value, er1 + er2 + er3 + er4


def quadrature_fourier(density: IntegrableDensity, z: float) -> QuadratureResult:
    """integral e^{ixz} f(x) dx by adaptive quadrature.

    The core window is integrated directly; unbounded tails use the
    dedicated oscillatory rules, which carry the integral all the way
    to infinity, so nothing is discarded.
    """
    z = float(z)
    x0 = density.envelope_start
    core_lo = max(density.lower, -x0)
    core_hi = min(density.upper, x0)
    total = 0j
    err = 0.0

    if core_lo < core_hi:
        pts = [0.0] if core_lo < 0.0 < core_hi else None
        fn = density.fn
        val, e = _quad_complex(lambda x: fn(x) * complex(math.cos(x * z),
                                                         math.sin(x * z)),
                               core_lo, core_hi, points=pts)
        total += val
        err += e

    if math.isinf(density.upper):
        a = max(core_hi, density.lower)
        if z == 0.0:
            val, e = _quad_complex(density.fn, a, math.inf)
        else:
            val, e = _oscillatory_halfline(density.fn, a, z)
        total += val
        err += e
    elif density.upper > core_hi:
        val, e = _quad_complex(
            lambda x: density.fn(x) * complex(math.cos(x * z), math.sin(x * z)),
            core_hi, density.upper)
        total += val
        err += e

    if math.isinf(density.lower):
        b = min(core_lo, density.upper)
        flip = lambda u: density.fn(-u)
        if z == 0.0:
            val, e = _quad_complex(flip, -b, math.inf)
        else:
            val, e = _oscillatory_halfline(flip, -b, -z)
        total += val
        err += e
    elif density.lower < core_lo:
        val, e = _quad_complex(
            lambda x: density.fn(x) * complex(math.cos(x * z), math.sin(x * z)),
            density.lower, core_lo)
        total += val
        err += e

    return QuadratureResult(value=total, error_estimate=err, tail_bound=0.0)


def quadrature_stieltjes(density: IntegrableDensity, z: complex) -> QuadratureResult:
    """integral f(x)/(z - x) dx for z in the lower half plane."""
    z = complex(z)
    if z.imag >= 0:
        raise OutsideValidityRegionError(
            "resolvent quadrature expects Im z < 0, got %s" % z)

    def kernel(x: float) -> complex:
        return density.fn(x) / (z - x)

    lo, hi = density.lower, density.upper
    total = 0j
    err = 0.0
    a = lo if math.isfinite(lo) else -density.envelope_start
    b = hi if math.isfinite(hi) else density.envelope_start
    if a < b:
        pts = [0.0] if a < 0.0 < b else None
        val, e = _quad_complex(kernel, a, b, points=pts)
        total += val
        err += e
    if math.isinf(hi):
        val, e = _quad_complex(kernel, max(b, lo), math.inf)
        total += val
        err += e
    if math.isinf(lo):
        val, e = _quad_complex(lambda u: kernel(-u), -min(a, hi), math.inf)
        total += val
        err += e
    return QuadratureResult(value=total, error_estimate=err, tail_bound=0.0)


_DEFAULT_Y = (1e-1, 10.0 ** -2.5, 1e-4)


def _neville_at_zero(xs: Sequence[float], ys: Sequence[float]) -> float:
    vals = list(ys)
    n = len(vals)
    for level in range(1, n):
        for i in range(n - level):
            x_i, x_j = xs[i], xs[i + level]
            vals[i] = (x_j * vals[i] - x_i * vals[i + 1]) / (x_j - x_i)
    return vals[0]


def stieltjes_inversion(G: Callable[[complex], complex], x: float,
                        y_sequence: Sequence[float] = _DEFAULT_Y) -> float:
    """Density at x recovered from the resolvent: the y -> 0 limit of
    (1/pi) Im G(x - iy), extrapolated over the given y values."""
    if len(y_sequence) < 1:
        raise InvalidArgumentError("need at least one evaluation height")
    ys = sorted(float(y) for y in y_sequence)
    if ys[0] <= 0:
        raise InvalidArgumentError("heights must be positive")
    samples = [complex(G(complex(x, -y))).imag / math.pi for y in ys]
    if len(ys) == 1:
        return samples[0]
    return _neville_at_zero(ys, samples)


class LaplaceLink(NamedTuple):
    lhs: complex
    rhs: complex
    discrepancy: float


def laplace_link_check(m: MomentSeries, y: float) -> LaplaceLink:
    """Both sides of: integral_0^inf F(z) e^{-yz} dz = -i G(-iy).

    The left side integrates the Fourier-side series evaluator; the
    right evaluates the resolvent series at -iy.  Valid once y clears
    the growth scale of the coefficients (y > 2cA).
    """
    fe = FourierEvaluator(m)
    A = fe.growth.A
    c = density_constant(m.spec, max(int(math.ceil(m.cutoff)), 1))
    if y <= 2.0 * c * A:
        raise OutsideValidityRegionError(
            "need y > %g to dominate coefficient growth, got %g" % (2.0 * c * A, y))

    def integrand(zv: float) -> complex:
        if zv <= 0.0:
            return complex(math.exp(-y * max(zv, 0.0)))
        return complex(fe(zv)) * math.exp(-y * zv)

    lhs, _ = _quad_complex(integrand, 0.0, math.inf, epsabs=1e-12, epsrel=1e-11)
    S = stieltjes_from_moments(m)
    rhs = -1j * complex(evaluate(S, complex(0.0, -y)))
    return LaplaceLink(lhs=lhs, rhs=rhs, discrepancy=abs(lhs - rhs))


# -- brute-force series operations ----------------------------------------


def brute_series_product(f: GenSeries, g: GenSeries) -> GenSeries:
    """Nested-loop product with per-pair weights; no shared kernel code.

    For factorial-normalized series the weight of a coefficient pair is
    Gamma(e+1)/(Gamma(a+1)Gamma(b+1)) computed through lgamma, which is
    a different route than the kernel's vectorized renormalization.
    """
    if f.spec != g.spec or f.variable is not g.variable \
            or f.normalization is not g.normalization:
        raise IncompatibleSeriesError("series live in different algebras")
    if f.exponent_shift or g.exponent_shift:
        raise IncompatibleSeriesError("products need unshifted series")
    cutoff = min(f.cutoff, g.cutoff)
    grid = exponent_grid(f.spec, cutoff)
    acc: dict[float, complex] = {}
    weighted = f.normalization is Normalization.GAMMA
    for ka, ca in f.terms.items():
        for kb, cb in g.terms.items():
            idx = grid.index_of(ka + kb)
            if idx < 0:
                continue
            key = float(grid.values[idx])
            w = 1.0
            if weighted:
                w = math.exp(math.lgamma(key + 1.0) - math.lgamma(ka + 1.0)
                             - math.lgamma(kb + 1.0))
            acc[key] = acc.get(key, 0j) + ca * cb * w
    return f.with_terms(acc, cutoff=cutoff)


def _brute_tail_product(a: dict, b: dict, grid) -> dict:
    out: dict[float, complex] = {}
    for ka, ca in a.items():
        for kb, cb in b.items():
            idx = grid.index_of(ka + kb)
            if idx < 0:
                continue
            key = float(grid.values[idx])
            out[key] = out.get(key, 0j) + ca * cb
    return out


def _brute_binomial_tail(tail: dict, exponent: float, grid,
                         max_terms: int) -> dict:
    """(1 + tail)^exponent by the plain binomial series, dictionaries only."""
    out: dict[float, complex] = {0.0: 1.0 + 0j}
    power = dict(tail)
    coef = 1.0
    for n in range(1, max_terms + 1):
        coef *= (exponent - (n - 1)) / n
        if coef == 0.0 or not power:
            break
        for k, c in power.items():
            out[k] = out.get(k, 0j) + coef * c
        power = _brute_tail_product(power, tail, grid)
    return out


def brute_revert(F: GenSeries, cutoff: float = 6.0) -> GenSeries:
    """Compositional inverse of a reciprocal-resolvent form, solved
    coefficient by coefficient.

    The defining equation F(H(z)) = z is triangular in the tail
    coefficients of H: the w^e coefficient of F(H)/z - 1 involves h_e
    linearly plus lower-order terms only.  Deliberately naive; guarded
    to small cutoffs.
    """
    if cutoff > 6.0 + 1e-12:
        raise InvalidArgumentError("back-substitution oracle is capped at cutoff 6")
    if not is_f_form(F):
        raise InvalidArgumentError("input must be a reciprocal-resolvent form")
    b = {k: v for k, v in F.terms.items() if k != 0.0}
    grid = exponent_grid(F.spec, cutoff)
    exponents = [float(v) for v in grid.values if 0.0 < v <= cutoff]
    h: dict[float, complex] = {}
    max_terms = len(exponents) + 2

    def residual_tail() -> dict:
        # F(H)/z - 1 where H = z (1 + sum h_e w^e): equals
        # sum_e h_e w^e + sum_g b_g w^g (1 + sum h)^(1-g)
        out = dict(h)
        for gexp, bg in b.items():
            comp = _brute_binomial_tail(h, 1.0 - gexp, grid, max_terms)
            for k, c in comp.items():
                idx = grid.index_of(k + gexp)
                if idx < 0:
                    continue
                key = float(grid.values[idx])
                out[key] = out.get(key, 0j) + bg * c
        return out

    for e in exponents:
        res = residual_tail()
        h[e] = h.get(e, 0j) - res.get(e, 0j)

    res = residual_tail()
    worst = max((abs(v) for k, v in res.items() if k <= cutoff), default=0.0)
    if worst > 1e-9:
        raise InvalidArgumentError(
            "back-substitution failed to cancel the tail (residual %g)" % worst)
    terms = {0.0: 1.0 + 0j}
    terms.update({k: v for k, v in h.items() if v != 0})
    return GenSeries(spec=F.spec, variable=Variable.DESCENDING,
                     normalization=Normalization.RAW, terms=terms,
                     cutoff=cutoff, exponent_shift=-1)


def rotated_pareto_transform(beta: float, R: float, z: float) -> QuadratureResult:
    """R^beta integral_R^inf e^{ixz} x^(-beta-1) dx on the rotated
    contour x = R + it: smooth, non-oscillatory, high precision."""
    if beta <= 0 or R <= 0:
        raise InvalidArgumentError("need beta > 0 and R > 0")
    if z <= 0:
        raise OutsideValidityRegionError("rotation is valid for z > 0")

    def fn(t: float) -> complex:
        return math.exp(-t * z) * (R + 1j * t) ** (-beta - 1.0)

    val, err = _quad_complex(fn, 0.0, math.inf)
    phase = 1j * complex(math.cos(R * z), math.sin(R * z)) * R ** beta
    return QuadratureResult(value=phase * val, error_estimate=err, tail_bound=0.0)


def fourier_series_vs_quadrature(m: MomentSeries, density: IntegrableDensity,
                                 z: float) -> tuple[complex, complex, float]:
    """Convenience: both routes to the transform at one z, with the gap."""
    series_val = complex(FourierEvaluator(m)(z))
    quad_val = quadrature_fourier(density, z).value
    return series_val, quad_val, abs(series_val - quad_val)
