"""Truncated generalized power series over an exponent semigroup.

A series is a finite coefficient map {exponent: complex} on the
canonical grid of its semigroup, truncated at a cutoff exponent.
The variable direction says whether terms mean c * z^gamma (ASCENDING,
densities and characteristic functions near zero) or c * z^(-gamma)
(DESCENDING, transforms at infinity).  GAMMA normalization divides
each term by Gamma(gamma + 1), the grading under which the classical
convolution is a plain product.

``exponent_shift`` lets one structural z-power ride along without
entering the grid: a Stieltjes-type series stores d_gamma at key gamma
while meaning d_gamma * z^(-gamma-1) (shift +1), and a reciprocal-
Cauchy form stores b_gamma at key gamma while meaning
z * b_gamma * z^(-gamma) (shift -1, unit constant term).  Algebraic
operations act on unshifted series; transform code peels and restores
shifts explicitly.
"""

from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass, field
from enum import Enum
from typing import Mapping

import numpy as np
from scipy.special import gammainc, gammaln
from scipy.special import gamma as _scipy_gamma

from .errors import (
    DivergenceGuardWarning,
    DomainBranchError,
    IncompatibleSeriesError,
    InvalidArgumentError,
    InvalidFormError,
    NonConvergentReversionError,
    NormalizationError,
    NotInvertibleError,
)
from .semigroup import ExponentGrid, SemigroupSpec, density_constant, exponent_grid

DEFAULT_CUTOFF = 20.0


class Variable(Enum):
    ASCENDING = "ascending"
    DESCENDING = "descending"


class Normalization(Enum):
    RAW = "raw"
    GAMMA = "gamma"


class Branch(Enum):
    PRINCIPAL = "principal"
    MONOTONE = "monotone"


class BoundShape(Enum):
    """Shape of the geometric coefficient bound a growth fit reports."""

    PER_EXPONENT = "per_exponent"              # |c_gamma| <= A**gamma
    PER_EXPONENT_PLUS_ONE = "per_exponent_plus_one"  # |c_gamma| <= A**(gamma+1)


@dataclass(frozen=True)
class GrowthBound:
    A: float
    shape: BoundShape
    fitted_cutoff: float


@dataclass(frozen=True)
class EvalResult:
    """Partial-sum value plus a conservative truncation-tail bound."""

    value: complex
    tail_bound: float

    def __complex__(self) -> complex:
        return self.value


def gamma_factor(x: float) -> float:
    """Gamma(x) for x > 0 with relative error well under 1e-13."""
    if x <= 170.0:
        return float(_scipy_gamma(x))
    return float(math.exp(gammaln(x)))


@dataclass(frozen=True)
class GenSeries:
    spec: SemigroupSpec
    variable: Variable
    normalization: Normalization
    terms: dict
    cutoff: float = DEFAULT_CUTOFF
    exponent_shift: int = 0
    dropped: int = field(default=0, compare=False)

    def __post_init__(self):
        if not isinstance(self.spec, SemigroupSpec):
            raise InvalidArgumentError("spec must be a SemigroupSpec")
        if not isinstance(self.variable, Variable) or not isinstance(
                self.normalization, Normalization):
            raise InvalidArgumentError("variable/normalization must use the package enums")
        cutoff = float(self.cutoff)
        if not math.isfinite(cutoff) or cutoff <= 0:
            raise InvalidArgumentError("cutoff must be a positive real")
        shift = int(self.exponent_shift)
        if self.normalization is Normalization.GAMMA and shift != 0:
            raise InvalidArgumentError("GAMMA normalization does not combine with a shift")
        grid = exponent_grid(self.spec, cutoff)
        clean: dict[float, complex] = {}
        dropped = 0
        for k, c in self.terms.items():
            k = float(k)
            c = complex(c)
            i = grid.index_of(k)
            if i < 0:
                if k > cutoff:
                    dropped += 1
                    continue
                raise InvalidArgumentError(
                    "exponent %r is not on the grid of %s" % (k, self.spec.describe()))
            key = float(grid.values[i])
            clean[key] = clean.get(key, 0j) + c
        clean = {k: v for k, v in sorted(clean.items()) if v != 0}
        object.__setattr__(self, "terms", clean)
        object.__setattr__(self, "cutoff", cutoff)
        object.__setattr__(self, "exponent_shift", shift)
        object.__setattr__(self, "dropped", dropped)

    # -- inspection ----------------------------------------------------

    def coefficient(self, exponent: float) -> complex:
        grid = self.grid()
        i = grid.index_of(float(exponent))
        if i < 0:
            return 0j
        return self.terms.get(float(grid.values[i]), 0j)

    def min_order(self) -> float | None:
        if not self.terms:
            return None
        return min(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def grid(self) -> ExponentGrid:
        return exponent_grid(self.spec, self.cutoff)

    def with_terms(self, terms: Mapping, **overrides) -> "GenSeries":
        kw = dict(spec=self.spec, variable=self.variable,
                  normalization=self.normalization, cutoff=self.cutoff,
                  exponent_shift=self.exponent_shift)
        kw.update(overrides)
        return GenSeries(terms=dict(terms), **kw)

    def truncated(self, cutoff: float) -> "GenSeries":
        if cutoff > self.cutoff:
            raise InvalidArgumentError("cannot extend a truncated series")
        return self.with_terms(self.terms, cutoff=cutoff)

    def __repr__(self):
        head = ", ".join("%g: %g%+gj" % (k, v.real, v.imag)
                         for k, v in list(self.terms.items())[:6])
        more = "" if len(self.terms) <= 6 else ", ... %d terms" % len(self.terms)
        return ("GenSeries(%s, %s, %s, cutoff=%g, shift=%+d, {%s%s})"
                % (self.spec.describe(), self.variable.value,
                   self.normalization.value, self.cutoff,
                   self.exponent_shift, head, more))


def unit_series(spec: SemigroupSpec, variable: Variable,
                normalization: Normalization,
                cutoff: float = DEFAULT_CUTOFF) -> GenSeries:
    return GenSeries(spec, variable, normalization, {0.0: 1.0 + 0j}, cutoff)


# -- compatibility checks ----------------------------------------------


def _require_combinable(f: GenSeries, g: GenSeries, what: str) -> None:
    if f.spec != g.spec:
        raise IncompatibleSeriesError(
            "%s: exponent semigroups differ (%s vs %s)"
            % (what, f.spec.describe(), g.spec.describe()))
    if f.variable is not g.variable:
        raise IncompatibleSeriesError("%s: variable directions differ" % what)
    if f.normalization is not g.normalization:
        raise IncompatibleSeriesError("%s: normalizations differ" % what)
    if f.exponent_shift != g.exponent_shift:
        raise IncompatibleSeriesError("%s: structural shifts differ" % what)


def _require_plain(f: GenSeries, what: str) -> None:
    if f.exponent_shift != 0:
        raise InvalidFormError(
            "%s acts on unshifted series; peel the structural shift first" % what)


# -- dense kernel ------------------------------------------------------


def _dense(terms: Mapping[float, complex], grid: ExponentGrid) -> np.ndarray:
    vec = np.zeros(len(grid), dtype=np.complex128)
    for k, c in terms.items():
        i = grid.index_of(k)
        if i >= 0:
            vec[i] += c
    return vec


def _sparse(vec: np.ndarray, grid: ExponentGrid) -> dict[float, complex]:
    idx = np.nonzero(vec)[0]
    vals = grid.values
    return {float(vals[i]): complex(vec[i]) for i in idx}


def _convolve(a: np.ndarray, b: np.ndarray, grid: ExponentGrid) -> np.ndarray:
    """Grid convolution: out[k] = sum over value pairs summing to value k."""
    table = grid.pair_table().ravel()
    outer = (a[:, None] * b[None, :]).ravel()
    keep = table >= 0
    t = table[keep]
    o = outer[keep]
    n = len(grid)
    re = np.bincount(t, weights=o.real, minlength=n)
    im = np.bincount(t, weights=o.imag, minlength=n)
    return re + 1j * im


def _shift_up(vec: np.ndarray, gamma_index: int, grid: ExponentGrid) -> np.ndarray:
    """Multiply by the monomial at grid index gamma_index."""
    row = grid.pair_table()[gamma_index]
    out = np.zeros_like(vec)
    keep = (row >= 0) & (vec != 0)
    np.add.at(out, row[keep], vec[keep])
    return out


def _max_steps(grid: ExponentGrid) -> int:
    if len(grid) < 2:
        return 0
    return int(math.ceil(grid.cutoff / grid.delta_min)) + 1


# -- algebra -----------------------------------------------------------


def linear_combine(a: complex, f: GenSeries, b: complex, g: GenSeries) -> GenSeries:
    _require_combinable(f, g, "linear_combine")
    cutoff = min(f.cutoff, g.cutoff)
    out: dict[float, complex] = {}
    for k, c in f.terms.items():
        out[k] = out.get(k, 0j) + complex(a) * c
    for k, c in g.terms.items():
        out[k] = out.get(k, 0j) + complex(b) * c
    return GenSeries(f.spec, f.variable, f.normalization, out, cutoff, f.exponent_shift)


def scale(f: GenSeries, a: complex) -> GenSeries:
    return f.with_terms({k: complex(a) * c for k, c in f.terms.items()})


def product(f: GenSeries, g: GenSeries) -> GenSeries:
    """Cauchy product on the shared grid; GAMMA weights are respected."""
    _require_combinable(f, g, "product")
    _require_plain(f, "product")
    cutoff = min(f.cutoff, g.cutoff)
    grid = exponent_grid(f.spec, cutoff)
    a = _dense(f.terms, grid)
    b = _dense(g.terms, grid)
    if f.normalization is Normalization.GAMMA:
        gw = np.array([gamma_factor(v + 1.0) for v in grid.values.tolist()])
        out = _convolve(a / gw, b / gw, grid) * gw
    else:
        out = _convolve(a, b, grid)
    return GenSeries(f.spec, f.variable, f.normalization, _sparse(out, grid), cutoff)


def reciprocal(f: GenSeries) -> GenSeries:
    """Multiplicative inverse up to the cutoff via the geometric series."""
    _require_plain(f, "reciprocal")
    if f.normalization is not Normalization.RAW:
        raise InvalidFormError("reciprocal is defined for RAW series")
    grid = f.grid()
    c0 = f.terms.get(0.0, 0j)
    if c0 == 0:
        raise NotInvertibleError("constant term vanishes; series has no reciprocal")
    h = _dense(f.terms, grid) / c0
    h[0] = 0.0
    h = -h
    acc = np.zeros(len(grid), dtype=np.complex128)
    acc[0] = 1.0
    p = acc.copy()
    for _ in range(_max_steps(grid)):
        p = _convolve(p, h, grid)
        if not p.any():
            break
        acc += p
    return GenSeries(f.spec, f.variable, f.normalization,
                     _sparse(acc / c0, grid), f.cutoff)


def binomial_power(f: GenSeries, beta: complex) -> GenSeries:
    """(1 + h)^beta for a series f = 1 + h with unit constant term."""
    _require_plain(f, "binomial_power")
    if f.normalization is not Normalization.RAW:
        raise InvalidFormError("binomial_power is defined for RAW series")
    if f.terms.get(0.0, 0j) != 1:
        raise NormalizationError("binomial_power needs constant term exactly 1")
    grid = f.grid()
    h = _dense(f.terms, grid)
    h[0] = 0.0
    acc = np.zeros(len(grid), dtype=np.complex128)
    acc[0] = 1.0
    p = acc.copy()
    coef = complex(1.0)
    for n in range(1, _max_steps(grid) + 1):
        coef *= (complex(beta) - (n - 1)) / n
        if coef == 0:
            break
        p = _convolve(p, h, grid)
        if not p.any():
            break
        acc += coef * p
    return GenSeries(f.spec, f.variable, f.normalization, _sparse(acc, grid), f.cutoff)


# -- reciprocal-Cauchy forms -------------------------------------------


def is_f_form(f: GenSeries) -> bool:
    return (f.variable is Variable.DESCENDING
            and f.normalization is Normalization.RAW
            and f.exponent_shift == -1
            and f.terms.get(0.0, 0j) == 1)


def _require_f_form(f: GenSeries, what: str) -> None:
    if not is_f_form(f):
        raise InvalidFormError(
            "%s needs a reciprocal-Cauchy form: descending, raw, shift -1, "
            "unit constant term" % what)


def f_form(spec: SemigroupSpec, tail: Mapping[float, complex],
           cutoff: float = DEFAULT_CUTOFF) -> GenSeries:
    """Build z * (1 + sum tail[gamma] z^-gamma) from its tail map."""
    terms = {0.0: 1.0 + 0j}
    for k, c in tail.items():
        k = float(k)
        if k <= 0:
            raise InvalidArgumentError("tail exponents must be positive")
        terms[k] = terms.get(k, 0j) + complex(c)
    return GenSeries(spec, Variable.DESCENDING, Normalization.RAW, terms,
                     cutoff, exponent_shift=-1)


def identity_f_form(spec: SemigroupSpec, cutoff: float = DEFAULT_CUTOFF) -> GenSeries:
    return f_form(spec, {}, cutoff)


def _binom_weights(exponent: complex, count: int) -> np.ndarray:
    """Binomial coefficients C(exponent, n) for n = 0..count-1."""
    w = np.empty(count, dtype=np.complex128)
    cur = complex(1.0)
    for n in range(count):
        w[n] = cur
        cur *= (exponent - n) / (n + 1)
    return w


def _powers(vec: np.ndarray, grid: ExponentGrid) -> list[np.ndarray]:
    pows = [np.zeros_like(vec)]
    pows[0][0] = 1.0
    p = pows[0]
    for _ in range(_max_steps(grid)):
        p = _convolve(p, vec, grid)
        if not p.any():
            break
        pows.append(p)
    return pows


def compose_F(outer: GenSeries, inner: GenSeries) -> GenSeries:
    """Composition of reciprocal-Cauchy forms: (outer o inner) as forms.

    With outer = z(1 + sum b_g z^-g) and inner likewise, the composite
    form in w = 1/z is inner_form(w) * sum_g b_g w^g (1 + h_in)^(-g),
    where h_in is the inner tail.  Powers of h_in are shared across
    all outer terms.
    """
    _require_f_form(outer, "compose_F")
    _require_f_form(inner, "compose_F")
    if outer.spec != inner.spec:
        raise IncompatibleSeriesError("compose_F: exponent semigroups differ")
    cutoff = min(outer.cutoff, inner.cutoff)
    grid = exponent_grid(outer.spec, cutoff)
    b_in = _dense(inner.terms, grid)
    h = b_in.copy()
    h[0] = 0.0
    pows = _powers(h, grid)
    acc = np.zeros(len(grid), dtype=np.complex128)
    for g, c in sorted(outer.terms.items()):
        gi = grid.index_of(g)
        if gi < 0:
            continue
        w = _binom_weights(complex(-g), len(pows))
        vec = sum(w[n] * pows[n] for n in range(len(pows)))
        acc += c * _shift_up(vec, gi, grid)
    out = _convolve(b_in, acc, grid)
    return GenSeries(outer.spec, Variable.DESCENDING, Normalization.RAW,
                     _sparse(out, grid), cutoff, exponent_shift=-1)


def revert_F(F: GenSeries) -> GenSeries:
    """Compositional inverse of a reciprocal-Cauchy form.

    Writing the inverse as z(1 + f(1/z)), the tail f solves the fixed
    point f = -sum_{g>0} b_g w^g (1 + f)^(1-g).  The grading makes the
    iteration stabilize after ceil(cutoff/delta_min) steps; the extra
    two iterations and the final residual check are cheap insurance.
    """
    _require_f_form(F, "revert_F")
    grid = F.grid()
    tail = sorted((g, c) for g, c in F.terms.items() if g > 0)
    if not tail:
        return F
    tail_idx = []
    for g, c in tail:
        gi = grid.index_of(g)
        if gi >= 0:
            tail_idx.append((g, gi, c))

    def step(fvec: np.ndarray) -> np.ndarray:
        pows = _powers(fvec, grid)
        new = np.zeros_like(fvec)
        for g, gi, c in tail_idx:
            w = _binom_weights(complex(1.0 - g), len(pows))
            vec = sum(w[n] * pows[n] for n in range(len(pows)))
            new -= c * _shift_up(vec, gi, grid)
        return new

    fvec = np.zeros(len(grid), dtype=np.complex128)
    rounds = int(math.ceil(F.cutoff / grid.delta_min)) + 2
    for _ in range(rounds):
        fvec = step(fvec)
    resid = step(fvec) - fvec
    scale_ref = max(1.0, float(np.max(np.abs(fvec))))
    if np.max(np.abs(resid)) > 1e-9 * scale_ref:
        raise NonConvergentReversionError(
            "reversion fixed point did not stabilize (residual %g)"
            % float(np.max(np.abs(resid))))
    terms = _sparse(fvec, grid)
    terms[0.0] = terms.get(0.0, 0j) + 1.0
    return GenSeries(F.spec, Variable.DESCENDING, Normalization.RAW,
                     terms, F.cutoff, exponent_shift=-1)


# -- evaluation --------------------------------------------------------


def _branch_log(z: complex, branch: Branch) -> complex:
    if branch is Branch.PRINCIPAL:
        if z.imag == 0.0 and z.real <= 0.0:
            raise DomainBranchError(
                "principal branch excludes the cut (-inf, 0]; got %r" % (z,))
        return cmath.log(z)
    if branch is Branch.MONOTONE:
        if z.imag == 0.0 and z.real >= 0.0:
            raise DomainBranchError(
                "monotone branch excludes the cut [0, inf); got %r" % (z,))
        L = cmath.log(z)
        if L.imag >= 0.0:
            L -= 2j * math.pi
        return L
    raise InvalidArgumentError("unknown branch %r" % (branch,))


def growth_fit(f: GenSeries, shape: BoundShape = BoundShape.PER_EXPONENT) -> GrowthBound:
    """Geometric coefficient bound A = max |c_gamma|^(1/(gamma+offset))
    over retained positive exponents (stored keys)."""
    if not f.terms:
        raise InvalidArgumentError("growth_fit needs a non-empty series")
    off = 1.0 if shape is BoundShape.PER_EXPONENT_PLUS_ONE else 0.0
    A = 0.0
    for g, c in f.terms.items():
        if g > 0 and c != 0:
            A = max(A, abs(c) ** (1.0 / (g + off)))
    return GrowthBound(A=A, shape=shape, fitted_cutoff=f.cutoff)


def divergence_guard_radius(f: GenSeries, growth: GrowthBound | None = None) -> float:
    """|z| must exceed this for a DESCENDING partial sum to be trusted."""
    if growth is None:
        growth = growth_fit(f)
    c = density_constant(f.spec, max(1, int(math.ceil(f.cutoff))))
    return 1.25 * c * growth.A


def _tail_bound(f: GenSeries, absz: float, growth: GrowthBound) -> float:
    """Conservative bound on the mass of discarded terms beyond the cutoff."""
    c = density_constant(f.spec, max(1, int(math.ceil(f.cutoff))))
    A = growth.A
    if A == 0.0:
        return 0.0
    pref = A if growth.shape is BoundShape.PER_EXPONENT_PLUS_ONE else 1.0
    N = int(math.ceil(f.cutoff))
    if f.variable is Variable.DESCENDING:
        pref *= absz ** (-f.exponent_shift)
        sigma = c * A / absz
        if sigma >= 1.0:
            return math.inf
        return pref * c * sigma ** N / (1.0 - sigma)
    x = c * A * absz
    if f.normalization is Normalization.GAMMA:
        if x > 700.0:
            # exp(x) alone overflows; the Poisson tail sum_{k>N} x^k/k! it
            # bounds is astronomical unless N comfortably exceeds x
            if x >= N + 2.0:
                return math.inf
            lead = math.exp((N + 1.0) * math.log(x) - math.lgamma(N + 2.0))
            return pref * c * lead / (1.0 - x / (N + 2.0))
        return pref * c * math.exp(x) * float(gammainc(N, x))
    sigma = x
    if sigma >= 1.0:
        return math.inf
    return pref * c * sigma ** N / (1.0 - sigma)


def evaluate(f: GenSeries, z: complex, branch: Branch = Branch.PRINCIPAL,
             growth: GrowthBound | None = None) -> EvalResult:
    """Partial sum at z with powers on the chosen branch.

    Exponent-zero terms never touch the log.  DESCENDING series emit a
    DivergenceGuardWarning inside |z| <= 1.25 * c * A; the value is
    still returned.  The tail bound is a conservative estimate of the
    discarded terms' total mass from the fitted growth bound.
    """
    z = complex(z)
    sign = 1.0 if f.variable is Variable.ASCENDING else -1.0
    needs_log = any((k + f.exponent_shift) != 0 for k in f.terms)
    L = _branch_log(z, branch) if needs_log else 0j
    total = 0j
    gamma_norm = f.normalization is Normalization.GAMMA
    for k, c in sorted(f.terms.items()):
        e = k + f.exponent_shift
        term = c if e == 0 else c * cmath.exp(sign * e * L)
        if gamma_norm:
            term /= gamma_factor(k + 1.0)
        total += term
    if growth is None:
        growth = growth_fit(f) if f.terms else GrowthBound(0.0, BoundShape.PER_EXPONENT, f.cutoff)
    absz = abs(z)
    if f.variable is Variable.DESCENDING and absz <= divergence_guard_radius(f, growth):
        warnings.warn(DivergenceGuardWarning(
            "|z| = %g is inside the divergence guard radius %g; partial sum "
            "carries no convergence guarantee" % (absz, divergence_guard_radius(f, growth))))
    return EvalResult(value=total, tail_bound=_tail_bound(f, absz, growth) if absz > 0 else math.inf)
