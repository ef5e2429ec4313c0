"""The five faces of a law (moments, Fourier, Stieltjes, reciprocal
Cauchy transform, subordination coefficients) and the four convolutions.

Closed-form anchors: the standard Cauchy law has moments i^n, Fourier
transform e^{-z} on z > 0, resolvent 1/(z - i), F-transform z - i, and
two-sided tail density 1/(pi x^2); the semicircle law has Catalan even
moments and resolvent (z - sqrt(z^2 - 4))/2.
"""

import cmath
import math

import numpy as np
import pytest
from hypothesis import given, strategies as hst

from helpers import (HALF, NAT, bernoulli_moments, cauchy_moments,
                     semicircle_moments, symmetric_phase, worst_termwise)
from powertail.errors import (LogTermObstructionError,
                              OutsideValidityRegionError)
from powertail.semigroup import SemigroupSpec, density_constant
from powertail.series import (compose_F, evaluate, growth_fit,
                              identity_f_form, linear_combine)
from powertail.stable import (StableKind, StableParams, free_stable,
                              monotone_stable, stable_mixture)
from powertail.transforms import (FourierEvaluator, F_from_moments,
                                  MomentSeries, boolean_convolve,
                                  classical_convolve, delta_zero,
                                  free_convolve, moment_series,
                                  moments_from_F, moments_from_stieltjes,
                                  moments_from_tail, moments_from_voiculescu,
                                  monotone_convolve, stieltjes_from_moments,
                                  stieltjes_guard_radius, tail_from_moments,
                                  tail_real_to_complex, voiculescu_from_moments)


def random_half_series(seed, cutoff=3.0, scale=0.5):
    rng = np.random.default_rng(seed)
    terms = {0.5 * i: scale * complex(rng.standard_normal(),
                                      rng.standard_normal())
             for i in range(int(2 * cutoff) + 1)}
    terms[0.0] = 1.0
    return moment_series(HALF, terms, cutoff)


# ----------------------------------------------------------- Fourier side

def test_cauchy_transform_decays_exponentially():
    ft = FourierEvaluator(cauchy_moments())
    for z in (0.5, 1.0, 2.0):
        assert abs(complex(ft(z)) - math.exp(-z)) < 1e-10


def test_point_mass_transform_is_one():
    ft = FourierEvaluator(delta_zero(NAT))
    assert complex(ft(3.0)) == 1.0 + 0j


def test_transform_requires_positive_frequency():
    ft = FourierEvaluator(cauchy_moments())
    with pytest.raises(OutsideValidityRegionError):
        ft(0.0)
    with pytest.raises(OutsideValidityRegionError):
        ft(-1.0)


def test_transform_multiplies_under_classical_convolution():
    a = random_half_series(11)
    b = random_half_series(12)
    conv = classical_convolve(a, b)
    z = 0.01  # deep inside the shared validity region
    lhs = complex(FourierEvaluator(conv)(z))
    rhs = complex(FourierEvaluator(a)(z)) * complex(FourierEvaluator(b)(z))
    assert abs(lhs - rhs) < 1e-6


def test_transform_tail_bound_dominates_known_error():
    # z large enough that series truncation, the thing tail_bound
    # measures, dwarfs float rounding in the partial sum
    ft = FourierEvaluator(cauchy_moments())
    res = ft(3.0)
    err = abs(res.value - math.exp(-3.0))
    assert err > 1e-14
    assert res.tail_bound >= err


# ---------------------------------------------------------- Stieltjes side

def test_cauchy_resolvent_closed_form():
    G = stieltjes_from_moments(cauchy_moments())
    for z in (-3j, -5.0 - 2.0j):
        assert abs(evaluate(G, z).value - 1.0 / (z - 1j)) < 1e-10


def test_semicircle_resolvent_surd_branch():
    G = stieltjes_from_moments(semicircle_moments())
    z = -5j
    # principal sqrt picks the branch with G(z) ~ 1/z down the axis
    want = (z + cmath.sqrt(z * z - 4.0)) / 2.0
    assert abs(want - 1.0 / z) < 0.1  # branch sanity
    assert abs(evaluate(G, z).value - want) < 1e-9


def test_resolvent_coefficients_are_the_moments():
    for m in (cauchy_moments(), semicircle_moments(), bernoulli_moments()):
        G = stieltjes_from_moments(m)
        assert G.terms == dict(m.terms)
        back = moments_from_stieltjes(G)
        assert back.terms == dict(m.terms)


def test_resolvent_guard_radius_tracks_growth():
    assert stieltjes_guard_radius(stieltjes_from_moments(cauchy_moments())) \
        == pytest.approx(1.25)


# ------------------------------------------- reciprocal Cauchy transform

def test_cauchy_f_transform_is_a_shift():
    F = F_from_moments(cauchy_moments())
    assert F.exponent_shift == -1
    assert abs(F.terms[0.0] - 1.0) < 1e-14
    assert abs(F.terms[1.0] + 1j) < 1e-14
    assert all(abs(v) < 1e-12 for k, v in F.terms.items() if k > 1.0)


def test_point_mass_f_transform_is_identity():
    F = F_from_moments(delta_zero(NAT))
    assert worst_termwise(F, identity_f_form(NAT, F.cutoff)) < 1e-14


def test_f_transform_roundtrip():
    for m in (cauchy_moments(12.0), semicircle_moments(12.0),
              bernoulli_moments(12.0)):
        back = moments_from_F(F_from_moments(m))
        assert worst_termwise(back, m) < 1e-12


# --------------------------------------------- subordination coefficients

def test_semicircle_subordination_is_a_single_term():
    phi = voiculescu_from_moments(semicircle_moments(12.0))
    live = {k: v for k, v in phi.terms.items() if abs(v) > 1e-12}
    assert set(live) == {2.0}
    assert abs(live[2.0] - 1.0) < 1e-12


def test_cauchy_subordination_is_constant():
    phi = voiculescu_from_moments(cauchy_moments(12.0))
    live = {k: v for k, v in phi.terms.items() if abs(v) > 1e-12}
    assert set(live) == {1.0}
    assert abs(live[1.0] - 1j) < 1e-12


def test_point_mass_subordination_vanishes():
    phi = voiculescu_from_moments(delta_zero(NAT))
    assert all(abs(v) < 1e-14 for v in phi.terms.values())


def test_subordination_roundtrip():
    m = free_stable(StableParams(alpha=1.5, b=symmetric_phase(1.5),
                                 kind=StableKind.FREE), cutoff=10.0)
    back = moments_from_voiculescu(voiculescu_from_moments(m))
    assert worst_termwise(back, m) < 1e-10


# -------------------------------------------------------------- tail side

def test_cauchy_tail_density_closed_form():
    tail = tail_from_moments(cauchy_moments())
    want = 1.0 / (26.0 * math.pi)
    assert abs(tail.density(5.0) - want) < 1e-10
    # the law is symmetric, so the two tails agree
    assert abs(tail.density(-5.0) - tail.density(5.0)) < 1e-14


def test_tail_density_guards_small_arguments():
    tail = tail_from_moments(cauchy_moments())
    assert tail.validity_radius() == pytest.approx(1.25)
    with pytest.raises(OutsideValidityRegionError):
        tail.density(1.0)


def test_point_mass_has_no_tail():
    tail = tail_from_moments(delta_zero(NAT))
    assert tail.density(1.0) == 0.0


def test_tail_roundtrip_on_a_mixture():
    m, tail = stable_mixture([1.0 / (n + 1) for n in range(30)], 0.7,
                             cutoff=14.0)
    back = moments_from_tail(tail)
    assert worst_termwise(back, m) < 1e-12


def test_real_tail_weights_lift_against_the_reflection():
    a = tail_real_to_complex({0.5: 1.0}, HALF)
    assert abs(a[0.5] - 1j) < 1e-12
    b = tail_real_to_complex({0.25: 1.0}, SemigroupSpec.with_alphas(0.25))
    assert abs(b[0.25] - (-1.0 + 1j)) < 1e-12


def test_integer_tail_weight_cannot_lift():
    with pytest.raises(LogTermObstructionError):
        tail_real_to_complex({2.0: 1.0}, NAT)


# ------------------------------------------------------------ convolutions

def test_cauchy_is_fixed_by_all_four_convolutions():
    m = cauchy_moments(16.0)
    want = moment_series(NAT, {float(n): (2j) ** n for n in range(17)}, 16.0)
    for conv in (classical_convolve, free_convolve, boolean_convolve,
                 monotone_convolve):
        assert worst_termwise(conv(m, m), want) < 1e-10


def test_semicircle_adds_freely():
    s = semicircle_moments(12.0)
    out = free_convolve(s, s)
    assert abs(out.moment(2.0) - 2.0) < 1e-12
    assert abs(out.moment(4.0) - 8.0) < 1e-12


def test_bernoulli_adds_boolean():
    b = bernoulli_moments(12.0)
    out = boolean_convolve(b, b)
    for n in range(1, 7):
        assert abs(out.moment(2.0 * float(n)) - 2.0 ** n) < 1e-12


def test_point_mass_is_neutral_for_every_kind():
    m = cauchy_moments(12.0)
    e = delta_zero(NAT, cutoff=12.0)
    for conv in (classical_convolve, free_convolve, boolean_convolve,
                 monotone_convolve):
        assert worst_termwise(conv(m, e), m) < 1e-12
        assert worst_termwise(conv(e, m), m) < 1e-12


@given(hst.integers(min_value=0, max_value=200))
def test_three_convolutions_commute(seed):
    a = random_half_series(2 * seed + 1)
    b = random_half_series(2 * seed + 2)
    for conv in (classical_convolve, free_convolve, boolean_convolve):
        assert worst_termwise(conv(a, b), conv(b, a)) < 1e-12


def test_monotone_composition_order_matters():
    # first disagreement sits at the sixth moment: 17 against 16
    arc = monotone_stable(2.0, 2.0, cutoff=8.0)
    ber = bernoulli_moments(8.0)
    ab = monotone_convolve(arc, ber)
    ba = monotone_convolve(ber, arc)
    assert abs(ab.moment(2.0) - ba.moment(2.0)) < 1e-12
    assert abs(ab.moment(4.0) - ba.moment(4.0)) < 1e-12
    assert abs(ab.moment(6.0) - 17.0) < 1e-10
    assert abs(ba.moment(6.0) - 16.0) < 1e-10


@given(hst.integers(min_value=0, max_value=100))
def test_every_kind_is_associative(seed):
    a = random_half_series(3 * seed + 1)
    b = random_half_series(3 * seed + 2)
    c = random_half_series(3 * seed + 3)
    for conv in (classical_convolve, free_convolve, boolean_convolve,
                 monotone_convolve):
        lhs = conv(conv(a, b), c)
        rhs = conv(a, conv(b, c))
        assert worst_termwise(lhs, rhs) < 1e-10


def test_convolution_outputs_stay_inside_growth_envelope():
    """Any of the four products of two unit-mass series keeps its
    coefficients below the shared envelope built from the inputs'
    fitted growth and the lattice counting constant."""
    a = random_half_series(11)
    b = random_half_series(12)
    c = density_constant(HALF, 4)
    A = max(growth_fit(a.series).A, growth_fit(b.series).A)
    for conv in (classical_convolve, free_convolve, boolean_convolve,
                 monotone_convolve):
        out = conv(a, b)
        for k, v in out.terms.items():
            if abs(v) < 1e-300:
                continue
            bound = (k * math.log(max(A, 1e-12))
                     + math.floor(k) * math.log(c + 1.0)
                     + math.log(c * (math.floor(k) + 2.0)))
            assert math.log(abs(v)) <= bound + 1e-9
