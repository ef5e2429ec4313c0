"""Shared builders for the test suite: a few standard laws as moment
series, and termwise comparison utilities."""

import cmath
import math

from powertail.semigroup import SemigroupSpec
from powertail.transforms import moment_series

NAT = SemigroupSpec.natural()
HALF = SemigroupSpec.with_alphas(0.5)


def cauchy_moments(cutoff=20.0):
    # m_n = i^n: the standard Cauchy law, tail 1/(pi x^2) on both sides
    return moment_series(NAT, {float(n): 1j ** n for n in range(int(cutoff) + 1)},
                         cutoff)


def semicircle_moments(cutoff=20.0):
    # even moments are the Catalan numbers
    terms = {}
    n = 0
    while 2 * n <= cutoff:
        terms[float(2 * n)] = float(math.comb(2 * n, n) // (n + 1))
        n += 1
    return moment_series(NAT, terms, cutoff)


def bernoulli_moments(cutoff=20.0):
    # (delta_{-1} + delta_{+1}) / 2: every even moment is 1
    terms = {float(n): (1.0 if n % 2 == 0 else 0.0)
             for n in range(int(cutoff) + 1)}
    return moment_series(NAT, terms, cutoff)


def symmetric_phase(alpha):
    """Tail weight that places a symmetric stable law inside the
    admissible phase window for every alpha in (0, 2]."""
    return cmath.exp(1j * math.pi * (1.0 - alpha / 2.0))


def worst_termwise(a, b):
    keys = set(a.terms) | set(b.terms)
    return max((abs(a.terms.get(k, 0j) - b.terms.get(k, 0j)) for k in keys),
               default=0.0)


def worst_termwise_rel(a, b):
    keys = set(a.terms) | set(b.terms)
    out = 0.0
    for k in keys:
        x = a.terms.get(k, 0j)
        y = b.terms.get(k, 0j)
        out = max(out, abs(x - y) / max(1.0, abs(y)))
    return out
