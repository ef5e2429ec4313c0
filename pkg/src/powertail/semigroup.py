"""Additive exponent semigroups and their truncated enumeration.

A semigroup spec lists positive real generators; the semigroup is the
set of all non-negative integer combinations.  The generator 1 is
always present, so the natural numbers embed in every semigroup here.
Enumeration up to a cutoff produces the canonical exponent grid that
the series layer indexes into.

Two generators whose combination values collide are merged:  values
v1 <= v2 are identified when |v1 - v2| <= 1e-9 * max(1, v1).  When
every generator is recognizably rational (denominator <= 10**6 and
relative agreement 1e-12), enumeration and merging run exactly over a
common integer lattice instead, so collisions like 3*(1/3) == 1 are
exact rather than tolerance-based.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import NamedTuple

import numpy as np

from .errors import InvalidArgumentError, ResourceGuardError

MERGE_REL_TOL = 1e-9
RATIONAL_DETECT_REL_TOL = 1e-12
RATIONAL_MAX_DENOMINATOR = 10**6

# hard cap on enumerated lattice points before merging
_MAX_POINTS = 4_000_000


def _rational_form(g: float) -> Fraction | None:
    """Fraction with denominator <= 10**6 reproducing g, or None."""
    fr = Fraction(g).limit_denominator(RATIONAL_MAX_DENOMINATOR)
    if abs(g - float(fr)) <= RATIONAL_DETECT_REL_TOL * max(1.0, abs(g)):
        return fr
    return None


@dataclass(frozen=True)
class SemigroupSpec:
    """Finitely generated additive exponent semigroup.

    ``fractional_generators`` holds the generators besides 1, sorted
    strictly ascending.  Exact non-negative integers are dropped at
    construction since they generate nothing outside the naturals.
    """

    fractional_generators: tuple[float, ...] = ()

    def __post_init__(self):
        gens = []
        for g in self.fractional_generators:
            g = float(g)
            if not math.isfinite(g) or g <= 0.0:
                raise InvalidArgumentError(
                    "semigroup generators must be positive finite reals, got %r" % (g,))
            if g == math.floor(g):
                continue  # already inside the naturals
            gens.append(g)
        gens.sort()
        for a, b in zip(gens, gens[1:]):
            if a == b:
                raise InvalidArgumentError("duplicate semigroup generator %r" % (a,))
        object.__setattr__(self, "fractional_generators", tuple(gens))

    @staticmethod
    def natural() -> "SemigroupSpec":
        return SemigroupSpec(())

    @staticmethod
    def with_alphas(*alphas: float) -> "SemigroupSpec":
        return SemigroupSpec(tuple(alphas))

    @property
    def generators(self) -> tuple[float, ...]:
        """Full generator tuple; index 0 is always the generator 1."""
        return (1.0,) + self.fractional_generators

    def rational_forms(self) -> tuple[Fraction, ...] | None:
        """Exact fractions for all generators, or None if any resists."""
        out = [Fraction(1)]
        for g in self.fractional_generators:
            fr = _rational_form(g)
            if fr is None:
                return None
            out.append(fr)
        return tuple(out)

    def describe(self) -> str:
        if not self.fractional_generators:
            return "naturals"
        return "naturals + " + ", ".join("%.17g" % g for g in self.fractional_generators)


class ExponentIndex(NamedTuple):
    """A merged exponent value with one representative multi-index.

    ``counts[k]`` multiplies ``spec.generators[k]``.  When several
    multi-indices give the same value the lexicographically smallest
    counts tuple is kept; nothing downstream depends on the choice.
    """

    value: float
    counts: tuple[int, ...]


def _check_budget(generators: tuple[float, ...], cutoff: float) -> None:
    budget = 1.0
    for g in generators:
        budget *= math.floor(cutoff / g) + 1.0
        if budget > _MAX_POINTS:
            raise ResourceGuardError(
                "enumeration of %r up to cutoff %g exceeds %d lattice points"
                % (generators, cutoff, _MAX_POINTS))


def _raw_points(generators, cutoff, zero, le_cutoff, add_scaled):
    """All (value, counts) with value <= cutoff; generic over arithmetic."""
    points = []
    counts = [0] * len(generators)

    def rec(i, acc):
        if i == len(generators):
            points.append((acc, tuple(counts)))
            return
        n = 0
        val = acc
        while le_cutoff(val):
            counts[i] = n
            rec(i + 1, val)
            n += 1
            val = add_scaled(acc, i, n)
        counts[i] = 0

    rec(0, zero)
    return points


def enumerate_up_to(spec: SemigroupSpec, cutoff: float) -> list[ExponentIndex]:
    """Ordered merged exponents of the semigroup in [0, cutoff]."""
    cutoff = float(cutoff)
    if not math.isfinite(cutoff) or cutoff < 0:
        raise InvalidArgumentError("cutoff must be a non-negative real, got %r" % (cutoff,))
    _check_budget(spec.generators, cutoff)

    fracs = spec.rational_forms()
    if fracs is not None:
        cut = Fraction(cutoff)
        pts = _raw_points(
            fracs, cutoff,
            zero=Fraction(0),
            le_cutoff=lambda v: v <= cut,
            add_scaled=lambda acc, i, n: acc + n * fracs[i],
        )
        merged: dict[Fraction, tuple[int, ...]] = {}
        for val, cnt in pts:
            old = merged.get(val)
            if old is None or cnt < old:
                merged[val] = cnt
        return [ExponentIndex(float(v), merged[v]) for v in sorted(merged)]

    gens = spec.generators
    hi = cutoff * (1.0 + 1e-12)
    pts = _raw_points(
        gens, cutoff,
        zero=0.0,
        le_cutoff=lambda v: v <= hi,
        add_scaled=lambda acc, i, n: acc + n * gens[i],
    )
    pts.sort()
    out: list[ExponentIndex] = []
    for val, cnt in pts:
        if out and val - out[-1].value <= MERGE_REL_TOL * max(1.0, out[-1].value):
            # group leader already has the lexicographically smallest
            # counts: sort placed equal values in counts order
            continue
        out.append(ExponentIndex(val, cnt))
    return out


@lru_cache(maxsize=1024)
def density_constant(spec: SemigroupSpec, horizon: int) -> float:
    """Smallest c >= 1 with window counts #(S in [n, n+1)) <= c^(n+1)
    witnessed on windows n = 0 .. horizon."""
    horizon = int(horizon)
    if horizon < 0:
        raise InvalidArgumentError("horizon must be a non-negative integer")
    window = [0] * (horizon + 1)
    for idx in enumerate_up_to(spec, horizon + 1):
        n = int(math.floor(idx.value + 1e-12))
        if n <= horizon:
            window[n] += 1
    c = 1.0
    for n, cnt in enumerate(window):
        if cnt > 0:
            c = max(c, cnt ** (1.0 / (n + 1)))
    return c


class ExponentGrid:
    """Canonical merged exponents of (spec, cutoff) plus an addition table.

    ``pair_table()[i, j]`` is the grid index of values[i] + values[j],
    or -1 when the sum exceeds the cutoff.  For rational specs the
    table is built on an exact integer lattice.
    """

    def __init__(self, spec: SemigroupSpec, cutoff: float):
        self.spec = spec
        self.cutoff = float(cutoff)
        idx = enumerate_up_to(spec, cutoff)
        self.values = np.array([e.value for e in idx], dtype=np.float64)
        self.reps = tuple(e.counts for e in idx)
        self._pos = {v: i for i, v in enumerate(self.values.tolist())}
        self._pair: np.ndarray | None = None

        fracs = spec.rational_forms()
        if fracs is not None:
            den = math.lcm(*[f.denominator for f in fracs])
            ints = []
            for e in idx:
                total = sum(n * f for n, f in zip(e.counts, fracs))
                ints.append(int(total * den))
            self._ints = np.array(ints, dtype=np.int64)
        else:
            self._ints = None

    def __len__(self) -> int:
        return len(self.values)

    @property
    def delta_min(self) -> float:
        """Smallest positive exponent in the grid."""
        if len(self.values) < 2:
            raise InvalidArgumentError("grid has no positive exponent below its cutoff")
        return float(self.values[1])

    def index_of(self, v: float) -> int:
        """Grid index of the merged value containing v, or -1."""
        i = self._pos.get(v)
        if i is not None:
            return i
        j = int(np.searchsorted(self.values, v))
        for k in (j - 1, j):
            if 0 <= k < len(self.values):
                lead = self.values[k]
                lo, hi = (lead, v) if lead <= v else (v, lead)
                if hi - lo <= MERGE_REL_TOL * max(1.0, lo):
                    return k
        return -1

    def canonical(self, v: float) -> float:
        i = self.index_of(float(v))
        if i < 0:
            raise KeyError("exponent %r is not on the grid (cutoff %g, generators %r)"
                           % (v, self.cutoff, self.spec.generators))
        return float(self.values[i])

    def pair_table(self) -> np.ndarray:
        if self._pair is not None:
            return self._pair
        n = len(self.values)
        if self._ints is not None:
            tot = self._ints[:, None] + self._ints[None, :]
            j = np.searchsorted(self._ints, tot)
            j = np.minimum(j, n - 1)
            ok = self._ints[j] == tot
        else:
            vals = self.values
            tot = vals[:, None] + vals[None, :]
            j = np.searchsorted(vals, tot)
            j = np.minimum(j, n - 1)
            # sums drift by a few ulp; prefer the nearer neighbor
            left = np.maximum(j - 1, 0)
            pick_left = np.abs(vals[left] - tot) < np.abs(vals[j] - tot)
            j = np.where(pick_left, left, j)
            tol = 4.0 * MERGE_REL_TOL * np.maximum(1.0, tot)
            ok = np.abs(vals[j] - tot) <= tol
        table = np.where(ok, j, -1).astype(np.int32)
        self._pair = table
        return table


@lru_cache(maxsize=128)
def exponent_grid(spec: SemigroupSpec, cutoff: float) -> ExponentGrid:
    return ExponentGrid(spec, float(cutoff))
