"""Value-distribution functions for piecewise-linear functions.

The proximity function averages the positive part at the two endpoints
of [-r, r]; the counting function integrates the pole-multiplicity step
function; the characteristic is their sum.  All three are exact
rationals.  The only non-exact quantity in the whole package is the
hyper-order estimate, a floating-point regression slope, flagged as
such.
"""

from __future__ import annotations

import math
import statistics
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import InsufficientSamples
from .maxplus import RationalLike, as_fraction
from .piecewise import PiecewiseLinearFunction, plus_part, tminus

__all__ = [
    "CharacteristicSample",
    "HyperOrderEstimate",
    "plus_part",
    "proximity",
    "counting",
    "characteristic",
    "jensen_residual",
    "shift_proximity",
    "hyper_order_estimate",
    "characteristic_sweep",
]


@dataclass(frozen=True)
class CharacteristicSample:
    r: Fraction
    m: Fraction
    N: Fraction
    T: Fraction


@dataclass(frozen=True)
class HyperOrderEstimate:
    """NUMERIC: least-squares slope of log log T against log r."""

    value: float
    sample_radii: tuple[Fraction, ...]
    regression_residual: float


def _check_radius(r: RationalLike) -> Fraction:
    rr = as_fraction(r)
    if rr < 0:
        raise ValueError("radius must be nonnegative")
    return rr


def proximity(f: PiecewiseLinearFunction, r: RationalLike) -> Fraction:
    """m(r, f): half the sum of the positive part at r and at -r."""
    rr = _check_radius(r)
    return (max(Fraction(0), f(rr)) + max(Fraction(0), f(-rr))) / 2


def counting(f: PiecewiseLinearFunction, r: RationalLike) -> Fraction:
    """N(r, f): half-integral over [0, r] of the pole multiplicity count
    n(t, f), an exact finite sum of rectangle areas."""
    rr = _check_radius(r)
    total = Fraction(0)
    for event in f.events():
        if event.omega < 0 and abs(event.location) <= rr:
            total += event.multiplicity * (rr - abs(event.location))
    return total / 2


def characteristic(f: PiecewiseLinearFunction, r: RationalLike) -> CharacteristicSample:
    rr = _check_radius(r)
    m = proximity(f, rr)
    n = counting(f, rr)
    return CharacteristicSample(rr, m, n, m + n)


def jensen_residual(f: PiecewiseLinearFunction, r: RationalLike) -> Fraction:
    """T(r, f) - T(r, -f) - f(0); identically zero."""
    rr = _check_radius(r)
    return characteristic(f, rr).T - characteristic(f.negate(), rr).T - f(0)


def shift_proximity(f: PiecewiseLinearFunction, c: RationalLike, r: RationalLike) -> Fraction:
    """m(r, f(x+c) - f(x)); eventually constant in r for canonical f."""
    return proximity(tminus(f.shift(c), f), r)


def _log_fraction(value: Fraction) -> float:
    # avoids float overflow for very large exact radii or characteristics
    return math.log(value.numerator) - math.log(value.denominator)


def hyper_order_estimate(
    f: PiecewiseLinearFunction, radii: Sequence[RationalLike]
) -> HyperOrderEstimate:
    """Regression estimate of limsup log log T / log r over the given radii.

    Radii with T(r) <= 1 are skipped; at least three usable samples with
    non-constant characteristic are required.
    """
    usable: list[tuple[Fraction, Fraction]] = []
    for r in radii:
        rr = _check_radius(r)
        t = characteristic(f, rr).T
        if t > 1:
            usable.append((rr, t))
    if len(usable) < 3:
        raise InsufficientSamples(f"need at least 3 radii with T > 1, got {len(usable)}")
    values = {t for _, t in usable}
    if len(values) == 1:
        raise InsufficientSamples("characteristic is constant over the sampled radii")
    xs = [_log_fraction(rr) for rr, _ in usable]
    ys = [math.log(_log_fraction(t)) for _, t in usable]
    slope, intercept = statistics.linear_regression(xs, ys)
    residuals = [y - (slope * x + intercept) for x, y in zip(xs, ys)]
    rms = math.sqrt(sum(e * e for e in residuals) / len(residuals))
    return HyperOrderEstimate(slope, tuple(rr for rr, _ in usable), rms)


def characteristic_sweep(
    f: PiecewiseLinearFunction, radii: Sequence[RationalLike]
) -> list[CharacteristicSample]:
    return [characteristic(f, r) for r in radii]
