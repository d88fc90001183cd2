"""Holomorphic curves in tropical projective space.

A curve is an ordered tuple of at least two entire coordinates with no
root common to all of them (a reduced representation).  Its Cartan
characteristic is built from the coordinate envelope and is invariant
under adding a common affine function to every coordinate.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import BadCoefficients, CommonRoot, CommonRoots, NotEntire
from .maxplus import MaxPlusValue, RationalLike, as_fraction
from .linalg import linear_combination
from .nevanlinna import characteristic, counting
from .piecewise import PiecewiseLinearFunction, envelope, tminus, tropical_gcd


@dataclass(frozen=True)
class CartanSample:
    r: Fraction
    T: Fraction


@dataclass(frozen=True)
class TropicalCurve:
    coordinates: tuple[PiecewiseLinearFunction, ...]
    envelope: PiecewiseLinearFunction

    @property
    def dimension(self) -> int:
        return len(self.coordinates) - 1


def validate_reduced(coords: Sequence[PiecewiseLinearFunction]) -> TropicalCurve:
    """Check entirety of every coordinate and the no-common-root rule."""
    if len(coords) < 2:
        raise ValueError("a curve needs at least two coordinates")
    for k, g in enumerate(coords):
        if not g.is_entire:
            raise NotEntire("curve coordinate is not entire", index=k)
    for event in coords[0].events():
        x = event.location
        if all(g.omega(x) > 0 for g in coords):
            raise CommonRoot(x)
    return TropicalCurve(tuple(coords), envelope(list(coords)))


def cartan_characteristic(curve: TropicalCurve, r: RationalLike) -> CartanSample:
    """Half-sum of the coordinate envelope at -r and r, less its value at 0."""
    rr = as_fraction(r)
    if rr < 0:
        raise ValueError("radius must be nonnegative")
    F = curve.envelope
    return CartanSample(rr, (F(rr) + F(-rr)) / 2 - F(0))


def reanchor(curve: TropicalCurve, alpha: RationalLike, beta: RationalLike) -> TropicalCurve:
    """Equivalent reduced representation: add alpha*x + beta to every coordinate."""
    coords = [g.add_affine(alpha, beta) for g in curve.coordinates]
    return validate_reduced(coords)


def nmin(
    h1: PiecewiseLinearFunction, h2: PiecewiseLinearFunction, r: RationalLike
) -> Fraction:
    """Minimum of the two root-counting integrals of entire functions."""
    if not h1.is_entire:
        raise NotEntire(index=0)
    if not h2.is_entire:
        raise NotEntire(index=1)
    return min(counting(h1.negate(), r), counting(h2.negate(), r))


def common_root_counting(
    h1: PiecewiseLinearFunction, h2: PiecewiseLinearFunction, r: RationalLike
) -> Fraction:
    """Counting integral of the roots shared by two entire functions, with
    pointwise-minimum multiplicities (the roots of their gcd)."""
    u = tropical_gcd(h1, h2, 0)
    return counting(u.negate(), r)


def quotient_bound_residual(
    curve: TropicalCurve,
    coeffs1: Sequence[MaxPlusValue],
    coeffs2: Sequence[MaxPlusValue],
    r: RationalLike,
) -> Fraction:
    """Exact slack of the combination-quotient bound.

    For combinations fh, ft of the curve coordinates without common
    roots, the characteristic of fh - ft plus the shared-root counting
    stays below the curve characteristic plus the largest coefficient,
    the largest coordinate value at 0, and minus ft(0).  Returns
    LHS - RHS, which is <= 0 at every radius.
    """
    fh = linear_combination(curve.coordinates, coeffs1)
    ft = linear_combination(curve.coordinates, coeffs2)
    if fh is None or ft is None:
        raise BadCoefficients("every combination needs at least one finite coefficient")
    shared = [
        e.location
        for e in fh.events()
        if e.omega > 0 and ft.omega(e.location) > 0
    ]
    if shared:
        raise CommonRoots(f"combinations share roots at {shared}")
    finite = [a.value for a in list(coeffs1) + list(coeffs2) if not a.is_bottom]
    cap = max(finite)
    u = tropical_gcd(fh, ft, ft(0))
    lhs = characteristic(tminus(fh, ft), r).T + counting(u.negate(), r)
    rhs = (
        cartan_characteristic(curve, r).T
        + cap
        + max(g(0) for g in curve.coordinates)
        - ft(0)
    )
    return lhs - rhs
