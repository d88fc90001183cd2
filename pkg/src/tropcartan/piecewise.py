"""Exact continuous piecewise-linear functions on the real line.

A function is stored in canonical form: a left end slope, a strictly
increasing tuple of breakpoints (x, y) at which the slope actually
jumps, a right end slope, and an anchor point that pins the affine case.
Slope jumps classify points as roots (positive jump) or poles (negative
jump); multiplicities are the jump magnitudes.  Everything is a
``fractions.Fraction``, so equality of canonical forms is equality of
functions.
"""

from __future__ import annotations

import enum
from bisect import bisect_left, bisect_right
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Optional, Sequence

from .errors import NotEntire
from .maxplus import RationalLike, as_fraction

Point = tuple[Fraction, Fraction]


class EventKind(enum.Enum):
    ROOT = "root"
    POLE = "pole"


@dataclass(frozen=True)
class RootPoleEvent:
    """A slope jump: a root when positive, a pole when negative."""

    location: Fraction
    omega: Fraction

    @property
    def kind(self) -> EventKind:
        return EventKind.ROOT if self.omega > 0 else EventKind.POLE

    @property
    def multiplicity(self) -> Fraction:
        return abs(self.omega)


@dataclass(frozen=True)
class PiecewiseLinearFunction:
    left_slope: Fraction
    breakpoints: tuple[Point, ...]
    right_slope: Fraction
    anchor: Point

    @cached_property
    def _xs(self) -> tuple[Fraction, ...]:
        return tuple(x for x, _ in self.breakpoints)

    @cached_property
    def _slopes(self) -> tuple[Fraction, ...]:
        """Slopes of the len(breakpoints)+1 affine pieces, left to right."""
        pts = self.breakpoints
        if not pts:
            return (self.left_slope,)
        interior = tuple(
            (pts[i + 1][1] - pts[i][1]) / (pts[i + 1][0] - pts[i][0])
            for i in range(len(pts) - 1)
        )
        return (self.left_slope,) + interior + (self.right_slope,)

    @classmethod
    def affine(cls, slope: RationalLike, value_at_zero: RationalLike) -> "PiecewiseLinearFunction":
        s = as_fraction(slope)
        v = as_fraction(value_at_zero)
        return cls(s, (), s, (Fraction(0), v))

    @classmethod
    def constant(cls, value: RationalLike) -> "PiecewiseLinearFunction":
        return cls.affine(0, value)

    @classmethod
    def from_points(
        cls,
        left_slope: RationalLike,
        points: Iterable[tuple[RationalLike, RationalLike]],
        right_slope: RationalLike,
    ) -> "PiecewiseLinearFunction":
        pts = [(as_fraction(x), as_fraction(y)) for x, y in points]
        return _canonical(as_fraction(left_slope), pts, as_fraction(right_slope))

    @classmethod
    def from_slope_events(
        cls,
        left_slope: RationalLike,
        events: Iterable[tuple[RationalLike, RationalLike]],
        anchor_x: RationalLike = 0,
        anchor_y: RationalLike = 0,
    ) -> "PiecewiseLinearFunction":
        """Build the function with given left slope and slope jumps, then
        translate vertically so it passes through the anchor point."""
        ls = as_fraction(left_slope)
        evs = sorted(
            ((as_fraction(x), as_fraction(j)) for x, j in events if as_fraction(j) != 0),
            key=lambda e: e[0],
        )
        ax, ay = as_fraction(anchor_x), as_fraction(anchor_y)
        if not evs:
            return cls.affine(ls, ay - ls * ax)
        xs = [x for x, _ in evs]
        if len(set(xs)) != len(xs):
            raise ValueError("event locations must be distinct")
        pts: list[Point] = [(evs[0][0], Fraction(0))]
        slope = ls + evs[0][1]
        for x, jump in evs[1:]:
            px, py = pts[-1]
            pts.append((x, py + slope * (x - px)))
            slope += jump
        rs = slope
        raw = _canonical(ls, pts, rs)
        delta = ay - raw(ax)
        return raw.offset(delta)

    def __call__(self, x: RationalLike) -> Fraction:
        return self.evaluate(x)

    def evaluate(self, x: RationalLike) -> Fraction:
        xx = as_fraction(x)
        pts = self.breakpoints
        if not pts:
            ax, ay = self.anchor
            return ay + self.left_slope * (xx - ax)
        xs = self._xs
        if xx <= xs[0]:
            x0, y0 = pts[0]
            return y0 + self.left_slope * (xx - x0)
        if xx >= xs[-1]:
            x1, y1 = pts[-1]
            return y1 + self.right_slope * (xx - x1)
        i = bisect_right(xs, xx) - 1
        x0, y0 = pts[i]
        return y0 + self._slopes[i + 1] * (xx - x0)

    def omega(self, x: RationalLike) -> Fraction:
        """Right slope minus left slope at x; zero off breakpoints."""
        xx = as_fraction(x)
        xs = self._xs
        i = bisect_left(xs, xx)
        if i < len(xs) and xs[i] == xx:
            return self._slopes[i + 1] - self._slopes[i]
        return Fraction(0)

    def events(
        self,
        lo: Optional[RationalLike] = None,
        hi: Optional[RationalLike] = None,
    ) -> tuple[RootPoleEvent, ...]:
        """All slope-jump events, optionally clipped to the closed [lo, hi]."""
        lov = None if lo is None else as_fraction(lo)
        hiv = None if hi is None else as_fraction(hi)
        out = []
        slopes = self._slopes
        for i, (x, _) in enumerate(self.breakpoints):
            if lov is not None and x < lov:
                continue
            if hiv is not None and x > hiv:
                continue
            out.append(RootPoleEvent(x, slopes[i + 1] - slopes[i]))
        return tuple(out)

    @property
    def is_entire(self) -> bool:
        """No poles, equivalently a convex graph."""
        slopes = self._slopes
        return all(slopes[i] <= slopes[i + 1] for i in range(len(slopes) - 1))

    @property
    def is_tropical_unit(self) -> bool:
        """Affine: neither roots nor poles."""
        return not self.breakpoints

    @property
    def is_constant(self) -> bool:
        return not self.breakpoints and self.left_slope == 0

    def shift(self, c: RationalLike) -> "PiecewiseLinearFunction":
        """The function x -> f(x + c)."""
        cc = as_fraction(c)
        if cc == 0:
            return self
        if not self.breakpoints:
            return PiecewiseLinearFunction.affine(self.left_slope, self(cc))
        pts = tuple((x - cc, y) for x, y in self.breakpoints)
        return PiecewiseLinearFunction(self.left_slope, pts, self.right_slope, pts[0])

    def offset(self, c: RationalLike) -> "PiecewiseLinearFunction":
        """The function x -> f(x) + c."""
        cc = as_fraction(c)
        if cc == 0:
            return self
        if not self.breakpoints:
            return PiecewiseLinearFunction.affine(self.left_slope, self(0) + cc)
        pts = tuple((x, y + cc) for x, y in self.breakpoints)
        return PiecewiseLinearFunction(self.left_slope, pts, self.right_slope, pts[0])

    def add_affine(self, slope: RationalLike, intercept: RationalLike) -> "PiecewiseLinearFunction":
        """The function x -> f(x) + slope*x + intercept."""
        s = as_fraction(slope)
        b = as_fraction(intercept)
        if not self.breakpoints:
            return PiecewiseLinearFunction.affine(self.left_slope + s, self(0) + b)
        pts = tuple((x, y + s * x + b) for x, y in self.breakpoints)
        return PiecewiseLinearFunction(self.left_slope + s, pts, self.right_slope + s, pts[0])

    def scale(self, k: RationalLike) -> "PiecewiseLinearFunction":
        """Pointwise rational multiple k*f; k < 0 swaps roots and poles."""
        kk = as_fraction(k)
        if kk == 0 or not self.breakpoints:
            return PiecewiseLinearFunction.affine(kk * self.left_slope, kk * self(0))
        pts = tuple((x, kk * y) for x, y in self.breakpoints)
        return PiecewiseLinearFunction(kk * self.left_slope, pts, kk * self.right_slope, pts[0])

    def infimum(self) -> Optional[Fraction]:
        """Exact global infimum, or None when the function is unbounded below."""
        if self.left_slope > 0 or self.right_slope < 0:
            return None
        if not self.breakpoints:
            return self.anchor[1] if self.left_slope == 0 else None
        return min(y for _, y in self.breakpoints)

    def supremum(self) -> Optional[Fraction]:
        inf = self.negate().infimum()
        return None if inf is None else -inf

    def negate(self) -> "PiecewiseLinearFunction":
        return self.scale(-1)


def _canonical(
    left_slope: Fraction, points: list[Point], right_slope: Fraction
) -> PiecewiseLinearFunction:
    pts = sorted(points)
    dedup: list[Point] = []
    for x, y in pts:
        if dedup and dedup[-1][0] == x:
            if dedup[-1][1] != y:
                raise ValueError(f"conflicting values at x={x}")
            continue
        dedup.append((x, y))
    if not dedup:
        if left_slope != right_slope:
            raise ValueError("affine function needs equal end slopes")
        return PiecewiseLinearFunction(left_slope, (), right_slope, (Fraction(0), Fraction(0)))
    slopes = [left_slope]
    for i in range(len(dedup) - 1):
        (x0, y0), (x1, y1) = dedup[i], dedup[i + 1]
        slopes.append((y1 - y0) / (x1 - x0))
    slopes.append(right_slope)
    kept = [dedup[i] for i in range(len(dedup)) if slopes[i] != slopes[i + 1]]
    if not kept:
        x0, y0 = dedup[0]
        return PiecewiseLinearFunction(
            left_slope, (), left_slope, (Fraction(0), y0 - left_slope * x0)
        )
    return PiecewiseLinearFunction(left_slope, tuple(kept), right_slope, kept[0])


def _merged_xs(f: PiecewiseLinearFunction, g: PiecewiseLinearFunction) -> list[Fraction]:
    return sorted({x for x, _ in f.breakpoints} | {x for x, _ in g.breakpoints})


def tplus(f: PiecewiseLinearFunction, g: PiecewiseLinearFunction) -> PiecewiseLinearFunction:
    """Pointwise sum, the tropical product of functions."""
    xs = _merged_xs(f, g)
    if not xs:
        return PiecewiseLinearFunction.affine(
            f.left_slope + g.left_slope, f(0) + g(0)
        )
    pts = [(x, f(x) + g(x)) for x in xs]
    return _canonical(f.left_slope + g.left_slope, pts, f.right_slope + g.right_slope)


def tminus(f: PiecewiseLinearFunction, g: PiecewiseLinearFunction) -> PiecewiseLinearFunction:
    """Pointwise difference, the tropical quotient of functions."""
    return tplus(f, g.negate())


def negate(f: PiecewiseLinearFunction) -> PiecewiseLinearFunction:
    return f.negate()


def tmax(f: PiecewiseLinearFunction, g: PiecewiseLinearFunction) -> PiecewiseLinearFunction:
    """Pointwise maximum with exactly solved crossing breakpoints."""
    xs = _merged_xs(f, g)
    if not xs:
        dls = f.left_slope - g.left_slope
        if dls == 0:
            return f if f(0) >= g(0) else g
        d0 = f(0) - g(0)
        # single crossing of two non-parallel lines
        cross = -d0 / dls
        y = f(cross)
        lo = min(f.left_slope, g.left_slope)
        hi = max(f.left_slope, g.left_slope)
        return _canonical(lo, [(cross, y)], hi)

    candidates = set(xs)
    # crossings inside each finite region
    for a, b in zip(xs, xs[1:]):
        da = f(a) - g(a)
        db = f(b) - g(b)
        if (da > 0 > db) or (da < 0 < db):
            cross = a + (b - a) * da / (da - db)
            candidates.add(cross)
    # crossings on the two rays
    first, last = xs[0], xs[-1]
    dls = f.left_slope - g.left_slope
    if dls != 0:
        cross = first - (f(first) - g(first)) / dls
        if cross < first:
            candidates.add(cross)
    drs = f.right_slope - g.right_slope
    if drs != 0:
        cross = last - (f(last) - g(last)) / drs
        if cross > last:
            candidates.add(cross)

    ordered = sorted(candidates)
    pts = [(x, max(f(x), g(x))) for x in ordered]
    probe_left = ordered[0] - 1
    left = f.left_slope if f(probe_left) >= g(probe_left) else g.left_slope
    probe_right = ordered[-1] + 1
    right = f.right_slope if f(probe_right) >= g(probe_right) else g.right_slope
    return _canonical(left, pts, right)


def tmin(f: PiecewiseLinearFunction, g: PiecewiseLinearFunction) -> PiecewiseLinearFunction:
    return tmax(f.negate(), g.negate()).negate()


def envelope(functions: Sequence[PiecewiseLinearFunction]) -> PiecewiseLinearFunction:
    if not functions:
        raise ValueError("envelope of an empty family is undefined")
    acc = functions[0]
    for fn in functions[1:]:
        acc = tmax(acc, fn)
    return acc


def dominates(f: PiecewiseLinearFunction, g: PiecewiseLinearFunction) -> bool:
    """Whether f >= g holds pointwise on all of R (exact)."""
    return tmax(f, g) == f


@dataclass(frozen=True)
class TropicalTermList:
    """Terms (coefficient, exponent) of a max-of-lines expression, with
    strictly increasing exponents and finite coefficients."""

    terms: tuple[tuple[Fraction, Fraction], ...]

    def __post_init__(self):
        exps = [e for _, e in self.terms]
        if any(exps[i] >= exps[i + 1] for i in range(len(exps) - 1)):
            raise ValueError("exponents must be strictly increasing")

    @classmethod
    def of(cls, pairs: Iterable[tuple[RationalLike, RationalLike]]) -> "TropicalTermList":
        return cls(tuple((as_fraction(c), as_fraction(e)) for c, e in pairs))

    def envelope(self) -> PiecewiseLinearFunction:
        if not self.terms:
            raise ValueError("term list must be nonempty")
        lines = [PiecewiseLinearFunction.affine(e, c) for c, e in self.terms]
        return envelope(lines)

    def evaluate_max(self, x: RationalLike) -> Fraction:
        xx = as_fraction(x)
        return max(c + e * xx for c, e in self.terms)


def from_terms(
    numerator: TropicalTermList, denominator: TropicalTermList
) -> PiecewiseLinearFunction:
    """Max-of-lines envelope of the numerator minus that of the denominator."""
    return tminus(numerator.envelope(), denominator.envelope())


def to_terms(
    f: PiecewiseLinearFunction, a0: RationalLike = 0, b0: RationalLike = 0
) -> tuple[TropicalTermList, TropicalTermList, tuple[Fraction, Fraction]]:
    """Decompose f into numerator and denominator term lists built from its
    roots and poles, plus the affine unit factor (value at 0, slope) that
    makes the round trip exact:

        from_terms(num, den) + (unit_slope * x + unit_value) == f
    """
    a0f, b0f = as_fraction(a0), as_fraction(b0)
    roots = [(e.location, e.omega) for e in f.events() if e.omega > 0]
    poles = [(e.location, -e.omega) for e in f.events() if e.omega < 0]

    def build(c0: Fraction, evs: list[tuple[Fraction, Fraction]]) -> TropicalTermList:
        terms = [(c0, Fraction(0))]
        coeff, exp = c0, Fraction(0)
        for loc, mult in evs:
            coeff = coeff - loc * mult
            exp = exp + mult
            terms.append((coeff, exp))
        return TropicalTermList(tuple(terms))

    num = build(a0f, roots)
    den = build(b0f, poles)
    rebuilt = from_terms(num, den)
    diff = tminus(f, rebuilt)
    if diff.breakpoints:
        raise AssertionError("decomposition residue is not affine")
    return num, den, (diff(0), diff.left_slope)


def plus_part(f: PiecewiseLinearFunction) -> PiecewiseLinearFunction:
    return tmax(f, PiecewiseLinearFunction.constant(0))


def entire_decomposition(
    f: PiecewiseLinearFunction,
) -> tuple[PiecewiseLinearFunction, PiecewiseLinearFunction]:
    """Write f = h - g with h, g entire and no common roots.

    g clears the poles of f: its slope jumps are max(0, -omega_f)
    pointwise and g(0) = 0.  The end slopes are balanced so that a single
    pole of multiplicity 2m yields the symmetric factor |x - location|^m.
    """
    poles = [(e.location, e.multiplicity) for e in f.events() if e.omega < 0]
    total = sum((m for _, m in poles), Fraction(0))
    g = PiecewiseLinearFunction.from_slope_events(-total / 2, poles, 0, 0)
    h = tplus(f, g)
    return h, g


def tropical_gcd(
    f1: PiecewiseLinearFunction,
    f2: PiecewiseLinearFunction,
    anchor_value: RationalLike = 0,
) -> PiecewiseLinearFunction:
    """Greatest common entire factor: slope jumps are the pointwise minimum
    of the inputs' jumps, left slope the minimum of their left slopes, and
    the value at 0 is anchor_value.  Both quotients f_i - gcd are entire
    and share no roots."""
    if not f1.is_entire:
        raise NotEntire("tropical_gcd needs entire inputs", index=0)
    if not f2.is_entire:
        raise NotEntire("tropical_gcd needs entire inputs", index=1)
    xs = sorted({e.location for e in f1.events()} | {e.location for e in f2.events()})
    events = []
    for x in xs:
        jump = min(f1.omega(x), f2.omega(x))
        if jump != 0:
            events.append((x, jump))
    ls = min(f1.left_slope, f2.left_slope)
    return PiecewiseLinearFunction.from_slope_events(ls, events, 0, anchor_value)
