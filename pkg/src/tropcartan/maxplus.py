"""The scalar max-plus semiring over exact rationals.

Elements are either finite ``Fraction`` values or the bottom element
(minus infinity), which is neutral for tropical addition (max) and
absorbing for tropical multiplication (ordinary addition).  All
arithmetic is exact; floats are rejected so that downstream identities
can be asserted with equality instead of tolerances.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Union

from .errors import BottomPower, DivisionByBottom

RationalLike = Union[int, str, Fraction]


def as_fraction(value: RationalLike) -> Fraction:
    """Coerce ints, strings like ``"7/2"`` or ``"1.5"``, and Fractions."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"expected an exact rational, got {type(value).__name__}")


class MaxPlusValue:
    """A finite rational or the bottom element of the semiring."""

    __slots__ = ("_value",)

    def __init__(self, value: Fraction | None):
        self._value = value

    @classmethod
    def finite(cls, value: RationalLike) -> "MaxPlusValue":
        return cls(as_fraction(value))

    @property
    def is_bottom(self) -> bool:
        return self._value is None

    @property
    def value(self) -> Fraction:
        if self._value is None:
            raise ValueError("bottom element has no finite value")
        return self._value

    def __eq__(self, other) -> bool:
        if not isinstance(other, MaxPlusValue):
            return NotImplemented
        return self._value == other._value

    def __hash__(self) -> int:
        return hash(("maxplus", self._value))

    def __lt__(self, other: "MaxPlusValue") -> bool:
        if self._value is None:
            return other._value is not None
        if other._value is None:
            return False
        return self._value < other._value

    def __le__(self, other: "MaxPlusValue") -> bool:
        return self == other or self < other

    def __repr__(self) -> str:
        return "MaxPlusValue(bottom)" if self._value is None else f"MaxPlusValue({self._value})"

    def to_token(self) -> str:
        return "-inf" if self._value is None else str(self._value)

    @classmethod
    def from_token(cls, token: str) -> "MaxPlusValue":
        token = token.strip()
        if token == "-inf":
            return BOTTOM
        return cls.finite(token)


BOTTOM = MaxPlusValue(None)
UNIT = MaxPlusValue(Fraction(0))


def finite(value: RationalLike) -> MaxPlusValue:
    return MaxPlusValue.finite(value)


def oplus(a: MaxPlusValue, b: MaxPlusValue) -> MaxPlusValue:
    """Tropical addition, the maximum with bottom as least element."""
    return b if a < b else a


def odot(a: MaxPlusValue, b: MaxPlusValue) -> MaxPlusValue:
    """Tropical multiplication, ordinary addition with bottom absorbing."""
    if a.is_bottom or b.is_bottom:
        return BOTTOM
    return MaxPlusValue(a.value + b.value)


def oslash(a: MaxPlusValue, b: MaxPlusValue) -> MaxPlusValue:
    """Tropical division, ordinary subtraction; the divisor must be finite."""
    if b.is_bottom:
        raise DivisionByBottom("tropical division by bottom is undefined")
    if a.is_bottom:
        return BOTTOM
    return MaxPlusValue(a.value - b.value)


def opower(a: MaxPlusValue, k: RationalLike) -> MaxPlusValue:
    """Tropical power, ordinary scaling: finite a maps to k*a."""
    exponent = as_fraction(k)
    if a.is_bottom:
        if exponent <= 0:
            raise BottomPower("bottom cannot be raised to a non-positive power")
        return BOTTOM
    return MaxPlusValue(exponent * a.value)
