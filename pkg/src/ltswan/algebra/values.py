"""Rank-two valuation values in minus-log coordinates.

A value ``h = (r, gamma^i)`` of a rank-two valuation is stored through its
image ``(-log_q r, i)``.  The first coordinate is the *flat* part (a rational),
the second the *sharp* part (an integer exponent of the infinitesimal
generator ``gamma < 1``).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x)
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"expected an exact rational, got {type(x).__name__}")


def frac_str(x: Fraction) -> str:
    """Render a rational as ``"num/den"`` (or ``"num"`` for integers)."""
    x = as_fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


@total_ordering
@dataclass(frozen=True)
class RankTwoLog:
    """Minus-log image ``(flat, sharp)`` of a rank-two valuation value.

    Comparison operators compare the underlying *values* ``h``, not the pairs:
    a larger flat part means a smaller value, and for equal flat parts a
    larger sharp exponent means a smaller value.  So ``RankTwoLog(1, -9)`` is
    smaller than ``RankTwoLog(Fraction(1, 2), -9)``.

    The sharp part is an integer for genuine valuation values; the upper
    numbering produces rational sharp parts, which are allowed here too.
    """

    flat: Fraction
    sharp: Fraction

    def __init__(self, flat=0, sharp=0):
        object.__setattr__(self, "flat", as_fraction(flat))
        object.__setattr__(self, "sharp", as_fraction(sharp))

    def __lt__(self, other: "RankTwoLog") -> bool:
        if not isinstance(other, RankTwoLog):
            return NotImplemented
        if self.flat != other.flat:
            return self.flat > other.flat
        return self.sharp > other.sharp

    def __add__(self, other: "RankTwoLog") -> "RankTwoLog":
        # multiplication of values is addition of minus-logs
        return RankTwoLog(self.flat + other.flat, self.sharp + other.sharp)

    def __sub__(self, other: "RankTwoLog") -> "RankTwoLog":
        return RankTwoLog(self.flat - other.flat, self.sharp - other.sharp)

    @property
    def is_one(self) -> bool:
        return self.flat == 0 and self.sharp == 0

    def to_json(self) -> dict:
        sharp = self.sharp
        return {
            "flat": frac_str(self.flat),
            "sharp": int(sharp) if sharp.denominator == 1 else frac_str(sharp),
        }

    def __repr__(self) -> str:
        return f"RankTwoLog({frac_str(self.flat)}, {frac_str(self.sharp)})"


ONE = RankTwoLog(0, 0)


def cmp_value(a: RankTwoLog, b: RankTwoLog) -> int:
    """Three-way comparison of the values: -1 if a < b, 0 if equal, 1 if a > b."""
    if a == b:
        return 0
    return -1 if a < b else 1


def scale_sharp(v: RankTwoLog, degree: int) -> RankTwoLog:
    """Pull a value back along a finite map of the given local degree.

    The flat part is unchanged and the sharp part is multiplied by the degree.
    """
    if not isinstance(degree, int) or degree < 1:
        raise ValueError(f"degree must be a positive integer, got {degree!r}")
    return RankTwoLog(v.flat, v.sharp * degree)
