"""Exact arithmetic in cyclotomic fields Q(zeta_m).

An element is stored as integer coefficients in the power basis
``1, zeta, ..., zeta^(phi(m)-1)`` together with one positive common
denominator.  Elements of different conductors are combined by lifting both
to the least common multiple of the conductors.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd

from sympy import cyclotomic_poly, totient
from sympy.abc import x as _x


@lru_cache(maxsize=None)
def cyclotomic_coeffs(m: int) -> tuple:
    """Coefficients of the m-th cyclotomic polynomial, constant term first."""
    poly = cyclotomic_poly(m, _x, polys=True)
    return tuple(int(c) for c in reversed(poly.all_coeffs()))


@lru_cache(maxsize=None)
def power_table(m: int) -> tuple:
    """Row k holds the power-basis coordinates of zeta_m^k, for k = 0 .. m-1."""
    phi = int(totient(m))
    cyc = cyclotomic_coeffs(m)
    rows = []
    cur = [0] * phi
    cur[0] = 1
    for _ in range(m):
        rows.append(tuple(cur))
        # multiply by zeta and reduce zeta^phi = -(c_0 + ... + c_{phi-1} zeta^{phi-1})
        top = cur[-1]
        cur = [0] + cur[:-1]
        if top:
            cur = [c - top * cyc[i] for i, c in enumerate(cur)]
    return tuple(rows)


def _normalize(coeffs, den):
    if den < 0:
        coeffs = [-c for c in coeffs]
        den = -den
    g = den
    for c in coeffs:
        g = gcd(g, c)
        if g == 1:
            break
    if g > 1:
        coeffs = [c // g for c in coeffs]
        den //= g
    return tuple(coeffs), den


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


class Cyclotomic:
    """An element of Q(zeta_m)."""

    __slots__ = ("m", "coeffs", "den")

    def __init__(self, m: int, coeffs, den: int = 1):
        if m < 1:
            raise ValueError("conductor must be positive")
        phi = len(power_table(m)[0])
        coeffs = list(coeffs)
        if len(coeffs) != phi:
            raise ValueError(f"expected {phi} coefficients for conductor {m}, got {len(coeffs)}")
        self.m = m
        self.coeffs, self.den = _normalize(coeffs, den)

    # construction -----------------------------------------------------
    @classmethod
    def rational(cls, value, m: int = 1) -> "Cyclotomic":
        value = Fraction(value)
        phi = len(power_table(m)[0])
        return cls(m, [value.numerator] + [0] * (phi - 1), value.denominator)

    @classmethod
    def zeta(cls, m: int, k: int = 1) -> "Cyclotomic":
        return cls(m, power_table(m)[k % m])

    @classmethod
    def from_powers(cls, m: int, mult) -> "Cyclotomic":
        """Sum of mult[s] * zeta_m^s for a mapping or sequence ``mult``."""
        table = power_table(m)
        acc = [0] * len(table[0])
        items = mult.items() if isinstance(mult, dict) else enumerate(mult)
        for s, c in items:
            if c:
                for i, v in enumerate(table[s % m]):
                    if v:
                        acc[i] += c * v
        return cls(m, acc)

    @staticmethod
    def coerce(x, m: int = 1) -> "Cyclotomic":
        if isinstance(x, Cyclotomic):
            return x
        if isinstance(x, (int, Fraction)):
            return Cyclotomic.rational(x, m)
        raise TypeError(f"cannot coerce {type(x).__name__} to a cyclotomic number")

    # conductor handling ------------------------------------------------
    def lift(self, M: int) -> "Cyclotomic":
        """The same number written in Q(zeta_M); M must be a multiple of m."""
        if M == self.m:
            return self
        if M % self.m:
            raise ValueError(f"{M} is not a multiple of the conductor {self.m}")
        step = M // self.m
        table = power_table(M)
        acc = [0] * len(table[0])
        for i, c in enumerate(self.coeffs):
            if c:
                for j, v in enumerate(table[i * step]):
                    if v:
                        acc[j] += c * v
        return Cyclotomic(M, acc, self.den)

    def _common(self, other):
        other = Cyclotomic.coerce(other, self.m)
        if other.m == self.m:
            return self, other
        M = _lcm(self.m, other.m)
        return self.lift(M), other.lift(M)

    # arithmetic ---------------------------------------------------------
    def __add__(self, other):
        try:
            a, b = self._common(other)
        except TypeError:
            return NotImplemented
        return Cyclotomic(a.m, [x * b.den + y * a.den for x, y in zip(a.coeffs, b.coeffs)],
                          a.den * b.den)

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic(self.m, [-c for c in self.coeffs], self.den)

    def __sub__(self, other):
        try:
            return self + (-Cyclotomic.coerce(other, self.m))
        except TypeError:
            return NotImplemented

    def __rsub__(self, other):
        return Cyclotomic.coerce(other, self.m) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Fraction(other)
            return Cyclotomic(self.m, [c * other.numerator for c in self.coeffs],
                              self.den * other.denominator)
        try:
            a, b = self._common(other)
        except TypeError:
            return NotImplemented
        if b.is_rational:
            return a * Fraction(b.coeffs[0], b.den)
        if a.is_rational:
            return b * Fraction(a.coeffs[0], a.den)
        m = a.m
        table = power_table(m)
        phi = len(a.coeffs)
        conv = [0] * (2 * phi - 1)
        for i, x in enumerate(a.coeffs):
            if x:
                for j, y in enumerate(b.coeffs):
                    if y:
                        conv[i + j] += x * y
        acc = list(conv[:phi])
        for k in range(phi, len(conv)):
            c = conv[k]
            if c:
                for j, v in enumerate(table[k % m]):
                    if v:
                        acc[j] += c * v
        return Cyclotomic(m, acc, a.den * b.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Cyclotomic):
            if not other.is_rational:
                raise TypeError("division is only supported by rational numbers")
            other = other.to_fraction()
        other = Fraction(other)
        if other == 0:
            raise ZeroDivisionError("division by zero")
        return self * (1 / other)

    def conjugate(self) -> "Cyclotomic":
        """Complex conjugation zeta -> zeta^-1."""
        table = power_table(self.m)
        acc = [0] * len(self.coeffs)
        for i, c in enumerate(self.coeffs):
            if c:
                for j, v in enumerate(table[(-i) % self.m]):
                    if v:
                        acc[j] += c * v
        return Cyclotomic(self.m, acc, self.den)

    def galois(self, k: int) -> "Cyclotomic":
        """Apply zeta -> zeta^k, k coprime to the conductor."""
        if gcd(k, self.m) != 1:
            raise ValueError("Galois exponent must be coprime to the conductor")
        table = power_table(self.m)
        acc = [0] * len(self.coeffs)
        for i, c in enumerate(self.coeffs):
            if c:
                for j, v in enumerate(table[(i * k) % self.m]):
                    if v:
                        acc[j] += c * v
        return Cyclotomic(self.m, acc, self.den)

    # predicates ---------------------------------------------------------
    @property
    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    @property
    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def to_fraction(self) -> Fraction:
        if not self.is_rational:
            raise ValueError(f"{self!r} is not rational")
        return Fraction(self.coeffs[0], self.den)

    def to_int(self) -> int:
        v = self.to_fraction()
        if v.denominator != 1:
            raise ValueError(f"{v} is not an integer")
        return v.numerator

    def __eq__(self, other) -> bool:
        try:
            a, b = self._common(other)
        except TypeError:
            return NotImplemented
        return a.den == b.den and a.coeffs == b.coeffs

    def __hash__(self) -> int:
        # conductor-independent: only rational numbers hash by value
        return hash(self.to_fraction()) if self.is_rational else hash("cyclotomic")

    def __bool__(self) -> bool:
        return not self.is_zero

    def to_json(self) -> dict:
        return {"conductor": self.m, "coeffs": list(self.coeffs), "den": self.den}

    def __repr__(self) -> str:
        if self.is_rational:
            return f"Cyclotomic({self.to_fraction()})"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{c}" if i == 0 else f"{c}*z{self.m}^{i}")
        body = " + ".join(terms)
        return f"Cyclotomic(({body})/{self.den})" if self.den != 1 else f"Cyclotomic({body})"


ZERO = Cyclotomic.rational(0)
ONE = Cyclotomic.rational(1)
