"""Newton polygons with values in Q x Q (lexicographic), and the tower bookkeeping.

The multiplication-by-pi series is modelled by phi(X) = pi X + T X^q + X^(q^2)
with val(pi) = (1, 0), val(T) = (0, 1), val(1) = (0, 0).  Root valuations of
phi and of phi(X) - u are read off the lower hull; they give an oracle for the
ramification values that is independent of the closed formula in ``ramify``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .algebra.rings import make_ring
from .algebra.values import RankTwoLog, frac_str

Val = tuple  # (pi-adic, T-adic), compared lexicographically


def _v(a, b=0) -> Val:
    return (Fraction(a), Fraction(b))


def _sub(x: Val, y: Val) -> Val:
    return (x[0] - y[0], x[1] - y[1])


def _add(x: Val, y: Val) -> Val:
    return (x[0] + y[0], x[1] + y[1])


def _scale(x: Val, c) -> Val:
    return (x[0] * c, x[1] * c)


def _val_json(x: Val) -> list:
    return [frac_str(x[0]), frac_str(x[1])]


class DegenerateInput(ValueError):
    """Fewer than two support points, or repeated exponents."""


@dataclass(frozen=True)
class Segment:
    start: int
    end: int
    slope: Val

    @property
    def length(self) -> int:
        return self.end - self.start

    @property
    def root_valuation(self) -> Val:
        """Valuation of each of the ``length`` roots on this segment."""
        return (-self.slope[0], -self.slope[1])


@dataclass(frozen=True)
class NewtonPolygon:
    points: tuple
    vertices: tuple
    segments: tuple

    def to_json(self) -> dict:
        return {
            "points": [[e, _val_json(v)] for e, v in self.points],
            "hull": [[e, _val_json(v)] for e, v in self.vertices],
            "slopes": [{"from": s.start, "to": s.end, "slope": _val_json(s.slope)}
                       for s in self.segments],
        }


def lower_hull(points: Iterable) -> NewtonPolygon:
    """Lower convex hull of (exponent, valuation) points, valuations in Q x Q."""
    pts = sorted((int(e), (Fraction(v[0]), Fraction(v[1]))) for e, v in points)
    if len(pts) < 2:
        raise DegenerateInput("a Newton polygon needs at least two points")
    if len({e for e, _ in pts}) != len(pts):
        raise DegenerateInput("exponents must be distinct")

    def above_or_on(a, b, c) -> bool:
        # b lies on or above the chord a-c: (yb - ya)(xc - xa) >= (yc - ya)(xb - xa)
        lhs = _scale(_sub(b[1], a[1]), c[0] - a[0])
        rhs = _scale(_sub(c[1], a[1]), b[0] - a[0])
        return lhs >= rhs

    hull: list = []
    for p in pts:
        while len(hull) >= 2 and above_or_on(hull[-2], hull[-1], p):
            hull.pop()
        hull.append(p)
    segs = tuple(
        Segment(a[0], b[0], _scale(_sub(b[1], a[1]), Fraction(1, b[0] - a[0])))
        for a, b in zip(hull, hull[1:])
    )
    return NewtonPolygon(tuple(pts), tuple(hull), segs)


def phi_points(q: int) -> list:
    """Support of pi X + T X^q + X^(q^2)."""
    return [(1, _v(1, 0)), (q, _v(0, 1)), (q * q, _v(0, 0))]


@dataclass(frozen=True)
class LevelValuation:
    m: int
    flat: Fraction
    raw_sharp: Fraction
    level_sharp: Fraction
    normalized_sharp: Fraction

    def to_json(self) -> dict:
        return {k: (frac_str(v) if isinstance(v, Fraction) else v)
                for k, v in self.__dict__.items()}


def sharp_normalization(q: int, m: int) -> int:
    """Factor turning a raw T-adic slope at level m into the level-m sharp exponent.

    It is the product of the Eisenstein degree (q-1)q^(m-1) of the level-m
    residue tower and the inseparable residue degree q^m.
    """
    return (q - 1) * q ** (m - 1) * q ** m


def u_valuations(q: int, n: int) -> list:
    """Valuations of the level structures u_1 .. u_n from iterated hulls.

    u_1 is a root on the first segment of phi; u_(m+1) is a root of
    phi(X) - u_m on the first segment of that polynomial's hull.
    """
    if n < 1:
        raise ValueError("n must be positive")
    seg = lower_hull(phi_points(q)).segments[0]
    cur = seg.root_valuation
    out = []
    for m in range(1, n + 1):
        if m > 1:
            poly = [(0, cur)] + phi_points(q)
            seg = lower_hull(poly).segments[0]
            if seg.start != 0 or seg.end != q:
                raise ArithmeticError("unexpected first segment for phi(X) - u")
            cur = seg.root_valuation
        level = cur[1] * sharp_normalization(q, m)
        out.append(LevelValuation(m, cur[0], cur[1], level, level * q ** (2 * (n - m))))
    return out


def v_sharps(q: int, n: int) -> list:
    """Sharp parts q^(2(n-m)) of v_1 .. v_n (their flat parts vanish)."""
    return [Fraction(q ** (2 * (n - m))) for m in range(1, n + 1)]


def h_from_newton(q: int, n: int) -> list:
    """Jump values rebuilt from the u_m and v_m valuations, ordered like the filtration.

    Congruence layers give (0, #v_(n-i) - #v_n); unipotent layers give
    (flat u_(n-j), #u - #v_n).
    """
    us = u_valuations(q, n)
    vs = v_sharps(q, n)
    out = []
    for i in range(1, n):
        out.append(RankTwoLog(0, vs[n - i - 1] - vs[n - 1]))
    for j in range(n):
        u = us[n - j - 1]
        out.append(RankTwoLog(u.flat, u.normalized_sharp - vs[n - 1]))
    return out


@dataclass(frozen=True)
class TowerStep:
    m: int
    degree: int
    root_val: Fraction
    single_segment: bool


def eisenstein_tower(q: int, n: int) -> dict:
    """T-adic valuations of z_1 .. z_n along the residue tower and its degrees.

    Step 1 is X^(q-1) - T; step m+1 is X^q + T^(q^m) X - z_m.  Every step must
    have a one-segment polygon, and the denominator of val z_n must equal the
    total degree (the tower is totally ramified).
    """
    steps = []
    poly = [(0, _v(0, 1)), (q - 1, _v(0, 0))]
    hull = lower_hull(poly)
    val = hull.segments[0].root_valuation[1]
    steps.append(TowerStep(1, q - 1, val, len(hull.segments) == 1))
    for m in range(1, n):
        poly = [(0, _v(0, val)), (1, _v(0, q ** m)), (q, _v(0, 0))]
        hull = lower_hull(poly)
        val = hull.segments[0].root_valuation[1]
        steps.append(TowerStep(m + 1, q, val, len(hull.segments) == 1))
    if not all(s.single_segment for s in steps):
        raise ArithmeticError("a tower step is not Eisenstein")
    degree = 1
    for s in steps:
        degree *= s.degree
    return {
        "steps": [{"m": s.m, "degree": s.degree, "val_z": frac_str(s.root_val)} for s in steps],
        "degree": degree,
        "expected_degree": (q - 1) * q ** (n - 1),
        "totally_ramified": steps[-1].root_val.denominator == degree,
    }


# polynomials over F_q[T] ------------------------------------------------------

class FqTX:
    """Sparse polynomials in X and T over F_q; keys are (deg_X, deg_T)."""

    def __init__(self, q: int, terms=None):
        self.q = q
        self.field = _field(q)
        self.terms = {k: c for k, c in (terms or {}).items() if c}

    @classmethod
    def monomial(cls, q: int, dx: int, dt: int = 0, c: int = 1) -> "FqTX":
        return cls(q, {(dx, dt): c})

    def __add__(self, other: "FqTX") -> "FqTX":
        add = self.field.add
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = add[out.get(k, 0)][c]
        return FqTX(self.q, out)

    def __mul__(self, other: "FqTX") -> "FqTX":
        add, mul = self.field.add, self.field.mul
        out: dict = {}
        for (a, b), c in self.terms.items():
            for (d, e), f in other.terms.items():
                k = (a + d, b + e)
                out[k] = add[out.get(k, 0)][mul[c][f]]
        return FqTX(self.q, out)

    def frobenius(self) -> "FqTX":
        """The p-th power, computed termwise (valid in characteristic p)."""
        p = self.field.p
        mul = self.field.mul
        out = {}
        for (a, b), c in self.terms.items():
            cp = 1
            for _ in range(p):
                cp = mul[cp][c]
            out[(a * p, b * p)] = cp
        return FqTX(self.q, out)

    def power(self, k: int) -> "FqTX":
        p = self.field.p
        result = FqTX.monomial(self.q, 0)
        base = self
        while k:
            if k % p == 0:
                base = base.frobenius()
                k //= p
                continue
            result = result * base
            k -= 1
        return result

    def compose(self, inner: "FqTX") -> "FqTX":
        """self(inner(X)) with T untouched."""
        out = FqTX(self.q)
        cache: dict = {}
        for (dx, dt), c in sorted(self.terms.items()):
            if dx not in cache:
                cache[dx] = inner.power(dx)
            out = out + FqTX.monomial(self.q, 0, dt, c) * cache[dx]
        return out

    def __eq__(self, other) -> bool:
        return isinstance(other, FqTX) and self.q == other.q and self.terms == other.terms

    def __repr__(self) -> str:
        parts = []
        for (dx, dt), c in sorted(self.terms.items(), key=lambda kv: (kv[0][0], kv[0][1])):
            coef = "" if c == 1 else f"{c}*"
            parts.append(f"{coef}T^{dt}X^{dx}")
        return " + ".join(parts) or "0"


def _field(q: int):
    from sympy import factorint

    (p, f), = factorint(q).items()
    return make_ring(p, f, 1, "equal")


def residue_pi_series(q: int) -> FqTX:
    """The reduction T X^q + X^(q^2) of the multiplication-by-pi model."""
    return FqTX.monomial(q, q, 1) + FqTX.monomial(q, q * q)


def residue_factorization_check(q: int, n: int) -> dict:
    """Compare the n-fold composite of T X^q + X^(q^2) with E o E1 o ... o E(n-1)(X^(q^n))."""
    base = residue_pi_series(q)
    lhs = base
    for _ in range(n - 1):
        lhs = base.compose(lhs)
    rhs = FqTX.monomial(q, q ** n)
    for i in reversed(range(n)):
        e_i = FqTX.monomial(q, 1, q ** i) + FqTX.monomial(q, q)
        rhs = e_i.compose(rhs)
    return {"equal": lhs == rhs, "lhs": repr(lhs), "rhs": repr(rhs)}


def slope_stability(q: int, count: int = 100, seed: int = 0) -> dict:
    """Check that pi * c * X^j perturbations (j >= q, val c >= 0) keep the negative slopes."""
    base = dict(phi_points(q))
    ref = [s for s in lower_hull(base.items()).segments if s.slope < _v(0, 0)]
    rng = random.Random(seed)
    failures = []
    for k in range(count):
        pts = dict(base)
        for _ in range(rng.randint(1, 3)):
            j = rng.randint(q, 2 * q * q)
            a = Fraction(rng.randint(0, 4), rng.randint(1, 4))
            b = Fraction(rng.randint(0 if a == 0 else -6, 6), rng.randint(1, 4))
            val = _add(_v(1, 0), (a, b))
            # a sum of terms has valuation at least the minimum; keep the existing one
            # when it is smaller, as it then dominates
            pts[j] = min(pts[j], val) if j in pts else val
        segs = [s for s in lower_hull(pts.items()).segments if s.slope < _v(0, 0)]
        if segs != ref:
            failures.append(k)
    return {"stable": not failures, "count": count, "seed": seed, "failures": failures}
