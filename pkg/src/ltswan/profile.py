"""Radius sweeps of the discriminant and Swan conductors.

Moving the boundary inward by s slides every ramification value: the flat
part of h(sigma) becomes ``flat + sharp * t`` where ``t = s / |H|`` for the
current stabilizer H.  Between events delta(s) is affine with slope equal to
the Swan conductor.  An event is a *death* (a slid flat reaches 0 with
negative sharp) or a *crossing* (two slid flats coincide, which reorders the
jumps but does not change any slope).
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from fractions import Fraction

from .algebra.groups import MatrixGroup, mat_mul
from .algebra.values import RankTwoLog, frac_str
from .chars.classfun import ClassFunction
from .chars.cyclotomic import Cyclotomic
from .ramify import Filtration


def slide(h: RankTwoLog, t) -> RankTwoLog:
    """Slide a value by t: flat + sharp * t, sharp unchanged."""
    t = Fraction(t)
    return RankTwoLog(h.flat + h.sharp * t, h.sharp)


@dataclass(frozen=True)
class Piece:
    s_lo: Fraction
    s_hi: Fraction
    intercept: Fraction  # delta(s) = intercept + slope * s on [s_lo, s_hi]
    slope: Fraction
    sw: int
    group_order: int

    def delta(self, s) -> Fraction:
        return self.intercept + self.slope * Fraction(s)

    def to_json(self) -> dict:
        return {"s_lo": frac_str(self.s_lo), "s_hi": frac_str(self.s_hi),
                "delta_intercept": frac_str(self.intercept),
                "delta_slope": frac_str(self.slope), "sw": self.sw,
                "group_order": self.group_order}


@dataclass(frozen=True)
class Profile:
    pieces: tuple
    breakpoints: tuple
    deaths: tuple
    crossings: tuple
    validity: str  # "exact" or "structural-break"
    s_end: Fraction  # end of the validated domain
    s_max: Fraction = field(default=Fraction(0))

    def delta(self, s) -> Fraction:
        s = Fraction(s)
        for p in self.pieces:
            if p.s_lo <= s <= p.s_hi:
                return p.delta(s)
        raise ValueError(f"s = {s} lies outside the validated domain [0, {self.s_end}]")

    def sw(self, s) -> int:
        """Right-continuous Swan conductor at s."""
        s = Fraction(s)
        for p in self.pieces:
            if p.s_lo <= s < p.s_hi:
                return p.sw
        if self.pieces and s == self.pieces[-1].s_hi:
            return self.pieces[-1].sw
        raise ValueError(f"s = {s} lies outside the validated domain [0, {self.s_end}]")

    def to_json(self) -> dict:
        return {
            "breakpoints": [frac_str(b) for b in self.breakpoints],
            "deaths": [frac_str(b) for b in self.deaths],
            "crossings": [frac_str(b) for b in self.crossings],
            "pieces": [p.to_json() for p in self.pieces],
            "validity": self.validity,
            "s_end": frac_str(self.s_end),
            "s_max": frac_str(self.s_max),
        }

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["s_lo", "s_hi", "delta_intercept", "delta_slope", "sw", "group_order"])
        for p in self.pieces:
            d = p.to_json()
            w.writerow([d["s_lo"], d["s_hi"], d["delta_intercept"], d["delta_slope"], d["sw"],
                        d["group_order"]])
        return buf.getvalue()


def _weights(chi: ClassFunction, elements) -> dict:
    """chi(1) - conj chi(sigma) for each sigma, summed over inverse pairs later."""
    deg = chi.degree
    return {x: deg - chi(x).conjugate() for x in elements}


def _is_closed(ring, elems: set) -> bool:
    return all(mat_mul(ring, x, y) in elems for x in elems for y in elems)


def _delta_and_slope(flats: dict, sharps: dict, weights: dict, order: int) -> tuple:
    """(delta, d delta / ds) from per-element flats; both sums are real, hence rational."""
    delta = Cyclotomic.rational(0)
    slope = Cyclotomic.rational(0)
    for x, f in flats.items():
        delta = delta + weights[x] * f
        slope = slope + weights[x] * sharps[x]
    return delta.to_fraction(), slope.to_fraction() / order


def _crossings(flats: dict, sharps: dict, order: int, s0: Fraction, s1: Fraction) -> set:
    """Interior s at which two distinct slid jump values exchange order."""
    pairs = {(flats[x], sharps[x]) for x in flats}
    out = set()
    pairs = sorted(pairs)
    for i, (fa, sa) in enumerate(pairs):
        for fb, sb in pairs[i + 1:]:
            if sa == sb:
                continue
            dt = (fb - fa) / (sa - sb)
            s = s0 + dt * order
            if s0 < s < s1:
                out.add(s)
    return out


def sweep(chi: ClassFunction, filt: Filtration, s_max) -> Profile:
    """Exact piecewise description of delta(s) and sw(s) for 0 <= s <= s_max."""
    s_max = Fraction(s_max)
    if s_max <= 0:
        raise ValueError("s_max must be positive")
    H: MatrixGroup = filt.group
    ring = H.ring
    ident = H.identity
    flats = {x: v.flat for x, v in filt.values.items()}
    sharps = {x: v.sharp for x, v in filt.values.items()}
    weights = _weights(chi, list(flats))
    s = Fraction(0)
    pieces, deaths, crossings = [], [], set()
    validity = "exact"
    while True:
        delta, slope = _delta_and_slope(flats, sharps, weights, H.order)
        if slope.denominator != 1:
            raise ArithmeticError(f"non-integral Swan conductor {slope}")
        dying = [flats[x] * H.order / -sharps[x] for x in flats if sharps[x] < 0 and flats[x] > 0]
        s_next = s + min(dying) if dying else None
        s_hi = s_max if s_next is None or s_next >= s_max else s_next
        crossings |= _crossings(flats, sharps, H.order, s, s_hi)
        pieces.append(Piece(s, s_hi, delta - slope * s, slope, int(slope), H.order))
        if s_hi == s_max:
            break
        # advance to the death and drop the elements whose flat reached 0
        dt = (s_hi - s) / H.order
        flats = {x: f + sharps[x] * dt for x, f in flats.items()}
        s = s_hi
        deaths.append(s)
        survivors = {x for x in flats if not (sharps[x] < 0 and flats[x] <= 0)}
        if not _is_closed(ring, survivors | {ident}):
            validity = "structural-break"
            break
        H = MatrixGroup(ring, tuple(survivors | {ident}), f"survivors@{frac_str(s)}")
        flats = {x: flats[x] for x in survivors}
        sharps = {x: sharps[x] for x in survivors}
    # split pieces at crossings so that the jump ordering is constant on each piece
    split = []
    for p in pieces:
        cuts = sorted(c for c in crossings if p.s_lo < c < p.s_hi)
        edges = [p.s_lo] + cuts + [p.s_hi]
        for lo, hi in zip(edges, edges[1:]):
            split.append(Piece(lo, hi, p.intercept, p.slope, p.sw, p.group_order))
    bps = sorted({p.s_lo for p in split} | {split[-1].s_hi})
    return Profile(tuple(split), tuple(bps), tuple(deaths), tuple(sorted(crossings)), validity,
                   split[-1].s_hi, s_max)


def contributing_deaths(chi: ClassFunction, filt: Filtration) -> list:
    """(t, sigma) for each wild sigma with chi(sigma) != chi(1), t = flat / |sharp|."""
    deg = chi.degree
    out = []
    for x, v in filt.values.items():
        if v.sharp < 0 and chi(x) != deg:
            out.append((v.flat / -v.sharp, x))
    return sorted(out)


def first_break(chi: ClassFunction, filt: Filtration) -> Fraction | None:
    """Smallest slide parameter t at which an element acting nontrivially dies.

    Returned in slide units t (flat + sharp * t = 0); the base radius is
    s = |G| * t.  ``None`` when chi is trivial on every wild element.
    """
    deaths = contributing_deaths(chi, filt)
    return deaths[0][0] if deaths else None


def first_break_sampled(chi: ClassFunction, filt: Filtration, grid: int = 4096,
                        t_max=Fraction(1), refine: int = 80) -> Fraction | None:
    """First break located by dense rational sampling, bisection and rational recovery.

    Independent of the closed-form solve: it only evaluates slid flats at
    sample points and watches for the first contributing flat that is <= 0.
    """
    deg = chi.degree
    wild = [(v, x) for x, v in filt.values.items() if v.sharp < 0 and chi(x) != deg]
    if not wild:
        return None

    def dead(t):
        return any(slide(v, t).flat <= 0 for v, _ in wild)

    t_max = Fraction(t_max)
    lo = Fraction(0)
    hi = None
    for k in range(1, grid + 1):
        t = t_max * k / grid
        if dead(t):
            hi = t
            break
        lo = t
    if hi is None:
        return None
    for _ in range(refine):
        mid = (lo + hi) / 2
        if dead(mid):
            hi = mid
        else:
            lo = mid
    return hi.limit_denominator(10 ** 9)
