"""The boundary ramification function, its filtration and the conductor class functions.

For sigma in the stabilizer {(a, b; 0, a^-1)} the function ``h_of`` returns
the minus-log ``(flat, sharp)`` of the value h(sigma) of the rank-two
valuation.  Everything else (jumps, Herbrand sums, sw and delta) is derived
from that function by finite bookkeeping over the group.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .algebra.groups import MatrixGroup, mat_mul
from .algebra.rings import ResidueRing
from .algebra.values import ONE, RankTwoLog, frac_str
from .chars.classfun import ClassFunction, fixed_dim
from .context import SWAP, RingContext


class NotInStabilizer(ValueError):
    """The matrix is not of the form (a, b; 0, a^-1)."""


IDENTITY = None  # sentinel returned by h_of for the identity


def h_of(sigma, ring: ResidueRing) -> RankTwoLog | None:
    """Minus-log of h(sigma) for sigma = (a, b; 0, a^-1); ``None`` for the identity."""
    a, b, c, d = sigma
    if c != 0 or not ring.is_unit(a) or d != ring.inv[a]:
        raise NotInStabilizer(f"{sigma} is not of the form (a, b; 0, a^-1)")
    q, n = ring.q, ring.n
    if a == 1:
        if b == 0:
            return IDENTITY
        j = ring.val_pi(b)
        return RankTwoLog(Fraction(1, (q - 1) * q ** (n - j - 1)), -q ** (2 * n - 1) - 1)
    i = ring.val_pi(ring.sub(a, 1))
    if i == 0:
        return ONE
    return RankTwoLog(0, q ** (2 * i) - 1)


@dataclass(frozen=True)
class Jump:
    value: RankTwoLog
    members: MatrixGroup

    @property
    def order(self) -> int:
        return self.members.order


@dataclass(frozen=True)
class Filtration:
    """Lower ramification filtration of a finite stabilizer.

    ``jumps`` are ordered with h strictly decreasing; ``values`` maps each
    non-identity element to its minus-log h.
    """

    group: MatrixGroup
    jumps: tuple
    values: dict

    @property
    def orders(self) -> list:
        return [jp.order for jp in self.jumps]

    def h(self, sigma) -> RankTwoLog | None:
        return self.values.get(sigma)

    def to_json(self) -> dict:
        return {
            "group_order": self.group.order,
            "jumps": [
                {**jp.value.to_json(), "order": jp.order, "subgroup": jp.members.descriptor}
                for jp in self.jumps
            ],
        }


def _layer_name(ring: ResidueRing, members: MatrixGroup) -> str:
    """Name a layer of the Borel-type stabilizer by its congruence description."""
    if all(x[0] == 1 for x in members):
        j = min((ring.val_pi(x[1]) for x in members), default=ring.n)
        return f"unipotent, b = 0 mod pi^{j}"
    i = min(ring.val_pi(ring.sub(x[0], 1)) for x in members)
    return f"a = 1 mod pi^{i}"


def build_filtration(group: MatrixGroup, hfun: Callable, name: Callable | None = None
                     ) -> Filtration:
    """Filtration of ``group`` from an arbitrary minus-log function on it.

    Tame elements (value (0,0)) never create a jump.  G_h consists of the
    identity and all sigma with h(sigma) <= h.
    """
    values = {}
    for x in group:
        if x == group.identity:
            continue
        v = hfun(x)
        if v is None:
            raise ValueError("a non-identity element has the identity sentinel")
        values[x] = v
    realized = sorted({v for v in values.values() if not v.is_one}, reverse=True)
    jumps = []
    for h in realized:
        elems = (group.identity,) + tuple(x for x, v in values.items() if v <= h)
        members = MatrixGroup(group.ring, elems, "")
        members.descriptor = name(members) if name else f"h <= {h!r}"
        jumps.append(Jump(h, members))
    return Filtration(group, tuple(jumps), values)


def filtration(ctx: RingContext) -> Filtration:
    """The filtration of the Borel stabilizer of the end above the canonical subgroup."""
    ring = ctx.ring
    return build_filtration(ctx.stabilizer, lambda x: h_of(x, ring),
                            lambda H: _layer_name(ring, H))


def second_end_filtration(ctx: RingContext) -> Filtration:
    """The filtration at the other end of the Iwahori-level curve.

    Its stabilizer is K' meeting the swapped Borel stabilizer; h is transported
    along the swap w = (0, 1; 1, 0) and the layers are rebuilt on that group.
    """
    ring = ctx.ring

    def hfun(x):
        return h_of(mat_mul(ring, mat_mul(ring, SWAP, x), SWAP), ring)

    def name(H):
        return "w(" + _layer_name(ring, MatrixGroup(
            ring, tuple(mat_mul(ring, mat_mul(ring, SWAP, x), SWAP) for x in H))) + ")w"

    return build_filtration(ctx.second_stabilizer, hfun, name)


@dataclass(frozen=True)
class UpperJump:
    flat: Fraction
    sharp: Fraction

    def to_json(self) -> dict:
        return {"flat": frac_str(self.flat), "sharp": frac_str(self.sharp)}


def herbrand_upper(filt: Filtration) -> list:
    """Upper numbering jumps by prefix sums over the lower jumps, starting from (0, 0)."""
    G = filt.group.order
    out = []
    flat = sharp = Fraction(0)
    prev = ONE
    for jp in filt.jumps:
        size = jp.order
        sharp += (jp.value.sharp - prev.sharp) * Fraction(size, G)
        flat += (jp.value.flat - prev.flat) * size
        out.append(UpperJump(flat, sharp))
        prev = jp.value
    return out


def sw_class_function(filt: Filtration) -> ClassFunction:
    """sw(sigma) = -#h(sigma) off the identity, sw(1) = sum of #h; sums to zero."""
    G = filt.group
    total = sum((v.sharp for v in filt.values.values()), Fraction(0))

    def fn(x):
        return total if x == G.identity else -filt.values[x].sharp

    return ClassFunction.from_function(G, fn)


def delta_class_function(filt: Filtration) -> ClassFunction:
    """delta(sigma) = -|G| flat(sigma) off the identity, delta(1) = |G| sum of flats."""
    G = filt.group
    total = G.order * sum((v.flat for v in filt.values.values()), Fraction(0))

    def fn(x):
        return total if x == G.identity else -G.order * filt.values[x].flat

    return ClassFunction.from_function(G, fn)


def layer_fixed_dims(chi: ClassFunction, filt: Filtration) -> list:
    """fixed_dim(chi, G_{h_i}) for every jump, from the top layer down."""
    return [fixed_dim(chi, jp.members) for jp in filt.jumps]


def expected_jumps(q: int, n: int) -> list:
    """Closed-form (value, order) list of the Borel stabilizer's filtration."""
    out = []
    for i in range(1, n):
        out.append((RankTwoLog(0, q ** (2 * i) - 1), q ** (2 * n - i)))
    for j in range(n):
        out.append((RankTwoLog(Fraction(1, (q - 1) * q ** (n - j - 1)), -q ** (2 * n - 1) - 1),
                    q ** (n - j)))
    return out


def expected_upper(q: int, n: int) -> list:
    """Closed-form sharp parts of the upper jumps and the last flat part."""
    sharps = [Fraction((q + 1) * sum(q ** k for k in range(i))) for i in range(1, n)]
    sharps += [Fraction(-(q + 1), q - 1)] * n
    return sharps, Fraction(n * q - n + 1, q - 1)
