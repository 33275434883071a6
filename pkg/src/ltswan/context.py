"""Per-ring cache of the groups, subgroups and character tables used everywhere."""

from __future__ import annotations

from functools import cached_property, lru_cache

from .algebra.groups import (
    DEFAULT_CAP,
    CapExceeded,
    MatrixGroup,
    borel_stabilizer,
    intersect,
    conjugate_subgroup,
    enumerate_gl2,
    gl2_order,
    iwahori,
    iwahori_congruence,
    principal_congruence,
    unipotent,
    upper_borel,
)
from .algebra.rings import ResidueRing

# the antidiagonal swap relating the two ends of the Iwahori-level curve
SWAP = (0, 1, 1, 0)


class RingContext:
    """Lazily built groups attached to one residue ring.

    Subgroups are built once and reused, so class functions on them can be
    compared by group identity.
    """

    def __init__(self, ring: ResidueRing, cap: int = DEFAULT_CAP):
        order = gl2_order(ring.q, ring.n)
        if order > cap:
            raise CapExceeded(f"|GL2| = {order} exceeds the cap {cap}")
        self.ring = ring
        self.cap = cap
        self._cache: dict = {}

    def __repr__(self) -> str:
        return f"RingContext({self.ring.spec})"

    @property
    def q(self) -> int:
        return self.ring.q

    @property
    def n(self) -> int:
        return self.ring.n

    @cached_property
    def G(self) -> MatrixGroup:
        return enumerate_gl2(self.ring, self.cap)

    @cached_property
    def stabilizer(self) -> MatrixGroup:
        """The Borel-type stabilizer of the end above the canonical subgroup."""
        return borel_stabilizer(self.ring)

    @cached_property
    def borel(self) -> MatrixGroup:
        return upper_borel(self.G)

    @cached_property
    def iwahori(self) -> MatrixGroup:
        return iwahori(self.G)

    @cached_property
    def second_stabilizer(self) -> MatrixGroup:
        """Stabilizer of the other end of the Iwahori-level curve: K' meets w G_y w^-1."""
        swapped = conjugate_subgroup(self.stabilizer, SWAP)
        return intersect(self.iwahori, swapped, "G_y2")

    @cached_property
    def diagonal_units(self) -> MatrixGroup:
        """The unit group, realized as matrices diag(u, 1)."""
        elems = tuple((u, 0, 0, 1) for u in self.ring.unit_group())
        return MatrixGroup(self.ring, elems, "units")

    def _memo(self, key, build):
        if key not in self._cache:
            self._cache[key] = build()
        return self._cache[key]

    def principal(self, m: int) -> MatrixGroup:
        return self._memo(("K", m), lambda: principal_congruence(self.G, m))

    def iwahori_layer(self, m: int) -> MatrixGroup:
        return self._memo(("K'", m), lambda: iwahori_congruence(self.G, m))

    def unipotent(self, r: int) -> MatrixGroup:
        return self._memo(("U", r), lambda: unipotent(self.G, r))

    def table(self, group: MatrixGroup):
        from .chars.dixon import character_table

        return character_table(group)


@lru_cache(maxsize=None)
def ring_context(ring: ResidueRing, cap: int = DEFAULT_CAP) -> RingContext:
    return RingContext(ring, cap)
