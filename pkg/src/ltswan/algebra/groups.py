"""GL_2 over a residue ring, its distinguished subgroups, classes and double cosets.

Matrices are plain tuples ``(a, b, c, d)`` of ring encodings, read row by row.
Groups keep their full element list, which is fine at desk scale.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Iterable, Sequence

from .rings import ResidueRing

Mat = tuple  # (a, b, c, d)

DEFAULT_CAP = 10 ** 6


class CapExceeded(ValueError):
    """Raised when an enumeration would exceed the configured size cap."""


def gl2_order(q: int, n: int) -> int:
    return q ** (4 * (n - 1)) * (q * q - 1) * (q * q - q)


def identity(ring: ResidueRing) -> Mat:
    return (1, 0, 0, 1)


def mat_mul(ring: ResidueRing, x: Mat, y: Mat) -> Mat:
    add, mul = ring.add, ring.mul
    a, b, c, d = x
    e, f, g, h = y
    return (
        add[mul[a][e]][mul[b][g]],
        add[mul[a][f]][mul[b][h]],
        add[mul[c][e]][mul[d][g]],
        add[mul[c][f]][mul[d][h]],
    )


def det(ring: ResidueRing, x: Mat) -> int:
    a, b, c, d = x
    return ring.sub(ring.mul[a][d], ring.mul[b][c])


def mat_inv(ring: ResidueRing, x: Mat) -> Mat:
    a, b, c, d = x
    di = ring.inv[det(ring, x)]
    if di is None:
        raise ValueError(f"matrix {x} is not invertible")
    mul, neg = ring.mul, ring.neg
    return (mul[d][di], neg[mul[b][di]], neg[mul[c][di]], mul[a][di])


def conjugate(ring: ResidueRing, g: Mat, x: Mat) -> Mat:
    """Return g x g^-1."""
    return mat_mul(ring, mat_mul(ring, g, x), mat_inv(ring, g))


def pi_prime_conjugate(ring: ResidueRing, x: Mat) -> Mat:
    """Conjugate an Iwahori element by the matrix (0, 1; pi, 0).

    The result ``(d, c/pi; pi*b, a)`` involves a division by pi and so is only
    well defined modulo matrices with lower-left entry divisible by pi^n;
    the canonical lift of ``c/pi`` is used.
    """
    a, b, c, d = x
    return (d, ring.div_pi(c), ring.mul[ring.pi][b], a)


@dataclass(eq=False)
class MatrixGroup:
    """A finite group of invertible 2x2 matrices over a residue ring."""

    ring: ResidueRing
    elements: tuple
    descriptor: str = "group"
    _gens: tuple | None = field(default=None, repr=False)

    def __post_init__(self):
        self.elements = tuple(sorted(self.elements))
        self._set = frozenset(self.elements)

    def __repr__(self) -> str:
        return f"MatrixGroup({self.descriptor}, order={self.order})"

    def __contains__(self, x) -> bool:
        return x in self._set

    def __iter__(self):
        return iter(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def identity(self) -> Mat:
        return (1, 0, 0, 1)

    def mul(self, x: Mat, y: Mat) -> Mat:
        return mat_mul(self.ring, x, y)

    def inv(self, x: Mat) -> Mat:
        return mat_inv(self.ring, x)

    @cached_property
    def index(self) -> dict:
        return {x: i for i, x in enumerate(self.elements)}

    @cached_property
    def generators(self) -> tuple:
        """A small generating set found greedily."""
        if self._gens is not None:
            return self._gens
        gens: list = []
        span = {self.identity}
        for x in self.elements:
            if x not in span:
                gens.append(x)
                span = _closure(self.ring, gens)
            if len(span) == self.order:
                break
        return tuple(gens)

    @cached_property
    def classes(self) -> tuple:
        """Conjugacy classes, each a sorted tuple, ordered by first element."""
        ring = self.ring
        gens = [(g, mat_inv(ring, g)) for g in self.generators]
        seen: set = set()
        out = []
        for x in self.elements:
            if x in seen:
                continue
            orbit = {x}
            queue = deque([x])
            while queue:
                y = queue.popleft()
                for g, gi in gens:
                    z = mat_mul(ring, mat_mul(ring, g, y), gi)
                    if z not in orbit:
                        orbit.add(z)
                        queue.append(z)
            seen |= orbit
            out.append(tuple(sorted(orbit)))
        return tuple(out)

    @cached_property
    def class_of(self) -> dict:
        return {x: k for k, cls in enumerate(self.classes) for x in cls}

    @cached_property
    def class_sizes(self) -> tuple:
        return tuple(len(c) for c in self.classes)

    def subgroup(self, pred: Callable[[Mat], bool], descriptor: str) -> "MatrixGroup":
        return MatrixGroup(self.ring, tuple(x for x in self.elements if pred(x)), descriptor)

    def is_subgroup(self) -> bool:
        """Check closure under products and inverses."""
        s = self._set
        if self.identity not in s:
            return False
        for x in self.elements:
            if mat_inv(self.ring, x) not in s:
                return False
        for g in self.generators:
            for x in self.elements:
                if mat_mul(self.ring, x, g) not in s:
                    return False
        return True


def _closure(ring: ResidueRing, gens: Sequence[Mat]) -> set:
    span = {(1, 0, 0, 1)}
    queue = deque(span)
    while queue:
        x = queue.popleft()
        for g in gens:
            y = mat_mul(ring, x, g)
            if y not in span:
                span.add(y)
                queue.append(y)
    return span


def generated_subgroup(ring: ResidueRing, gens: Iterable[Mat], descriptor: str = "generated",
                       cap: int = DEFAULT_CAP) -> MatrixGroup:
    gens = tuple(gens)
    span = _closure(ring, gens)
    if len(span) > cap:
        raise CapExceeded(f"generated subgroup has {len(span)} > {cap} elements")
    return MatrixGroup(ring, tuple(span), descriptor, _gens=gens)


def _gl2_generators(ring: ResidueRing) -> tuple:
    gens = []
    for x in ring.elements():
        if x:
            gens.append((1, x, 0, 1))
            gens.append((1, 0, x, 1))
    for u in ring.unit_group():
        if u != 1:
            gens.append((u, 0, 0, 1))
    return tuple(gens)


def enumerate_gl2(ring: ResidueRing, cap: int = DEFAULT_CAP) -> MatrixGroup:
    """All of GL_2(O/pi^n), with conjugacy classes available on demand."""
    order = gl2_order(ring.q, ring.n)
    if order > cap:
        raise CapExceeded(f"|GL2| = {order} exceeds the cap {cap}")
    val, mul, sub = ring.val, ring.mul, ring.sub
    elems = []
    rng = range(ring.size)
    for a in rng:
        for b in rng:
            if val[a] and val[b]:
                continue
            for c in rng:
                bc = mul[b][c]
                for d in rng:
                    if val[sub(mul[a][d], bc)] == 0:
                        elems.append((a, b, c, d))
    # elementary matrices and diagonal units generate GL_2 of a local ring
    return MatrixGroup(ring, tuple(elems), f"GL2({ring.spec})", _gens=_gl2_generators(ring))


def borel_stabilizer(ring: ResidueRing) -> MatrixGroup:
    """The stabilizer {(a, b; 0, a^-1)} of a boundary point above the tower."""
    elems = [(a, b, 0, ring.inv[a]) for a in ring.unit_group() for b in ring.elements()]
    return MatrixGroup(ring, tuple(elems), "G_y")


def _check_level(name: str, value: int, lo: int, hi: int) -> None:
    if not lo <= value <= hi:
        raise ValueError(f"{name} must lie in [{lo}, {hi}], got {value}")


def iwahori(G: MatrixGroup) -> MatrixGroup:
    val = G.ring.val
    return G.subgroup(lambda x: val[x[2]] >= 1, "K'")


def upper_borel(G: MatrixGroup) -> MatrixGroup:
    return G.subgroup(lambda x: x[2] == 0, "K0")


def iwahori_congruence(G: MatrixGroup, m: int) -> MatrixGroup:
    """Image of K'_m: a, d = 1 mod pi^n2, b = 0 mod pi^n1, c = 0 mod pi^(n1+1).

    Here n1 = m // 2 and n2 = (m + 1) // 2; the image is trivial once m = 2n.
    """
    ring = G.ring
    _check_level("m", m, 0, 2 * ring.n)
    n1, n2 = m // 2, (m + 1) // 2
    nc = min(n1 + 1, ring.n)  # valuations are capped at n
    val, sub = ring.val, ring.sub

    def pred(x):
        a, b, c, d = x
        return (val[sub(a, 1)] >= n2 and val[b] >= n1 and val[c] >= nc
                and val[sub(d, 1)] >= n2)

    return G.subgroup(pred, f"K'_{m}")


def principal_congruence(G: MatrixGroup, m: int) -> MatrixGroup:
    ring = G.ring
    _check_level("m", m, 0, ring.n)
    val, sub = ring.val, ring.sub
    return G.subgroup(
        lambda x: val[sub(x[0], 1)] >= m and val[x[1]] >= m and val[x[2]] >= m
        and val[sub(x[3], 1)] >= m,
        f"K_{m}",
    )


def unipotent(G: MatrixGroup, r: int) -> MatrixGroup:
    ring = G.ring
    _check_level("r", r, 0, ring.n)
    val = ring.val
    return G.subgroup(lambda x: x[0] == 1 and x[2] == 0 and x[3] == 1 and val[x[1]] >= r,
                      f"U_{r}")


def center(G: MatrixGroup) -> MatrixGroup:
    return G.subgroup(lambda x: x[1] == 0 and x[2] == 0 and x[0] == x[3], "Z")


def special_linear(G: MatrixGroup) -> MatrixGroup:
    ring = G.ring
    return G.subgroup(lambda x: det(ring, x) == 1, "SL2")


def named_subgroups(G: MatrixGroup, m: int | None = None, r: int | None = None) -> dict:
    """The distinguished subgroups of GL_2(O/pi^n), keyed by short names."""
    ring = G.ring
    m = (2 * ring.n - 2) if m is None else m
    r = ring.n - 1 if r is None else r
    return {
        "K0": upper_borel(G),
        "K'": iwahori(G),
        f"K'_{m}": iwahori_congruence(G, m),
        f"U_{r}": unipotent(G, r),
        "Z": center(G),
        "SL2": special_linear(G),
    }


def intersect(H: MatrixGroup, K: MatrixGroup, descriptor: str | None = None) -> MatrixGroup:
    small, big = (H, K) if H.order <= K.order else (K, H)
    return MatrixGroup(H.ring, tuple(x for x in small if x in big),
                       descriptor or f"{H.descriptor}&{K.descriptor}")


def conjugate_subgroup(H: MatrixGroup, g: Mat, descriptor: str | None = None) -> MatrixGroup:
    """The subgroup g H g^-1."""
    ring = H.ring
    gi = mat_inv(ring, g)
    elems = tuple(mat_mul(ring, mat_mul(ring, g, x), gi) for x in H)
    return MatrixGroup(ring, elems, descriptor or f"{H.descriptor}^g")


def double_cosets(H: MatrixGroup, G: MatrixGroup, K: MatrixGroup) -> list:
    """Representatives of H \\ G / K, each paired with its double coset size.

    Representatives are the smallest elements of their double cosets, listed in
    increasing order.
    """
    ring = G.ring
    seen: set = set()
    out = []
    for x in G.elements:
        if x in seen:
            continue
        xK = [mat_mul(ring, x, k) for k in K]
        coset = {mat_mul(ring, h, y) for h in H for y in xK}
        seen |= coset
        out.append((x, len(coset)))
    return out
