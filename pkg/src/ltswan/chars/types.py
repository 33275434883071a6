"""Levels, defects, twists, the induced characters u(eps) and type fingerprints."""

from __future__ import annotations

from dataclasses import dataclass

from ..algebra.groups import MatrixGroup, det, pi_prime_conjugate
from ..context import RingContext
from .classfun import ClassFunction, fixed_dim, induce, inner_product
from .cyclotomic import Cyclotomic


@dataclass(frozen=True)
class UnitCharacter:
    """A character of (O/pi^n)^x, stored by its value on every unit."""

    index: int
    values: dict

    def __call__(self, u: int) -> Cyclotomic:
        return self.values[u]

    @property
    def is_trivial(self) -> bool:
        return all(v == 1 for v in self.values.values())


def unit_characters(ctx: RingContext) -> list:
    """All characters of the unit group; the trivial character comes first."""
    D = ctx.diagonal_units
    table = ctx.table(D)
    chars = [{x[0]: chi(x) for x in table.group} for chi in table]
    chars.sort(key=lambda vals: not all(v == 1 for v in vals.values()))
    return [UnitCharacter(i, vals) for i, vals in enumerate(chars)]


def unit_exponent(ctx: RingContext, eps: UnitCharacter) -> int:
    """Smallest e >= 0 with eps trivial on 1 + pi^e O (e = 0 means eps trivial)."""
    ring = ctx.ring
    for e in range(ring.n + 1):
        if all(eps(u) == 1 for u in ring.unit_group() if ring.val[ring.sub(u, 1)] >= e):
            return e
    raise AssertionError("unit characters are trivial on 1 + pi^n")  # pragma: no cover


def has_exponent_n(ctx: RingContext, eps: UnitCharacter) -> bool:
    """eps is trivial on 1 + pi^n but not on 1 + pi^(n-1); every eps qualifies when n = 1."""
    if ctx.n == 1:
        return True
    return unit_exponent(ctx, eps) == ctx.n


def exponent_n_characters(ctx: RingContext) -> list:
    return [eps for eps in unit_characters(ctx) if has_exponent_n(ctx, eps)]


@dataclass(frozen=True)
class InducedU:
    """The character u = Ind_B^G eps~ together with its norm."""

    character: ClassFunction
    eps: UnitCharacter
    norm: int

    @property
    def irreducible(self) -> bool:
        return self.norm == 1


def u_char(ctx: RingContext, eps: UnitCharacter) -> InducedU:
    """Induce eps(a) from the upper Borel (a, b; 0, d) to GL_2(O/pi^n)."""
    if not has_exponent_n(ctx, eps):
        raise ValueError(f"unit character {eps.index} does not have exponent {ctx.n}")
    B = ctx.borel
    tilde = ClassFunction.from_function(B, lambda x: eps(x[0]))
    u = induce(tilde, ctx.G)
    return InducedU(u, eps, inner_product(u, u).to_int())


def is_trivial_on(chi: ClassFunction, H: MatrixGroup) -> bool:
    return fixed_dim(chi, H) == chi.degree.to_int()


def k_level(ctx: RingContext, chi: ClassFunction) -> int:
    """Minimal m >= 1 with chi trivial on the principal congruence subgroup K_m."""
    for m in range(1, ctx.n + 1):
        if is_trivial_on(chi, ctx.principal(m)):
            return m
    raise AssertionError("every character is trivial on K_n")  # pragma: no cover


def iwahori_level(ctx: RingContext, chi: ClassFunction) -> int:
    """Minimal m >= 1 with chi trivial on the image of K'_m (chi lives on K')."""
    for m in range(1, 2 * ctx.n + 1):
        if is_trivial_on(chi, ctx.iwahori_layer(m)):
            return m
    raise AssertionError("every character is trivial on K'_2n")  # pragma: no cover


def unipotent_fixed_dims(ctx: RingContext, chi: ClassFunction) -> list:
    """fixed_dim(chi, U_r) for r = 0 .. n."""
    return [fixed_dim(chi, ctx.unipotent(r)) for r in range(ctx.n + 1)]


def defect_fixed_threshold(ctx: RingContext, chi: ClassFunction) -> int:
    """Minimal r with a nonzero U_r-fixed vector (always at most n)."""
    return next(r for r, d in enumerate(unipotent_fixed_dims(ctx, chi)) if d > 0)


def det_twist(chi: ClassFunction, psi: UnitCharacter) -> ClassFunction:
    ring = chi.group.ring
    return ClassFunction(chi.group, [v * psi(det(ring, c[0]))
                                     for v, c in zip(chi.values, chi.group.classes)])


def is_minimal(ctx: RingContext, chi: ClassFunction) -> bool:
    """True when no twist by a character of det lowers the K-level."""
    level = k_level(ctx, chi)
    return all(k_level(ctx, det_twist(chi, psi)) >= level for psi in unit_characters(ctx))


def unramified_type_candidates(ctx: RingContext) -> list:
    """Irreducibles of GL_2(O/pi^n) matching the unramified type fingerprint.

    Fingerprint: dimension (q-1)q^(n-1), K-level exactly n, minimal, and no
    vector fixed by U_(n-1).  Returns (row index, character) pairs.
    """
    q, n = ctx.q, ctx.n
    table = ctx.table(ctx.G)
    out = []
    for i, chi in enumerate(table):
        if chi.degree.to_int() != (q - 1) * q ** (n - 1):
            continue
        if fixed_dim(chi, ctx.unipotent(n - 1)) != 0:
            continue
        if k_level(ctx, chi) != n or not is_minimal(ctx, chi):
            continue
        out.append((i, chi))
    return out


def is_pi_prime_stable(chi: ClassFunction) -> bool:
    """chi is invariant under conjugation by (0, 1; pi, 0), so it extends to Z'K'.

    Only meaningful when chi is trivial on K'_(2n-2), where the conjugate is
    well defined.
    """
    ring = chi.group.ring
    return all(chi(pi_prime_conjugate(ring, x)) == chi(x) for x in chi.group)


def ramified_type_candidates(ctx: RingContext) -> list:
    """Irreducibles of K' matching the ramified type fingerprint.

    Fingerprint: dimension (q-1)q^(n-2), K'-level exactly 2n-2, a nonzero
    U_r-fixed vector exactly when r >= n-1, and stability under conjugation
    by (0, 1; pi, 0).  Returns (row index, character) pairs.
    """
    q, n = ctx.q, ctx.n
    if n < 2:
        raise ValueError("ramified types need n >= 2")
    table = ctx.table(ctx.iwahori)
    out = []
    for i, chi in enumerate(table):
        if chi.degree.to_int() != (q - 1) * q ** (n - 2):
            continue
        fixed = [fixed_dim(chi, ctx.unipotent(r)) for r in range(n + 1)]
        if any((d > 0) != (r >= n - 1) for r, d in enumerate(fixed)):
            continue
        if iwahori_level(ctx, chi) != 2 * n - 2 or not is_pi_prime_stable(chi):
            continue
        out.append((i, chi))
    return out
