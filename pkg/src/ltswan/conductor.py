"""Swan and discriminant conductors of characters at a boundary end.

Every conductor is computed twice: by pairing the sw/delta class functions
with the restricted character, and by summing upper jumps against the break
decomposition.  The two must agree exactly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .algebra.values import frac_str
from .chars.classfun import ClassFunction, fixed_dim, induce, inner_product, restrict
from .chars.types import (
    exponent_n_characters,
    ramified_type_candidates,
    u_char,
    unramified_type_candidates,
)
from .context import RingContext
from .ramify import (
    Filtration,
    delta_class_function,
    expected_jumps,
    expected_upper,
    filtration,
    herbrand_upper,
    layer_fixed_dims,
    second_end_filtration,
    sw_class_function,
)


class RouteMismatch(ArithmeticError):
    """Class-function pairing and break decomposition disagree."""


class NegativeDimension(ArithmeticError):
    """A break or cohomology dimension came out negative."""


@dataclass(frozen=True)
class Breaks:
    tame: int
    dims: tuple  # dim V(gamma_i) for i = 1 .. number of jumps
    fixed: tuple  # fixed_dim on each layer G_{h_i}


def break_decomposition(chi: ClassFunction, filt: Filtration) -> Breaks:
    fixed = layer_fixed_dims(chi, filt)
    rank = chi.degree.to_int()
    nxt = fixed[1:] + [rank]
    dims = tuple(b - a for a, b in zip(fixed, nxt))
    tame = fixed[0] if fixed else rank
    if tame < 0 or any(d < 0 for d in dims):
        raise NegativeDimension(f"negative break dimension in {dims} (tame {tame})")
    return Breaks(tame, dims, tuple(fixed))


@dataclass(frozen=True)
class ConductorReport:
    sw: int
    delta: Fraction
    rank: int
    tame_dim: int
    break_dims: tuple
    fixed_dims: tuple
    routes: dict = field(compare=False)

    def to_json(self) -> dict:
        return {
            "sw": self.sw,
            "delta": frac_str(self.delta),
            "rank": self.rank,
            "tame_dim": self.tame_dim,
            "break_dims": [[i + 1, d] for i, d in enumerate(self.break_dims)],
            "fixed_dims": list(self.fixed_dims),
            "routes": {k: {"sw": frac_str(v[0]), "delta": frac_str(v[1])}
                       for k, v in sorted(self.routes.items())},
        }


def swan_by_pairing(chi: ClassFunction, filt: Filtration) -> tuple:
    res = restrict(chi, filt.group)
    sw = inner_product(sw_class_function(filt), res)
    delta = inner_product(delta_class_function(filt), res)
    return sw.to_fraction(), delta.to_fraction()


def swan_by_breaks(chi: ClassFunction, filt: Filtration, breaks: Breaks | None = None) -> tuple:
    breaks = breaks or break_decomposition(chi, filt)
    upper = herbrand_upper(filt)
    sw = sum((u.sharp * d for u, d in zip(upper, breaks.dims)), Fraction(0))
    delta = sum((u.flat * d for u, d in zip(upper, breaks.dims)), Fraction(0))
    return sw, delta


def conductor(chi: ClassFunction, filt: Filtration) -> ConductorReport:
    """sw and delta of chi at the end with filtration ``filt``, checked by both routes."""
    breaks = break_decomposition(chi, filt)
    pair = swan_by_pairing(chi, filt)
    brk = swan_by_breaks(chi, filt, breaks)
    if pair != brk:
        raise RouteMismatch(f"pairing gives {pair}, breaks give {brk}")
    sw, delta = pair
    if sw.denominator != 1:
        raise RouteMismatch(f"Swan conductor {sw} is not an integer")
    return ConductorReport(int(sw), delta, chi.degree.to_int(), breaks.tame, breaks.dims,
                           breaks.fixed, {"class_function": pair, "breaks": brk})


@dataclass(frozen=True)
class CohomologyReport:
    """Dimensions around the Ogg-Shafarevich formula for one sheaf."""

    rank: int
    swan: int
    euler: int
    h0: int
    h2: int
    h1c: int
    end_invariants: int
    h1p: int
    hypotheses: str

    def to_json(self) -> dict:
        return dict(self.__dict__)


def _cohomology(rank: int, swan_total: int, h0: int, end_inv: int, euler_rank: int
                ) -> CohomologyReport:
    # compactly supported Euler characteristic = euler_rank * rank + sum of Swan terms
    euler = euler_rank * rank + swan_total
    h2 = h0
    h1c = h2 - euler
    h1p = h1c - (end_inv - h0)
    if h1c < 0 or h1p < 0:
        raise NegativeDimension(f"h1c = {h1c}, h1p = {h1p}")
    vanishing = h0 == 0 and end_inv == 0
    return CohomologyReport(rank, swan_total, euler, h0, h2, h1c, end_inv, h1p,
                            "vanishing" if vanishing else "corrected")


def disk_cohomology(chi: ClassFunction, filt: Filtration) -> CohomologyReport:
    """Sheaf on the disk attached to a character of GL_2(O/pi^n), one end."""
    G = chi.group
    h0 = inner_product(chi, ClassFunction.trivial(G)).to_int()
    sw = conductor(chi, filt).sw
    end_inv = fixed_dim(chi, filt.group)
    return _cohomology(chi.degree.to_int(), sw, h0, end_inv, 1)


def annulus_cohomology(sigma: ClassFunction, filt1: Filtration, filt2: Filtration
                       ) -> CohomologyReport:
    """Sheaf on the Iwahori-level annulus attached to a character of K', two ends."""
    K = sigma.group
    h0 = inner_product(sigma, ClassFunction.trivial(K)).to_int()
    sw = conductor(sigma, filt1).sw + conductor(sigma, filt2).sw
    end_inv = fixed_dim(sigma, filt1.group) + fixed_dim(sigma, filt2.group)
    return _cohomology(sigma.degree.to_int(), sw, h0, end_inv, 0)


# closed forms ----------------------------------------------------------------

def unramified_values(q: int, n: int) -> tuple:
    return -(q + 1) * q ** (n - 1), Fraction((n * q - n + 1) * q ** (n - 1))


def ramified_values(q: int, n: int) -> tuple:
    return -(q + 1) * q ** (n - 2), Fraction((n * q - q - n) * q ** (n - 2))


@dataclass
class Check:
    """Outcome of one verification target."""

    name: str
    ring: str
    passed: bool = True
    items: list = field(default_factory=list)

    def add(self, ok: bool, **data) -> None:
        self.items.append({"ok": bool(ok), **data})
        self.passed = self.passed and bool(ok)

    def to_json(self) -> dict:
        return {"target": self.name, "ring": self.ring, "passed": self.passed,
                "items": self.items}


def _chi_json(chi: ClassFunction) -> list:
    return [v.to_json() for v in chi.values]


def verify_jumps(ctx: RingContext) -> Check:
    chk = Check("jumps", ctx.ring.spec)
    filt = filtration(ctx)
    got = [(jp.value, jp.order) for jp in filt.jumps]
    exp = expected_jumps(ctx.q, ctx.n)
    chk.add(got == exp,
            computed=[{**v.to_json(), "order": o} for v, o in got],
            expected=[{**v.to_json(), "order": o} for v, o in exp])
    return chk


def verify_upper(ctx: RingContext) -> Check:
    chk = Check("upper", ctx.ring.spec)
    upper = herbrand_upper(filtration(ctx))
    sharps, last_flat = expected_upper(ctx.q, ctx.n)
    chk.add([u.sharp for u in upper] == sharps and upper[-1].flat == last_flat,
            computed=[u.to_json() for u in upper],
            expected_sharps=[frac_str(s) for s in sharps],
            expected_last_flat=frac_str(last_flat))
    return chk


def verify_unramified(ctx: RingContext) -> Check:
    chk = Check("unramified", ctx.ring.spec)
    filt = filtration(ctx)
    sw_exp, delta_exp = unramified_values(ctx.q, ctx.n)
    cands = unramified_type_candidates(ctx)
    if not cands:
        chk.add(False, error="empty candidate set")
    for row, chi in cands:
        rep = conductor(chi, filt)
        coh = disk_cohomology(chi, filt)
        ok = rep.sw == sw_exp and rep.delta == delta_exp
        item = {"row": row, "conductor": rep.to_json(), "expected_sw": sw_exp,
                "expected_delta": frac_str(delta_exp), "cohomology": coh.to_json()}
        if not ok:
            item["character"] = _chi_json(chi)
        chk.add(ok, **item)
    return chk


def verify_ramified(ctx: RingContext) -> Check:
    chk = Check("ramified", ctx.ring.spec)
    if ctx.n < 2:
        chk.add(False, error="ramified types need n >= 2")
        return chk
    f1, f2 = filtration(ctx), second_end_filtration(ctx)
    sw_exp, delta_exp = ramified_values(ctx.q, ctx.n)
    cands = ramified_type_candidates(ctx)
    if not cands:
        chk.add(False, error="empty candidate set")
    for row, sigma in cands:
        r1, r2 = conductor(sigma, f1), conductor(sigma, f2)
        ok = all(r.sw == sw_exp and r.delta == delta_exp for r in (r1, r2))
        item = {"row": row, "end1": r1.to_json(), "end2": r2.to_json(),
                "expected_sw": sw_exp, "expected_delta": frac_str(delta_exp)}
        if not ok:
            item["character"] = _chi_json(sigma)
        chk.add(ok, **item)
    return chk


def ramified_disk_cohomology(ctx: RingContext, sigma: ClassFunction) -> CohomologyReport:
    """Same sheaf seen on the disk through the induced character Ind_{K'}^G sigma."""
    tau = induce(sigma, ctx.G)
    return disk_cohomology(tau, filtration(ctx))


def verify_cohomology(ctx: RingContext) -> Check:
    """Parabolic cohomology dimensions of the type sheaves and the Hom dimensions."""
    chk = Check("cohomology", ctx.ring.spec)
    q, n = ctx.q, ctx.n
    filt = filtration(ctx)
    for row, chi in unramified_type_candidates(ctx):
        coh = disk_cohomology(chi, filt)
        chk.add(coh.h1p == 2 * q ** (n - 1) and 2 * coh.h1p == 4 * q ** (n - 1),
                kind="unramified", row=row, h1p=coh.h1p, hom_dim=2 * coh.h1p,
                expected_h1p=2 * q ** (n - 1), hypotheses=coh.hypotheses)
    if n >= 2:
        f2 = second_end_filtration(ctx)
        for row, sigma in ramified_type_candidates(ctx):
            ann = annulus_cohomology(sigma, filt, f2)
            disk = ramified_disk_cohomology(ctx, sigma)
            exp = 2 * (q + 1) * q ** (n - 2)
            chk.add(ann.h1p == exp and disk.h1p == exp, kind="ramified", row=row,
                    h1p_annulus=ann.h1p, h1p_disk=disk.h1p, hom_dim=ann.h1p, expected_h1p=exp,
                    hypotheses=ann.hypotheses)
    return chk


def hom_dims_report(ctx: RingContext) -> dict:
    """Multiplicity dimensions recomputed from the parabolic cohomology outputs."""
    out = {}
    filt = filtration(ctx)
    cands = unramified_type_candidates(ctx)
    if cands:
        vals = {2 * disk_cohomology(chi, filt).h1p for _, chi in cands}
        out["unramified"] = sorted(vals)
    if ctx.n >= 2:
        f2 = second_end_filtration(ctx)
        vals = {annulus_cohomology(s, filt, f2).h1p for _, s in ramified_type_candidates(ctx)}
        if vals:
            out["ramified"] = sorted(vals)
    return out


def induced_fixed_dims(q: int, n: int) -> list:
    return [0] * (n - 1) + [1 + q ** j for j in range(n)]


def induced_break_dims(q: int, n: int) -> tuple:
    """(tame, breaks by jump index) for u(eps)."""
    dims = [0] * (2 * n - 1)
    if n >= 2:
        dims[n - 2] = 2
    for j in range(n - 1):
        dims[n - 1 + j] = q ** (j + 1) - q ** j
    dims[2 * n - 2] = q ** n - 1
    tame = 2 if n == 1 else 0
    return tame, dims


def verify_induced(ctx: RingContext, eps_list=None) -> Check:
    chk = Check("induced", ctx.ring.spec)
    q, n = ctx.q, ctx.n
    filt = filtration(ctx)
    tame_exp, breaks_exp = induced_break_dims(q, n)
    eps_list = exponent_n_characters(ctx) if eps_list is None else eps_list
    for eps in eps_list:
        u = u_char(ctx, eps)
        rep = conductor(u.character, filt)
        coh = disk_cohomology(u.character, filt)
        ok = (list(rep.fixed_dims) == induced_fixed_dims(q, n)
              and rep.tame_dim == tame_exp and list(rep.break_dims) == breaks_exp
              and rep.sw == -(q + 1) * q ** (n - 1) and coh.h1p == 0
              and rep.rank == (q + 1) * q ** (n - 1))
        chk.add(ok, eps=eps.index, irreducible=u.irreducible, conductor=rep.to_json(),
                cohomology=coh.to_json(), expected_fixed=induced_fixed_dims(q, n),
                expected_breaks=breaks_exp, expected_tame=tame_exp)
    return chk


def verify_induced_fixed(ctx: RingContext) -> Check:
    """Only the invariant-dimension table of u(eps) on the upper ramification groups."""
    chk = Check("induced-fixed", ctx.ring.spec)
    filt = filtration(ctx)
    exp = induced_fixed_dims(ctx.q, ctx.n)
    for eps in exponent_n_characters(ctx):
        got = layer_fixed_dims(u_char(ctx, eps).character, filt)
        chk.add(got == exp, eps=eps.index, fixed_dims=got, expected=exp)
    return chk
