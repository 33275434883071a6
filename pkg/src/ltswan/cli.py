"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 bad input.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass
from fractions import Fraction

from .algebra.groups import DEFAULT_CAP, CapExceeded
from .algebra.rings import parse_ring_spec
from .algebra.values import frac_str
from .chars.types import (
    exponent_n_characters,
    ramified_type_candidates,
    u_char,
    unramified_type_candidates,
)
from .conductor import (
    Check,
    annulus_cohomology,
    conductor,
    disk_cohomology,
    verify_cohomology,
    verify_upper,
    verify_jumps,
    verify_induced,
    verify_induced_fixed,
    verify_unramified,
    verify_ramified,
)
from .context import RingContext, ring_context
from .newton import (
    eisenstein_tower,
    h_from_newton,
    residue_factorization_check,
    slope_stability,
    u_valuations,
)
from .profile import first_break, first_break_sampled, sweep
from .ramify import expected_jumps, filtration, herbrand_upper, second_end_filtration

TARGETS = ("jumps", "upper", "unramified", "ramified", "cohomology", "induced", "induced-fixed",
           "valuations", "tower", "compose", "stability", "profile", "all")
NEWTON_CHECKS = ("valuations", "tower", "compose", "stability")


class UsageError(ValueError):
    """Bad command-line input; maps to exit code 2."""


@dataclass(frozen=True)
class RunConfig:
    command: str
    ring: str
    target: str | None = None
    rep: str | None = None
    fmt: str = "json"
    out: str | None = None
    s_max: Fraction = Fraction(1)
    cap: int = DEFAULT_CAP
    seed: int = 0
    check: str | None = None


# representation specs ------------------------------------------------------------

def resolve_rep(ctx: RingContext, rep: str) -> list:
    """Turn a representation spec into (label, kind, character) triples."""
    if rep is None:
        raise UsageError("--rep is required for this command")
    kind, _, arg = rep.partition(":")
    if kind == "type" and arg == "unramified":
        return [(f"unramified:{i}", "G", chi) for i, chi in unramified_type_candidates(ctx)]
    if kind == "type" and arg == "ramified":
        if ctx.n < 2:
            raise UsageError("ramified types need n >= 2")
        return [(f"ramified:{i}", "K'", chi) for i, chi in ramified_type_candidates(ctx)]
    if kind == "u" and arg.startswith("eps="):
        idx = _int(arg[4:], "eps index")
        eps = exponent_n_characters(ctx)
        if not 0 <= idx < len(eps):
            raise UsageError(f"eps index must lie in [0, {len(eps) - 1}]")
        return [(f"u:eps={idx}", "G", u_char(ctx, eps[idx]).character)]
    if kind == "irr":
        idx = _int(arg, "row")
        table = ctx.table(ctx.G)
        if not 0 <= idx < len(table):
            raise UsageError(f"row must lie in [0, {len(table) - 1}]")
        return [(f"irr:{idx}", "G", table[idx])]
    raise UsageError(f"unknown representation spec {rep!r}")


def _int(text: str, what: str) -> int:
    try:
        return int(text)
    except ValueError as exc:
        raise UsageError(f"{what} must be an integer, got {text!r}") from exc


# commands ----------------------------------------------------------------------

def cmd_filtration(ctx: RingContext, cfg: RunConfig) -> tuple:
    return filtration(ctx).to_json(), True


def cmd_upper(ctx: RingContext, cfg: RunConfig) -> tuple:
    filt = filtration(ctx)
    return {"group_order": filt.group.order,
            "upper": [u.to_json() for u in herbrand_upper(filt)]}, True


def cmd_chartable(ctx: RingContext, cfg: RunConfig) -> tuple:
    groups = {None: ctx.G, "gl2": ctx.G, "iwahori": ctx.iwahori, "stabilizer": ctx.stabilizer}
    if cfg.target not in groups:
        raise UsageError("chartable --target must be one of gl2, iwahori, stabilizer")
    return ctx.table(groups[cfg.target]).to_json(), True


def cmd_conductor(ctx: RingContext, cfg: RunConfig) -> tuple:
    reps = resolve_rep(ctx, cfg.rep)
    f1 = filtration(ctx)
    out = []
    for label, kind, chi in reps:
        if kind == "K'":
            f2 = second_end_filtration(ctx)
            out.append({"rep": label, "end1": conductor(chi, f1).to_json(),
                        "end2": conductor(chi, f2).to_json(),
                        "cohomology": annulus_cohomology(chi, f1, f2).to_json()})
        else:
            out.append({"rep": label, "conductor": conductor(chi, f1).to_json(),
                        "cohomology": disk_cohomology(chi, f1).to_json()})
    return {"ring": ctx.ring.spec, "reports": out}, True


def cmd_profile(ctx: RingContext, cfg: RunConfig) -> tuple:
    reps = resolve_rep(ctx, cfg.rep)
    filt = filtration(ctx)
    out = []
    for label, kind, chi in reps:
        if kind != "G":
            raise UsageError("profiles are computed for characters of GL2")
        prof = sweep(chi, filt, cfg.s_max)
        fb = first_break(chi, filt)
        out.append({"rep": label, "profile": prof.to_json(),
                    "first_break": None if fb is None else frac_str(fb)})
    return {"ring": ctx.ring.spec, "profiles": out}, True


def _newton_checks(ctx: RingContext, which: str, seed: int) -> Check:
    q, n = ctx.q, ctx.n
    chk = Check(which, ctx.ring.spec)
    if which == "valuations":
        us = u_valuations(q, n)
        flats_ok = all(u.flat == Fraction(1, (q - 1) * q ** (u.m - 1)) for u in us)
        sharps_ok = all(u.normalized_sharp == -q ** (2 * n - 1) for u in us)
        jumps = [jp.value for jp in filtration(ctx).jumps]
        chk.add(flats_ok and sharps_ok and h_from_newton(q, n) == jumps
                and jumps == [v for v, _ in expected_jumps(q, n)],
                levels=[u.to_json() for u in us],
                rebuilt_jumps=[v.to_json() for v in h_from_newton(q, n)])
    elif which == "tower":
        rep = eisenstein_tower(q, n)
        chk.add(rep["degree"] == rep["expected_degree"] and rep["totally_ramified"], **rep)
    elif which == "compose":
        rep = residue_factorization_check(q, n)
        chk.add(rep["equal"], **rep)
    elif which == "stability":
        rep = slope_stability(q, 100, seed)
        chk.add(rep["stable"], **rep)
    return chk


def _profile_check(ctx: RingContext) -> Check:
    chk = Check("profile", ctx.ring.spec)
    q, n = ctx.q, ctx.n
    filt = filtration(ctx)
    expected = Fraction(1, (q - 1) * q ** (n - 1) * (q ** (2 * n - 1) + 1))
    for row, chi in unramified_type_candidates(ctx):
        rep = conductor(chi, filt)
        prof = sweep(chi, filt, Fraction(filt.group.order))
        slopes = [p.slope for p in prof.pieces]
        ok = (prof.delta(0) == rep.delta and prof.sw(0) == rep.sw
              and all(p.slope == p.sw for p in prof.pieces)
              and all(a <= b for a, b in zip(slopes, slopes[1:]))
              and all(s <= 0 for s in slopes)
              and all(a.delta(a.s_hi) == b.delta(b.s_lo)
                      for a, b in zip(prof.pieces, prof.pieces[1:]))
              and first_break(chi, filt) == expected
              and first_break_sampled(chi, filt) == expected)
        chk.add(ok, row=row, first_break=frac_str(first_break(chi, filt)),
                expected_first_break=frac_str(expected), validity=prof.validity)
    return chk


def run_target(ctx: RingContext, target: str, seed: int = 0) -> list:
    if target == "all":
        names = [t for t in TARGETS if t != "all" and (t != "ramified" or ctx.n >= 2)]
        return [c for t in names for c in run_target(ctx, t, seed)]
    if target == "jumps":
        return [verify_jumps(ctx)]
    if target == "upper":
        return [verify_upper(ctx)]
    if target == "unramified":
        return [verify_unramified(ctx)]
    if target == "ramified":
        return [verify_ramified(ctx)]
    if target == "cohomology":
        return [verify_cohomology(ctx)]
    if target == "induced":
        return [verify_induced(ctx)]
    if target == "induced-fixed":
        return [verify_induced_fixed(ctx)]
    if target in ("valuations", "tower", "compose", "stability"):
        return [_newton_checks(ctx, target, seed)]
    if target == "profile":
        return [_profile_check(ctx)]
    raise UsageError(f"unknown verify target {target!r}")


def cmd_verify(ctx: RingContext, cfg: RunConfig) -> tuple:
    if cfg.target is None:
        raise UsageError("verify needs --target")
    checks = run_target(ctx, cfg.target, cfg.seed)
    passed = all(c.passed for c in checks)
    return {"ring": ctx.ring.spec, "passed": passed,
            "checks": [c.to_json() for c in checks]}, passed


def cmd_newton(ctx: RingContext, cfg: RunConfig) -> tuple:
    if cfg.check not in NEWTON_CHECKS:
        raise UsageError(f"newton --check must be one of {', '.join(NEWTON_CHECKS)}")
    chk = _newton_checks(ctx, cfg.check, cfg.seed)
    return chk.to_json(), chk.passed


COMMANDS = {
    "filtration": cmd_filtration,
    "upper": cmd_upper,
    "chartable": cmd_chartable,
    "conductor": cmd_conductor,
    "verify": cmd_verify,
    "profile": cmd_profile,
    "newton": cmd_newton,
}


# output ------------------------------------------------------------------------

def _flatten(obj, prefix=""):
    if isinstance(obj, dict):
        for k in sorted(obj):
            yield from _flatten(obj[k], f"{prefix}.{k}" if prefix else str(k))
    elif isinstance(obj, list):
        for i, v in enumerate(obj):
            yield from _flatten(v, f"{prefix}[{i}]")
    else:
        yield prefix, obj


def render(payload, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(payload, sort_keys=True, indent=2) + "\n"
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["key", "value"])
    for k, v in _flatten(payload):
        w.writerow([k, v])
    return buf.getvalue()


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ltswan", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--ring", required=True, help="p:f:n:mode, e.g. 2:1:2:mixed")
        p.add_argument("--target")
        p.add_argument("--rep")
        p.add_argument("--format", dest="fmt", choices=("json", "csv"), default="json")
        p.add_argument("--out")
        p.add_argument("--s-max", dest="s_max", default="1")
        p.add_argument("--cap", type=int, default=DEFAULT_CAP)
        p.add_argument("--seed", type=int, default=0)
        if name == "newton":
            p.add_argument("--check", choices=NEWTON_CHECKS, required=True)
    return parser


def parse_config(argv) -> RunConfig:
    ns = build_parser().parse_args(argv)
    try:
        s_max = Fraction(ns.s_max)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"--s-max must be a rational number, got {ns.s_max!r}") from exc
    if s_max <= 0:
        raise UsageError("--s-max must be positive")
    if ns.cap < 1:
        raise UsageError("--cap must be positive")
    return RunConfig(ns.command, ns.ring, ns.target, ns.rep, ns.fmt, ns.out, s_max, ns.cap,
                     ns.seed, getattr(ns, "check", None))


def main(argv=None) -> int:
    try:
        cfg = parse_config(argv)
        ctx = ring_context(parse_ring_spec(cfg.ring), cfg.cap)
        payload, ok = COMMANDS[cfg.command](ctx, cfg)
    except SystemExit as exc:  # argparse reports usage errors this way
        return int(exc.code or 0)
    except (UsageError, CapExceeded, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    text = render(payload, cfg.fmt)
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
