"""Run every verification target on a list of rings and print a pass/fail grid."""

import argparse
import json
import time
from dataclasses import dataclass, field
from pathlib import Path

from ltswan.algebra import parse_ring_spec
from ltswan.cli import run_target
from ltswan.context import ring_context


@dataclass
class TableConfig:
    rings: list = field(default_factory=lambda: ["2:1:1:mixed", "3:1:1:mixed", "2:1:2:mixed",
                                                 "2:2:1:equal", "3:1:2:mixed"])
    seed: int = 0
    out: str | None = None


def run(cfg: TableConfig) -> dict:
    rows = {}
    for spec in cfg.rings:
        start = time.perf_counter()
        checks = run_target(ring_context(parse_ring_spec(spec)), "all", cfg.seed)
        rows[spec] = {"seconds": round(time.perf_counter() - start, 2),
                      "targets": {c.name: c.passed for c in checks}}
    return rows


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--rings", nargs="*")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--out", help="also write the raw results as JSON")
    args = ap.parse_args()
    cfg = TableConfig(seed=args.seed, out=args.out)
    if args.rings:
        cfg.rings = args.rings
    rows = run(cfg)
    targets = sorted({t for r in rows.values() for t in r["targets"]})
    print("ring".ljust(13) + " ".join(t.ljust(10) for t in targets) + "  time")
    for spec, r in rows.items():
        cells = [("ok" if r["targets"][t] else "FAIL") if t in r["targets"] else "-"
                 for t in targets]
        print(spec.ljust(13) + " ".join(c.ljust(10) for c in cells) + f"  {r['seconds']}s")
    if cfg.out:
        Path(cfg.out).write_text(json.dumps(rows, indent=2, sort_keys=True))


if __name__ == "__main__":
    main()
