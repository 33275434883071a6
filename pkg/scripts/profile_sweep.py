"""Write delta(s) profiles of the unramified type characters as CSV files."""

import argparse
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from ltswan.algebra import parse_ring_spec
from ltswan.chars import unramified_type_candidates
from ltswan.context import ring_context
from ltswan.profile import first_break, sweep
from ltswan.ramify import filtration


@dataclass
class SweepConfig:
    ring: str = "2:1:2:mixed"
    s_max: Fraction = Fraction(1)
    out_dir: Path = Path("profiles")


def run(cfg: SweepConfig) -> list:
    ctx = ring_context(parse_ring_spec(cfg.ring))
    filt = filtration(ctx)
    cfg.out_dir.mkdir(parents=True, exist_ok=True)
    written = []
    for row, chi in unramified_type_candidates(ctx):
        prof = sweep(chi, filt, cfg.s_max)
        path = cfg.out_dir / f"{cfg.ring.replace(':', '_')}_row{row}.csv"
        path.write_text(prof.to_csv())
        written.append((path, prof.validity, first_break(chi, filt)))
    return written


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--ring", default="2:1:2:mixed")
    ap.add_argument("--s-max", default="1")
    ap.add_argument("--out-dir", default="profiles")
    args = ap.parse_args()
    cfg = SweepConfig(args.ring, Fraction(args.s_max), Path(args.out_dir))
    for path, validity, fb in run(cfg):
        print(f"{path}  validity={validity}  first_break(t)={fb}")


if __name__ == "__main__":
    main()
