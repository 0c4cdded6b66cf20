"""Run the long, non-gating verification ranges and write certificates.

    python scripts/run_extended.py codim3 --out runs/ --threads 8
    python scripts/run_extended.py all --out runs/
"""

from __future__ import annotations

import argparse
import sys
import time
from dataclasses import dataclass

from dualdefect.cli import main as cli_main


@dataclass(frozen=True)
class Preset:
    codim: int
    N: str
    flags: tuple[str, ...]


PRESETS = {
    # Even N are searched; each verified even N resolves the odd N above it.
    "codim3": Preset(3, "10..200", ("--even-only", "--propagate")),
    "codim4": Preset(4, "14..50", ("--propagate-general",)),
    "codim5": Preset(5, "18..23", ("--propagate-general",)),
}


def run(name: str, out: str, threads: int, huh: bool) -> int:
    p = PRESETS[name]
    argv = ["verify", "--codim", str(p.codim), "--N", p.N, *p.flags]
    argv += ["--out", f"{out}/{name}", "--threads", str(threads), "--format", "csv", "--evidence"]
    if huh:
        argv.append("--huh-filter")
    start = time.perf_counter()
    code = cli_main(argv)
    print(f"# {name}: exit {code}, {time.perf_counter() - start:.1f}s", file=sys.stderr)
    return code


def parse_args(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("preset", choices=[*PRESETS, "all"])
    ap.add_argument("--out", default="runs")
    ap.add_argument("--threads", type=int, default=1)
    ap.add_argument("--no-huh-filter", action="store_true", help="skip log-concavity annotation")
    return ap.parse_args(argv)


if __name__ == "__main__":
    args = parse_args()
    names = list(PRESETS) if args.preset == "all" else [args.preset]
    codes = [run(n, args.out, args.threads, not args.no_huh_filter) for n in names]
    sys.exit(max(codes))
