#!/usr/bin/env python3
"""Run every bundled figure preset and write CSV (optionally SVG) output.

    python scripts/reproduce_figures.py --output out/figures --svg
    python scripts/reproduce_figures.py --full-samples   # original ensemble sizes

Sampled presets default to 10^6 trajectories; --full-samples restores the
20x larger original counts (expect a ~15 minute run).
"""

import argparse
import time
from pathlib import Path

from pecstep.cli import _run_series
from pecstep.presets import PRESETS, with_overrides
from pecstep.sampling import default_workers


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--output", default="out/figures")
    parser.add_argument("--svg", action="store_true")
    parser.add_argument("--seed", type=int, default=None)
    parser.add_argument("--samples", type=int, default=None, help="override all ensemble sizes")
    parser.add_argument(
        "--full-samples", action="store_true", help="use the original ensemble sizes"
    )
    parser.add_argument("--only", nargs="*", default=None, help="subset of preset ids")
    args = parser.parse_args()

    out = Path(args.output)
    ids = args.only if args.only else sorted(PRESETS)
    workers = default_workers()
    for pid in ids:
        p = PRESETS[pid]
        samples = args.samples
        if samples is None and args.full_samples and p.full_samples:
            samples = p.full_samples
        configs = [
            (name, with_overrides(cfg, samples=samples, seed=args.seed))
            for name, cfg in p.series
        ]
        t0 = time.perf_counter()
        outputs = _run_series(configs, out, pid, args.svg, workers)
        print(f"{pid:7s} {time.perf_counter() - t0:7.2f}s  {', '.join(outputs)}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
