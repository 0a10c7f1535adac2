#!/usr/bin/env python3
"""Emit every figure data bundle into one output directory.

Usage: python scripts/reproduce_all.py [--out DIR] [--large] [--render]

--render additionally rasterizes each bundle when the figplot package is
installed; bundle generation never depends on it.
"""

import argparse
import subprocess
import sys
import time

from spinpurge.cli import FIGURE_IDS, main as spinpurge_main


def run(argv=None):
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", default="out")
    ap.add_argument("--large", action="store_true", help="include the N=7 population")
    ap.add_argument("--render", action="store_true", help="render images via figplot")
    args = ap.parse_args(argv)

    for fig in FIGURE_IDS:
        t0 = time.perf_counter()
        cmd = ["reproduce", fig, "--out", args.out]
        if args.large:
            cmd.append("--large")
        rc = spinpurge_main(cmd)
        if rc != 0:
            print(f"figure {fig} failed with exit code {rc}", file=sys.stderr)
            return rc
        print(f"  fig{fig}: {time.perf_counter() - t0:.1f}s")

    if args.render:
        for fig in FIGURE_IDS:
            rc = subprocess.call(
                [
                    "figplot",
                    fig,
                    "--bundle",
                    f"{args.out}/fig{fig}",
                    "--out",
                    f"{args.out}/fig{fig}/figure.png",
                ]
            )
            if rc != 0:
                print(f"render of {fig} failed ({rc})", file=sys.stderr)
                return rc
    return 0


if __name__ == "__main__":
    sys.exit(run())
