"""figplot <figure-id> --bundle DIR --out FILE.(svg|png)"""

from __future__ import annotations

import argparse
import sys

from .render import FIGURE_IDS, BundleError, render


def main(argv: list[str] | None = None) -> int:
    ap = argparse.ArgumentParser(prog="figplot", description=__doc__)
    ap.add_argument("figure", choices=FIGURE_IDS)
    ap.add_argument("--bundle", required=True, help="directory written by 'spinpurge reproduce'")
    ap.add_argument("--out", required=True, help="output image path (.svg or .png)")
    args = ap.parse_args(argv)
    try:
        out = render(args.figure, args.bundle, args.out)
    except BundleError as exc:
        print(f"bundle error: {exc}", file=sys.stderr)
        return 1
    print(out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
