"""Operator family on one test function, written as CSV (optionally plotted).

    python scripts/compare_operators.py --expr "sin(2*t)" --alpha 0.75 --out compare.csv --plot compare.png
"""

import argparse
import csv
import sys

from gfd.cli import COMPARE_COLUMNS, compare_rows, parse_grid
from gfd.expr import parse


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--expr", default="sin(2*t)")
    p.add_argument("--alpha", type=float, default=0.75)
    p.add_argument("--grid", default="0.1:10:0.01")
    p.add_argument("--caputo-steps", type=int, default=1000)
    p.add_argument("--out", default="-")
    p.add_argument("--plot", help="PNG path; needs matplotlib")
    args = p.parse_args(argv)

    grid = parse_grid(args.grid)
    rows = compare_rows(parse(args.expr), args.alpha, grid, args.caputo_steps)
    fh = sys.stdout if args.out == "-" else open(args.out, "w", newline="")
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(["t", *COMPARE_COLUMNS])
    w.writerows(rows)
    if fh is not sys.stdout:
        fh.close()

    if args.plot:
        import matplotlib

        matplotlib.use("Agg")
        import matplotlib.pyplot as plt

        colors = dict(caputo="red", khalil="green", anderson="blue", guebbai="orange", gfd_alpha="black")
        fig, ax = plt.subplots(figsize=(7, 4))
        for k, name in enumerate(COMPARE_COLUMNS, start=1):
            pts = [(float(r[0]), float(r[k])) for r in rows if r[k] != ""]
            ax.plot(*zip(*pts), ".", ms=1.5, color=colors[name], label=name)
        ax.set_xlabel("t")
        ax.set_title(f"{args.expr}, alpha={args.alpha}")
        ax.legend(markerscale=6)
        fig.tight_layout()
        fig.savefig(args.plot, dpi=150)


if __name__ == "__main__":
    main()
