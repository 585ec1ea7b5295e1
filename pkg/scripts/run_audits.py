"""Run every audit suite and print one verdict line per property.

    python scripts/run_audits.py --seed 42 --csv-dir audits/
"""

import argparse
import pathlib
import time

from gfd import suites
from gfd.report import reports_to_csv


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--csv-dir", type=pathlib.Path)
    args = p.parse_args(argv)

    for name in suites.SUITES:
        start = time.perf_counter()
        reports = suites.run_suite(name, args.seed)
        elapsed = time.perf_counter() - start
        print(f"== {name} ({elapsed:.2f}s)")
        for r in reports:
            rel = "" if r.max_rel_residual != r.max_rel_residual else f"{r.max_rel_residual:.2e}"
            print(f"  {r.property_id:34s} {r.verdict.value:5s} points={len(r.points):4d} max_rel={rel}")
        if args.csv_dir:
            args.csv_dir.mkdir(parents=True, exist_ok=True)
            (args.csv_dir / f"{name}.csv").write_text(reports_to_csv(reports))


if __name__ == "__main__":
    main()
