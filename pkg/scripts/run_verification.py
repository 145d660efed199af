#!/usr/bin/env python3
"""Run every verification suite and write the JSON report.

Equivalent to `halfspace-qed verify --suite all --out verification_report.json`
but kept as a script entry point for experiment workflows.
"""
import argparse
import sys
import time

from halfspace_qed.report import all_passed, to_json, write_atomic
from halfspace_qed.verification import SuiteSettings, run_suite


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default="verification_report.json")
    parser.add_argument("--seed", type=int, default=42)
    args = parser.parse_args()

    settings = SuiteSettings(seed=args.seed)
    t0 = time.perf_counter()
    reports = run_suite("all", settings)
    elapsed = time.perf_counter() - t0
    for r in reports:
        err = r.abs_err if r.params.get("mode") == "abs" else r.rel_err
        print(f"{'PASS' if r.passed else 'FAIL'} {r.check_name}: err={err:.3e} tol={r.tol:.1e}")
    write_atomic(args.out, to_json(reports))
    print(f"{sum(r.passed for r in reports)}/{len(reports)} checks passed in {elapsed:.1f}s "
          f"-> {args.out}")
    return 0 if all_passed(reports) else 1


if __name__ == "__main__":
    sys.exit(main())
