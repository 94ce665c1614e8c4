"""Run the verification scenarios and write a JSON report.

    python3 scripts/run_paper_suite.py --out report.json S1 S4
"""
import argparse
import json
import sys
import time

from digifix.suite import SCENARIOS, run_paper_suite


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("ids", nargs="*", help="scenario ids (default: all)")
    ap.add_argument("--out", default=None)
    args = ap.parse_args()
    unknown = [i for i in args.ids if i not in SCENARIOS]
    if unknown:
        ap.error(f"unknown scenario(s): {unknown}")
    report = []
    for sid in args.ids or list(SCENARIOS):
        t0 = time.perf_counter()
        (outcome,) = run_paper_suite([sid])
        dt = time.perf_counter() - t0
        print(f"{sid:>4} {outcome.status:<12} {dt:7.2f}s  {outcome.title}")
        report.append(outcome.to_json())
    if args.out:
        with open(args.out, "w") as fh:
            json.dump(report, fh, indent=2, sort_keys=True)
    return 0 if all(r["status"] != "fail" for r in report) else 1


if __name__ == "__main__":
    sys.exit(main())
