#!/usr/bin/env python3
"""Run every built-in scenario and print the full reports.

Exit status is 0 only if every claim in every scenario passes.
"""

import argparse
import sys

from nccwk.harness.report import render_report
from nccwk.harness.scenarios import SCENARIOS, run_scenario


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--format", choices=("text", "json-like"), default="text")
    args = ap.parse_args()
    all_ok = True
    for name in sorted(SCENARIOS):
        report = run_scenario(name)
        print(render_report(report, args.format))
        print()
        all_ok = all_ok and report.passed
    print("all scenarios passed" if all_ok else "SOME SCENARIO FAILED")
    return 0 if all_ok else 1


if __name__ == "__main__":
    sys.exit(main())
