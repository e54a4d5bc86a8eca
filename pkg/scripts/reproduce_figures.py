"""Write the CSV and report of every preset scenario into one directory."""

import argparse
import time
from pathlib import Path

from matterwave.cli import run
from matterwave.scenario import presets


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", type=Path, default=Path("results"))
    parser.add_argument("--report", choices=("text", "json"), default="json")
    args = parser.parse_args()
    for name, scenario in presets().items():
        start = time.perf_counter()
        report = run(scenario, args.out, args.report)
        print(f"{name:14s} {', '.join(report.columns[1:]):70s} {time.perf_counter() - start:6.2f} s")


if __name__ == "__main__":
    main()
