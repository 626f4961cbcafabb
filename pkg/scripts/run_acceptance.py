"""Run the acceptance suite and print one line per criterion.

    python3 scripts/run_acceptance.py            # default, a few minutes
    python3 scripts/run_acceptance.py --extended # adds the q=4 cubic-cubic census
"""
import argparse
import pathlib
import sys

import pytest

ROOT = pathlib.Path(__file__).resolve().parents[1]

if __name__ == "__main__":
    ap = argparse.ArgumentParser()
    ap.add_argument("--extended", action="store_true")
    args = ap.parse_args()
    argv = ["-q", str(ROOT / "tests" / "test_acceptance.py")]
    if args.extended:
        argv.append("--extended")
    sys.exit(pytest.main(argv))
