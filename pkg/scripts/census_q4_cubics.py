"""Brute-force census of ordered cubic pairs over F_4 (about 6e10 class pairs).

Writes the table and the comparison against the closed forms as JSON.

    python3 scripts/census_q4_cubics.py --out q4_cubics.json --threads 8
"""
import argparse
import json
import time

from cubic_census import closedforms as cf
from cubic_census.verification import run_census

if __name__ == "__main__":
    ap = argparse.ArgumentParser()
    ap.add_argument("--q", type=int, default=4)
    ap.add_argument("--threads", type=int, default=None)
    ap.add_argument("--out", default=None)
    args = ap.parse_args()

    t0 = time.perf_counter()
    table, rep = run_census(3, 3, args.q, threads=args.threads)
    elapsed = time.perf_counter() - t0
    for k, want in enumerate(cf.registered_coefficients("cubic_cubic", args.q)):
        mark = "pass" if want == table.c(k) else "FAIL"
        print(f"c_{k}: formula {want}  brute {table.c(k)}  {mark}")
    print(f"overall: {'pass' if rep.ok else 'FAIL'} in {elapsed:.0f} s")
    if args.out:
        with open(args.out, "w") as fh:
            json.dump({"census": table.to_json(), "comparison": rep.to_json(),
                       "elapsed_s": f"{elapsed:.0f}"}, fh, indent=2)
