"""Print the Frobenius-trace distribution of elliptic curves over F_q and the
smooth-cubic counts it predicts.

    python3 scripts/trace_table.py --q 4
"""
import argparse

from cubic_census.classnumbers import predict_smooth_enumerator, trace_table

if __name__ == "__main__":
    ap = argparse.ArgumentParser()
    ap.add_argument("--q", type=int, default=7)
    args = ap.parse_args()
    q = args.q
    w = predict_smooth_enumerator(q)
    print(f"{'t':>4} {'P_q(t)':>14} {'smooth cubic forms':>22}")
    for t, p in trace_table(q).items():
        print(f"{t:>4} {str(p):>14} {w.coeff_by_zeros(q + 1 - t):>22}")
