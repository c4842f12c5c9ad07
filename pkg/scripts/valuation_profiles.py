"""Minimum entry valuation of mu per level for a family of contexts.

Supersingular rows should track -(n+2)/2 (p odd) against the certified bound
-(n+3)/2; ordinary rows show the first column staying integral while the
second column decays like -(n+2).
"""
import argparse

from padiclog.cli import valuation_profile
from padiclog.hecke import HeckeData, classify


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--n", type=int, default=4)
    args = ap.parse_args()

    ctxs = [HeckeData(p, ap_, eps) for p in (3, 5) for ap_ in (0, p, 1) for eps in (1, -1)]
    print(f"{'ctx':<22} {'case':<14} " + " ".join(f"n={n:<8}" for n in range(1, args.n + 1)))
    for ctx in ctxs:
        n_hi = args.n if ctx.p == 3 else min(args.n, 3)
        rows = valuation_profile(ctx, 1, n_hi)
        key = "min_vp_col1" if ctx.is_ordinary else "min_vp"
        label = f"p={ctx.p} ap={ctx.ap} eps={ctx.eps}"
        print(f"{label:<22} {classify(ctx):<14} " + " ".join(f"{r[key]:<10}" for r in rows))


if __name__ == "__main__":
    main()
