"""Run the default verification grid and write the JSON report.

    python scripts/run_default_grid.py --jobs 4 --out results/default_grid.json
"""
import argparse
import json
import time
from pathlib import Path

from padiclog.verify import GridSpec, run_grid


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--jobs", type=int, default=1)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--out", default="results/default_grid.json")
    args = ap.parse_args()

    t0 = time.perf_counter()
    report = run_grid(GridSpec(), seed=args.seed, jobs=args.jobs)
    elapsed = time.perf_counter() - t0

    out = Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(json.dumps(report.to_json(), indent=2))
    s = report.summary()
    print(f"{s['passed']}/{s['total']} checks, {s['cells']} cells, {elapsed:.1f}s -> {out}")
    for r in report.failures:
        print("FAIL", r.check, r.params, r.witness)
    raise SystemExit(0 if report.ok else 1)


if __name__ == "__main__":
    main()
