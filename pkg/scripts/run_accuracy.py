"""Fraction of correctly classified vertices vs c_in at fixed mean degree."""
import argparse
from pathlib import Path

from blockcut import bench


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--outdir", default="results")
    ap.add_argument("--n", type=int, default=10_000)
    ap.add_argument("--csum", type=float, default=100.0)
    ap.add_argument("--cin-from", type=float, default=50.0)
    ap.add_argument("--cin-to", type=float, default=100.0)
    ap.add_argument("--cin-step", type=float, default=2.0)
    ap.add_argument("--reps", type=int, default=10)
    ap.add_argument("--seed", type=int, default=1)
    ap.add_argument("--variant", choices=["standard", "dc"], default="dc")
    args = ap.parse_args()

    out = Path(args.outdir)
    out.mkdir(parents=True, exist_ok=True)
    grid = bench.c_in_grid(args.cin_from, args.cin_to, args.cin_step)
    rows = bench.accuracy_experiment(args.n, grid, args.csum, args.reps, args.seed, args.variant)
    (out / f"accuracy_{args.variant}.csv").write_text(bench.accuracy_csv(rows))
    (out / f"accuracy_{args.variant}_summary.csv").write_text(bench.summary_csv(rows, args.csum))
    print(f"threshold c_in = {bench.ThresholdSpec(args.csum).c_in_critical:.4f}")
    for c_in, mean in bench.summarize(rows).items():
        print(f"c_in={c_in:g} mean_fraction_correct={mean:.4f}")


if __name__ == "__main__":
    main()
