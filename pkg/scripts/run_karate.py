"""Two-group split of Zachary's karate club against the recorded factions."""
import argparse
from pathlib import Path

import numpy as np

from blockcut import detect
from blockcut.graph import read_edge_list
from blockcut.oracle import fraction_correct

DATA = Path(__file__).resolve().parent.parent / "tests" / "data"


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--variant", choices=["standard", "dc"], default="dc")
    args = ap.parse_args()

    g = read_edge_list(DATA / "karate.txt")
    truth = np.loadtxt(DATA / "karate_factions.txt", dtype=np.int8, comments="#")
    res = detect(g, args.variant)
    agree = round(fraction_correct(res.labels, truth) * g.n)
    print(f"variant={res.variant.value} n1={res.stats.n1} n2={res.stats.n2} m_out={res.stats.m_out}")
    print(f"{agree}/{g.n} vertices match the factions")
    wrong = np.flatnonzero(res.labels != (truth if np.mean(res.labels == truth) >= 0.5 else 3 - truth))
    print("misplaced vertices:", wrong.tolist())


if __name__ == "__main__":
    main()
