"""Run every experiment config in a directory and print the sweep records.

    WEIGHTLESS_BUDGET=20000 python3 scripts/question2_sweep.py experiments/
"""
import argparse
import json
from pathlib import Path

from weightless.qtwo import load_experiment, sweep


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("directory", nargs="?", default="experiments")
    ap.add_argument("--n-max", type=int, default=None)
    ap.add_argument("--out", default=None)
    args = ap.parse_args()
    results = []
    for path in sorted(Path(args.directory).glob("*.json")):
        res = sweep(load_experiment(path), args.n_max)
        results.append(res.to_dict())
        print(f"{path.name}: first surjective n = {res.first_surjective_n}")
        for r in res.records:
            print(f"  n={r.n} |X|={r.x_count} |source|={r.source_count} rank={r.rank}"
                  f" scanned={r.columns_scanned} {r.note}")
    if args.out:
        Path(args.out).write_text(json.dumps(results, indent=2, sort_keys=True) + "\n")


if __name__ == "__main__":
    main()
