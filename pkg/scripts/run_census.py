"""Dimension census of weightless vs restricted cuspidal spaces.

    python3 scripts/run_census.py --q 3,5,7 --out results/census.json
"""
import argparse
import json
from pathlib import Path

from weightless.cli import parse_qs
from weightless.gf import field_for_q
from weightless.lemma import cone_diagnostic
from weightless.spaces import verify_all


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--q", default="3,5,7")
    ap.add_argument("--out", default=None)
    args = ap.parse_args()
    rows = []
    for q in parse_qs(args.q):
        spec = field_for_q(q)
        for mode in ("lie", "group"):
            for r in verify_all(spec, mode):
                rows.append({k: v for k, v in r.to_dict().items() if k != "witness"})
                print(f"q={q:<3} {mode:<5} orbit {r.orbit_index:<2} |O|={r.orbit_size:<4} |Obar|={r.closure_size:<4}"
                      f" Sw={r.dim_weightless:<4} Scusp={r.dim_restricted_cuspidal:<4}"
                      f" {'equal' if r.equality_holds else 'STRICT'}")
        d = cone_diagnostic(spec)
        print(f"q={q:<3} cone: quadratic functional kills Scusp={d.functional_kills_cuspidal},"
              f" kills Sw={d.functional_kills_weightless}, dim(Sw & ker l)={d.weightless_in_kernel_dim}")
    if args.out:
        Path(args.out).parent.mkdir(parents=True, exist_ok=True)
        Path(args.out).write_text(json.dumps(rows, indent=2, sort_keys=True) + "\n")


if __name__ == "__main__":
    main()
