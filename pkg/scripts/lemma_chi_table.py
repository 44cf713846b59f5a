"""Table of kappa_chi(F(h_chi)|N)(z_1) against the two candidate closed forms.

    python3 scripts/lemma_chi_table.py --q 3,5,7,9
"""
import argparse

from weightless.cli import parse_qs
from weightless.gf import field_for_q
from weightless.lemma import verify_lemma_chi


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--q", default="3,5,7")
    args = ap.parse_args()
    print(f"{'q':>3} {'m':>3} {'a':>3} {'b':>3}  (chi(a)-chi(b))D  (chi(1/a)-chi(1/b))D  value")
    for q in parse_qs(args.q):
        for r in verify_lemma_chi(field_for_q(q)):
            if r.status != "checked":
                continue
            print(f"{q:>3} {r.m:>3} {r.a:>3} {r.b:>3}  {str(r.closed_form_holds):>17}"
                  f"  {str(r.printed_closed_form_holds):>19}  {r.kappa_at_z1!r}")


if __name__ == "__main__":
    main()
