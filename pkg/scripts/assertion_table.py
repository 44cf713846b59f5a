"""Multiplicities of PGL(2, q) irreducibles in S(O) for every class O.

    python3 scripts/assertion_table.py --q 3,5,7 [--lie]
"""
import argparse

from weightless.cli import parse_qs
from weightless.gf import field_for_q
from weightless.lemma import character_table_pgl2, verify_assertion
from weightless.structure import adjoint_orbits, conjugacy_classes


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--q", default="3,5")
    ap.add_argument("--lie", action="store_true", help="use adjoint orbits in sl2 instead of conjugacy classes")
    args = ap.parse_args()
    for q in parse_qs(args.q):
        spec = field_for_q(q)
        table = character_table_pgl2(spec)
        names = [c.name for c in table.chars]
        print(f"q={q}  " + " ".join(f"{n:>8}" for n in names) + "   End")
        orbits = adjoint_orbits(spec) if args.lie else conjugacy_classes(spec)
        for o in orbits:
            rep = verify_assertion(spec, o, table)
            flag = "" if rep.passed else "  <- " + ",".join(rep.violators)
            print(f"  |O|={o.size:<4}" + " ".join(f"{rep.multiplicities[n]:>8}" for n in names)
                  + f"   {rep.end_dimension}{flag}")


if __name__ == "__main__":
    main()
