"""Realise a few permutation representations and write their bundles.

    python3 scripts/realize_demo.py --out runs/realize [--field 2^1]
"""
import argparse
import time
from pathlib import Path

from pathcoalg.field import parse_field
from pathcoalg.group import Perm
from pathcoalg.realization import make_rep, realize_representation


def representations():
    swap, rot, tr = Perm((1, 0)), Perm((1, 2, 0)), Perm((1, 0, 2))
    d4 = [Perm((1, 2, 3, 0)), Perm((0, 3, 2, 1))]
    return {
        "trivial_on_a": make_rep([], [], 1, degree=1),
        "z2_swap": make_rep([swap], [swap], 2),
        "z3_natural": make_rep([rot], [rot], 3),
        "s3_natural": make_rep([tr, rot], [tr, rot], 3),
        # Z/3 acting trivially on two points: a non-faithful ρ
        "z3_trivial_action": make_rep([rot], [Perm((0, 1))], 2),
        "d4_square": make_rep(d4, d4, 4),
    }


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", default="runs/realize")
    ap.add_argument("--field", default="2^1")
    ap.add_argument("--only", help="comma separated subset of representation names")
    args = ap.parse_args()
    F = parse_field(args.field)
    wanted = set(args.only.split(",")) if args.only else None
    for name, rep in representations().items():
        if wanted and name not in wanted:
            continue
        t = time.perf_counter()
        bundle = realize_representation(rep, F, strict=False)
        path = bundle.export(Path(args.out) / name)
        r = bundle.report
        print(f"{name}: |G| = {rep.group.order}, simple graph on {bundle.simple.size} vertices, "
              f"dim C = {bundle.coalgebra.dim}; {len(r.failed)} FAIL, {len(r.skipped)} SKIPPED "
              f"({time.perf_counter() - t:.1f}s) -> {path}")
        for line in r.lines():
            if not line.startswith("[PASS]"):
                print("   ", line)


if __name__ == "__main__":
    main()
