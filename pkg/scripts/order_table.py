"""Print |Aut C(Γ)| for small digraphs: formula, structured count and brute force.

    python3 scripts/order_table.py [--brute-cap N] [--json out.json]
"""
import argparse
import json
import time

from pathcoalg.coalgebra import automorphisms_brute, power_exceeds
from pathcoalg.field import field_make
from pathcoalg.graph import Digraph, automorphisms
from pathcoalg.graph_coalgebra import build_path_coalgebra, enumerate_structured, structured_to_matrix

GRAPHS = {
    "single edge": (["a", "b"], [("a", "b")]),
    "2-cycle": (["a", "b"], [("a", "b"), ("b", "a")]),
    "triangle": (["a", "b", "c"], [("a", "b"), ("b", "c"), ("c", "a")]),
    "path of length 2": (["a", "b", "c"], [("a", "b"), ("b", "c")]),
    "out-star K1,2": (["o", "x", "y"], [("o", "x"), ("o", "y")]),
}


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--brute-cap", type=int, default=2 ** 60,
                    help="skip brute force above this many candidate matrices")
    ap.add_argument("--fields", default="2^1,3^1,2^2")
    ap.add_argument("--json", help="also write the rows here")
    args = ap.parse_args()

    rows = []
    print(f"{'graph':18} {'field':6} {'|Aut Γ|':>7} {'formula':>8} {'structured':>10} {'brute':>7} {'secs':>6}")
    for name, (verts, edges) in GRAPHS.items():
        g = Digraph.from_edges(verts, edges)
        auts = automorphisms(g)
        for text in args.fields.split(","):
            p, n = (int(x) for x in text.split("^"))
            gc = build_path_coalgebra(g, field_make(p, n))
            t = time.perf_counter()
            structured = {structured_to_matrix(gc, f) for f in enumerate_structured(gc, auts)}
            brute = None
            if not power_exceeds(gc.field.q, gc.dim ** 2, args.brute_cap):
                found = automorphisms_brute(gc.coalgebra, cap=None)
                assert set(found) == structured, (name, text)
                brute = len(found)
            secs = time.perf_counter() - t
            row = {"graph": name, "field": text, "aut_graph": len(auts),
                   "formula": gc.formula_order(len(auts)), "structured": len(structured),
                   "brute": brute, "seconds": round(secs, 3)}
            rows.append(row)
            print(f"{name:18} {text:6} {len(auts):>7} {row['formula']:>8} {len(structured):>10} "
                  f"{'-' if brute is None else brute:>7} {secs:>6.2f}")
    if args.json:
        with open(args.json, "w", encoding="utf-8") as fh:
            json.dump(rows, fh, indent=2, sort_keys=True)


if __name__ == "__main__":
    main()
