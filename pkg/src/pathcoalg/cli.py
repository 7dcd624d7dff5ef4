"""Command line front end.

    pathcoalg coalg build GRAPH --field 2^1 [--out FILE]
    pathcoalg coalg verify FILE [--field p^n]
    pathcoalg coalg grouplikes FILE [--field p^n]
    pathcoalg coalg aut FILE --mode structured|brute|both [--field p^n]
    pathcoalg graph aut GRAPH
    pathcoalg realize REP --field 2^1 --out DIR
    pathcoalg group class GROUP --p 2 --n 1
    pathcoalg sequence check GRAPH --field 2^1

FILE may be a digraph JSON (then --field is needed) or a coalgebra JSON.
Exit codes: 0 ok, 2 bad input, 3 cap exceeded, 4 verification failure.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field as dc_field
from pathlib import Path

from .coalgebra import (
    DEFAULT_GROUPLIKE_CAP,
    DEFAULT_ORACLE_CAP,
    Coalgebra,
    automorphisms_brute,
    coalgebra_from_json,
    coalgebra_to_json,
    grouplikes,
    verify_axioms,
)
from .errors import CapExceeded, InputError, VerificationFailed
from .field import parse_field
from .graph import DEFAULT_SEARCH_CAP, Digraph, automorphisms, digraph_from_json, to_dot
from .graph_coalgebra import (
    DEFAULT_STRUCTURED_CAP,
    build_path_coalgebra,
    enumerate_structured,
    recover_digraph,
    structured_to_json,
    structured_to_matrix,
    verify_exact_sequence,
)
from .group import DEFAULT_CLOSE_CAP, DEFAULT_SUBGROUP_CAP, group_from_json, in_class_G
from .realization import realize_representation, rep_from_json

EXIT_OK, EXIT_INPUT, EXIT_CAP, EXIT_VERIFY = 0, 2, 3, 4


@dataclass
class Caps:
    group_close: int = DEFAULT_CLOSE_CAP
    subgroup_enum: int = DEFAULT_SUBGROUP_CAP
    grouplike_enum: int = DEFAULT_GROUPLIKE_CAP
    brute_oracle: int = DEFAULT_ORACLE_CAP
    graph_search: int = DEFAULT_SEARCH_CAP
    structured_enum: int = DEFAULT_STRUCTURED_CAP

    def __post_init__(self):
        for name, value in vars(self).items():
            if value <= 0:
                raise InputError(f"cap {name} must be positive, got {value}")


@dataclass
class Config:
    field: str | None = None
    caps: Caps = dc_field(default_factory=Caps)
    out: Path | None = None
    format: str = "text"

    def __post_init__(self):
        if self.field is not None:
            parse_field(self.field)
        if self.format not in ("text", "json", "dot"):
            raise InputError(f"unknown format {self.format!r}")

    def get_field(self):
        if self.field is None:
            raise InputError("--field p^n is required here")
        return parse_field(self.field)

    @classmethod
    def from_args(cls, args) -> "Config":
        caps = Caps(**{name: getattr(args, f"cap_{name}") for name in vars(Caps())})
        out = Path(args.out) if getattr(args, "out", None) else None
        return cls(getattr(args, "field", None), caps, out, args.format)


def dumps(data) -> str:
    return json.dumps(data, indent=2, sort_keys=True, ensure_ascii=False)


def _load_json(path: str):
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from exc


def _load_coalgebra(path: str, cfg: Config) -> tuple[Coalgebra, Digraph | None]:
    """A coalgebra JSON, or a digraph JSON turned into C(Γ) over --field.
    The digraph is returned when the coalgebra has the shape C(Γ)."""
    data = _load_json(path)
    if not isinstance(data, dict):
        raise InputError(f"{path}: expected a JSON object")
    if "comult" in data:
        C = coalgebra_from_json(data)
        if cfg.field is not None and parse_field(cfg.field) != C.field:
            raise InputError(f"--field {cfg.field} disagrees with the file's field {C.field.name}")
        try:
            return C, recover_digraph(C)
        except InputError:
            return C, None
    g = digraph_from_json(data)
    return build_path_coalgebra(g, cfg.get_field()).coalgebra, g


def _emit(cfg: Config, payload: dict, text: list[str], dot: str | None = None):
    if cfg.format == "json":
        print(dumps(payload))
    elif cfg.format == "dot":
        if dot is None:
            raise InputError("--format dot is not available for this command")
        print(dot, end="")
    else:
        print("\n".join(text))


# --- commands -------------------------------------------------------------------------

def cmd_coalg_build(args, cfg: Config) -> int:
    g = digraph_from_json(_load_json(args.input))
    gc = build_path_coalgebra(g, cfg.get_field())
    doc = coalgebra_to_json(gc.coalgebra)
    summary = {"dim": gc.dim, "vertices": gc.num_vertices, "edges": gc.num_edges,
               "field": gc.field.name}
    if cfg.out is None:
        print(dumps(doc))
        return EXIT_OK
    cfg.out.parent.mkdir(parents=True, exist_ok=True)
    cfg.out.write_text(dumps(doc) + "\n", encoding="utf-8")
    _emit(cfg, {**summary, "out": str(cfg.out)},
          [f"dim {gc.dim} (|V| = {gc.num_vertices}, |E| = {gc.num_edges}) over GF({gc.field.name})",
           f"wrote {cfg.out}"],
          to_dot(g))
    return EXIT_OK


def cmd_coalg_verify(args, cfg: Config) -> int:
    C, _ = _load_coalgebra(args.input, cfg)
    rep = verify_axioms(C)
    text = [f"coassociativity: {'PASS' if rep.coassoc else 'FAIL'}",
            f"counit: {'PASS' if rep.counit else 'FAIL'}"]
    text += [f"  {msg}" for msg in rep.failures]
    _emit(cfg, {"dim": C.dim, "coassoc": rep.coassoc, "counit": rep.counit,
                "failures": list(rep.failures), "ok": rep.ok}, text)
    return EXIT_OK if rep.ok else EXIT_VERIFY


def cmd_coalg_grouplikes(args, cfg: Config) -> int:
    C, _ = _load_coalgebra(args.input, cfg)
    # basis order reads better than tuple order
    found = sorted(grouplikes(C, cfg.caps.grouplike_enum), reverse=True)
    names = []
    for vec in found:
        support = [i for i, a in enumerate(vec) if a]
        if len(support) == 1 and vec[support[0]] == 1:
            names.append(C.basis_labels[support[0]])
        else:
            names.append(" + ".join(f"{list(C.field.coeffs(vec[i]))}·{C.basis_labels[i]}"
                                    for i in support))
    _emit(cfg, {"count": len(found), "grouplikes": names},
          [f"{len(found)} grouplike elements"] + [f"  {n}" for n in names])
    return EXIT_OK


def cmd_coalg_aut(args, cfg: Config) -> int:
    C, g = _load_coalgebra(args.input, cfg)
    mode = args.mode
    payload, text = {"mode": mode}, []
    structured = None
    if mode in ("structured", "both"):
        if g is None:
            raise InputError("structured mode needs a coalgebra of the form C(Γ)")
        gc = build_path_coalgebra(g, C.field)
        auts = automorphisms(g, cap=cfg.caps.graph_search)
        q, m = C.field.q, gc.num_edges
        formula = gc.formula_order(len(auts))
        if formula > cfg.caps.structured_enum:
            raise CapExceeded(f"{formula} structured automorphisms exceed cap "
                              f"{cfg.caps.structured_enum}")
        structured = list(enumerate_structured(gc, auts))
        payload.update(structured=len(structured), formula=formula, graph_automorphisms=len(auts))
        formula_text = f"formula ({q}·{q - 1})^{m}·{len(auts)} = {formula}"
        if mode == "structured":
            payload["triples"] = [structured_to_json(f) for f in structured]
            text.append(f"structured = {len(structured)}; {formula_text}")
            text += [f"  {json.dumps(structured_to_json(f), sort_keys=True, ensure_ascii=False)}"
                     for f in structured]
    if mode in ("brute", "both"):
        brute = automorphisms_brute(C, cap=cfg.caps.brute_oracle)
        payload["brute"] = len(brute)
        if mode == "brute":
            text.append(f"brute = {len(brute)}")
    if mode == "both":
        mats = {structured_to_matrix(gc, f) for f in structured}
        same = mats == set(brute)
        ok = same and len(brute) == formula
        payload.update(set_equal=same, ok=ok)
        if ok:
            text.append(f"structured = brute = {len(brute)}; {formula_text} ✓")
        else:
            text.append(f"MISMATCH: structured {len(mats)}, brute {len(brute)}, "
                        f"set equality {same}; {formula_text}")
        _emit(cfg, payload, text)
        return EXIT_OK if ok else EXIT_VERIFY
    _emit(cfg, payload, text)
    return EXIT_OK


def cmd_graph_aut(args, cfg: Config) -> int:
    g = digraph_from_json(_load_json(args.input))
    auts = automorphisms(g, cap=cfg.caps.graph_search)
    maps = [{str(g.vertices[v]): str(g.vertices[p(v)]) for v in range(g.size)} for p in auts]
    text = [f"|Aut| = {len(auts)}"]
    text += ["  " + ", ".join(f"{a}->{b}" for a, b in m.items()) for m in maps]
    _emit(cfg, {"order": len(auts), "automorphisms": maps}, text, to_dot(g))
    return EXIT_OK


def cmd_realize(args, cfg: Config) -> int:
    rep = rep_from_json(_load_json(args.input), cap=cfg.caps.group_close)
    bundle = realize_representation(rep, cfg.get_field(), search_cap=cfg.caps.graph_search,
                                    grouplike_cap=cfg.caps.grouplike_enum,
                                    oracle_cap=cfg.caps.brute_oracle, strict=False)
    report = bundle.report
    if cfg.out is not None:
        bundle.export(cfg.out)
    text = report.lines()
    if cfg.out is not None:
        text.append(f"bundle written to {cfg.out}")
    if report.ok and report.skipped:
        text.append(f"notice: {len(report.skipped)} check(s) SKIPPED because of caps")
    _emit(cfg, report.to_json(), text)
    return EXIT_OK if report.ok else EXIT_VERIFY


def cmd_group_class(args, cfg: Config) -> int:
    G = group_from_json(_load_json(args.input), cap=cfg.caps.group_close)
    v = in_class_G(G, args.p, args.n, cap=cfg.caps.subgroup_enum)
    payload = {"member": v.member, "p": args.p, "n": args.n, "bound": v.bound, "order": G.order}
    if v.member:
        text = [f"IN (|G| = {G.order}; no nontrivial normal subgroup has exponent dividing {v.bound})"]
    else:
        payload.update(witness_order=len(v.witness), witness_exponent=v.witness_exponent,
                       witness=[list(G.elements[i].images) for i in sorted(v.witness)])
        text = [f"NOT-IN: normal subgroup of order {len(v.witness)} has exponent "
                f"{v.witness_exponent}, which divides {v.bound}"]
    _emit(cfg, payload, text)
    return EXIT_OK


def cmd_sequence_check(args, cfg: Config) -> int:
    C, g = _load_coalgebra(args.input, cfg)
    if g is None:
        raise InputError("the coalgebra is not of the form C(Γ)")
    gc = build_path_coalgebra(g, C.field)
    report = verify_exact_sequence(gc, oracle_cap=cfg.caps.brute_oracle,
                                   grouplike_cap=cfg.caps.grouplike_enum,
                                   structured_cap=cfg.caps.structured_enum,
                                   search_cap=cfg.caps.graph_search, seed=args.seed)
    _emit(cfg, report.to_json(), report.lines())
    return EXIT_OK if report.ok else EXIT_VERIFY


# --- parser ---------------------------------------------------------------------------

def _common(p: argparse.ArgumentParser, field_required: bool = False, out_help: str | None = None):
    p.add_argument("--field", required=field_required, help='finite field as "p^n", e.g. 2^1')
    p.add_argument("--format", choices=("text", "json", "dot"), default="text")
    if out_help:
        p.add_argument("--out", help=out_help)
    for name, value in vars(Caps()).items():
        p.add_argument(f"--cap-{name.replace('_', '-')}", dest=f"cap_{name}", type=int,
                       default=value, metavar="N", help=f"default {value}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pathcoalg",
                                     description="Graph coalgebras and their automorphisms.")
    top = parser.add_subparsers(dest="command", required=True)

    coalg = top.add_parser("coalg").add_subparsers(dest="sub", required=True)
    p = coalg.add_parser("build", help="build C(Γ) from a digraph")
    p.add_argument("input")
    _common(p, field_required=True, out_help="coalgebra JSON to write (default: stdout)")
    p.set_defaults(func=cmd_coalg_build)
    for name, func, helptext in (("verify", cmd_coalg_verify, "check the coalgebra axioms"),
                                 ("grouplikes", cmd_coalg_grouplikes, "scan for grouplikes")):
        p = coalg.add_parser(name, help=helptext)
        p.add_argument("input")
        _common(p)
        p.set_defaults(func=func)
    p = coalg.add_parser("aut", help="automorphisms, structured and/or brute force")
    p.add_argument("input")
    p.add_argument("--mode", choices=("structured", "brute", "both"), default="structured")
    _common(p)
    p.set_defaults(func=cmd_coalg_aut)

    graph = top.add_parser("graph").add_subparsers(dest="sub", required=True)
    p = graph.add_parser("aut", help="automorphism group of a digraph")
    p.add_argument("input")
    _common(p)
    p.set_defaults(func=cmd_graph_aut)

    p = top.add_parser("realize", help="realise a permutation representation")
    p.add_argument("input")
    _common(p, field_required=True, out_help="directory for the bundle")
    p.set_defaults(func=cmd_realize)

    group = top.add_parser("group").add_subparsers(dest="sub", required=True)
    p = group.add_parser("class", help="membership in the class G_{p,n}")
    p.add_argument("input")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--n", type=int, default=1)
    _common(p)
    p.set_defaults(func=cmd_group_class)

    seq = top.add_parser("sequence").add_subparsers(dest="sub", required=True)
    p = seq.add_parser("check", help="verify the split exact sequence for C(Γ)")
    p.add_argument("input")
    p.add_argument("--seed", type=int, default=0)
    _common(p)
    p.set_defaults(func=cmd_sequence_check)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors and 0 on --help
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        cfg = Config.from_args(args)
        return args.func(args, cfg)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except CapExceeded as exc:
        print(f"cap exceeded: {exc}", file=sys.stderr)
        return EXIT_CAP
    except VerificationFailed as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return EXIT_VERIFY


if __name__ == "__main__":
    sys.exit(main())
