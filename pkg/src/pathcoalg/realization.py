"""Realising a permutation representation ρ: G → Sym(V) on a coalgebra.

Pipeline: Cayley diagram → labelled action system on G ⊔ V → arrow
replacement to a simple graph → C(simple graph).  G acts on the coalgebra
through g ↦ f^{Φ_g}_{0,1}, and restricting to the grouplikes in V gives ρ
back.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

from .coalgebra import (
    DEFAULT_GROUPLIKE_CAP,
    DEFAULT_ORACLE_CAP,
    automorphisms_brute,
    coalgebra_to_json,
    grouplikes,
    is_morphism,
    verify_axioms,
)
from .errors import (
    CapExceeded,
    IdentityGenerator,
    InputError,
    NotGenerating,
    RepNotWellDefined,
    UnknownElement,
    VerificationFailed,
)
from .field import Field
from .graph import (
    DEFAULT_SEARCH_CAP,
    BinarySystem,
    SimpleGraph,
    automorphisms,
    degrees,
    is_invariant,
    to_dot,
)
from .graph_coalgebra import GraphCoalgebra, build_path_coalgebra, section, structured_to_matrix
from .group import DEFAULT_CLOSE_CAP, FiniteGroup, Perm, group_close
from .report import Report


@dataclass(frozen=True)
class PermRep:
    group: FiniteGroup
    v_size: int
    gen_images: tuple[Perm, ...]
    # rho[i] is the image of group element i
    rho: tuple[Perm, ...] = field(repr=False)

    @property
    def generators(self) -> tuple[Perm, ...]:
        return self.group.generators

    def __call__(self, g: int) -> Perm:
        return self.rho[g]


def make_rep(generators: Sequence[Perm], gen_images: Sequence[Perm], v_size: int,
             degree: int | None = None, cap: int = DEFAULT_CLOSE_CAP) -> PermRep:
    """Close the group and extend the generator images to ρ, checking that
    the extension is well defined."""
    generators, gen_images = tuple(generators), tuple(gen_images)
    if len(generators) != len(gen_images):
        raise InputError(f"{len(generators)} generators but {len(gen_images)} images")
    for s in generators:
        if s.is_identity():
            raise IdentityGenerator("the identity may not be a generator")
    for img in gen_images:
        if img.degree != v_size:
            raise InputError(f"generator image {img} does not act on {v_size} points")
    G = group_close(generators, cap, degree=degree)
    rho = [None] * G.order
    word = [None] * G.order
    rho[G.id_index] = Perm.identity(v_size)
    word[G.id_index] = ()
    gens = G.generator_indices
    for i in range(G.order):
        for j, s in enumerate(gens):
            t = G.mul(i, s)
            cand = rho[i] * gen_images[j]
            if rho[t] is None:
                rho[t] = cand
                word[t] = word[i] + (j,)
            elif rho[t] != cand:
                w1 = _word_str(word[i] + (j,))
                w2 = _word_str(word[t])
                raise RepNotWellDefined(
                    f"ρ not well-defined at word {w1}: it equals {w2} in G "
                    f"but the generator images give different permutations")
    return PermRep(G, v_size, gen_images, tuple(rho))


def _word_str(w) -> str:
    return "·".join(f"s{j}" for j in w) or "e"


def rep_from_json(data: dict, cap: int = DEFAULT_CLOSE_CAP) -> PermRep:
    try:
        g = data["group"]
        degree = int(g["degree"])
        gens = [Perm(tuple(int(x) for x in s)) for s in g["generators"]]
        v_size = int(data["v_size"])
        images = [Perm(tuple(int(x) for x in s)) for s in data["gen_images"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed permutation representation JSON: {exc}") from exc
    return make_rep(gens, images, v_size, degree=degree, cap=cap)


def rep_to_json(rep: PermRep) -> dict:
    return {
        "group": {"degree": rep.group.degree,
                  "generators": [list(s.images) for s in rep.generators]},
        "v_size": rep.v_size,
        "gen_images": [list(p.images) for p in rep.gen_images],
    }


# --- Cayley diagram and the action system ---------------------------------------

def _g_name(i: int) -> str:
    return f"g{i}"


def _v_name(v: int) -> str:
    return f"v{v}"


def cayley_diagram(G: FiniteGroup, S: Sequence[Perm] | None = None) -> BinarySystem:
    """One label per generator s_j; (g, g·s_j) under label j."""
    S = G.generators if S is None else tuple(S)
    for s in S:
        if s.is_identity():
            raise IdentityGenerator("the identity may not be a generator")
    idx = [G.index(s) for s in S]
    if len(G.subgroup_closure(idx)) != G.order:
        raise NotGenerating("the given elements do not generate the group")
    relations = tuple(frozenset((g, G.mul(g, s)) for g in range(G.order)) for s in idx)
    return BinarySystem(tuple(_g_name(i) for i in range(G.order)),
                        tuple(f"s{j}" for j in range(len(S))), relations)


def action_system(rep: PermRep) -> BinarySystem:
    """Vertices G ⊔ V; labels J ⊔ V; Cayley pairs plus (g, ρ(g)(v)) under label v."""
    G = rep.group
    n = G.order
    cay = cayley_diagram(G)
    action = tuple(frozenset((g, n + rep.rho[g](v)) for g in range(n)) for v in range(rep.v_size))
    return BinarySystem(
        cay.vertices + tuple(_v_name(v) for v in range(rep.v_size)),
        cay.labels + tuple(_v_name(v) for v in range(rep.v_size)),
        cay.relations + action,
    )


def phi(rep: PermRep, g) -> Perm:
    """Φ_g on the action system: h ↦ g·h on G, v ↦ ρ(g)(v) on V."""
    G = rep.group
    if isinstance(g, Perm):
        g = G.index(g)
    if not (isinstance(g, int) and 0 <= g < G.order):
        raise UnknownElement(f"{g!r} is not an element index of the group")
    n = G.order
    images = [G.mul(g, h) for h in range(n)] + [n + rep.rho[g](v) for v in range(rep.v_size)]
    return Perm(tuple(images))


# --- arrow replacement -------------------------------------------------------------

@dataclass(frozen=True)
class ArrowReplacement:
    system: BinarySystem
    simple: SimpleGraph
    tail_offset: int
    # gadget vertex id -> ((u, w) original ids, label, position)
    provenance: dict = field(repr=False)
    # (u, w, label index) -> tuple of gadget vertex positions in ``simple``
    gadgets: dict = field(repr=False)

    def lift(self, psi: Perm) -> Perm:
        """Extend an automorphism of the system to the replaced graph."""
        n = self.system.size
        images = list(psi.images) + [0] * (self.simple.size - n)
        for (u, w, li), verts in self.gadgets.items():
            target = self.gadgets[(psi(u), psi(w), li)]
            for a, b in zip(verts, target):
                images[a] = b
        return Perm(tuple(images))

    def project(self, chi: Perm) -> Perm:
        """Restrict an automorphism of the replaced graph to the original vertices."""
        n = self.system.size
        head = chi.images[:n]
        if sorted(head) != list(range(n)):
            raise InputError("permutation does not preserve the original vertex set")
        return Perm(tuple(head))


def arrow_replace(system: BinarySystem) -> ArrowReplacement:
    """Replace each labelled pair by an asymmetric undirected gadget.

    Pair (u, w) with label index i becomes the path u - x - y - w plus a
    pendant path of T+2i+1 vertices at x and T+2i+2 vertices at y, where
    T = max degree + 2.  The distinct tail lengths pin down label and
    direction.  Original vertices keep their ids and positions.
    """
    T = system.max_degree() + 2
    vertices = list(system.vertices)
    edges = []
    provenance = {}
    gadgets = {}

    def new(name, info):
        vertices.append(name)
        provenance[name] = info
        return len(vertices) - 1

    for li, (lab, rel) in enumerate(zip(system.labels, system.relations)):
        for u, w in sorted(rel):
            un, wn = system.vertices[u], system.vertices[w]
            stem = f"{un}>{wn}@{lab}"
            info = lambda pos: ((un, wn), lab, pos)  # noqa: E731
            x = new(f"{stem}:x", info("x"))
            y = new(f"{stem}:y", info("y"))
            verts = [x, y]
            edges += [(u, x), (x, y), (y, w)]
            for end, length in (("x", T + 2 * li + 1), ("y", T + 2 * li + 2)):
                prev = x if end == "x" else y
                for k in range(1, length + 1):
                    t = new(f"{stem}:{end}{k}", info(f"{end}{k}"))
                    edges.append((prev, t))
                    verts.append(t)
                    prev = t
            gadgets[(u, w, li)] = tuple(verts)
    named_edges = [(vertices[a], vertices[b]) for a, b in edges]
    simple = SimpleGraph.from_undirected(vertices, named_edges)
    return ArrowReplacement(system, simple, T, provenance, gadgets)


# --- end to end ----------------------------------------------------------------------

@dataclass
class RealizationBundle:
    rep: PermRep
    field: Field
    system: BinarySystem
    replacement: ArrowReplacement
    coalgebra: GraphCoalgebra
    v_subset: tuple[int, ...]
    g_subset: tuple[int, ...]
    report: Report

    @property
    def simple(self) -> SimpleGraph:
        return self.replacement.simple

    def export(self, out_dir) -> Path:
        out = Path(out_dir)
        out.mkdir(parents=True, exist_ok=True)
        _dump(out / "system.json", self.system.to_json())
        _dump(out / "simple.json", self.simple.to_json())
        (out / "simple.dot").write_text(to_dot(self.simple, undirected=True), encoding="utf-8")
        _dump(out / "coalgebra.json", coalgebra_to_json(self.coalgebra.coalgebra))
        _dump(out / "report.json", self.report.to_json())
        return out


def _dump(path: Path, data):
    path.write_text(json.dumps(data, indent=2, sort_keys=True, ensure_ascii=False) + "\n",
                    encoding="utf-8")


def realize_representation(rep: PermRep, F: Field, *, search_cap: int = DEFAULT_SEARCH_CAP,
                           grouplike_cap: int = DEFAULT_GROUPLIKE_CAP,
                           oracle_cap: int = DEFAULT_ORACLE_CAP,
                           strict: bool = True) -> RealizationBundle:
    """Build the coalgebra realising ``rep`` and verify items (1)-(4).

    With ``strict`` a failed item raises VerificationFailed (carrying the
    bundle); SKIPPED items never raise.
    """
    G = rep.group
    n, k = G.order, rep.v_size
    system = action_system(rep)
    repl = arrow_replace(system)
    gc = build_path_coalgebra(repl.simple, F)
    g_subset = tuple(range(n))
    v_subset = tuple(range(n, n + k))
    report = Report(f"realisation of a representation of a group of order {n} on {k} points "
                    f"over GF({F.name})")
    bundle = RealizationBundle(rep, F, system, repl, gc, v_subset, g_subset, report)

    # system level
    nS = len(G.generators)
    bad = [system.vertices[g] for g in g_subset if degrees(system, g)[2] != 2 * nS + k]
    bad += [system.vertices[v] for v in v_subset if degrees(system, v)[2] != n]
    report.add("degrees", not bad, f"deg(g) = 2|S|+|V| = {2 * nS + k}, deg(v) = |G| = {n}; "
               f"violations: {bad}")
    phis = [phi(rep, g) for g in range(n)]
    sys_auts = automorphisms(system, cap=search_cap)
    report.add("system automorphisms are {Φ_g}", set(sys_auts) == set(phis) and len(set(phis)) == n,
               f"{len(sys_auts)} found by search, |G| = {n}")
    hom = all(phis[a] * phis[b] == phis[G.mul(a, b)] for a in range(n) for b in range(n))
    report.add("Φ is a homomorphism", hom, f"checked on all {n * n} pairs")
    rho_ok = all(Perm(tuple(x - n for x in phis[g].images[n:])) == rep.rho[g] for g in range(n))
    report.add("system restriction to V is ρ", rho_ok, "every group element")

    # replaced simple graph
    lifted = [repl.lift(p) for p in phis]
    simple_auts = automorphisms(repl.simple, cap=search_cap)
    same = set(simple_auts) == set(lifted)
    proj_ok = all(repl.project(chi) in set(sys_auts) for chi in simple_auts)
    report.add("simple graph automorphisms", same and len(simple_auts) == n and proj_ok,
               f"|Aut(simple)| = {len(simple_auts)} over {repl.simple.size} vertices; "
               f"equal to lifted Φ_g: {same}; restrictions are system automorphisms: {proj_ok}",
               order=len(simple_auts), vertices=repl.simple.size)

    C = gc.coalgebra
    axioms = verify_axioms(C)
    report.add("coalgebra axioms", axioms.ok, f"dim C = {C.dim}; {len(axioms.failures)} failures")

    # (1) faithful G-coalgebra
    mats = [structured_to_matrix(gc, section(gc, chi)) for chi in lifted]
    morph = all(is_morphism(C, C, M) for M in mats)
    hom = all(mats[a] @ mats[b] == mats[G.mul(a, b)] for a in range(n) for b in range(n))
    injective = len(set(mats)) == n
    report.add("(1) g ↦ f^{Φ_g}_{0,1} is an injective homomorphism into Aut(C)",
               morph and hom and injective,
               f"morphisms: {morph}; homomorphism on {n * n} pairs: {hom}; injective: {injective}")

    # (2) restriction image
    restricted = []
    for M in mats:
        restricted.append(Perm(tuple(M.cols[v][0][0] for v in range(repl.simple.size))))
    image_ok = set(restricted) == set(simple_auts) and restricted == lifted
    report.add("(2) image of Aut(C) → Sym(G(C)) is Aut(simple) ≅ G", image_ok,
               f"{len(set(restricted))} restrictions; Aut(simple) has {len(simple_auts)} elements")
    try:
        gl = grouplikes(C, grouplike_cap)
        basis = sorted(tuple(1 if i == v else 0 for i in range(C.dim)) for v in range(repl.simple.size))
        report.add("grouplikes are the vertices (brute scan)", sorted(gl) == basis, f"{len(gl)} found")
    except CapExceeded as exc:
        report.add("grouplikes are the vertices (brute scan)", None, str(exc))
    try:
        brute = automorphisms_brute(C, cap=oracle_cap)
        want = gc.formula_order(len(simple_auts))
        report.add("|Aut(C)| by brute force", len(brute) == want, f"{len(brute)} vs {want}")
    except CapExceeded as exc:
        report.add("|Aut(C)| by brute force", None, str(exc))

    # (3) V invariant and the composed restriction is ρ
    inv_ok = is_invariant(repl.simple, v_subset, simple_auts) and is_invariant(system, v_subset, sys_auts)
    rho_ok = all(Perm(tuple(restricted[g](n + v) - n for v in range(k))) == rep.rho[g]
                 for g in range(n))
    gens_ok = all(Perm(tuple(restricted[G.index(s)](n + v) - n for v in range(k))) == img
                  for s, img in zip(rep.generators, rep.gen_images))
    report.add("(3) V ⊆ G(C) is invariant and the restriction to V is ρ",
               inv_ok and rho_ok and gens_ok,
               f"invariant: {inv_ok}; equals ρ on generators: {gens_ok}; on all elements: {rho_ok}")

    # (4) faithful on the complement, witnessed at e_G
    e = G.id_index
    witness = all(restricted[g](e) == g for g in range(n))
    outside = [i for i in range(repl.simple.size) if i not in set(v_subset)]
    comp = [tuple(r(i) for i in outside) for r in restricted]
    faithful = len(set(comp)) == n
    report.add("(4) action on G(C) \\ V is faithful", witness and faithful,
               f"Φ_g(e_G) = g for all g: {witness}; distinct restrictions: {faithful}")

    if strict and not report.ok:
        raise VerificationFailed("; ".join(c.name for c in report.failed), bundle)
    return bundle
