"""The coalgebra C(Γ) of a digraph and its structured automorphisms.

Basis: one element per vertex (grouplike: Δv = v⊗v, ε(v) = 1) followed by
one element per edge e = (v1, v2) with Δe = v1⊗e + e⊗v2 and ε(e) = 0.

Every automorphism is f = (σ, λ, μ) with σ ∈ Aut(Γ), λ: E → k, μ: E → k^×:

    f(v) = σ(v)
    f(e) = λ(e)·(σ(v2) − σ(v1)) + μ(e)·σ(e)
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Iterator

from .coalgebra import (
    DEFAULT_ORACLE_CAP,
    Coalgebra,
    LinearMap,
    automorphisms_brute,
    grouplikes,
    DEFAULT_GROUPLIKE_CAP,
    is_morphism,
    power_exceeds,
)
from .errors import (
    CapExceeded,
    GraphMismatch,
    InputError,
    InvalidSigma,
    MalformedImage,
    NotAMorphism,
    NotInvertible,
    ZeroMu,
)
from .field import Field
from .graph import Digraph, automorphisms, DEFAULT_SEARCH_CAP
from .group import Perm
from .report import Report

DEFAULT_STRUCTURED_CAP = 100_000


@dataclass(frozen=True)
class GraphCoalgebra:
    graph: Digraph
    field: Field
    coalgebra: Coalgebra = field(compare=False)
    # vertex position -> basis index, edge (u, w) -> basis index
    vertex_index: dict = field(compare=False, repr=False)
    edge_index: dict = field(compare=False, repr=False)
    _edge_perm_cache: dict = field(default_factory=dict, compare=False, repr=False)

    @property
    def num_vertices(self) -> int:
        return self.graph.size

    @property
    def edges(self) -> tuple[tuple[int, int], ...]:
        return self.graph.edges

    @property
    def num_edges(self) -> int:
        return len(self.graph.edges)

    @property
    def dim(self) -> int:
        return self.coalgebra.dim

    def edge_perm(self, sigma: Perm) -> tuple[int, ...]:
        """Edge numbering permutation induced by σ; raises InvalidSigma if σ
        does not map edges to edges."""
        key = sigma.images
        cached = self._edge_perm_cache.get(key)
        if cached is not None:
            return cached
        if sigma.degree != self.num_vertices:
            raise InvalidSigma(f"σ has degree {sigma.degree}, graph has {self.num_vertices} vertices")
        numbering = {e: k for k, e in enumerate(self.edges)}
        out = []
        for u, w in self.edges:
            img = (sigma(u), sigma(w))
            if img not in numbering:
                raise InvalidSigma(f"σ maps edge {self.graph.edge_name((u, w))} to a non-edge")
            out.append(numbering[img])
        out = tuple(out)
        self._edge_perm_cache[key] = out
        return out

    def formula_order(self, aut_count: int) -> int:
        q = self.field.q
        return (q * (q - 1)) ** self.num_edges * aut_count


def build_path_coalgebra(g: Digraph, F: Field) -> GraphCoalgebra:
    """C(Γ) over F.  Loops are rejected: on a loop e = (v, v) the λ-term
    vanishes and the automorphism count formula no longer holds."""
    for u, w in g.edges:
        if u == w:
            raise InputError(f"loop at {g.vertices[u]!r} is not supported")
    nv = g.size
    labels = [str(v) for v in g.vertices] + [g.edge_name(e) for e in g.edges]
    if len(set(labels)) != len(labels):
        raise InputError("vertex names collide with edge names")
    comult = [((v, v, 1),) for v in range(nv)]
    for k, (u, w) in enumerate(g.edges):
        e = nv + k
        comult.append(((u, e, 1), (e, w, 1)))
    counit = tuple([1] * nv + [0] * len(g.edges))
    C = Coalgebra(F, tuple(labels), tuple(comult), counit)
    return GraphCoalgebra(
        graph=g, field=F, coalgebra=C,
        vertex_index={v: v for v in range(nv)},
        edge_index={e: nv + k for k, e in enumerate(g.edges)},
    )


@dataclass(frozen=True)
class StructuredAut:
    """The automorphism f^σ_{λ,μ}; λ and μ are per-edge field codes in the
    edge order of ``gc``."""

    gc: GraphCoalgebra
    sigma: Perm
    lam: tuple[int, ...]
    mu: tuple[int, ...]

    def __post_init__(self):
        m = self.gc.num_edges
        if len(self.lam) != m or len(self.mu) != m:
            raise InputError(f"λ and μ need one value per edge ({m})")
        q = self.gc.field.q
        for a in self.lam + self.mu:
            if not 0 <= a < q:
                raise InputError(f"field code {a} out of range")
        for k, a in enumerate(self.mu):
            if a == 0:
                raise ZeroMu(f"μ vanishes on edge {self.gc.graph.edge_name(self.gc.edges[k])}")
        self.gc.edge_perm(self.sigma)

    @property
    def edge_sigma(self) -> tuple[int, ...]:
        return self.gc.edge_perm(self.sigma)

    def is_identity(self) -> bool:
        return self.sigma.is_identity() and not any(self.lam) and all(a == 1 for a in self.mu)


def identity_aut(gc: GraphCoalgebra) -> StructuredAut:
    m = gc.num_edges
    return StructuredAut(gc, Perm.identity(gc.num_vertices), (0,) * m, (1,) * m)


def section(gc: GraphCoalgebra, sigma: Perm) -> StructuredAut:
    """σ ↦ f^σ_{0,1}."""
    m = gc.num_edges
    return StructuredAut(gc, sigma, (0,) * m, (1,) * m)


def structured_to_matrix(gc: GraphCoalgebra, f: StructuredAut) -> LinearMap:
    if f.gc != gc:
        raise GraphMismatch("automorphism belongs to a different graph coalgebra")
    F = gc.field
    nv = gc.num_vertices
    sig = f.sigma
    esig = f.edge_sigma
    cols = [((sig(v), 1),) for v in range(nv)]
    for k, (u, w) in enumerate(gc.edges):
        col = {nv + esig[k]: f.mu[k]}
        lam = f.lam[k]
        if lam:
            col[sig(w)] = lam
            col[sig(u)] = F.neg(lam)
        cols.append(tuple(sorted(col.items())))
    return LinearMap(F, gc.dim, tuple(cols))


def compose(f2: StructuredAut, f1: StructuredAut) -> StructuredAut:
    """f2 ∘ f1 = (σ2σ1, λ1 + μ1·(λ2∘σ1), μ1·(μ2∘σ1))."""
    if f1.gc != f2.gc:
        raise GraphMismatch("cannot compose automorphisms of different graph coalgebras")
    F = f1.gc.field
    s1 = f1.edge_sigma
    lam = tuple(F.add(f1.lam[k], F.mul(f1.mu[k], f2.lam[s1[k]])) for k in range(len(s1)))
    mu = tuple(F.mul(f1.mu[k], f2.mu[s1[k]]) for k in range(len(s1)))
    return StructuredAut(f1.gc, f2.sigma * f1.sigma, lam, mu)


def invert(f: StructuredAut) -> StructuredAut:
    """(σ⁻¹, −(λ/μ)∘σ⁻¹, (1/μ)∘σ⁻¹)."""
    F = f.gc.field
    sinv = f.sigma.inverse()
    einv = f.gc.edge_perm(sinv)
    lam = tuple(F.neg(F.div(f.lam[einv[k]], f.mu[einv[k]])) for k in range(len(einv)))
    mu = tuple(F.inv(f.mu[einv[k]]) for k in range(len(einv)))
    return StructuredAut(f.gc, sinv, lam, mu)


def decompose_matrix_aut(gc: GraphCoalgebra, M: LinearMap, check_morphism: bool = True) -> StructuredAut:
    """Recover (σ, λ, μ) from the matrix of an automorphism of C(Γ)."""
    C = gc.coalgebra
    if M.field != gc.field or M.dim_in != gc.dim or M.dim_out != gc.dim:
        raise NotAMorphism("matrix shape or field does not match C(Γ)")
    if check_morphism and not is_morphism(C, C, M):
        raise NotAMorphism("matrix is not a coalgebra endomorphism of C(Γ)")
    nv = gc.num_vertices
    images = []
    for v in range(nv):
        col = M.cols[v]
        if len(col) != 1 or col[0][1] != 1 or col[0][0] >= nv:
            raise MalformedImage(f"vertex {gc.graph.vertices[v]!r} is not sent to a vertex")
        images.append(col[0][0])
    if len(set(images)) != nv:
        raise NotInvertible("vertex images are not distinct")
    sigma = Perm(tuple(images))
    F = gc.field
    numbering = {e: k for k, e in enumerate(gc.edges)}
    lam, mu = [], []
    for k, (u, w) in enumerate(gc.edges):
        col = dict(M.cols[nv + k])
        su, sw = sigma(u), sigma(w)
        target = numbering.get((su, sw))
        if target is None:
            if any(i >= nv for i in col):
                raise MalformedImage(f"edge {gc.graph.edge_name((u, w))} maps outside its span")
            raise NotInvertible(f"σ sends edge {gc.graph.edge_name((u, w))} to a non-edge")
        allowed = {su, sw, nv + target}
        if set(col) - allowed:
            raise MalformedImage(f"image of edge {gc.graph.edge_name((u, w))} has support "
                                 f"outside {{σv1, σv2, σe}}")
        a = col.get(sw, 0)
        if col.get(su, 0) != F.neg(a):
            raise MalformedImage(f"coefficients of σv1 and σv2 in the image of "
                                 f"{gc.graph.edge_name((u, w))} are not opposite")
        m = col.get(nv + target, 0)
        if m == 0:
            raise NotInvertible(f"edge {gc.graph.edge_name((u, w))} is sent into the vertex span")
        lam.append(a)
        mu.append(m)
    return StructuredAut(gc, sigma, tuple(lam), tuple(mu))


def restriction_to_grouplikes(gc: GraphCoalgebra, M: LinearMap,
                              grouplike_vectors: list[tuple[int, ...]] | None = None) -> Perm:
    """The permutation an automorphism induces on the grouplike elements.

    With ``grouplike_vectors`` (e.g. from the brute scan) the images are
    looked up among those vectors; otherwise the vertex basis is used.
    """
    if grouplike_vectors is None:
        grouplike_vectors = []
        for v in range(gc.num_vertices):
            vec = [0] * gc.dim
            vec[v] = 1
            grouplike_vectors.append(tuple(vec))
    pos = {g: i for i, g in enumerate(grouplike_vectors)}
    images = []
    for g in grouplike_vectors:
        img = M.apply({i: a for i, a in enumerate(g) if a})
        dense = [0] * gc.dim
        for i, a in img.items():
            dense[i] = a
        dense = tuple(dense)
        if dense not in pos:
            raise MalformedImage("map does not permute the grouplike elements")
        images.append(pos[dense])
    return Perm(tuple(images))


def enumerate_structured(gc: GraphCoalgebra, graph_auts: list[Perm] | None = None) -> Iterator[StructuredAut]:
    """Every triple (σ, λ, μ), σ running over Aut(Γ) in sorted order."""
    if graph_auts is None:
        graph_auts = automorphisms(gc.graph)
    q, m = gc.field.q, gc.num_edges
    lams = list(itertools.product(range(q), repeat=m))
    mus = list(itertools.product(range(1, q), repeat=m))
    for sigma in graph_auts:
        for lam in lams:
            for mu in mus:
                yield StructuredAut(gc, sigma, lam, mu)


def random_structured(gc: GraphCoalgebra, rng: random.Random,
                      graph_auts: list[Perm] | None = None) -> StructuredAut:
    if graph_auts is None:
        graph_auts = automorphisms(gc.graph)
    q, m = gc.field.q, gc.num_edges
    return StructuredAut(gc, rng.choice(graph_auts),
                         tuple(rng.randrange(q) for _ in range(m)),
                         tuple(rng.randrange(1, q) for _ in range(m)))


# --- the split exact sequence ------------------------------------------------------

def verify_exact_sequence(gc: GraphCoalgebra, *, oracle_cap: int | None = DEFAULT_ORACLE_CAP,
                          grouplike_cap: int = DEFAULT_GROUPLIKE_CAP,
                          structured_cap: int = DEFAULT_STRUCTURED_CAP,
                          search_cap: int = DEFAULT_SEARCH_CAP,
                          seed: int = 0, sample_size: int = 2000) -> Report:
    """Check 1 → ∏(k⋊k^×) → Aut(C(Γ)) → Aut(Γ) → 1 and its splitting.

    Structured-family checks run over every triple when there are at most
    ``structured_cap`` of them, otherwise over a seeded random sample (the
    detail string says so).  Checks against the brute-force oracle are
    SKIPPED when it is over its cap.
    """
    F, q, m = gc.field, gc.field.q, gc.num_edges
    C = gc.coalgebra
    rep = Report(f"exact sequence for C(Γ), |V|={gc.num_vertices}, |E|={m}, field GF({F.name})")
    graph_auts = automorphisms(gc.graph, cap=search_cap)
    kernel_size = (q * (q - 1)) ** m
    total = kernel_size * len(graph_auts)
    rep.add("graph automorphisms", True, f"|Aut(Γ)| = {len(graph_auts)} by exhaustive search",
            aut_graph=len(graph_auts))

    exhaustive = total <= structured_cap
    if exhaustive:
        family = list(enumerate_structured(gc, graph_auts))
        how = "all"
    else:
        rng = random.Random(seed)
        family = [random_structured(gc, rng, graph_auts) for _ in range(sample_size)]
        how = f"sample of {sample_size} (seed {seed})"
    mats = {}
    bad_morphism = bad_restriction = 0
    for f in family:
        M = structured_to_matrix(gc, f)
        mats[M] = f
        if not is_morphism(C, C, M):
            bad_morphism += 1
        if any(M.cols[v] != ((f.sigma(v), 1),) for v in range(gc.num_vertices)):
            bad_restriction += 1
    distinct = len(mats) == len(family) if exhaustive else True
    rep.add("family consists of coalgebra morphisms", bad_morphism == 0,
            f"{how} {len(family)} triples; {bad_morphism} failures")
    rep.add("(a) restriction to grouplikes is σ", bad_restriction == 0,
            f"{how} triples; {bad_restriction} failures")

    # (b) kernel
    kernel = [f for f in family if f.sigma.is_identity()]
    if exhaustive:
        ok = len(kernel) == kernel_size and distinct
        rep.add("(b) kernel size", ok, f"{len(kernel)} kernel triples, expected (q(q-1))^|E| = "
                f"{kernel_size}; matrices distinct: {distinct}", kernel=len(kernel))
    else:
        rep.add("(b) kernel size", all(f.sigma.is_identity() == (restriction_to_grouplikes(
            gc, structured_to_matrix(gc, f)).is_identity()) for f in family),
            f"kernel membership agrees with σ = id on the {how}; closed-form size {kernel_size}",
            kernel=kernel_size)

    # (c) section
    bad = 0
    for s1 in graph_auts:
        for s2 in graph_auts:
            lhs = structured_to_matrix(gc, section(gc, s2)) @ structured_to_matrix(gc, section(gc, s1))
            if lhs != structured_to_matrix(gc, section(gc, s2 * s1)):
                bad += 1
    back = all(restriction_to_grouplikes(gc, structured_to_matrix(gc, section(gc, s))) == s
               for s in graph_auts)
    rep.add("(c) section σ ↦ f^σ_{0,1} is a homomorphism", bad == 0 and back,
            f"{len(graph_auts) ** 2} pairs, {bad} failures; restriction∘section = id: {back}")

    # (d) order and oracle equality
    rep.add("(d) structured order", (len(mats) == total) if exhaustive else None,
            f"{len(mats)} distinct structured matrices vs formula {total}" if exhaustive
            else f"formula {total}; too many triples to enumerate", formula=total)
    if power_exceeds(q, C.dim * C.dim, oracle_cap):
        rep.add("(d) brute-force oracle", None,
                f"q^(d^2) = {q}^{C.dim * C.dim} exceeds oracle cap {oracle_cap}")
    else:
        brute = automorphisms_brute(C, cap=oracle_cap)
        same = exhaustive and set(brute) == set(mats)
        rep.add("(d) brute-force oracle", len(brute) == total and (same or not exhaustive),
                f"brute {len(brute)}, formula {total}, set equality: {same}", brute=len(brute))
        try:
            gl = grouplikes(C, grouplike_cap)
        except CapExceeded:
            gl = None
        if gl is None:
            rep.add("image of restriction equals Aut(Γ)", None, "grouplike scan over its cap")
        else:
            vertex_basis = [tuple(1 if i == v else 0 for i in range(C.dim))
                            for v in range(gc.num_vertices)]
            if sorted(gl) != sorted(vertex_basis):
                rep.add("image of restriction equals Aut(Γ)", False,
                        "brute-scanned grouplikes are not the vertex basis")
            else:
                # act on the scanned grouplikes, then name each by its vertex
                vert_of = [g.index(1) for g in gl]
                translated = set()
                for M in brute:
                    img = restriction_to_grouplikes(gc, M, gl)
                    t = [0] * gc.num_vertices
                    for i in range(len(gl)):
                        t[vert_of[i]] = vert_of[img(i)]
                    translated.add(tuple(t))
                ok = translated == {s.images for s in graph_auts}
                rep.add("image of restriction equals Aut(Γ)", ok,
                        f"{len(translated)} distinct permutations of the {len(gl)} "
                        f"brute-scanned grouplikes")
        brute_kernel = sum(1 for M in brute if restriction_to_grouplikes(gc, M).is_identity())
        rep.add("(b) kernel size by oracle", brute_kernel == kernel_size,
                f"{brute_kernel} brute automorphisms fix every grouplike")

    # (e) per-edge factors K_e ≅ k ⋊ k^×
    rep_e = _check_edge_factors(gc)
    rep.add("(e) K_e ≅ k⋊k^× via g_e", rep_e[0], rep_e[1])
    return rep


def _check_edge_factors(gc: GraphCoalgebra) -> tuple[bool, str]:
    F, q, m = gc.field, gc.field.q, gc.num_edges
    ident = Perm.identity(gc.num_vertices)
    problems = []
    nonabelian = []
    for k in range(m):
        def elem(a, b):
            lam = [0] * m
            mu = [1] * m
            lam[k], mu[k] = a, b
            return StructuredAut(gc, ident, tuple(lam), tuple(mu))

        K = [elem(a, b) for a in range(q) for b in range(1, q)]
        mat = {structured_to_matrix(gc, f): f for f in K}
        if len(mat) != q * (q - 1):
            problems.append(f"edge {k}: |K_e| = {len(mat)}")
            continue
        commutes = True
        for f1 in K:
            M1 = structured_to_matrix(gc, f1)
            for f2 in K:
                prod = structured_to_matrix(gc, f2) @ M1
                if prod not in mat:
                    problems.append(f"edge {k}: K_e not closed")
                    break
                f = mat[prod]
                # law: (λ2,μ2)∘(λ1,μ1) = (λ1 + μ1λ2, μ1μ2)
                want = (F.add(f1.lam[k], F.mul(f1.mu[k], f2.lam[k])), F.mul(f1.mu[k], f2.mu[k]))
                if (f.lam[k], f.mu[k]) != want:
                    problems.append(f"edge {k}: composition law fails")
                # g_e(f2∘f1) = g_e(f2)∘g_e(f1), with g_e(λ, μ) = (0, μ)
                g_prod = structured_to_matrix(gc, elem(0, f2.mu[k])) @ structured_to_matrix(gc, elem(0, f1.mu[k]))
                if g_prod != structured_to_matrix(gc, elem(0, f.mu[k])):
                    problems.append(f"edge {k}: g_e not a homomorphism")
                if prod != M1 @ structured_to_matrix(gc, f2):
                    commutes = False
        N = [f for f in K if f.mu[k] == 1]
        H = [f for f in K if f.lam[k] == 0]
        if len(N) != q or len(H) != q - 1:
            problems.append(f"edge {k}: |N_e| = {len(N)}, |H_e| = {len(H)}")
        Nm = {structured_to_matrix(gc, f) for f in N}
        for f in K:
            Mf = structured_to_matrix(gc, f)
            Mi = structured_to_matrix(gc, invert(f))
            if any(Mf @ n @ Mi not in Nm for n in Nm):
                problems.append(f"edge {k}: N_e not normal")
                break
        nonabelian.append(not commutes)
    if problems:
        return False, "; ".join(problems[:5])
    expect_nonabelian = q > 2
    if m and any(x != expect_nonabelian for x in nonabelian):
        return False, "commutativity of K_e does not match q"
    return True, (f"{m} edge factors of order {q * (q - 1)}; kernel of g_e = N_e of order {q}; "
                  f"nonabelian: {expect_nonabelian}")


# --- JSON ----------------------------------------------------------------------------

def structured_to_json(f: StructuredAut) -> dict:
    gc = f.gc
    F = gc.field
    names = gc.graph.vertices
    return {
        "sigma": [str(names[f.sigma(v)]) for v in range(gc.num_vertices)],
        "lambda": {gc.graph.edge_name(e): list(F.coeffs(f.lam[k])) for k, e in enumerate(gc.edges)},
        "mu": {gc.graph.edge_name(e): list(F.coeffs(f.mu[k])) for k, e in enumerate(gc.edges)},
    }


def structured_from_json(gc: GraphCoalgebra, data: dict) -> StructuredAut:
    F = gc.field
    try:
        pos = gc.graph.vertex_index
        sigma = Perm(tuple(pos[str(x)] for x in data["sigma"]))
        names = [gc.graph.edge_name(e) for e in gc.edges]
        lam = tuple(F.encode(data["lambda"][n]) for n in names)
        mu = tuple(F.encode(data["mu"][n]) for n in names)
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed structured automorphism JSON: {exc}") from exc
    return StructuredAut(gc, sigma, lam, mu)


def recover_digraph(C: Coalgebra) -> Digraph:
    """Read Γ back from a coalgebra of the form C(Γ) (e.g. loaded from JSON)."""
    vertices, edges = [], []
    kinds = {}
    for x in range(C.dim):
        terms = sorted(C.comult[x])
        if terms == [(x, x, 1)] and C.counit[x] == 1:
            kinds[x] = "v"
            vertices.append(C.basis_labels[x])
    for x in range(C.dim):
        if x in kinds:
            continue
        terms = C.comult[x]
        left = [y for y, z, c in terms if z == x and c == 1 and kinds.get(y) == "v"]
        right = [z for y, z, c in terms if y == x and c == 1 and kinds.get(z) == "v"]
        if len(terms) != 2 or len(left) != 1 or len(right) != 1 or C.counit[x] != 0:
            raise InputError(f"basis element {C.basis_labels[x]!r} is neither a vertex nor an edge")
        edges.append((C.basis_labels[left[0]], C.basis_labels[right[0]]))
    return Digraph.from_edges(vertices, edges)
