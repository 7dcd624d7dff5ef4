"""Binary relational systems, digraphs and simple graphs.

A ``BinarySystem`` has a vertex list, a label list and one set of ordered
pairs per label.  Vertices are referred to by position in ``vertices``
everywhere internally; automorphisms are ``Perm`` objects on those
positions.
"""
from __future__ import annotations

import json
import sys
from collections import Counter, defaultdict
from dataclasses import dataclass
from functools import cached_property
from typing import Hashable, Iterable, Sequence

from .errors import InputError, SearchCapExceeded, UnknownVertex
from .group import Perm

DEFAULT_SEARCH_CAP = 14
DEFAULT_NODE_BUDGET = 5_000_000


@dataclass(frozen=True, eq=True)
class BinarySystem:
    vertices: tuple[Hashable, ...]
    labels: tuple[Hashable, ...]
    # relations[i] holds pairs of vertex positions for labels[i]
    relations: tuple[frozenset[tuple[int, int]], ...]

    def __post_init__(self):
        if len(set(self.vertices)) != len(self.vertices):
            raise InputError("duplicate vertex ids")
        if len(set(self.labels)) != len(self.labels):
            raise InputError("duplicate labels")
        if len(self.relations) != len(self.labels):
            raise InputError("need exactly one relation per label")
        n = len(self.vertices)
        for lab, rel in zip(self.labels, self.relations):
            for u, w in rel:
                if not (0 <= u < n and 0 <= w < n):
                    raise UnknownVertex(f"pair ({u}, {w}) under label {lab!r} is out of range")

    @classmethod
    def from_named(cls, vertices: Sequence[Hashable], relations: dict) -> "BinarySystem":
        """Build from ``{label: [(u, w), ...]}`` using vertex ids."""
        pos = {v: i for i, v in enumerate(vertices)}
        if len(pos) != len(vertices):
            raise InputError("duplicate vertex ids")
        labels, rels = [], []
        for lab, pairs in relations.items():
            rel = set()
            for u, w in pairs:
                if u not in pos or w not in pos:
                    raise UnknownVertex(f"edge [{u!r}, {w!r}] under label {lab!r} "
                                        f"references an unknown vertex")
                if (pos[u], pos[w]) in rel:
                    raise InputError(f"duplicate edge [{u!r}, {w!r}] under label {lab!r}")
                rel.add((pos[u], pos[w]))
            labels.append(lab)
            rels.append(frozenset(rel))
        return cls(tuple(vertices), tuple(labels), tuple(rels))

    @property
    def size(self) -> int:
        return len(self.vertices)

    def position(self, v: Hashable) -> int:
        try:
            return self.vertex_index[v]
        except KeyError:
            raise UnknownVertex(f"unknown vertex {v!r}") from None

    @cached_property
    def vertex_index(self) -> dict:
        return {v: i for i, v in enumerate(self.vertices)}

    @cached_property
    def out_adj(self) -> list[list[tuple[int, int]]]:
        """out_adj[u] lists (label index, target) pairs."""
        adj = [[] for _ in self.vertices]
        for li, rel in enumerate(self.relations):
            for u, w in sorted(rel):
                adj[u].append((li, w))
        return adj

    @cached_property
    def in_adj(self) -> list[list[tuple[int, int]]]:
        adj = [[] for _ in self.vertices]
        for li, rel in enumerate(self.relations):
            for u, w in sorted(rel):
                adj[w].append((li, u))
        return adj

    @cached_property
    def pair_labels(self) -> dict[tuple[int, int], frozenset[int]]:
        out = defaultdict(set)
        for li, rel in enumerate(self.relations):
            for pair in rel:
                out[pair].add(li)
        return {k: frozenset(v) for k, v in out.items()}

    def num_pairs(self) -> int:
        return sum(len(r) for r in self.relations)

    def max_degree(self) -> int:
        return max((degrees(self, i)[2] for i in range(self.size)), default=0)

    def to_json(self) -> dict:
        return {
            "vertices": [str(v) for v in self.vertices],
            "labels": [str(lab) for lab in self.labels],
            "relations": {
                str(lab): [[str(self.vertices[u]), str(self.vertices[w])] for u, w in sorted(rel)]
                for lab, rel in zip(self.labels, self.relations)
            },
        }


class Digraph(BinarySystem):
    """A binary system with exactly one label."""

    def __post_init__(self):
        super().__post_init__()
        if len(self.labels) != 1:
            raise InputError("a digraph has exactly one label")

    @classmethod
    def from_edges(cls, vertices: Sequence[Hashable], edges: Iterable[tuple]) -> "Digraph":
        sys_ = BinarySystem.from_named(vertices, {"E": list(edges)})
        return cls(sys_.vertices, sys_.labels, sys_.relations)

    @cached_property
    def edges(self) -> tuple[tuple[int, int], ...]:
        """Edges as position pairs, sorted."""
        return tuple(sorted(self.relations[0]))

    def edge_name(self, e: tuple[int, int]) -> str:
        return f"{self.vertices[e[0]]}->{self.vertices[e[1]]}"

    def to_json(self) -> dict:
        return {
            "vertices": [str(v) for v in self.vertices],
            "edges": [[str(self.vertices[u]), str(self.vertices[w])] for u, w in self.edges],
        }


class SimpleGraph(Digraph):
    """Undirected simple graph stored as a symmetric, irreflexive digraph."""

    def __post_init__(self):
        super().__post_init__()
        rel = self.relations[0]
        for u, w in rel:
            if u == w:
                raise InputError(f"simple graph has a loop at {self.vertices[u]!r}")
            if (w, u) not in rel:
                raise InputError("simple graph relation must be symmetric")

    @classmethod
    def from_undirected(cls, vertices: Sequence[Hashable], edges: Iterable[tuple]) -> "SimpleGraph":
        both = []
        seen = set()
        for u, w in edges:
            key = frozenset((u, w))
            if key in seen:
                continue
            seen.add(key)
            both += [(u, w), (w, u)]
        d = BinarySystem.from_named(vertices, {"E": both})
        return cls(d.vertices, d.labels, d.relations)

    def undirected_edges(self) -> list[tuple[int, int]]:
        return [(u, w) for u, w in self.edges if u < w]


def digraph_from_json(data: dict) -> Digraph:
    try:
        vertices = [str(v) for v in data["vertices"]]
        edges = [(str(u), str(w)) for u, w in data["edges"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed digraph JSON: {exc}") from exc
    return Digraph.from_edges(vertices, edges)


def system_from_json(data: dict) -> BinarySystem:
    if "edges" in data and "relations" not in data:
        return digraph_from_json(data)
    try:
        vertices = [str(v) for v in data["vertices"]]
        rels = {str(lab): [(str(u), str(w)) for u, w in data["relations"].get(str(lab), [])]
                for lab in data["labels"]}
    except (KeyError, TypeError, ValueError, AttributeError) as exc:
        raise InputError(f"malformed binary system JSON: {exc}") from exc
    return BinarySystem.from_named(vertices, rels)


def to_dot(S: BinarySystem, undirected: bool = False) -> str:
    lines = ["graph G {" if undirected else "digraph G {"]
    for v in S.vertices:
        lines.append(f"  {json.dumps(str(v))};")
    arrow = "--" if undirected else "->"
    for lab, rel in zip(S.labels, S.relations):
        for u, w in sorted(rel):
            if undirected and u > w:
                continue
            attr = "" if len(S.labels) == 1 else f" [label={json.dumps(str(lab))}]"
            lines.append(f"  {json.dumps(str(S.vertices[u]))} {arrow} "
                         f"{json.dumps(str(S.vertices[w]))}{attr};")
    lines.append("}")
    return "\n".join(lines) + "\n"


# --- degrees ------------------------------------------------------------------

def degrees(S: BinarySystem, v) -> tuple[int, int, int]:
    """(indegree, outdegree, degree), counting pairs with label multiplicity.

    ``v`` is a vertex position (int) or a vertex id present in ``S``.
    """
    if isinstance(v, int) and not isinstance(v, bool) and 0 <= v < S.size:
        i = v
    else:
        i = S.position(v)
    ind, outd = len(S.in_adj[i]), len(S.out_adj[i])
    return ind, outd, ind + outd


# --- automorphism search ---------------------------------------------------------

def refine_partition(S: BinarySystem) -> list[int]:
    """Colour refinement starting from per-label (in, out) degrees.

    Returns a stable colour per vertex.  Colours are canonical integers, so
    two vertices that an automorphism can exchange always share a colour.
    """
    n = S.size
    L = len(S.labels)

    def initial(i):
        ind = Counter(li for li, _ in S.in_adj[i])
        outd = Counter(li for li, _ in S.out_adj[i])
        return tuple((ind[li], outd[li]) for li in range(L))

    sigs = [initial(i) for i in range(n)]
    colour = _canon(sigs)
    while True:
        sigs = [
            (colour[i],
             tuple(sorted((li, colour[w]) for li, w in S.out_adj[i])),
             tuple(sorted((li, colour[w]) for li, w in S.in_adj[i])))
            for i in range(n)
        ]
        new = _canon(sigs)
        if len(set(new)) == len(set(colour)):
            return new
        colour = new


def _canon(sigs):
    table = {s: k for k, s in enumerate(sorted(set(sigs)))}
    return [table[s] for s in sigs]


def _search_order(S: BinarySystem, colour: list[int]) -> list[int]:
    # small cells first, then grow along adjacency so each new vertex is
    # constrained by an already-placed neighbour
    cell_size = Counter(colour)
    n = S.size
    nbrs = [sorted({w for _, w in S.out_adj[i]} | {w for _, w in S.in_adj[i]}) for i in range(n)]
    placed = [False] * n
    order = []
    remaining = sorted(range(n), key=lambda i: (cell_size[colour[i]], colour[i], i))
    for root in remaining:
        if placed[root]:
            continue
        placed[root] = True
        frontier = [root]
        while frontier:
            order.extend(frontier)
            nxt = []
            for u in frontier:
                for w in nbrs[u]:
                    if not placed[w]:
                        placed[w] = True
                        nxt.append(w)
            nxt.sort(key=lambda i: (cell_size[colour[i]], colour[i], i))
            frontier = nxt
    return order


def automorphisms(S: BinarySystem, cap: int = DEFAULT_SEARCH_CAP,
                  node_budget: int = DEFAULT_NODE_BUDGET) -> list[Perm]:
    """Every vertex bijection preserving each labelled relation, sorted.

    Backtracking over the cells of the refined degree partition.  ``cap``
    bounds the largest cell; ``node_budget`` bounds the number of partial
    assignments tried.
    """
    n = S.size
    if n == 0:
        return [Perm(())]
    colour = refine_partition(S)
    cells = Counter(colour)
    if max(cells.values()) > cap:
        raise SearchCapExceeded(
            f"refined partition has a cell of size {max(cells.values())} > cap {cap}",
            sorted(cells.values(), reverse=True))
    by_colour = defaultdict(list)
    for i, c in enumerate(colour):
        by_colour[c].append(i)
    order = _search_order(S, colour)
    pair_labels = S.pair_labels
    # for each vertex, the already-ordered vertices it must be checked against
    rank = {v: k for k, v in enumerate(order)}
    nbrs = [{w for _, w in S.out_adj[i]} | {w for _, w in S.in_adj[i]} for i in range(n)]
    checks = [sorted(w for w in nbrs[v] if rank[w] < k) for k, v in enumerate(order)]
    empty = frozenset()

    image = [-1] * n
    used = [False] * n
    found = []
    nodes = 0

    def consistent(k, v, t):
        placed = checks[k]
        for w in placed:
            tw = image[w]
            if pair_labels.get((v, w), empty) != pair_labels.get((t, tw), empty):
                return False
            if pair_labels.get((w, v), empty) != pair_labels.get((tw, t), empty):
                return False
        if pair_labels.get((v, v), empty) != pair_labels.get((t, t), empty):
            return False
        # t must not touch any other already-used vertex
        return sum(1 for x in nbrs[t] if used[x]) == len(placed)

    def candidates(k):
        v = order[k]
        ws = checks[k]
        if ws:
            # neighbours of an already-placed neighbour's image
            pool = nbrs[image[ws[0]]]
            return sorted(x for x in pool if colour[x] == colour[v] and not used[x])
        return [x for x in by_colour[colour[v]] if not used[x]]

    def extend(k):
        nonlocal nodes
        if k == n:
            if _preserves(S, image):
                found.append(Perm(tuple(image)))
            return
        v = order[k]
        for t in candidates(k):
            nodes += 1
            if nodes > node_budget:
                raise SearchCapExceeded(
                    f"automorphism search exceeded {node_budget} nodes",
                    sorted(cells.values(), reverse=True))
            if consistent(k, v, t):
                image[v] = t
                used[t] = True
                extend(k + 1)
                used[t] = False
                image[v] = -1

    limit = sys.getrecursionlimit()
    if limit < n + 100:
        sys.setrecursionlimit(n + 100)
    try:
        extend(0)
    finally:
        sys.setrecursionlimit(limit)
    return sorted(found, key=lambda p: p.images)


def _preserves(S: BinarySystem, image) -> bool:
    for rel in S.relations:
        for u, w in rel:
            if (image[u], image[w]) not in rel:
                return False
    return True


def is_automorphism(S: BinarySystem, perm: Perm) -> bool:
    return perm.degree == S.size and _preserves(S, perm.images)


def is_invariant(S: BinarySystem, subset: Iterable, auts: Iterable[Perm]) -> bool:
    """True iff every permutation in ``auts`` maps ``subset`` onto itself.

    ``subset`` holds vertex positions or vertex ids.
    """
    positions = set()
    for v in subset:
        if isinstance(v, int) and not isinstance(v, bool) and 0 <= v < S.size:
            positions.add(v)
        else:
            positions.add(S.position(v))
    return all({psi(v) for v in positions} == positions for psi in auts)
