"""Finite permutation groups given by generators.

Composition convention: ``(a * b)(x) == a(b(x))``, i.e. ``b`` acts first.
"""
from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from .errors import DegreeMismatch, GroupTooLarge, InputError, UnknownElement

DEFAULT_CLOSE_CAP = 10_000
DEFAULT_SUBGROUP_CAP = 2_000
# Groups up to this order get the full subgroup lattice; larger ones only
# the normal-closure lattice.
BRUTE_SUBGROUP_LIMIT = 100


@dataclass(frozen=True)
class Perm:
    images: tuple[int, ...]

    def __post_init__(self):
        images = tuple(self.images)
        if sorted(images) != list(range(len(images))):
            raise InputError(f"{list(images)} is not a permutation of 0..{len(images) - 1}")
        object.__setattr__(self, "images", images)

    @classmethod
    def identity(cls, m: int) -> "Perm":
        return cls(tuple(range(m)))

    @classmethod
    def from_cycles(cls, m: int, *cycles: Sequence[int]) -> "Perm":
        images = list(range(m))
        for cyc in cycles:
            for i, x in enumerate(cyc):
                images[x] = cyc[(i + 1) % len(cyc)]
        return cls(tuple(images))

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, x: int) -> int:
        return self.images[x]

    def __mul__(self, other: "Perm") -> "Perm":
        if other.degree != self.degree:
            raise DegreeMismatch(f"degrees {self.degree} and {other.degree} differ")
        return Perm(tuple(self.images[i] for i in other.images))

    def inverse(self) -> "Perm":
        inv = [0] * self.degree
        for i, x in enumerate(self.images):
            inv[x] = i
        return Perm(tuple(inv))

    def is_identity(self) -> bool:
        return all(i == x for i, x in enumerate(self.images))

    def order(self) -> int:
        seen = [False] * self.degree
        result = 1
        for start in range(self.degree):
            if seen[start]:
                continue
            length, x = 0, start
            while not seen[x]:
                seen[x] = True
                x = self.images[x]
                length += 1
            result = math.lcm(result, length)
        return result

    def cycles(self) -> list[tuple[int, ...]]:
        seen, out = set(), []
        for start in range(self.degree):
            if start in seen or self.images[start] == start:
                continue
            cyc, x = [], start
            while x not in seen:
                seen.add(x)
                cyc.append(x)
                x = self.images[x]
            out.append(tuple(cyc))
        return out

    def __repr__(self):
        cyc = "".join("(" + " ".join(map(str, c)) + ")" for c in self.cycles())
        return f"Perm({cyc or '()'}; m={self.degree})"


@dataclass(frozen=True)
class FiniteGroup:
    """A closed permutation group; elements are referred to by index."""

    degree: int
    generators: tuple[Perm, ...]
    elements: tuple[Perm, ...]
    id_index: int = 0
    _index: dict = field(default=None, repr=False, compare=False)

    @property
    def order(self) -> int:
        return len(self.elements)

    def index(self, g: Perm) -> int:
        try:
            return self._index[g.images]
        except KeyError:
            raise UnknownElement(f"{g} is not in the group") from None

    def __contains__(self, g: Perm) -> bool:
        return g.images in self._index

    def mul(self, i: int, j: int) -> int:
        return self._index[(self.elements[i] * self.elements[j]).images]

    def inv(self, i: int) -> int:
        return self._index[self.elements[i].inverse().images]

    @cached_property
    def generator_indices(self) -> tuple[int, ...]:
        return tuple(self.index(s) for s in self.generators)

    @cached_property
    def mul_table(self) -> list[list[int]]:
        return [[self.mul(i, j) for j in range(self.order)] for i in range(self.order)]

    @cached_property
    def inv_table(self) -> list[int]:
        return [self.inv(i) for i in range(self.order)]

    def element_order(self, i: int) -> int:
        return self.elements[i].order()

    def conjugacy_classes(self) -> list[frozenset[int]]:
        seen, classes = set(), []
        for x in range(self.order):
            if x in seen:
                continue
            cls = frozenset(self.mul_table[self.mul_table[g][x]][self.inv_table[g]]
                            for g in range(self.order))
            seen |= cls
            classes.append(cls)
        return classes

    def subgroup_closure(self, seeds: Iterable[int]) -> frozenset[int]:
        """Smallest subgroup containing the given element indices."""
        gens = sorted(set(seeds))
        members = {self.id_index}
        frontier = [self.id_index]
        table = self.mul_table
        while frontier:
            nxt = []
            for h in frontier:
                for s in gens:
                    x = table[h][s]
                    if x not in members:
                        members.add(x)
                        nxt.append(x)
            frontier = nxt
        return frozenset(members)

    def is_normal(self, subset: frozenset[int]) -> bool:
        table, inv = self.mul_table, self.inv_table
        return all(table[table[g][h]][inv[g]] in subset
                   for g in range(self.order) for h in subset)


def group_close(generators: Sequence[Perm], cap: int = DEFAULT_CLOSE_CAP,
                degree: int | None = None) -> FiniteGroup:
    """Breadth-first closure of ``generators`` starting at the identity.

    Element ``i`` is reached first as ``elements[k] * generators[j]`` for the
    earliest BFS parent ``k`` and generator ``j`` in input order.
    """
    generators = tuple(generators)
    if degree is None:
        if not generators:
            raise InputError("need a degree or at least one generator")
        degree = generators[0].degree
    for s in generators:
        if s.degree != degree:
            raise DegreeMismatch(f"generator {s} has degree {s.degree}, expected {degree}")
    identity = Perm.identity(degree)
    elements = [identity]
    index = {identity.images: 0}
    queue = deque([identity])
    while queue:
        g = queue.popleft()
        for s in generators:
            h = g * s
            if h.images not in index:
                if len(elements) >= cap:
                    raise GroupTooLarge(f"closure exceeds {cap} elements")
                index[h.images] = len(elements)
                elements.append(h)
                queue.append(h)
    return FiniteGroup(degree, generators, tuple(elements), 0, index)


def all_subgroups(G: FiniteGroup) -> list[frozenset[int]]:
    """Every subgroup, as joins of cyclic subgroups iterated to a fixpoint."""
    cyclic = {G.subgroup_closure([x]) for x in range(G.order)}
    found = set(cyclic)
    frontier = set(cyclic)
    while frontier:
        nxt = set()
        for H in frontier:
            for C in cyclic:
                if C <= H:
                    continue
                J = G.subgroup_closure(H | C)
                if J not in found:
                    found.add(J)
                    nxt.add(J)
        frontier = nxt
    return _sorted_subsets(found)


def _normal_closure_lattice(G: FiniteGroup) -> list[frozenset[int]]:
    # every normal subgroup is a join of normal closures of single classes
    atoms = {G.subgroup_closure(cls) for cls in G.conjugacy_classes()}
    found = set(atoms)
    frontier = set(atoms)
    while frontier:
        nxt = set()
        for N in frontier:
            for A in atoms:
                if A <= N:
                    continue
                J = G.subgroup_closure(N | A)
                if J not in found:
                    found.add(J)
                    nxt.add(J)
        frontier = nxt
    return _sorted_subsets(found)


def _sorted_subsets(subsets) -> list[frozenset[int]]:
    return sorted(subsets, key=lambda H: (len(H), sorted(H)))


def normal_subgroups(G: FiniteGroup, cap: int = DEFAULT_SUBGROUP_CAP,
                     method: str = "auto") -> list[frozenset[int]]:
    """All normal subgroups of G, sorted by size.

    ``method`` is ``"brute"`` (filter the full subgroup lattice),
    ``"classes"`` (joins of normal closures of conjugacy classes) or
    ``"auto"`` (brute up to order 100).
    """
    if G.order > cap:
        raise GroupTooLarge(f"|G| = {G.order} exceeds subgroup enumeration cap {cap}")
    if method == "auto":
        method = "brute" if G.order <= BRUTE_SUBGROUP_LIMIT else "classes"
    if method == "brute":
        return [H for H in all_subgroups(G) if G.is_normal(H)]
    if method == "classes":
        return _normal_closure_lattice(G)
    raise InputError(f"unknown method {method!r}")


def exponent(G: FiniteGroup, H: Iterable[int] | None = None) -> int:
    """lcm of the orders of the elements of H (default: all of G)."""
    members = range(G.order) if H is None else H
    result = 1
    for x in members:
        result = math.lcm(result, G.element_order(x))
    return result


@dataclass(frozen=True)
class ClassVerdict:
    member: bool
    bound: int
    witness: frozenset[int] | None = None
    witness_exponent: int | None = None


def in_class_G(G: FiniteGroup, p: int, n: int,
               cap: int = DEFAULT_SUBGROUP_CAP) -> ClassVerdict:
    """Membership of a finite group in the class G_{p,n}.

    Finite groups are co-Hopfian, so only the normal-subgroup condition is
    tested: no nontrivial normal subgroup may have exponent dividing
    p^n (p^n - 1).  On failure the smallest offending subgroup is returned.
    """
    q = p ** n
    bound = q * (q - 1)
    for N in normal_subgroups(G, cap):
        if len(N) == 1:
            continue
        e = exponent(G, N)
        if bound % e == 0:
            return ClassVerdict(False, bound, N, e)
    return ClassVerdict(True, bound)


def group_from_json(data: dict, cap: int = DEFAULT_CLOSE_CAP) -> FiniteGroup:
    try:
        degree = int(data["degree"])
        gens = [Perm(tuple(int(x) for x in g)) for g in data["generators"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed group JSON: {exc}") from exc
    return group_close(gens, cap, degree=degree)


def group_to_json(G: FiniteGroup) -> dict:
    return {"degree": G.degree, "generators": [list(s.images) for s in G.generators]}


# --- a few named groups used by tests and scripts ---------------------------

def cyclic_group(m: int) -> FiniteGroup:
    if m == 1:
        return group_close([], degree=1)
    return group_close([Perm(tuple((i + 1) % m for i in range(m)))])


def symmetric_group(m: int) -> FiniteGroup:
    if m == 1:
        return group_close([], degree=1)
    if m == 2:
        return group_close([Perm((1, 0))])
    return group_close([Perm.from_cycles(m, (0, 1)), Perm.from_cycles(m, tuple(range(m)))])
