"""Finite-dimensional coalgebras over GF(p^n) given by structure constants.

Vectors are dicts ``{basis index: field code}`` with zero entries omitted;
tensors in C⊗C (C⊗C⊗C) are dicts keyed by index pairs (triples).
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from typing import Iterable, Sequence

from .errors import (
    EnumerationCapExceeded,
    FieldMismatch,
    InputError,
    NotInvertible,
    OracleCapExceeded,
    ShapeMismatch,
)
from .field import Field, parse_field

DEFAULT_GROUPLIKE_CAP = 2 ** 20
DEFAULT_ORACLE_CAP = 2 ** 24


def power_exceeds(q: int, e: int, cap: int | None) -> bool:
    """q**e > cap, without building huge integers."""
    if cap is None:
        return False
    total = 1
    for _ in range(e):
        total *= q
        if total > cap:
            return True
    return False


# --- sparse linear algebra -------------------------------------------------------

def _accumulate(F: Field, out: dict, key, c: int):
    if not c:
        return
    v = F.add(out.get(key, 0), c)
    if v:
        out[key] = v
    else:
        out.pop(key, None)


def vec_add_scaled(F: Field, out: dict, vec: dict, c: int):
    """out += c * vec, in place."""
    if not c:
        return
    for k, a in vec.items():
        _accumulate(F, out, k, F.mul(c, a))


def tensor(F: Field, a: dict, b: dict) -> dict:
    # a field has no zero divisors, so every product of nonzero entries is nonzero
    return {(i, j): F.mul(x, y) for i, x in a.items() for j, y in b.items()}


@dataclass(frozen=True)
class LinearMap:
    """Sparse matrix; ``cols[j]`` is the image of basis vector j as sorted
    ``(row, coefficient)`` pairs with nonzero coefficients."""

    field: Field
    dim_out: int
    cols: tuple[tuple[tuple[int, int], ...], ...]

    @property
    def dim_in(self) -> int:
        return len(self.cols)

    @classmethod
    def from_columns(cls, F: Field, columns: Sequence, dim_out: int | None = None) -> "LinearMap":
        """Columns given as dense sequences or sparse dicts of field codes."""
        cols = []
        for col in columns:
            if isinstance(col, dict):
                items = col.items()
            else:
                items = enumerate(col)
                if dim_out is None:
                    dim_out = len(col)
            cols.append(tuple(sorted((int(i), int(c)) for i, c in items if c)))
        if dim_out is None:
            dim_out = len(columns)
        for col in cols:
            for i, c in col:
                if not (0 <= i < dim_out and 0 <= c < F.q):
                    raise ShapeMismatch(f"entry ({i}, {c}) out of range")
        return cls(F, dim_out, tuple(cols))

    @classmethod
    def from_rows(cls, F: Field, rows: Sequence[Sequence[int]]) -> "LinearMap":
        rows = [list(r) for r in rows]
        ncols = len(rows[0]) if rows else 0
        return cls.from_columns(F, [[r[j] for r in rows] for j in range(ncols)], len(rows))

    @classmethod
    def identity(cls, F: Field, d: int) -> "LinearMap":
        return cls(F, d, tuple(((j, 1),) for j in range(d)))

    def column(self, j: int) -> dict:
        return dict(self.cols[j])

    def entry(self, i: int, j: int) -> int:
        return dict(self.cols[j]).get(i, 0)

    def dense_columns(self) -> tuple[tuple[int, ...], ...]:
        out = []
        for col in self.cols:
            v = [0] * self.dim_out
            for i, c in col:
                v[i] = c
            out.append(tuple(v))
        return tuple(out)

    def rows(self) -> list[list[int]]:
        dense = self.dense_columns()
        return [[dense[j][i] for j in range(self.dim_in)] for i in range(self.dim_out)]

    def apply(self, vec: dict) -> dict:
        F = self.field
        out = {}
        for j, a in vec.items():
            for i, c in self.cols[j]:
                _accumulate(F, out, i, F.mul(a, c))
        return out

    def __matmul__(self, other: "LinearMap") -> "LinearMap":
        """Composition ``self ∘ other``."""
        if other.field != self.field:
            raise FieldMismatch("maps over different fields")
        if other.dim_out != self.dim_in:
            raise ShapeMismatch(f"cannot compose {self.dim_out}x{self.dim_in} "
                                f"with {other.dim_out}x{other.dim_in}")
        cols = []
        for col in other.cols:
            img = self.apply(dict(col))
            cols.append(tuple(sorted(img.items())))
        return LinearMap(self.field, self.dim_out, tuple(cols))

    def rank(self) -> int:
        return _rank(self.field, [list(r) for r in self.rows()])

    def is_invertible(self) -> bool:
        return self.dim_in == self.dim_out and self.rank() == self.dim_in

    def inverse(self) -> "LinearMap":
        """Gauss-Jordan inverse (dense; meant for small maps)."""
        F, d = self.field, self.dim_in
        if self.dim_out != d:
            raise NotInvertible("map is not square")
        rows = self.rows()
        aug = [rows[i] + [1 if i == j else 0 for j in range(d)] for i in range(d)]
        for col in range(d):
            piv = next((r for r in range(col, d) if aug[r][col]), None)
            if piv is None:
                raise NotInvertible("matrix is singular")
            aug[col], aug[piv] = aug[piv], aug[col]
            s = F.inv(aug[col][col])
            aug[col] = [F.mul(s, x) for x in aug[col]]
            for r in range(d):
                if r != col and aug[r][col]:
                    m = aug[r][col]
                    aug[r] = [F.sub(x, F.mul(m, y)) for x, y in zip(aug[r], aug[col])]
        return LinearMap.from_rows(F, [row[d:] for row in aug])

    def sort_key(self):
        return self.dense_columns()


def _rank(F: Field, rows: list[list[int]]) -> int:
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for col in range(ncols):
        piv = next((r for r in range(rank, len(rows)) if rows[r][col]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        s = F.inv(rows[rank][col])
        rows[rank] = [F.mul(s, x) for x in rows[rank]]
        for r in range(len(rows)):
            if r != rank and rows[r][col]:
                m = rows[r][col]
                rows[r] = [F.sub(x, F.mul(m, y)) for x, y in zip(rows[r], rows[rank])]
        rank += 1
    return rank


# --- coalgebras ------------------------------------------------------------------

@dataclass(frozen=True)
class Coalgebra:
    field: Field
    basis_labels: tuple[str, ...]
    # comult[x] = ((y, z, c), ...) meaning Δ(b_x) ∋ c·(b_y ⊗ b_z)
    comult: tuple[tuple[tuple[int, int, int], ...], ...]
    counit: tuple[int, ...]

    def __post_init__(self):
        d = len(self.basis_labels)
        if len(self.comult) != d or len(self.counit) != d:
            raise ShapeMismatch("comult and counit must have one entry per basis element")
        for terms in self.comult:
            for y, z, c in terms:
                if not (0 <= y < d and 0 <= z < d and 0 <= c < self.field.q):
                    raise ShapeMismatch(f"bad structure constant {(y, z, c)}")

    @property
    def dim(self) -> int:
        return len(self.basis_labels)

    def delta_basis(self, x: int) -> dict:
        out = {}
        for y, z, c in self.comult[x]:
            _accumulate(self.field, out, (y, z), c)
        return out

    def delta(self, vec: dict) -> dict:
        F = self.field
        out = {}
        for x, a in vec.items():
            for y, z, c in self.comult[x]:
                _accumulate(F, out, (y, z), F.mul(a, c))
        return out

    def epsilon(self, vec: dict) -> int:
        F = self.field
        total = 0
        for x, a in vec.items():
            total = F.add(total, F.mul(a, self.counit[x]))
        return total


@dataclass
class AxiomReport:
    coassoc: bool
    counit: bool
    failures: list = dc_field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.coassoc and self.counit


def verify_axioms(C: Coalgebra) -> AxiomReport:
    """Check coassociativity and both counit laws on every basis element."""
    F = C.field
    report = AxiomReport(True, True)
    for x in range(C.dim):
        left, right = {}, {}
        for y, z, c in C.comult[x]:
            # (Δ⊗id)Δ
            for (y1, y2), c2 in C.delta_basis(y).items():
                _accumulate(F, left, (y1, y2, z), F.mul(c, c2))
            # (id⊗Δ)Δ
            for (z1, z2), c2 in C.delta_basis(z).items():
                _accumulate(F, right, (y, z1, z2), F.mul(c, c2))
        if left != right:
            report.coassoc = False
            diff = {k: (left.get(k, 0), right.get(k, 0))
                    for k in sorted(set(left) | set(right)) if left.get(k, 0) != right.get(k, 0)}
            report.failures.append({"law": "coassociativity", "basis": C.basis_labels[x],
                                    "differences": diff})
        eps_left, eps_right = {}, {}
        for y, z, c in C.comult[x]:
            _accumulate(F, eps_left, z, F.mul(C.counit[y], c))
            _accumulate(F, eps_right, y, F.mul(C.counit[z], c))
        for side, got in (("(eps⊗id)Δ", eps_left), ("(id⊗eps)Δ", eps_right)):
            if got != {x: 1}:
                report.counit = False
                report.failures.append({"law": "counit", "side": side,
                                        "basis": C.basis_labels[x], "got": dict(got)})
    return report


def _check_shapes(C: Coalgebra, D: Coalgebra, f: LinearMap):
    if C.field != D.field or f.field != C.field:
        raise FieldMismatch("coalgebras and map must share one field")
    if f.dim_in != C.dim or f.dim_out != D.dim:
        raise ShapeMismatch(f"map is {f.dim_out}x{f.dim_in}, need {D.dim}x{C.dim}")


def _column_ok(C: Coalgebra, D: Coalgebra, cols: Sequence[dict], x: int) -> bool:
    """Counit and comultiplication compatibility of f on basis element x."""
    F = C.field
    fx = cols[x]
    if D.epsilon(fx) != C.counit[x]:
        return False
    lhs = D.delta(fx)
    rhs = {}
    for y, z, c in C.comult[x]:
        for (i, j), t in tensor(F, cols[y], cols[z]).items():
            _accumulate(F, rhs, (i, j), F.mul(c, t))
    return lhs == rhs


def is_morphism(C: Coalgebra, D: Coalgebra, f: LinearMap) -> bool:
    """True iff ε_D∘f = ε_C and Δ_D∘f = (f⊗f)∘Δ_C on every basis element."""
    _check_shapes(C, D, f)
    cols = [dict(col) for col in f.cols]
    return all(_column_ok(C, D, cols, x) for x in range(C.dim))


def grouplikes(C: Coalgebra, cap: int = DEFAULT_GROUPLIKE_CAP) -> list[tuple[int, ...]]:
    """All x with Δ(x) = x⊗x and ε(x) = 1, by scanning every vector."""
    F = C.field
    if power_exceeds(F.q, C.dim, cap):
        raise EnumerationCapExceeded(f"{F.q}^{C.dim} vectors exceeds cap {cap}")
    found = []
    for dense in itertools.product(range(F.q), repeat=C.dim):
        vec = {i: a for i, a in enumerate(dense) if a}
        if C.epsilon(vec) != 1:
            continue
        if C.delta(vec) == tensor(F, vec, vec):
            found.append(dense)
    return found


def automorphisms_brute(C: Coalgebra, cap: int | None = DEFAULT_ORACLE_CAP,
                        prune: bool = True) -> list[LinearMap]:
    """Every invertible coalgebra endomorphism of C, found by exhaustive search.

    The candidate space is all q^(d*d) matrices.  With ``prune`` the columns
    are filled one at a time and each basis element's compatibility check runs
    as soon as the columns it involves are fixed, which discards exactly the
    matrices the final filter would reject.  ``prune=False`` enumerates and
    filters every matrix literally.  ``cap=None`` disables the size check.
    """
    F, d = C.field, C.dim
    if power_exceeds(F.q, d * d, cap):
        raise OracleCapExceeded(f"{F.q}^{d * d} candidate matrices exceeds cap {cap}")
    vectors = [dict((i, a) for i, a in enumerate(dense) if a)
               for dense in itertools.product(range(F.q), repeat=d)]
    dense_of = list(itertools.product(range(F.q), repeat=d))

    found = []
    if not prune:
        for choice in itertools.product(range(len(vectors)), repeat=d):
            cols = [vectors[k] for k in choice]
            if all(_column_ok(C, C, cols, x) for x in range(d)):
                f = LinearMap.from_columns(F, [dense_of[k] for k in choice], d)
                if f.is_invertible():
                    found.append(f)
        return sorted(found, key=LinearMap.sort_key)

    # constraint x becomes checkable once every column it reads is assigned
    ready_at = [[] for _ in range(d)]
    for x in range(d):
        deps = {x} | {y for y, _, _ in C.comult[x]} | {z for _, z, _ in C.comult[x]}
        ready_at[max(deps)].append(x)
    # counit compatibility only reads column x itself
    candidates = [[k for k, v in enumerate(vectors) if C.epsilon(v) == C.counit[x]]
                  for x in range(d)]
    cols: list[dict] = [{} for _ in range(d)]
    choice = [0] * d

    def extend(j):
        if j == d:
            f = LinearMap.from_columns(F, [dense_of[k] for k in choice], d)
            if f.is_invertible():
                found.append(f)
            return
        for k in candidates[j]:
            cols[j] = vectors[k]
            choice[j] = k
            if all(_column_ok(C, C, cols, x) for x in ready_at[j]):
                extend(j + 1)
        cols[j] = {}

    extend(0)
    return sorted(found, key=LinearMap.sort_key)


# --- JSON ------------------------------------------------------------------------

def coalgebra_to_json(C: Coalgebra) -> dict:
    F = C.field
    names = C.basis_labels
    return {
        "field": F.name,
        "basis": list(names),
        "comult": {names[x]: [[names[y], names[z], list(F.coeffs(c))] for y, z, c in C.comult[x]]
                   for x in range(C.dim)},
        "counit": {names[x]: list(F.coeffs(C.counit[x])) for x in range(C.dim)},
    }


def _parse_constant(F: Field, raw) -> int:
    if isinstance(raw, int):
        return F(raw).value
    if isinstance(raw, str):
        return F(int(raw)).value
    return F.encode([int(c) for c in raw])


def coalgebra_from_json(data: dict, size_cap: int | None = None) -> Coalgebra:
    try:
        F = parse_field(data["field"]) if size_cap is None else parse_field(data["field"], size_cap)
        names = [str(b) for b in data["basis"]]
        pos = {b: i for i, b in enumerate(names)}
        if len(pos) != len(names):
            raise InputError("duplicate basis labels")
        comult = []
        for b in names:
            terms = []
            for y, z, c in data["comult"].get(b, []):
                if y not in pos or z not in pos:
                    raise InputError(f"comultiplication of {b!r} references unknown basis element")
                terms.append((pos[y], pos[z], _parse_constant(F, c)))
            comult.append(tuple(terms))
        counit = tuple(_parse_constant(F, data["counit"].get(b, 0)) for b in names)
    except (KeyError, TypeError, ValueError, AttributeError) as exc:
        raise InputError(f"malformed coalgebra JSON: {exc}") from exc
    return Coalgebra(F, tuple(names), tuple(comult), counit)


def grouplike_coalgebra(F: Field, labels: Iterable[str]) -> Coalgebra:
    """The group-like coalgebra k[X]: every basis element is grouplike."""
    labels = tuple(labels)
    return Coalgebra(F, labels, tuple(((x, x, 1),) for x in range(len(labels))),
                     tuple(1 for _ in labels))
