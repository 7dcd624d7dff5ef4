"""Exact arithmetic in GF(p^n).

Elements are polynomials over GF(p) reduced modulo a fixed irreducible
monic polynomial.  Internally every element is also encoded as an integer
in ``range(q)``: the coefficient vector ``(c0, c1, ..., c_{n-1})`` maps to
``c0 + c1*p + ... + c_{n-1}*p**(n-1)``.  The coalgebra code works with
these integer codes directly; ``FieldElement`` is the user-facing wrapper.
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field as dc_field
from typing import Sequence

from .errors import (
    DegreeOutOfRange,
    DivisionByZero,
    FieldMismatch,
    InputError,
    NonPrime,
    SizeCapExceeded,
)

DEFAULT_SIZE_CAP = 2 ** 16
# Above this order the add/mul tables (q*q entries) are not built.
_TABLE_LIMIT = 2 ** 8


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


# --- polynomials over GF(p), coefficient lists low degree first -------------

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a: Sequence[int], m: Sequence[int], p: int) -> list[int]:
    """Remainder of a modulo the monic polynomial m."""
    a = _trim(list(a))
    dm = len(m) - 1
    while len(a) - 1 >= dm:
        lead = a[-1]
        shift = len(a) - 1 - dm
        for i, c in enumerate(m):
            a[shift + i] = (a[shift + i] - lead * c) % p
        _trim(a)
    return a


def _lex_monic_polys(p: int, degree: int):
    # itertools.product on (c0, ..., c_{d-1}) in order gives c0 as the most
    # significant key, which is exactly the low-degree-first comparison.
    for coeffs in itertools.product(range(p), repeat=degree):
        yield list(coeffs) + [1]


def is_irreducible(poly: Sequence[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree 1..deg/2."""
    n = len(poly) - 1
    if n < 1:
        return False
    for d in range(1, n // 2 + 1):
        for divisor in _lex_monic_polys(p, d):
            if not _poly_mod(poly, divisor, p):
                return False
    return True


def smallest_irreducible(p: int, n: int) -> tuple[int, ...]:
    for poly in _lex_monic_polys(p, n):
        if is_irreducible(poly, p):
            return tuple(poly)
    raise AssertionError(f"no irreducible polynomial of degree {n} over GF({p})")


# --- the field ----------------------------------------------------------------

@dataclass(frozen=True)
class Field:
    """GF(p^n) with a fixed monic irreducible modulus (low degree first).

    Build instances with :func:`field_make` or :func:`parse_field`.
    """

    p: int
    n: int
    modulus: tuple[int, ...]
    _add: list | None = dc_field(default=None, init=False, repr=False, compare=False)
    _mul: list | None = dc_field(default=None, init=False, repr=False, compare=False)
    _inv: list | None = dc_field(default=None, init=False, repr=False, compare=False)

    def __post_init__(self):
        q = self.q
        if self.n > 1 and q <= _TABLE_LIMIT:
            add = [self._add_slow(a, b) for a in range(q) for b in range(q)]
            mul = [self._mul_slow(a, b) for a in range(q) for b in range(q)]
            object.__setattr__(self, "_add", add)
            object.__setattr__(self, "_mul", mul)
        if q <= _TABLE_LIMIT:
            inv = [0] * q
            for a in range(1, q):
                inv[a] = self._inv_slow(a)
            object.__setattr__(self, "_inv", inv)

    @property
    def q(self) -> int:
        return self.p ** self.n

    @property
    def name(self) -> str:
        return f"{self.p}^{self.n}"

    def __str__(self):
        return f"GF({self.name})"

    # encoding ---------------------------------------------------------------
    def coeffs(self, a: int) -> tuple[int, ...]:
        out = []
        for _ in range(self.n):
            a, r = divmod(a, self.p)
            out.append(r)
        return tuple(out)

    def encode(self, coeffs: Sequence[int]) -> int:
        coeffs = list(coeffs)
        if len(coeffs) > self.n:
            if self.n == 1:
                raise InputError(f"{coeffs} has too many coefficients for {self}")
            coeffs = _poly_mod(coeffs, self.modulus, self.p)
        a = 0
        for c in reversed(coeffs):
            a = a * self.p + (c % self.p)
        return a

    # raw arithmetic on integer codes -----------------------------------------
    def add(self, a: int, b: int) -> int:
        if self.n == 1:
            return (a + b) % self.p
        if self._add is not None:
            return self._add[a * self.q + b]
        return self._add_slow(a, b)

    def neg(self, a: int) -> int:
        if self.n == 1:
            return -a % self.p
        return self.encode([-c for c in self.coeffs(a)])

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.n == 1:
            return a * b % self.p
        if self._mul is not None:
            return self._mul[a * self.q + b]
        return self._mul_slow(a, b)

    def inv(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero(f"inverse of zero in {self}")
        if self._inv is not None:
            return self._inv[a]
        return self._inv_slow(a)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            a, e = self.inv(a), -e
        result = 1
        while e:
            if e & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            e >>= 1
        return result

    def _add_slow(self, a, b):
        return self.encode([x + y for x, y in zip(self.coeffs(a), self.coeffs(b))])

    def _mul_slow(self, a, b):
        ca, cb = self.coeffs(a), self.coeffs(b)
        prod = [0] * (2 * self.n - 1)
        for i, x in enumerate(ca):
            if x:
                for j, y in enumerate(cb):
                    prod[i + j] += x * y
        return self.encode(_poly_mod([c % self.p for c in prod], self.modulus, self.p))

    def _inv_slow(self, a):
        if self.n == 1:
            return pow(a, -1, self.p)
        # a^(q-2) by square and multiply on the slow path
        result, base, e = 1, a, self.q - 2
        while e:
            if e & 1:
                result = self._mul_slow(result, base)
            base = self._mul_slow(base, base)
            e >>= 1
        return result

    # element wrappers -------------------------------------------------------
    def __call__(self, value) -> "FieldElement":
        if isinstance(value, FieldElement):
            if value.field != self:
                raise FieldMismatch(f"{value} is not in {self}")
            return value
        if isinstance(value, int):
            if self.n == 1:
                return FieldElement(self, self.coeffs(value % self.p))
            if not 0 <= value < self.q:
                raise InputError(f"element code {value} out of range for {self}")
            return FieldElement(self, self.coeffs(value))
        return self.from_coeffs(value)

    def from_coeffs(self, coeffs: Sequence[int]) -> "FieldElement":
        return FieldElement(self, self.coeffs(self.encode(coeffs)))

    def elements(self) -> list["FieldElement"]:
        return [FieldElement(self, self.coeffs(a)) for a in range(self.q)]

    @property
    def zero(self) -> "FieldElement":
        return self(0)

    @property
    def one(self) -> "FieldElement":
        return self(1)

    @property
    def gen(self) -> "FieldElement":
        """The class of x, i.e. the polynomial generator t (1 when n = 1)."""
        if self.n == 1:
            return self.one
        return self.from_coeffs([0, 1])


@dataclass(frozen=True)
class FieldElement:
    field: Field
    coeffs: tuple[int, ...]

    @property
    def value(self) -> int:
        return self.field.encode(self.coeffs)

    def _other(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise FieldMismatch(f"cannot combine {self.field} and {other.field}")
            return other.value
        if isinstance(other, int):
            return self.field(other).value
        return NotImplemented

    def _wrap(self, a: int) -> "FieldElement":
        return FieldElement(self.field, self.field.coeffs(a))

    def __add__(self, other):
        b = self._other(other)
        return NotImplemented if b is NotImplemented else self._wrap(self.field.add(self.value, b))

    __radd__ = __add__

    def __sub__(self, other):
        b = self._other(other)
        return NotImplemented if b is NotImplemented else self._wrap(self.field.sub(self.value, b))

    def __rsub__(self, other):
        b = self._other(other)
        return NotImplemented if b is NotImplemented else self._wrap(self.field.sub(b, self.value))

    def __mul__(self, other):
        b = self._other(other)
        return NotImplemented if b is NotImplemented else self._wrap(self.field.mul(self.value, b))

    __rmul__ = __mul__

    def __truediv__(self, other):
        b = self._other(other)
        return NotImplemented if b is NotImplemented else self._wrap(self.field.div(self.value, b))

    def __neg__(self):
        return self._wrap(self.field.neg(self.value))

    def __pow__(self, e: int):
        return self._wrap(self.field.pow(self.value, e))

    def inverse(self) -> "FieldElement":
        return self._wrap(self.field.inv(self.value))

    def __bool__(self):
        return any(self.coeffs)

    def __repr__(self):
        if self.field.n == 1:
            return f"{self.coeffs[0]} (mod {self.field.p})"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                mono = "1" if i == 0 else ("t" if i == 1 else f"t^{i}")
                terms.append(mono if c == 1 and i else f"{c}" if i == 0 else f"{c}*{mono}")
        return " + ".join(terms) or "0"


def field_make(p: int, n: int = 1, size_cap: int = DEFAULT_SIZE_CAP) -> Field:
    """GF(p^n) with the lexicographically smallest irreducible monic modulus."""
    if not isinstance(p, int) or not is_prime(p):
        raise NonPrime(f"{p} is not prime")
    if not isinstance(n, int) or n < 1:
        raise DegreeOutOfRange(f"extension degree must be >= 1, got {n}")
    if p ** n > size_cap:
        raise SizeCapExceeded(f"|GF({p}^{n})| = {p ** n} exceeds size cap {size_cap}")
    if n == 1:
        modulus = (0, 1)
    else:
        modulus = smallest_irreducible(p, n)
    return Field(p, n, modulus)


_FIELD_RE = re.compile(r"^\s*(\d+)\s*(?:\^\s*(\d+))?\s*$")


def parse_field(text: str, size_cap: int = DEFAULT_SIZE_CAP) -> Field:
    """Parse ``"p^n"`` (or bare ``"p"``)."""
    m = _FIELD_RE.match(text)
    if not m:
        raise InputError(f"field must look like 'p^n', got {text!r}")
    return field_make(int(m.group(1)), int(m.group(2) or 1), size_cap)
