"""GF(p^m) arithmetic for odd p, plus the two field-matrix gadgets the
constructions need: the multiplication table (a generalized Hadamard
matrix) and the additive-group permutation representation.

Elements are coefficient tuples (c0, ..., c_{m-1}), c_i the coefficient
of x^i, each in [0, p).  The element enumeration lists coefficient
vectors in lexicographic order, zero first; all matrix constructions
index rows/columns by that order.
"""

from __future__ import annotations

import itertools

import numpy as np

from .matrix_core import circulant, identity, kronecker

MAX_ORDER = 2**16

Element = tuple[int, ...]


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def _poly_trim(c: list[int]) -> list[int]:
    while c and c[-1] == 0:
        c.pop()
    return c


def _poly_mul(a, b, p):
    out = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _poly_trim(out)


def _poly_mod(a, mod, p):
    # mod is monic
    a = list(a)
    dm = len(mod) - 1
    while len(a) - 1 >= dm and a:
        lead = a[-1]
        shift = len(a) - 1 - dm
        if lead:
            for i, c in enumerate(mod):
                a[shift + i] = (a[shift + i] - lead * c) % p
        a.pop()
    return _poly_trim(a)


def _is_irreducible(poly, p):
    """Trial division by every lower-degree monic polynomial."""
    deg = len(poly) - 1
    for d in range(1, deg):
        for low in itertools.product(range(p), repeat=d):
            divisor = list(low) + [1]
            if not _poly_mod(poly, divisor, p):
                return False
    return True


class FiniteField:
    """The field GF(p^m) with a deterministic modulus and element order.

    The modulus is the lexicographically smallest monic irreducible of
    degree m over F_p, comparing coefficient tuples low-degree first.
    """

    def __init__(self, p: int, m: int):
        if not is_prime(p) or p == 2:
            raise ValueError(f"p must be an odd prime, got {p}")
        if m < 1:
            raise ValueError("m must be a positive integer")
        if p**m > MAX_ORDER:
            raise ValueError(f"field order {p**m} exceeds the bound {MAX_ORDER}")
        self.p = p
        self.m = m
        self.q = p**m
        self.modulus = self._find_modulus(p, m)
        self.elements: list[Element] = [
            e for e in itertools.product(range(p), repeat=m)
        ]
        self._index = {e: i for i, e in enumerate(self.elements)}
        self.zero: Element = self.elements[0]
        self.one: Element = tuple([1] + [0] * (m - 1))

    @staticmethod
    def _find_modulus(p, m):
        for low in itertools.product(range(p), repeat=m):
            poly = list(low) + [1]
            if _is_irreducible(poly, p):
                return tuple(poly)
        raise RuntimeError("no irreducible polynomial found")  # unreachable

    def index_of(self, a: Element) -> int:
        return self._index[a]

    def element(self, i: int) -> Element:
        return self.elements[i]

    def check_member(self, a: Element):
        if a not in self._index:
            raise ValueError(f"{a} is not an element of GF({self.p}^{self.m})")

    def add(self, a: Element, b: Element) -> Element:
        return tuple((x + y) % self.p for x, y in zip(a, b))

    def neg(self, a: Element) -> Element:
        return tuple((-x) % self.p for x in a)

    def sub(self, a: Element, b: Element) -> Element:
        return self.add(a, self.neg(b))

    def mul(self, a: Element, b: Element) -> Element:
        prod = _poly_mul(_poly_trim(list(a)), _poly_trim(list(b)), self.p)
        red = _poly_mod(prod, list(self.modulus), self.p)
        return tuple(red + [0] * (self.m - len(red)))

    def pow(self, a: Element, e: int) -> Element:
        out = self.one
        for _ in range(e):
            out = self.mul(out, a)
        return out

    def nonzero_squares(self) -> set[Element]:
        return {self.mul(a, a) for a in self.elements if a != self.zero}

    def chi(self, a: Element) -> int:
        """Quadratic character: 0 at zero, +1 on nonzero squares, -1 otherwise."""
        if a == self.zero:
            return 0
        return 1 if a in self.nonzero_squares() else -1


def make_field(p: int, m: int) -> FiniteField:
    return FiniteField(p, m)


def field_arith(field: FiniteField, op: str, a: Element, b: Element | None = None) -> Element:
    """Dispatch one field operation by name: add, mul, or neg."""
    field.check_member(a)
    if op == "neg":
        return field.neg(a)
    if b is None:
        raise ValueError(f"operation {op!r} needs two operands")
    field.check_member(b)
    if op == "add":
        return field.add(a, b)
    if op == "mul":
        return field.mul(a, b)
    raise ValueError(f"unknown operation {op!r}")


def multiplication_table(field: FiniteField) -> list[list[Element]]:
    """The q x q table with (i, j) entry elements[i] * elements[j]."""
    return [[field.mul(a, b) for b in field.elements] for a in field.elements]


def is_generalized_hadamard(field: FiniteField, table, g: int, lam: int) -> bool:
    """Check the GH(g, lambda) property over the field's additive group.

    For every pair of distinct rows, the entrywise differences must hit
    each of the g group elements exactly lambda times.
    """
    size = len(table)
    if size != g * lam or any(len(row) != size for row in table):
        raise ValueError(f"matrix order {size} does not equal g*lambda = {g * lam}")
    if g != field.q:
        raise ValueError("group order must match the field order")
    for i in range(size):
        for k in range(size):
            if i == k:
                continue
            counts: dict[Element, int] = {}
            for j in range(size):
                d = field.sub(table[i][j], table[k][j])
                counts[d] = counts.get(d, 0) + 1
            if len(counts) != g or any(c != lam for c in counts.values()):
                return False
    return True


def rep(field: FiniteField, a: Element) -> np.ndarray:
    """Permutation representation of the additive group.

    a = (x_1, ..., x_m) maps to the Kronecker product of shift-matrix
    powers U^{x_1} x ... x U^{x_m}, a q x q permutation matrix.
    """
    field.check_member(a)
    p = field.p
    u_row = np.zeros(p, dtype=np.int64)
    u_row[1 % p] = 1
    shift = circulant(u_row)
    out = identity(1)
    for x in a:
        out = kronecker(out, np.linalg.matrix_power(shift, x).astype(np.int64))
    return out
