"""Hadamard matrix supply: Sylvester doubling, Paley skew-type
matrices from quadratic residues, normalization, and the skew-type test.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .finite_field import FiniteField, is_prime
from .matrix_core import (SizeBoundError, as_int_matrix, exact_matmul,
                          identity, kronecker)

_SYLVESTER_MAX_K = 10
_PALEY_MAX_ORDER = 200


@dataclass(frozen=True)
class HadamardMatrix:
    matrix: np.ndarray

    def __post_init__(self):
        m = as_int_matrix(self.matrix)
        if not bool(((m == 1) | (m == -1)).all()):
            raise ValueError("Hadamard entries must be +1 or -1")
        n = m.shape[0]
        if not np.array_equal(exact_matmul(m, m.T), n * identity(n)):
            raise ValueError("H @ H.T != order * I")
        m = m.copy()
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @property
    def order(self) -> int:
        return self.matrix.shape[0]


def sylvester(k: int) -> HadamardMatrix:
    """The order-2^k Kronecker power of [[1,1],[1,-1]]; normalized."""
    if k < 0 or k > _SYLVESTER_MAX_K:
        raise SizeBoundError(f"k must be in [0, {_SYLVESTER_MAX_K}]")
    h = identity(1)
    base = np.array([[1, 1], [1, -1]], dtype=np.int64)
    for _ in range(k):
        h = kronecker(h, base)
    return HadamardMatrix(h)


def factor_prime_power(q: int) -> tuple[int, int]:
    """Write q = p^m with p prime, or raise."""
    if q < 2:
        raise ValueError(f"{q} is not a prime power")
    for p in range(2, q + 1):
        if q % p == 0:
            m = 0
            r = q
            while r % p == 0:
                r //= p
                m += 1
            if r != 1:
                raise ValueError(f"{q} is not a prime power")
            return p, m
    raise ValueError(f"{q} is not a prime power")


def jacobsthal(field: FiniteField) -> np.ndarray:
    """Matrix of quadratic-character values chi(e_j - e_i)."""
    q = field.q
    sq = field.nonzero_squares()
    out = np.zeros((q, q), dtype=np.int64)
    for i, a in enumerate(field.elements):
        for j, b in enumerate(field.elements):
            d = field.sub(b, a)
            if d == field.zero:
                continue
            out[i, j] = 1 if d in sq else -1
    return out


def paley_skew(q: int) -> HadamardMatrix:
    """Skew-type Hadamard matrix of order q+1 for a prime power q = 3 mod 4."""
    p, m = factor_prime_power(q)
    if not is_prime(p) or p == 2:
        raise ValueError(f"q = {q} must be an odd prime power")
    if q % 4 != 3:
        raise ValueError(f"q = {q} must be congruent to 3 mod 4")
    if q + 1 > _PALEY_MAX_ORDER:
        raise SizeBoundError(f"order {q + 1} exceeds the bound {_PALEY_MAX_ORDER}")
    field = FiniteField(p, m)
    n = q + 1
    c = np.zeros((n, n), dtype=np.int64)
    c[0, 1:] = 1
    c[1:, 0] = -1
    c[1:, 1:] = jacobsthal(field)
    h = HadamardMatrix(identity(n) + c)
    assert is_skew_type(h)
    return h


def normalize(h: HadamardMatrix) -> HadamardMatrix:
    """Negate rows, then columns, until the first row and column are +1."""
    m = h.matrix.copy()
    for i in range(m.shape[0]):
        if m[i, 0] == -1:
            m[i, :] *= -1
    for j in range(m.shape[1]):
        if m[0, j] == -1:
            m[:, j] *= -1
    return HadamardMatrix(m)


def is_normalized(h: HadamardMatrix) -> bool:
    return bool((h.matrix[0, :] == 1).all() and (h.matrix[:, 0] == 1).all())


def is_skew_type(h: HadamardMatrix) -> bool:
    """True iff H + H.T = 2I exactly."""
    n = h.order
    return bool(np.array_equal(h.matrix + h.matrix.T, 2 * identity(n)))
