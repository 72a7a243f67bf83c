"""Exact dense integer matrix algebra.

All matrices are square numpy arrays of dtype int64.  Every operation is
pure and exact: no modular reduction, no floating-point rounding.  Large
multiplies are routed through BLAS only when a proven bound guarantees
that every intermediate value is an exactly representable integer.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

INT64_MAX = np.iinfo(np.int64).max

# Largest integer magnitude for which float64 accumulation is exact.
_FLOAT_EXACT_BOUND = 2**53

# Below this order the generic int64 kernel is cheap enough.
_BLAS_MIN_ORDER = 128


class SizeBoundError(ValueError):
    """An operation would exceed a declared size or entry-magnitude bound."""


def as_int_matrix(rows) -> np.ndarray:
    """Coerce nested sequences / arrays to a square int64 matrix."""
    m = np.asarray(rows, dtype=np.int64)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    return m


def identity(n: int) -> np.ndarray:
    return np.eye(n, dtype=np.int64)


def zeros(n: int) -> np.ndarray:
    return np.zeros((n, n), dtype=np.int64)


def ones(n: int) -> np.ndarray:
    return np.ones((n, n), dtype=np.int64)


def max_abs(m: np.ndarray) -> int:
    return 0 if m.size == 0 else int(np.abs(m).max())


def is_zero_one(m: np.ndarray) -> bool:
    return bool(((m == 0) | (m == 1)).all())


def exact_matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Exact integer matrix product with an overflow guard.

    The accumulated magnitude is bounded by inner_dim * max|a| * max|b|.
    When that bound fits float64's exact-integer range, the product is
    computed with BLAS (every partial sum is an exact integer, so the
    result is bit-identical to integer arithmetic); otherwise the int64
    kernel is used.  Bounds beyond int64 raise SizeBoundError.
    """
    if a.shape[1] != b.shape[0]:
        raise ValueError(f"dimension mismatch {a.shape} x {b.shape}")
    inner = a.shape[1]
    bound = inner * max_abs(a) * max_abs(b)
    if bound > INT64_MAX:
        raise SizeBoundError(
            f"matrix product may exceed the 64-bit entry range (bound {bound})"
        )
    if inner >= _BLAS_MIN_ORDER and bound < _FLOAT_EXACT_BOUND:
        c = a.astype(np.float64) @ b.astype(np.float64)
        return np.rint(c).astype(np.int64)
    return a @ b


def kronecker(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product; block (i,j) equals a[i,j] * b."""
    bound = max_abs(a) * max_abs(b)
    if bound > INT64_MAX:
        raise SizeBoundError(f"kronecker entries exceed 64-bit range (bound {bound})")
    return np.kron(a, b)


def circulant(first_row) -> np.ndarray:
    """Circulant matrix: row i is first_row rotated right by i positions."""
    row = np.asarray(first_row, dtype=np.int64)
    if row.ndim != 1 or row.size == 0:
        raise ValueError("first row must be a nonempty sequence")
    n = row.size
    idx = (np.arange(n)[None, :] - np.arange(n)[:, None]) % n
    return row[idx]


def block_assemble(grid) -> np.ndarray:
    """Assemble a g x g grid of equal-order blocks into one matrix."""
    if len(grid) == 0 or any(len(r) != len(grid) for r in grid):
        raise ValueError("grid must be a square arrangement of blocks")
    h = np.asarray(grid[0][0]).shape[0]
    for row in grid:
        for blk in row:
            blk = np.asarray(blk)
            if blk.shape != (h, h):
                raise ValueError(f"block order mismatch: {blk.shape} vs ({h}, {h})")
    return np.block([[np.asarray(blk, dtype=np.int64) for blk in row] for row in grid])


def block_split(m: np.ndarray, h: int) -> list[list[np.ndarray]]:
    """Inverse of block_assemble: cut m into blocks of order h."""
    n = m.shape[0]
    if n % h != 0:
        raise ValueError(f"order {n} is not a multiple of block order {h}")
    g = n // h
    return [[m[i * h:(i + 1) * h, j * h:(j + 1) * h].copy() for j in range(g)]
            for i in range(g)]


def gram_products(m: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Return (m @ m, m @ m.T, m.T @ m)."""
    mt = m.T
    return exact_matmul(m, m), exact_matmul(m, mt), exact_matmul(mt, m)


def _frozen(m: np.ndarray) -> np.ndarray:
    out = np.array(m, dtype=np.int64)
    out.setflags(write=False)
    return out


@dataclass(frozen=True)
class Digraph:
    """A digraph carried by its 0/1 adjacency matrix.

    Loops (diagonal ones) are rejected unless loops_allowed is set; the
    reflexive constructions are the only producers of loops.
    """

    adjacency: np.ndarray
    loops_allowed: bool = False

    def __post_init__(self):
        m = as_int_matrix(self.adjacency)
        if not is_zero_one(m):
            raise ValueError("adjacency entries must be 0 or 1")
        if not self.loops_allowed and m.trace() != 0:
            raise ValueError("loops present but loops_allowed is False")
        object.__setattr__(self, "adjacency", _frozen(m))

    @property
    def n(self) -> int:
        return self.adjacency.shape[0]

    def arcs(self):
        for u, v in zip(*np.nonzero(self.adjacency)):
            yield int(u), int(v)

    def __eq__(self, other):
        return (isinstance(other, Digraph)
                and self.loops_allowed == other.loops_allowed
                and np.array_equal(self.adjacency, other.adjacency))

    def __hash__(self):
        return hash((self.loops_allowed, self.adjacency.tobytes()))


@dataclass(frozen=True)
class SignedMatrix:
    """A (0, +1, -1) matrix, the carrier for twin constructions."""

    matrix: np.ndarray

    def __post_init__(self):
        m = as_int_matrix(self.matrix)
        if not bool(((m >= -1) & (m <= 1)).all()):
            raise ValueError("entries must lie in {-1, 0, 1}")
        object.__setattr__(self, "matrix", _frozen(m))

    @property
    def n(self) -> int:
        return self.matrix.shape[0]

    def positive_part(self) -> np.ndarray:
        return (self.matrix == 1).astype(np.int64)

    def negative_part(self) -> np.ndarray:
        return (self.matrix == -1).astype(np.int64)
