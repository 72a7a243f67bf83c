"""Constructions emitting digraphs (or signed twin matrices) ready for
the verifiers: lexicographic products, the skew-Hadamard substitution,
twin and Siamese-twin families, quadratic-residue designs and graphs,
and the finite-field type-II family with its identity suite.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .finite_field import Element, FiniteField, is_prime, rep
from .hadamard import HadamardMatrix, factor_prime_power, is_normalized, is_skew_type
from .matrix_core import (Digraph, SignedMatrix, block_assemble, circulant,
                          exact_matmul, identity, kronecker, ones, zeros)
from .verify import DesignParams, DezaParams, DsrgParams, verify_symmetric_design


def empty_digraph(n: int) -> Digraph:
    if n < 1:
        raise ValueError("need at least one vertex")
    return Digraph(zeros(n))


def complete_digraph(n: int) -> Digraph:
    if n < 1:
        raise ValueError("need at least one vertex")
    return Digraph(ones(n) - identity(n))


def directed_cycle(n: int) -> Digraph:
    if n < 2:
        raise ValueError("need at least two vertices")
    row = np.zeros(n, dtype=np.int64)
    row[1] = 1
    return Digraph(circulant(row))


def lex_product(d1: Digraph, d2: Digraph) -> Digraph:
    """Lexicographic product: arcs follow d1 between blocks, d2 inside."""
    m1, m2 = d1.adjacency, d2.adjacency
    adj = kronecker(m1, ones(d2.n)) + kronecker(identity(d1.n), m2)
    return Digraph(adj, loops_allowed=d1.loops_allowed or d2.loops_allowed)


def lex_deza_condition(dsrg: DsrgParams, deza: DezaParams) -> bool:
    """Whether the product of the DSRG with the Deza digraph is again a
    directed Deza graph: the four candidate path counts collapse to at
    most two values.

    Same-block pairs see t*n2 + (a or b) paths (a two-path returning to
    the block needs a mutual pair of the outer digraph, and there are t
    of those, each contributing a full block); cross-block pairs see
    mu*n2 or lam*n2 + 2*k2.
    """
    n2, k2 = deza.n, deza.k
    values = {deza.a + dsrg.t * n2,
              deza.b + dsrg.t * n2,
              dsrg.mu * n2,
              dsrg.lam * n2 + 2 * k2}
    return len(values) <= 2


def skew_hadamard_deza(h: HadamardMatrix) -> Digraph:
    """Blow a skew-type Hadamard matrix of order 4u up to a directed Deza
    graph on 8u vertices: diagonal -> O_2, +1 -> I_2, -1 -> J_2 - I_2."""
    if not is_skew_type(h):
        raise ValueError("Hadamard matrix is not skew-type (H + H^t != 2I)")
    if h.order % 4 != 0:
        raise ValueError(f"order {h.order} is not divisible by 4")
    o2, i2 = zeros(2), identity(2)
    f2 = ones(2) - i2
    grid = [[o2 if i == j else (i2 if h.matrix[i, j] == 1 else f2)
             for j in range(h.order)] for i in range(h.order)]
    return Digraph(block_assemble(grid))


def pair_classes(n_vertices: int) -> list[list[int]]:
    """The natural classes {2i, 2i+1} of a skew-Hadamard blow-up."""
    return [[2 * i, 2 * i + 1] for i in range(n_vertices // 2)]


@dataclass(frozen=True)
class TwinPair:
    """A signed matrix whose positive and negative parts are disjoint
    graphs with identical parameters, plus the Hadamard matrix and block
    structure it came from."""

    signed: SignedMatrix
    positive_part: Digraph
    negative_part: Digraph
    hadamard: np.ndarray
    block_order: int

    def block_classes(self) -> list[list[int]]:
        n = self.block_order
        count = self.signed.n // n
        return [list(range(i * n, (i + 1) * n)) for i in range(count)]


def _row_products(h: HadamardMatrix) -> list[np.ndarray]:
    """C_i = r_i^t r_i for each row r_i of h."""
    return [np.outer(h.matrix[i], h.matrix[i]).astype(np.int64)
            for i in range(h.order)]


def _substituted_circulant(symbols, blocks: dict[int, np.ndarray]) -> np.ndarray:
    sym_circ = circulant(np.array(symbols, dtype=np.int64))
    grid = [[blocks[int(s)] for s in row] for row in sym_circ]
    return block_assemble(grid)


def _zero_diagonal_blocks(m: np.ndarray, h: int) -> np.ndarray:
    out = m.copy()
    for i in range(m.shape[0] // h):
        out[i * h:(i + 1) * h, i * h:(i + 1) * h] = 0
    return out


def twin_deza(h: HadamardMatrix) -> TwinPair:
    """Twin Deza graphs from a normalized Hadamard matrix of order n.

    The symbols (1, 2, ..., n, n, n-1, ..., 2) are laid out on a
    circulant of order 2n-1, symbol i is replaced by the rank-one block
    C_i, the diagonal blocks are zeroed, and the result splits into its
    positive and negative parts.
    """
    if not is_normalized(h):
        raise ValueError("Hadamard matrix must be normalized")
    n = h.order
    c_blocks = _row_products(h)
    blocks = {i: c_blocks[i - 1] for i in range(1, n + 1)}
    symbols = list(range(1, n + 1)) + list(range(n, 1, -1))
    k = _substituted_circulant(symbols, blocks)
    signed = SignedMatrix(_zero_diagonal_blocks(k, n))
    return TwinPair(signed,
                    Digraph(signed.positive_part()),
                    Digraph(signed.negative_part()),
                    h.matrix, n)


def siamese_reflexive(pair: TwinPair, h: HadamardMatrix) -> tuple[Digraph, Digraph]:
    """Add the shared block-diagonal cliques I x C_1 to each twin part,
    producing two reflexive graphs."""
    if not np.array_equal(pair.hadamard, h.matrix):
        raise ValueError("twin pair was not produced from this Hadamard matrix")
    n = h.order
    c1 = np.outer(h.matrix[0], h.matrix[0]).astype(np.int64)
    shared = kronecker(identity(pair.signed.n // n), c1)
    ra = Digraph(pair.positive_part.adjacency + shared, loops_allowed=True)
    rb = Digraph(pair.negative_part.adjacency + shared, loops_allowed=True)
    return ra, rb


def twin_directed(h: HadamardMatrix) -> tuple[TwinPair, tuple[Digraph, Digraph]]:
    """Directed twins from a normalized Hadamard matrix of order n.

    The signed symbols (1, 2, ..., n, -n, -(n-1), ..., -2) are laid out
    on a circulant of order 2n-1; positive symbols become C_i, negative
    ones -C_i.  After zeroing the diagonal blocks the matrix splits into
    disjoint parts A, B, and adding I x C_1 to each yields the two
    reflexive directed graphs.
    """
    if not is_normalized(h):
        raise ValueError("Hadamard matrix must be normalized")
    n = h.order
    c_blocks = _row_products(h)
    blocks = {i: c_blocks[i - 1] for i in range(1, n + 1)}
    blocks.update({-i: -c_blocks[i - 1] for i in range(2, n + 1)})
    symbols = list(range(1, n + 1)) + list(range(-n, -1))
    k = _substituted_circulant(symbols, blocks)
    signed = SignedMatrix(_zero_diagonal_blocks(k, n))
    pair = TwinPair(signed,
                    Digraph(signed.positive_part()),
                    Digraph(signed.negative_part()),
                    h.matrix, n)
    return pair, siamese_reflexive(pair, h)


def quadratic_residue_matrix(field: FiniteField) -> np.ndarray:
    """0/1 matrix with (i, j) entry 1 iff e_j - e_i is a nonzero square."""
    q = field.q
    sq = field.nonzero_squares()
    out = np.zeros((q, q), dtype=np.int64)
    for i, a in enumerate(field.elements):
        for j, b in enumerate(field.elements):
            if field.sub(b, a) in sq:
                out[i, j] = 1
    return out


def _odd_prime_power_field(q: int, congruence: int) -> FiniteField:
    p, m = factor_prime_power(q)
    if not is_prime(p) or p == 2:
        raise ValueError(f"q = {q} must be an odd prime power")
    if q % 4 != congruence:
        raise ValueError(f"q = {q} must be congruent to {congruence} mod 4")
    return FiniteField(p, m)


def qr_symmetric_design(q: int) -> np.ndarray:
    """Incidence matrix of the quadratic-residue symmetric design
    (q, (q-1)/2, (q-3)/4) for a prime power q = 3 mod 4; zero diagonal."""
    field = _odd_prime_power_field(q, 3)
    n_matrix = quadratic_residue_matrix(field)
    assert verify_symmetric_design(n_matrix) == DesignParams(q, (q - 1) // 2, (q - 3) // 4)
    return n_matrix


def paley_graph(q: int) -> Digraph:
    """The (q, (q-1)/2, (q-5)/4, (q-1)/4) strongly regular graph on the
    field of order q = 1 mod 4."""
    field = _odd_prime_power_field(q, 1)
    adj = quadratic_residue_matrix(field)
    assert np.array_equal(adj, adj.T)
    return Digraph(adj)


def design_lex_empty(n_matrix: np.ndarray, n2: int) -> Digraph:
    """Blow each design point up to an empty block of n2 vertices:
    adjacency N x J_{n2}."""
    params = verify_symmetric_design(n_matrix)
    m = np.asarray(n_matrix, dtype=np.int64)
    if m.trace() != 0:
        raise ValueError("incidence matrix must have zero diagonal")
    if n2 < 1:
        raise ValueError("block size must be positive")
    return Digraph(kronecker(m, ones(n2)))


# ---------------------------------------------------------------------------
# Finite-field type-II family
# ---------------------------------------------------------------------------

# a symbol is a field element or the literal "y" (the all-blocks marker)
Symbol = Element | str

_family_cache: dict[tuple[int, int], dict] = {}


def _family(field: FiniteField) -> dict:
    """Shared machinery for one field: shift matrices, symbol positions,
    and rep images.  Fields are deterministic per (p, m), so the cache
    key is the characteristic and degree."""
    key = (field.p, field.m)
    if key in _family_cache:
        return _family_cache[key]
    q = field.q
    size = 2 * q + 3
    row = np.zeros(size, dtype=np.int64)
    row[1] = 1
    v = circulant(row)
    v_powers = [identity(size)]
    for _ in range(2 * size):
        v_powers.append(exact_matmul(v_powers[-1], v))
    # positions: y sits next to the fixed symbol, the field elements follow
    pos: dict[Symbol, int] = {"y": 1}
    for i, e in enumerate(field.elements):
        pos[e] = 2 + i
    reps = {e: rep(field, e) for e in field.elements}
    data = {"v_powers": v_powers, "pos": pos, "reps": reps, "size": size}
    _family_cache[key] = data
    return data


def symbol_row(field: FiniteField) -> list:
    """First row of the symbolic circulant: the fixed symbol 'x', then
    'y', the field elements in order, and the mirror making the circulant
    symmetric."""
    q = field.q
    size = 2 * q + 3
    row: list = ["x", "y"] + list(field.elements) + [None] * (q + 1)
    for c in range(q + 2, size):
        row[c] = row[size - c]
    return row


def shift_indicator(field: FiniteField, a: Symbol) -> np.ndarray:
    """P_a = V^{pos(a)} + V^{-pos(a)}: the 0/1 circulant marking where the
    symbol a sits in the symbolic circulant."""
    fam = _family(field)
    size = fam["size"]
    j = fam["pos"][a]
    return fam["v_powers"][j] + fam["v_powers"][size - j]


def auxiliary_matrix(field: FiniteField, a: Symbol, alpha: Element) -> np.ndarray:
    """C_{a, alpha}: for a field-element symbol, the block matrix with
    (beta, beta') block rep(a(-beta + beta') + alpha); for the symbol y,
    rep(alpha) x J_q."""
    fam = _family(field)
    reps = fam["reps"]
    q = field.q
    if a == "y":
        return kronecker(reps[alpha], ones(q))
    field.check_member(a)
    grid = []
    for beta in field.elements:
        row = []
        for beta_p in field.elements:
            arg = field.add(field.mul(a, field.sub(beta_p, beta)), alpha)
            row.append(reps[arg])
        grid.append(row)
    return block_assemble(grid)


def _symbols(field: FiniteField) -> list:
    return list(field.elements) + ["y"]


def field_type2(field: FiniteField, alpha: Element) -> Digraph:
    """The order-(2q+3)q^2 digraph N_alpha = sum_a P_a x C_{a, alpha}.

    N_0 is an undirected Deza graph; the other N_alpha are type-II
    directed Deza graphs, all with parameters
    (q^2(2q+3), 2q^2+2q, 3q, 2q).
    """
    field.check_member(alpha)
    q = field.q
    total = (2 * q + 3) * q * q
    acc = np.zeros((total, total), dtype=np.int64)
    for a in _symbols(field):
        acc += kronecker(shift_indicator(field, a), auxiliary_matrix(field, a, alpha))
    return Digraph(acc)


def field_type2_block_form(field: FiniteField, alpha: Element) -> np.ndarray:
    """N_alpha assembled block-by-block from the symbolic circulant; the
    symbol x contributes zero blocks.  Agrees with field_type2."""
    row = symbol_row(field)
    size = len(row)
    q = field.q
    zero = zeros(q * q)
    cache: dict = {}
    grid = []
    for i in range(size):
        line = []
        for j in range(size):
            sym = row[(j - i) % size]
            if sym == "x":
                line.append(zero)
                continue
            key = sym
            if key not in cache:
                cache[key] = auxiliary_matrix(field, sym, alpha)
            line.append(cache[key])
        grid.append(line)
    return block_assemble(grid)


@dataclass(frozen=True)
class IdentityCheck:
    name: str
    passed: bool
    counterexample: str | None = None


@dataclass(frozen=True)
class IdentityReport:
    q: int
    checks: tuple[IdentityCheck, ...]

    @property
    def all_passed(self) -> bool:
        return all(c.passed for c in self.checks)


def check_construction_identities(field: FiniteField) -> IdentityReport:
    """Exhaustively evaluate the auxiliary-matrix identities underlying
    the type-II family, and the full product expansion of N_alpha N_beta,
    over every index tuple.  Failures are reported with the first
    counterexample, not raised."""
    if field.q > 7:
        raise ValueError("exhaustive identity ranges are limited to q <= 7")
    q = field.q
    size = 2 * q + 3
    syms = _symbols(field)
    elems = field.elements
    fam = _family(field)
    reps = fam["reps"]
    v_powers = fam["v_powers"]
    aux = {(a, al): auxiliary_matrix(field, a, al) for a in syms for al in elems}
    checks: list[IdentityCheck] = []

    def record(name: str, fail: str | None):
        checks.append(IdentityCheck(name, fail is None, fail))

    def first_failure(pred_iter):
        for desc, ok in pred_iter:
            if not ok:
                return desc
        return None

    record("transpose", first_failure(
        (f"a={a}, alpha={al}",
         np.array_equal(aux[(a, al)].T, aux[(a, field.neg(al))]))
        for a in syms for al in elems))

    def sum_ok(al):
        total = sum(aux[(a, al)] for a in syms)
        expected = (q * kronecker(identity(q), reps[al])
                    + kronecker(ones(q) + reps[al] - identity(q), ones(q)))
        return np.array_equal(total, expected)

    record("symbol_sum", first_failure(
        (f"alpha={al}", sum_ok(al)) for al in elems))

    record("same_symbol_product", first_failure(
        (f"a={a}, alpha={al}, alpha'={al2}",
         np.array_equal(exact_matmul(aux[(a, al)], aux[(a, al2)]),
                        q * aux[(a, field.add(al, al2))]))
        for a in syms for al in elems for al2 in elems))

    record("distinct_symbol_product", first_failure(
        (f"a={a}, a'={b}, alpha={al}, alpha'={al2}",
         np.array_equal(exact_matmul(aux[(a, al)], aux[(b, al2)]), ones(q * q)))
        for a in syms for b in syms if a != b
        for al in elems for al2 in elems))

    record("shift_action", first_failure(
        (f"alpha={al}, alpha'={al2}, alpha''={al3}",
         np.array_equal(exact_matmul(kronecker(identity(q), reps[al3]), aux[(al, al2)]),
                        aux[(al, field.add(al2, al3))]))
        for al in elems for al2 in elems for al3 in elems))

    record("shift_fixes_y_blocks", first_failure(
        (f"alpha={al}, alpha'={al2}",
         np.array_equal(exact_matmul(kronecker(identity(q), reps[al]), aux[("y", al2)]),
                        aux[("y", al2)]))
        for al in elems for al2 in elems))

    cross = zeros(size)
    for a in syms:
        for b in syms:
            if a != b:
                cross += exact_matmul(shift_indicator(field, a), shift_indicator(field, b))
    record("offset_double_cover",
           None if np.array_equal(cross, 2 * q * (ones(size) - identity(size)))
           else "sum over distinct symbol pairs")

    n_mats = {al: field_type2(field, al).adjacency for al in elems}

    def expansion_ok(al, be):
        gamma = field.add(al, be)
        expected = (2 * q * q * kronecker(identity(size * q), reps[gamma])
                    + 2 * q * kronecker(identity(size),
                                        kronecker(reps[gamma] - identity(q), ones(q)))
                    + 2 * q * ones(size * q * q))
        for a in syms:
            j = fam["pos"][a]
            wave = v_powers[(2 * j) % size] + v_powers[(size - 2 * j) % size]
            expected = expected + q * kronecker(wave, aux[(a, gamma)])
        return np.array_equal(exact_matmul(n_mats[al], n_mats[be]), expected)

    record("product_expansion", first_failure(
        (f"alpha={al}, beta={be}", expansion_ok(al, be))
        for al in elems for be in elems))

    return IdentityReport(q, tuple(checks))
