"""Parameter-driven classification made executable: recover the quotient
of a b = t directed Deza graph (and the design quotient of a b = k
type-II graph), enumerate small instances by exact backtracking, and
compare digraphs up to isomorphism via a branch-and-bound canonical form.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import isqrt

import numpy as np

from .matrix_core import Digraph, SizeBoundError, exact_matmul, identity, kronecker, ones
from .verify import (DezaParams, DsrgParams, verify_deza_digraph, verify_dsrg,
                     verify_symmetric_design, verify_type2)

SEARCH_MAX_ORDER = 10


@dataclass(frozen=True)
class Decomposition:
    quotient: Digraph
    class_size: int
    class_map: tuple[int, ...]

    def sorted_permutation(self) -> list[int]:
        """Vertices ordered class by class (classes by smallest member)."""
        classes: dict[int, list[int]] = {}
        for v, c in enumerate(self.class_map):
            classes.setdefault(c, []).append(v)
        return [v for c in sorted(classes.values(), key=min) for v in c]


def _classes_from_relation(rel: np.ndarray) -> list[list[int]] | None:
    """Classes of a reflexive symmetric 0/1 relation, or None if it is
    not an equivalence (some members relate to different sets)."""
    n = rel.shape[0]
    if not np.array_equal(rel, rel.T):
        return None
    classes = []
    seen = np.zeros(n, dtype=bool)
    for v in range(n):
        if seen[v]:
            continue
        members = np.nonzero(rel[v])[0]
        for u in members:
            if not np.array_equal(rel[u], rel[v]):
                return None
        seen[members] = True
        classes.append([int(u) for u in members])
    return classes


def _quotient_certificate(m: np.ndarray, classes: list[list[int]]) -> tuple[np.ndarray, tuple[int, ...]]:
    """Quotient adjacency plus class map, certifying M = M_q x J after
    class-sorted relabeling; raises if any block is not constant."""
    n2 = len(classes[0])
    order = sorted(classes, key=min)
    perm = [v for c in order for v in c]
    sorted_m = m[np.ix_(perm, perm)]
    g = len(order)
    quotient = np.zeros((g, g), dtype=np.int64)
    for i in range(g):
        for j in range(g):
            block = sorted_m[i * n2:(i + 1) * n2, j * n2:(j + 1) * n2]
            v = int(block[0, 0])
            if not (block == v).all():
                raise ValueError(
                    f"block ({i}, {j}) of the class-sorted adjacency is not constant; "
                    "the relation classes do not induce a lexicographic structure")
            quotient[i, j] = v
    if not np.array_equal(sorted_m, kronecker(quotient, ones(n2))):
        raise ValueError("class-sorted adjacency is not quotient x J")
    class_map = [0] * m.shape[0]
    for ci, c in enumerate(order):
        for v in c:
            class_map[v] = ci
    return quotient, tuple(class_map)


def decompose_b_eq_t(d: Digraph) -> Decomposition:
    """Write a b = t directed Deza graph as quotient[empty blocks].

    The relation u ~ v iff the two-path count N_uv equals b (made
    reflexive) must be an equivalence with classes of size beta + 1; the
    quotient must be a DSRG with lam = mu, and the class-sorted
    adjacency must equal quotient x J exactly.
    """
    report = verify_deza_digraph(d)
    if not report.ok:
        raise ValueError(f"not a directed Deza graph: {report.witness}")
    params: DezaParams = report.params
    if params.b != params.t:
        raise ValueError(f"b = {params.b} differs from t = {params.t}")
    if params.a == params.b:
        raise ValueError("a = b leaves the quotient relation trivial; "
                         "decomposition requires two distinct path counts")
    m = d.adjacency
    s = exact_matmul(m, m)
    rel = ((s == params.b) & ~np.eye(d.n, dtype=bool)).astype(np.int64) + identity(d.n)
    classes = _classes_from_relation(rel)
    if classes is None:
        raise ValueError("the b-count relation is not an equivalence")
    sizes = {len(c) for c in classes}
    if sizes != {report.beta + 1}:
        raise ValueError(f"classes have sizes {sorted(sizes)}, expected beta + 1 = {report.beta + 1}")
    quotient_m, class_map = _quotient_certificate(m, classes)
    quotient = Digraph(quotient_m)
    qreport = verify_dsrg(quotient)
    if not qreport.ok:
        raise ValueError(f"quotient is not a DSRG: {qreport.witness}")
    qp: DsrgParams = qreport.params
    if qp.lam != qp.mu:
        raise ValueError(f"quotient DSRG has lam = {qp.lam} != mu = {qp.mu}")
    n2 = report.beta + 1
    law = (params.n == qp.n * n2 and params.k == qp.k * n2
           and params.b == qp.t * n2 and params.a == qp.lam * n2)
    if not law:
        raise ValueError(f"parameter law fails: {params} vs quotient {qp} with n2 = {n2}")
    return Decomposition(quotient, n2, class_map)


def decompose_type2_b_eq_k(d: Digraph) -> Decomposition:
    """Write a b = k type-II graph as design[empty blocks]: vertices with
    identical neighbourhoods collapse to the points of a symmetric design."""
    report = verify_type2(d)
    if not report.ok:
        raise ValueError(f"not a type-II directed Deza graph: {report.witness}")
    params = report.params
    if params.b != params.k:
        raise ValueError(f"b = {params.b} differs from k = {params.k}")
    if params.a == params.b:
        raise ValueError("a = b leaves the quotient relation trivial")
    m = d.adjacency
    g = exact_matmul(m, m.T)
    rel = ((g == params.k) & ~np.eye(d.n, dtype=bool)).astype(np.int64) + identity(d.n)
    classes = _classes_from_relation(rel)
    if classes is None:
        raise ValueError("the shared-neighbourhood relation is not an equivalence")
    sizes = {len(c) for c in classes}
    if sizes != {report.beta + 1}:
        raise ValueError(f"classes have sizes {sorted(sizes)}, expected beta + 1 = {report.beta + 1}")
    quotient_m, class_map = _quotient_certificate(m, classes)
    design = verify_symmetric_design(quotient_m)
    n2 = report.beta + 1
    law = (params.n == design.n * n2 and params.k == design.k * n2
           and params.a == design.lam * n2)
    if not law:
        raise ValueError(f"parameter law fails: {params} vs design {design} with n2 = {n2}")
    return Decomposition(Digraph(quotient_m), n2, class_map)


# ---------------------------------------------------------------------------
# Exhaustive search
# ---------------------------------------------------------------------------


def _row_candidates(n: int, k: int, forbidden_bit: int) -> list[int]:
    """All k-subsets of columns avoiding the diagonal, as bitmasks, in
    ascending lexicographic order of the 0/1 row vector."""
    cols = [c for c in range(n) if c != forbidden_bit]
    masks = []
    for combo in itertools.combinations(cols, k):
        masks.append(sum(1 << c for c in combo))
    # row vector (b_0, ..., b_{n-1}) read left to right; later columns first
    masks.sort(key=lambda mask: tuple((mask >> c) & 1 for c in range(n)))
    return masks


def _search(n: int, k: int, t: int, allowed_pair_values, limit: int | None):
    """Backtracking over loop-free k-regular 0/1 matrices of order n with
    constant mutual count t and two-path counts constrained per pair.

    allowed_pair_values(u, v, arc) gives the admissible final values of
    the (u, v) entry of M^2 given whether u -> v is an arc.  Rows are
    chosen in ascending lexicographic order, so solutions appear in
    ascending adjacency order deterministically.
    """
    if n > SEARCH_MAX_ORDER:
        raise SizeBoundError(f"search is limited to order {SEARCH_MAX_ORDER}")
    if k > n - 1 or t > k:
        return
    solutions = 0
    rows: list[int] = []
    colmask = [0] * n  # bit w set iff row w (already placed) has a 1 in column v
    full = (1 << n) - 1
    candidates = [_row_candidates(n, k, r) for r in range(n)]

    allowed_sets = [None, None]  # arc -> per-pair frozensets
    bounds = [None, None]        # arc -> (lo table, hi table)
    glo, ghi = None, None
    for arc in (0, 1):
        sets_t = [[frozenset()] * n for _ in range(n)]
        lo_t = [[0] * n for _ in range(n)]
        hi_t = [[0] * n for _ in range(n)]
        for u in range(n):
            for v in range(n):
                if u == v:
                    continue
                vals = frozenset(allowed_pair_values(u, v, arc))
                sets_t[u][v] = vals
                lo_t[u][v] = min(vals)
                hi_t[u][v] = max(vals)
                glo = lo_t[u][v] if glo is None else min(glo, lo_t[u][v])
                ghi = hi_t[u][v] if ghi is None else max(ghi, hi_t[u][v])
        allowed_sets[arc] = sets_t
        bounds[arc] = (lo_t, hi_t)
    if glo is None:
        glo = ghi = 0

    def feasible_after() -> bool:
        placed = len(rows)
        remaining = n - placed
        future = full ^ ((1 << placed) - 1)
        colcap = [0] * n
        for v in range(n):
            cs = colmask[v].bit_count()
            if cs > k:
                return False
            if cs + remaining - (1 if v >= placed else 0) < k:
                return False
            colcap[v] = k - cs  # future rows can add at most this many 1s
        col_lo = [0] * n
        col_hi = [0] * n
        for u in range(placed):
            # for a placed row every arc bit is known; only the rows still
            # to come can add two-paths, each adding exactly k in total
            ru = rows[u]
            pending = (ru & future).bit_count()
            mut = (ru & colmask[u]).bit_count()
            mut_cap = pending if pending < colcap[u] else colcap[u]
            if mut > t or mut + mut_cap < t:
                return False
            row_lo = t - mut
            row_hi = t - mut
            col_lo[u] += t
            col_hi[u] += t
            lo0, hi0 = bounds[0][0][u], bounds[0][1][u]
            lo1, hi1 = bounds[1][0][u], bounds[1][1][u]
            sets0, sets1 = allowed_sets[0][u], allowed_sets[1][u]
            for v in range(n):
                if v == u:
                    continue
                partial = (ru & colmask[v]).bit_count()
                if (ru >> v) & 1:
                    lo_uv, hi_uv, sets_uv = lo1[v], hi1[v], sets1[v]
                else:
                    lo_uv, hi_uv, sets_uv = lo0[v], hi0[v], sets0[v]
                # additions need a future row that is an out-neighbour of u
                # and lands a 1 in column v
                add_cap = pending if pending < colcap[v] else colcap[v]
                if partial > hi_uv or partial + add_cap < lo_uv:
                    return False
                if add_cap == 0 and partial not in sets_uv:
                    return False
                flo = lo_uv - partial
                if flo < 0:
                    flo = 0
                fhi = hi_uv - partial
                if fhi > add_cap:
                    fhi = add_cap
                row_lo += flo
                row_hi += fhi
                col_lo[v] += partial + flo
                col_hi[v] += partial + fhi
            # each future out-neighbour of u contributes exactly k
            # two-paths from u; the clamped per-cell ranges must admit it
            target = pending * k
            if not (row_lo <= target <= row_hi):
                return False
        # column sums of M^2 equal k^2: unplaced rows contribute between
        # glo and ghi per off-diagonal cell and exactly t on the diagonal
        for v in range(n):
            unknown_off = remaining - (1 if v >= placed else 0)
            lo_total = col_lo[v] + unknown_off * glo + (t if v >= placed else 0)
            hi_total = col_hi[v] + unknown_off * ghi + (t if v >= placed else 0)
            if not (lo_total <= k * k <= hi_total):
                return False
        return True

    def final_matrix() -> np.ndarray | None:
        m = np.zeros((n, n), dtype=np.int64)
        for u in range(n):
            for v in range(n):
                m[u, v] = (rows[u] >> v) & 1
        s = m @ m
        if not (np.diagonal(s) == t).all():
            return None
        for u in range(n):
            for v in range(n):
                if u == v:
                    continue
                if int(s[u, v]) not in allowed_sets[int(m[u, v])][u][v]:
                    return None
        return m

    def backtrack():
        nonlocal solutions
        if limit is not None and solutions >= limit:
            return
        r = len(rows)
        if r == n:
            m = final_matrix()
            if m is not None:
                solutions += 1
                yield m
            return
        full_cols = 0
        for v in range(n):
            if colmask[v].bit_count() >= k:
                full_cols |= 1 << v
        col_r = colmask[r]
        low = (1 << r) - 1
        for mask in candidates[r]:
            if mask & full_cols:
                continue
            if t == k:
                # every arc is mutual, so the bits below the diagonal are
                # forced to mirror the arcs already pointing at r
                if (mask & low) != col_r:
                    continue
            elif (mask & col_r).bit_count() > t:
                continue
            rows.append(mask)
            rbit = 1 << r
            for v in range(n):
                if (mask >> v) & 1:
                    colmask[v] |= rbit
            if feasible_after():
                yield from backtrack()
            for v in range(n):
                if (mask >> v) & 1:
                    colmask[v] &= ~rbit
            rows.pop()
            if limit is not None and solutions >= limit:
                return

    yield from backtrack()


def search_deza_digraphs(params: DezaParams, limit: int | None = None) -> list[Digraph]:
    """All loop-free digraphs with the given directed Deza parameters, in
    ascending adjacency order (up to limit).  Every hit re-verifies."""
    n, k, b, a, t = params.as_tuple()
    allowed = {a, b}

    def pair_values(u, v, arc):
        return allowed

    out = []
    for m in _search(n, k, t, pair_values, limit):
        d = Digraph(m)
        report = verify_deza_digraph(d)
        assert report.ok and report.params.as_tuple() in {
            (n, k, b, a, t), (n, k, b, b, t), (n, k, a, a, t)}
        out.append(d)
    return out


def dsrg_spectral_feasible(n: int, k: int, lam: int, mu: int, t: int) -> bool:
    """Trace feasibility of a DSRG parameter tuple.

    On the complement of the all-ones eigenvector the adjacency is
    annihilated by x^2 - (lam - mu)x - (t - mu), so its eigenvalues are
    the two roots; the algebraic multiplicities are nonnegative integers
    summing to n - 1 and the total trace is zero.  Tuples admitting no
    such multiplicities have no realization.
    """
    disc = (lam - mu) ** 2 + 4 * (t - mu)
    if disc < 0:
        # conjugate complex pair: equal multiplicities, real part fixed
        return (n - 1) % 2 == 0 and 2 * k + (n - 1) * (lam - mu) == 0
    r = isqrt(disc)
    if r * r != disc:
        # irrational conjugate pair: Galois symmetry forces equality
        return (n - 1) % 2 == 0 and 2 * k + (n - 1) * (lam - mu) == 0
    if (lam - mu + r) % 2 != 0:
        # roots would be half-integers, never algebraic integers
        return False
    theta = (lam - mu + r) // 2
    tau = (lam - mu - r) // 2
    if theta == tau:
        return theta * (n - 1) == -k
    num = -k - (n - 1) * tau
    den = theta - tau
    if num % den != 0:
        return False
    mult = num // den
    return 0 <= mult <= n - 1


def search_dsrg(n_max: int, require_lambda_eq_mu: bool = False,
                limit_per_params: int | None = None) -> list[tuple[DsrgParams, Digraph]]:
    """Enumerate DSRGs with t < k up to order n_max by backtracking.

    Parameter tuples are pre-filtered by the forced row-sum identity
    lam*k + mu*(n-1-k) = k^2 - t; every emitted digraph passes
    verify_dsrg.  Deterministic order: by (n, k, t, lam), then by
    adjacency."""
    if n_max > SEARCH_MAX_ORDER:
        raise SizeBoundError(f"search is limited to order {SEARCH_MAX_ORDER}")
    found = []
    for n in range(2, n_max + 1):
        for k in range(1, n - 1):
            for t in range(0, k):
                for lam in range(0, k + 1):
                    rest = k * k - t - lam * k
                    den = n - 1 - k
                    if den == 0:
                        continue
                    if rest % den != 0:
                        continue
                    mu = rest // den
                    if mu < 0 or mu > k:
                        continue
                    if require_lambda_eq_mu and lam != mu:
                        continue
                    if not dsrg_spectral_feasible(n, k, lam, mu, t):
                        continue

                    def pair_values(u, v, arc, lam=lam, mu=mu):
                        return {lam} if arc else {mu}

                    for m in _search(n, k, t, pair_values, limit_per_params):
                        d = Digraph(m)
                        report = verify_dsrg(d)
                        assert report.ok
                        params = report.params
                        assert params.as_tuple() == (n, k, lam, mu, t)
                        found.append((params, d))
    return found


def canonical_form(d: Digraph) -> bytes:
    """A permutation-invariant certificate: the row-major adjacency of
    the relabeling minimizing the staircase extension order (the cells
    added when vertex r joins: column r, then row r), found by branch
    and bound.  Equal certificates iff isomorphic; limited to order 10."""
    n = d.n
    if n > SEARCH_MAX_ORDER:
        raise SizeBoundError(f"canonical form is limited to order {SEARCH_MAX_ORDER}")
    a = d.adjacency
    best: list[tuple[int, ...]] | None = None

    def segment(perm: list[int], v: int) -> tuple[int, ...]:
        r = len(perm)
        seg = []
        for i in range(r):
            seg.append(int(a[perm[i], v]))
        for j in range(r):
            seg.append(int(a[v, perm[j]]))
        seg.append(int(a[v, v]))
        return tuple(seg)

    def extend(perm: list[int], segs: list[tuple[int, ...]], used: set[int]):
        nonlocal best
        r = len(perm)
        if best is not None and segs > best[:r]:
            return
        if r == n:
            if best is None or segs < best:
                best = list(segs)
                best_perm[:] = perm
            return
        for v in range(n):
            if v in used:
                continue
            seg = segs + [segment(perm, v)]
            if best is not None and seg > best[:r + 1]:
                continue
            used.add(v)
            perm.append(v)
            extend(perm, seg, used)
            perm.pop()
            used.remove(v)

    best_perm: list[int] = []
    extend([], [], set())
    relabeled = a[np.ix_(best_perm, best_perm)]
    return bytes(int(x) for x in relabeled.reshape(-1))
