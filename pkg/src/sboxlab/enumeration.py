"""Exhaustive pruned depth-first search over bijective 4-bit S-boxes with f(0)=0.

The search assigns f(1), f(2), ..., f(15) in input order and prunes on
(a) injectivity, (b) any difference-distribution count exceeding 4, and
(c) any pair with weight-1 input difference and weight-1 output difference
(which would make Diff1 nonzero). Both prunes are monotone: counts only grow
as assignments extend, so no strong S-box is ever cut off. Full strong /
very-strong predicates run at the leaves, ordered by cost.

The hot path is a numba kernel over flat integer state; `SearchNode` is the
plain-Python incremental bookkeeping with identical accept/reject rules, kept
as the readable reference and used by the tests to validate the kernel.
"""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
from numba import njit

from .invariance import enumerate_subspaces

M4_SIZE = 16
DDT_LIMIT = 4  # strong S-boxes are 4-differentially uniform
_EMIT_CAP = 60000  # comfortably above the complete strong count


def _build_tables():
    planes = enumerate_subspaces(4, 2)
    hypers = enumerate_subspaces(4, 3)
    planes_flat = np.array([e for s in planes for e in s.elements], dtype=np.int64)
    hyper_flat = np.array([e for s in hypers for e in s.elements], dtype=np.int64)
    is_sub = np.zeros(65536, dtype=np.uint8)
    for d in range(5):
        for s in enumerate_subspaces(4, d):
            mask = 0
            for e in s.elements:
                mask |= 1 << e
            is_sub[mask] = 1
    w1 = np.array([(1 << (v ^ 1)) | (1 << (v ^ 2)) | (1 << (v ^ 4)) | (1 << (v ^ 8))
                   for v in range(16)], dtype=np.int64)
    parity = np.array([x.bit_count() & 1 for x in range(16)], dtype=np.int64)
    return planes_flat, hyper_flat, is_sub, w1, parity


#: elements of the 35 two-dimensional and 15 three-dimensional subspaces of
#: F_2^4 (flattened), the 2^16 is-a-subspace indicator over element bitmasks,
#: per-value weight-1 neighbour masks, and a 4-bit parity table
PLANES_FLAT, HYPER_FLAT, IS_SUBSPACE_MASK, W1_NEIGHBOURS, PARITY16 = _build_tables()


@njit(cache=True, nogil=True, inline="always")
def _xorshift16(mask, s):
    """Permute the bits of a 16-bit set-mask by v -> v ^ s."""
    if s & 1:
        mask = ((mask & 0x5555) << 1) | ((mask >> 1) & 0x5555)
    if s & 2:
        mask = ((mask & 0x3333) << 2) | ((mask >> 2) & 0x3333)
    if s & 4:
        mask = ((mask & 0x0F0F) << 4) | ((mask >> 4) & 0x0F0F)
    if s & 8:
        mask = ((mask & 0x00FF) << 8) | ((mask >> 8) & 0x00FF)
    return mask


@njit(cache=True, nogil=True)
def _leaf_spectral_strong(table, parity16):
    """Lin == 8, Lin1 == 4 and n_3 >= 14 for a complete bijective table."""
    w = np.empty(16, np.int64)
    lin = 0
    lin1 = 0
    for b in range(1, 16):
        for x in range(16):
            w[x] = 1 - 2 * parity16[table[x] & b]
        h = 1
        while h < 16:
            for i in range(0, 16, h * 2):
                for j in range(i, i + h):
                    lo = w[j]
                    hi = w[j + h]
                    w[j] = lo + hi
                    w[j + h] = lo - hi
            h *= 2
        for a in range(16):
            aw = w[a] if w[a] >= 0 else -w[a]
            if aw > lin:
                lin = aw
                if lin > 8:
                    return False
        if b == 1 or b == 2 or b == 4 or b == 8:
            for a in (1, 2, 4, 8):
                aw = w[a] if w[a] >= 0 else -w[a]
                if aw > lin1:
                    lin1 = aw
    if lin != 8 or lin1 != 4:
        return False
    # n_3 >= 14 iff the cubic ANF coefficient vectors span at least 3 dimensions:
    # each nonzero v orthogonal to that span gives a component of degree <= 2.
    anf = np.empty(16, np.int64)
    for x in range(16):
        anf[x] = table[x]
    step = 1
    while step < 16:
        for x in range(16):
            if x & step:
                anf[x] ^= anf[x ^ step]
        step *= 2
    rank = 0
    basis = np.zeros(4, np.int64)
    for s in (7, 11, 13, 14, 15):
        v = anf[s]
        for bit in (3, 2, 1, 0):
            if (v >> bit) & 1:
                if basis[bit] == 0:
                    basis[bit] = v
                    rank += 1
                    break
                v ^= basis[bit]
    return rank >= 3


@njit(cache=True, nogil=True)
def _leaf_anti_invariant2(table, planes_flat, hyper_flat, is_sub):
    """No 2- or 3-dimensional subspace maps onto a subspace."""
    for i in range(35):
        mask = 0
        for j in range(4):
            mask |= 1 << table[planes_flat[4 * i + j]]
        if is_sub[mask]:
            return False
    for i in range(15):
        mask = 0
        for j in range(8):
            mask |= 1 << table[hyper_flat[8 * i + j]]
        if is_sub[mask]:
            return False
    return True


@njit(cache=True, nogil=True)
def _search(prefix, allow1, allow2, emit, out_tables, out_vs,
            w1, parity16, planes_flat, hyper_flat, is_sub):
    """Pruned DFS; returns (strong, very_strong, nodes, leaves).

    `prefix` forces f(1..len(prefix)) (subtree mode); `allow1` / `allow2[y1]`
    restrict the candidate outputs at depths 1 and 2 (shard mode). Prefix
    assignments go through the same prune rules, so a violating prefix means
    an empty result.
    """
    table = np.zeros(16, np.int64)
    paircnt = np.zeros(256, np.int64)    # pair counts: DDT entry / 2
    sat = np.zeros(16, np.int64)         # per-row mask of v at the pair limit
    rownz = np.zeros(16, np.int64)       # distinct derivative values per row
    cand = np.zeros(16, np.int64)
    cur = np.full(16, -1, np.int64)
    used = 1
    strong = 0
    very = 0
    nodes = 0
    leaves = 0
    limit = DDT_LIMIT // 2

    depth0 = len(prefix) + 1
    for i in range(len(prefix)):
        x = i + 1
        y = prefix[i]
        for xp in range(x):
            u = x ^ xp
            v = y ^ table[xp]
            if paircnt[u * 16 + v] >= limit:
                return 0, 0, 0, 0
            if (u == 1 or u == 2 or u == 4 or u == 8) and (v == 1 or v == 2 or v == 4 or v == 8):
                return 0, 0, 0, 0
        used |= 1 << y
        table[x] = y
        for xp in range(x):
            u = x ^ xp
            v = y ^ table[xp]
            pc = paircnt[u * 16 + v]
            if pc == 0:
                rownz[u] += 1
            paircnt[u * 16 + v] = pc + 1
            if pc + 1 == limit:
                sat[u] |= 1 << v

    x = depth0
    if x > 15:
        # complete prefix: the single table is the whole subtree
        ok = True
        for u in range(1, 16):
            if rownz[u] < 5:
                ok = False
                break
        if ok and _leaf_spectral_strong(table, parity16):
            vs = _leaf_anti_invariant2(table, planes_flat, hyper_flat, is_sub)
            if emit:
                for i in range(16):
                    out_tables[0, i] = table[i]
                out_vs[0] = 1 if vs else 0
            return 1, (1 if vs else 0), 1, 1
        return 0, 0, 1, 1
    forb = 0
    for xp in range(x):
        u = x ^ xp
        fv = table[xp]
        forb |= _xorshift16(sat[u], fv)
        if u == 1 or u == 2 or u == 4 or u == 8:
            forb |= w1[fv]
    c = (~used) & (~forb) & 0xFFFF
    if x == 1:
        c &= allow1
    elif x == 2:
        c &= allow2[table[1]]
    cand[x] = c
    cur[x] = -1

    while x >= depth0:
        if cur[x] >= 0:
            y = cur[x]
            used &= ~(1 << y)
            for xp in range(x):
                u = x ^ xp
                v = y ^ table[xp]
                pc = paircnt[u * 16 + v] - 1
                paircnt[u * 16 + v] = pc
                if pc == 0:
                    rownz[u] -= 1
                if pc == limit - 1:
                    sat[u] &= ~(1 << v)
            cur[x] = -1
        if cand[x] == 0:
            x -= 1
            continue
        y = 0
        cm = cand[x]
        while not (cm & 1):
            cm >>= 1
            y += 1
        cand[x] &= cand[x] - 1
        nodes += 1
        used |= 1 << y
        table[x] = y
        for xp in range(x):
            u = x ^ xp
            v = y ^ table[xp]
            pc = paircnt[u * 16 + v]
            if pc == 0:
                rownz[u] += 1
            paircnt[u * 16 + v] = pc + 1
            if pc + 1 == limit:
                sat[u] |= 1 << v
        cur[x] = y
        if x == 15:
            leaves += 1
            ok = True
            for u in range(1, 16):
                if rownz[u] < 5:  # weakly APN needs > 2^(m-1)/2 = 4 values
                    ok = False
                    break
            if ok and _leaf_spectral_strong(table, parity16):
                vs = _leaf_anti_invariant2(table, planes_flat, hyper_flat, is_sub)
                if emit and strong < out_tables.shape[0]:
                    for i in range(16):
                        out_tables[strong, i] = table[i]
                    out_vs[strong] = 1 if vs else 0
                strong += 1
                if vs:
                    very += 1
        else:
            x += 1
            forb = 0
            for xp in range(x):
                u = x ^ xp
                fv = table[xp]
                forb |= _xorshift16(sat[u], fv)
                if u == 1 or u == 2 or u == 4 or u == 8:
                    forb |= w1[fv]
            c = (~used) & (~forb) & 0xFFFF
            if x == 2:
                c &= allow2[table[1]]
            cand[x] = c
            cur[x] = -1
    return strong, very, nodes, leaves


@njit(cache=True, nogil=True)
def _leaf_check_from_scratch(table, parity16, planes_flat, hyper_flat, is_sub):
    """Classify a complete table with no incremental state: 0 = not strong,
    1 = strong, 2 = very strong. Cheap tests first, early exits throughout."""
    for a in (1, 2, 4, 8):
        for x in range(16):
            v = table[x ^ a] ^ table[x]
            if v == 1 or v == 2 or v == 4 or v == 8:
                return 0
    cnt = np.zeros(16, np.int64)
    for u in range(1, 16):
        for i in range(16):
            cnt[i] = 0
        nz = 0
        for x in range(16):
            v = table[x ^ u] ^ table[x]
            c = cnt[v] + 1
            cnt[v] = c
            if c == 1:
                nz += 1
            elif c > DDT_LIMIT:
                return 0
        if nz < 5:
            return 0
    if not _leaf_spectral_strong(table, parity16):
        return 0
    if _leaf_anti_invariant2(table, planes_flat, hyper_flat, is_sub):
        return 2
    return 1


@njit(cache=True, nogil=True)
def _brute_subtree(prefix, parity16, planes_flat, hyper_flat, is_sub):
    """Unpruned oracle: every bijection extending the prefix, checked only at
    the leaves. Returns (strong, very_strong, leaves)."""
    table = np.zeros(16, np.int64)
    used = 1
    k = len(prefix)
    for i in range(k):
        table[i + 1] = prefix[i]
        used |= 1 << prefix[i]
    cand = np.zeros(16, np.int64)
    cur = np.full(16, -1, np.int64)
    strong = 0
    very = 0
    leaves = 0
    x = k + 1
    cand[x] = (~used) & 0xFFFF
    while x >= k + 1:
        if cur[x] >= 0:
            used &= ~(1 << cur[x])
            cur[x] = -1
        if cand[x] == 0:
            x -= 1
            continue
        y = 0
        cm = cand[x]
        while not (cm & 1):
            cm >>= 1
            y += 1
        cand[x] &= cand[x] - 1
        used |= 1 << y
        table[x] = y
        cur[x] = y
        if x == 15:
            leaves += 1
            r = _leaf_check_from_scratch(table, parity16, planes_flat, hyper_flat, is_sub)
            if r:
                strong += 1
                if r == 2:
                    very += 1
        else:
            x += 1
            cand[x] = (~used) & 0xFFFF
            cur[x] = -1
    return strong, very, leaves


class SearchNode:
    """Incremental search state: partial table, used-output mask and running
    DDT counts over the assigned pairs (each unordered pair contributes 2)."""

    def __init__(self):
        self.partial_table: list[int | None] = [0] + [None] * 15
        self.used_mask = 1
        self.partial_ddt = [[0] * 16 for _ in range(16)]
        self._trail: list[int] = []

    @property
    def depth(self) -> int:
        """Next input to assign under the in-order policy."""
        for x in range(1, 16):
            if self.partial_table[x] is None:
                return x
        return 16

    def assigned(self):
        return [x for x in range(16) if self.partial_table[x] is not None]

    def push(self, x: int, y: int) -> None:
        """Record f(x) = y without any prune checks."""
        if self.partial_table[x] is not None:
            raise ValueError(f"input {x} already assigned")
        if self.used_mask >> y & 1:
            raise ValueError(f"output {y} already used")
        for xp in self.assigned():
            u = x ^ xp
            self.partial_ddt[u][y ^ self.partial_table[xp]] += 2
        self.partial_table[x] = y
        self.used_mask |= 1 << y
        self._trail.append(x)

    def pop(self) -> None:
        """Undo the most recent assignment."""
        x = self._trail.pop()
        y = self.partial_table[x]
        self.partial_table[x] = None
        self.used_mask &= ~(1 << y)
        for xp in self.assigned():
            u = x ^ xp
            self.partial_ddt[u][y ^ self.partial_table[xp]] -= 2


def partial_ddt_update(node: SearchNode, x: int, y: int) -> bool:
    """Try extending the node with f(x) = y.

    Accepts (committing the DDT increments) unless some updated count would
    exceed 4 or some new pair has weight-1 input and output differences; on
    reject the node is left unchanged.
    """
    if node.partial_table[x] is not None:
        raise ValueError(f"input {x} already assigned")
    if node.used_mask >> y & 1:
        raise ValueError(f"output {y} already used")
    for xp in node.assigned():
        u = x ^ xp
        v = y ^ node.partial_table[xp]
        if node.partial_ddt[u][v] + 2 > DDT_LIMIT:
            return False
        if u.bit_count() == 1 and v.bit_count() == 1:
            return False
    node.push(x, y)
    return True


@dataclass(frozen=True)
class EnumerationResult:
    """Counts (and optionally the tables) found by one search run."""

    strong_count: int
    very_strong_count: int
    strong_list: list[tuple[int, ...]] | None
    very_strong_list: list[tuple[int, ...]] | None
    shards: int
    shard_id: int
    nodes_visited: int
    leaves_visited: int

    @property
    def translation_closure(self) -> int:
        """Strong tables counted over all 16 output translations."""
        return 16 * self.strong_count

    @property
    def very_strong_translation_closure(self) -> int:
        return 16 * self.very_strong_count


def _shard_masks(shards: int, shard_id: int):
    """Candidate-output masks at depths 1 and 2 for one shard.

    Shards partition by f(1) mod shards; above 15 shards the key combines
    f(1) and f(2), so results over all shard ids always sum to the full run.
    """
    if shards < 1:
        raise ValueError(f"shards must be >= 1, got {shards}")
    if not 0 <= shard_id < shards:
        raise ValueError(f"shard_id must be in [0, {shards}), got {shard_id}")
    allow2 = np.full(16, 0xFFFF, dtype=np.int64)
    if shards == 1:
        return 0xFFFE, allow2
    if shards <= 15:
        allow1 = 0
        for y1 in range(1, 16):
            if y1 % shards == shard_id:
                allow1 |= 1 << y1
        return allow1, allow2
    allow1 = 0
    allow2 = np.zeros(16, dtype=np.int64)
    for y1 in range(1, 16):
        for y2 in range(16):
            if (y1 * 16 + y2) % shards == shard_id:
                allow2[y1] |= 1 << y2
        if allow2[y1]:
            allow1 |= 1 << y1
    return allow1, allow2


_EMPTY_PREFIX = np.zeros(0, dtype=np.int64)
_NO_EMIT_TABLES = np.zeros((1, 16), dtype=np.uint8)
_NO_EMIT_FLAGS = np.zeros(1, dtype=np.uint8)


def _run_kernel(prefix, allow1, allow2, emit):
    if emit:
        out_tables = np.zeros((_EMIT_CAP, 16), dtype=np.uint8)
        out_vs = np.zeros(_EMIT_CAP, dtype=np.uint8)
    else:
        out_tables, out_vs = _NO_EMIT_TABLES, _NO_EMIT_FLAGS
    strong, very, nodes, leaves = _search(
        prefix, allow1, allow2, emit, out_tables, out_vs,
        W1_NEIGHBOURS, PARITY16, PLANES_FLAT, HYPER_FLAT, IS_SUBSPACE_MASK)
    strong_list = very_list = None
    if emit:
        if strong > out_tables.shape[0]:
            raise RuntimeError(f"emit capacity exceeded: {strong} strong tables")
        strong_list = [tuple(int(v) for v in row) for row in out_tables[:strong]]
        very_list = [t for t, flag in zip(strong_list, out_vs[:strong]) if flag]
    return strong, very, nodes, leaves, strong_list, very_list


def enumerate_strong(*, shards: int = 1, shard_id: int = 0,
                     emit_tables: bool = False, threads: int = 1) -> EnumerationResult:
    """Search one shard of the tree, counting strong and very strong S-boxes.

    With shards=1 this is the complete enumeration. Tables, when emitted, are
    sorted lexicographically, so results are identical for any shard split or
    thread count.
    """
    allow1, allow2 = _shard_masks(shards, shard_id)
    branches = [y1 for y1 in range(1, 16) if allow1 >> y1 & 1]
    threads = max(1, min(threads, len(branches) or 1))

    if threads == 1:
        strong, very, nodes, leaves, strong_list, very_list = _run_kernel(
            _EMPTY_PREFIX, allow1, allow2, emit_tables)
    else:
        def run_branch(y1):
            return _run_kernel(_EMPTY_PREFIX, 1 << y1, allow2, emit_tables)

        strong = very = nodes = leaves = 0
        strong_list = [] if emit_tables else None
        very_list = [] if emit_tables else None
        with ThreadPoolExecutor(max_workers=threads) as pool:
            for s, v, n, le, sl, vl in pool.map(run_branch, branches):
                strong += s
                very += v
                nodes += n
                leaves += le
                if emit_tables:
                    strong_list.extend(sl)
                    very_list.extend(vl)

    if emit_tables:
        strong_list = sorted(strong_list)
        very_list = sorted(very_list)
    return EnumerationResult(
        strong_count=strong,
        very_strong_count=very,
        strong_list=strong_list,
        very_strong_list=very_list,
        shards=shards,
        shard_id=shard_id,
        nodes_visited=nodes,
        leaves_visited=leaves,
    )


def _check_prefix(prefix) -> np.ndarray:
    prefix = tuple(prefix)
    if len(prefix) > 15:
        raise ValueError("prefix fixes f(1..k), so it has at most 15 values")
    seen = {0}
    for y in prefix:
        if not 1 <= y <= 15:
            raise ValueError(f"prefix value {y} outside [1, 15]")
        if y in seen:
            raise ValueError(f"prefix value {y} repeated")
        seen.add(y)
    return np.array(prefix, dtype=np.int64)


def enumerate_subtree(prefix, *, emit_tables: bool = False) -> EnumerationResult:
    """Pruned search restricted to tables extending f(1..k) = prefix."""
    arr = _check_prefix(prefix)
    allow2 = np.full(16, 0xFFFF, dtype=np.int64)
    strong, very, nodes, leaves, strong_list, very_list = _run_kernel(
        arr, 0xFFFE, allow2, emit_tables)
    if emit_tables:
        strong_list = sorted(strong_list)
        very_list = sorted(very_list)
    return EnumerationResult(
        strong_count=strong,
        very_strong_count=very,
        strong_list=strong_list,
        very_strong_list=very_list,
        shards=1,
        shard_id=0,
        nodes_visited=nodes,
        leaves_visited=leaves,
    )


def brute_force_subtree(prefix) -> tuple[int, int, int]:
    """Unpruned oracle over the same subtree: checks every one of the
    (15-k)! completions at the leaf. Returns (strong, very_strong, leaves).

    This is the soundness check for the pruning rules; prefixes shorter than
    2 values are rejected as impractically large.
    """
    arr = _check_prefix(prefix)
    if len(arr) < 2:
        raise ValueError("unpruned enumeration needs a prefix of at least 2 "
                         "values (13! leaves) to finish in reasonable time")
    strong, very, leaves = _brute_subtree(
        arr, PARITY16, PLANES_FLAT, HYPER_FLAT, IS_SUBSPACE_MASK)
    return int(strong), int(very), int(leaves)
