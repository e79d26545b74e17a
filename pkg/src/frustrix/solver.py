"""Exact frustration index, minimality and cut searches.

Everything here is exhaustive. Gray-code enumeration flips one vertex per
step, so each state costs O(deg) to evaluate.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

import numpy as np

from .errors import (
    BRANCH_BOUND_MAX_N,
    ConnectivityError,
    check_capacity,
    solver_limit,
)
from .sgcore import (
    CutProfile,
    SignatureBits,
    SignedGraph,
    SwitchState,
    components,
    induced_subgraph,
    is_connected,
    negative_edge_count,
    switch,
)


@dataclass(frozen=True)
class FrustrationResult:
    f: int
    witness_state: SwitchState
    witness_signature: SignatureBits
    states_explored: int
    method: str


def _signed_adjacency(g: SignedGraph):
    adj = [[] for _ in range(g.n)]
    for u, v, s in g.edges:
        adj[u].append((v, s))
        adj[v].append((u, s))
    return adj


def _gray_flips(k: int):
    """Yield the bit index flipped at each step of a k-bit reflected Gray code."""
    for i in range(1, 1 << k):
        yield (i & -i).bit_length() - 1


def _result(g: SignedGraph, state: list, f: int, explored: int, method: str):
    st = SwitchState(tuple(state)).normalized()
    return FrustrationResult(f, st, switch(g, st).signature, explored, method)


def frustration_bruteforce(g: SignedGraph) -> FrustrationResult:
    check_capacity(g.n, solver_limit(), "frustration_bruteforce")
    if not is_connected(g):
        raise ConnectivityError("frustration_bruteforce needs a connected graph")
    adj = _signed_adjacency(g)
    s = [1] * g.n
    cost = negative_edge_count(g)
    best, best_state = cost, s[:]
    explored = 1
    for bit in _gray_flips(max(g.n - 1, 0)):
        v = bit + 1
        sv = s[v]
        unsat = 0
        for w, sg in adj[v]:
            if sg * sv * s[w] < 0:
                unsat += 1
        cost += len(adj[v]) - 2 * unsat
        s[v] = -sv
        explored += 1
        if cost < best:
            best, best_state = cost, s[:]
    return _result(g, best_state, best, explored, "bruteforce")


def _bfs_order(g: SignedGraph) -> list:
    seen = [False] * g.n
    order = []
    if g.n:
        seen[0] = True
        q = deque([0])
        while q:
            x = q.popleft()
            order.append(x)
            for y in g.neighbors(x):
                if not seen[y]:
                    seen[y] = True
                    q.append(y)
    return order


def frustration_branch_bound(g: SignedGraph) -> FrustrationResult:
    """Depth-first search over vertex signs in BFS order.

    Bound: cost of decided edges plus, for every undecided vertex, the cheaper
    of its two signs against already decided neighbours. A memo keyed on the
    signs of decided vertices that still have undecided neighbours prunes
    dominated partial assignments.
    """
    check_capacity(g.n, solver_limit(BRANCH_BOUND_MAX_N), "frustration_branch_bound")
    if not is_connected(g):
        raise ConnectivityError("frustration_branch_bound needs a connected graph")
    n = g.n
    if n == 0:
        return _result(g, [], 0, 1, "branch_bound")
    order = _bfs_order(g)
    pos = [0] * n
    for i, v in enumerate(order):
        pos[v] = i
    # neighbours by position, signs per edge copy
    back = [[] for _ in range(n)]
    fwd = [[] for _ in range(n)]
    for u, v, sg in g.edges:
        a, b = sorted((pos[u], pos[v]))
        back[b].append((a, sg))
        fwd[a].append((b, sg))
    last_use = [i for i in range(n)]
    for i in range(n):
        for j, _ in fwd[i]:
            last_use[i] = max(last_use[i], j)
    # frontier after placing position d: decided positions with a later neighbour
    frontier = []
    for d in range(n):
        frontier.append(tuple(i for i in range(d + 1) if last_use[i] > d))

    best = [negative_edge_count(g)]
    best_state = [[1] * n]
    s = [0] * n
    cplus = [0] * n
    cminus = [0] * n
    memo = {}
    explored = [0]

    def rec(d, cost, slack):
        explored[0] += 1
        if d == n:
            if cost < best[0]:
                best[0] = cost
                st = [0] * n
                for i in range(n):
                    st[order[i]] = s[i]
                best_state[0] = st
            return
        if d == 0:
            choices = (1,)
        elif cplus[d] <= cminus[d]:
            choices = (1, -1)
        else:
            choices = (-1, 1)
        own = min(cplus[d], cminus[d])
        for sv in choices:
            c = cost + (cplus[d] if sv > 0 else cminus[d])
            sl = slack - own
            s[d] = sv
            touched = []
            for j, sg in fwd[d]:
                before = min(cplus[j], cminus[j])
                if sg * sv < 0:
                    cplus[j] += 1
                    touched.append((j, 1))
                else:
                    cminus[j] += 1
                    touched.append((j, -1))
                sl += min(cplus[j], cminus[j]) - before
            if c + sl < best[0]:
                key = (d, sum(1 << k for k, i in enumerate(frontier[d]) if s[i] < 0))
                prev = memo.get(key)
                if prev is None or c < prev:
                    memo[key] = c
                    rec(d + 1, c, sl)
            for j, which in touched:
                if which > 0:
                    cplus[j] -= 1
                else:
                    cminus[j] -= 1
        s[d] = 0

    rec(0, 0, 0)
    return _result(g, best_state[0], best[0], explored[0], "branch_bound")


def frustration(g: SignedGraph, method: str = "auto") -> FrustrationResult:
    if method == "bruteforce" or (method == "auto" and g.n <= 16):
        return frustration_bruteforce(g)
    return frustration_branch_bound(g)


def frustration_index(g: SignedGraph) -> int:
    """Frustration index summed over connected components."""
    total = 0
    for comp in components(g):
        if len(comp) > 1:
            h, _ = induced_subgraph(g, comp)
            total += frustration(h).f
    return total


def is_minimal_signature(g: SignedGraph) -> bool:
    return negative_edge_count(g) == frustration_index(g)


def _gray_cut_scan(g: SignedGraph, fixed_out: int, fixed_in=None):
    """Yield ``(side_mask, pos, neg)`` over all cuts with ``fixed_out`` outside.

    When ``fixed_in`` is given that vertex is kept inside every side.
    """
    adj = _signed_adjacency(g)
    free = [v for v in range(g.n) if v != fixed_out and v != fixed_in]
    inside = [False] * g.n
    mask = 0
    pos = neg = 0
    if fixed_in is not None:
        inside[fixed_in] = True
        mask = 1 << fixed_in
        for w, sg in adj[fixed_in]:
            if sg > 0:
                pos += 1
            else:
                neg += 1
        yield mask, pos, neg
    for bit in _gray_flips(len(free)):
        v = free[bit]
        here = inside[v]
        for w, sg in adj[v]:
            crossing_before = inside[w] != here
            step = -1 if crossing_before else 1
            if sg > 0:
                pos += step
            else:
                neg += step
        inside[v] = not here
        mask ^= 1 << v
        yield mask, pos, neg


def _side(mask: int) -> frozenset:
    return frozenset(v for v in range(mask.bit_length()) if (mask >> v) & 1)


def find_unequilibrated_cut(g: SignedGraph):
    """First cut with more negative than positive edges, or ``None``."""
    check_capacity(g.n, solver_limit(), "find_unequilibrated_cut")
    if g.n < 2:
        return None
    for mask, pos, neg in _gray_cut_scan(g, 0):
        if neg > pos:
            return CutProfile(_side(mask), pos, neg)
    return None


def find_equilibrated_cut_through(g: SignedGraph, edge: int):
    """Some cut containing ``edge`` with as many positive as negative edges."""
    u, v, _ = g.edges[edge]
    for mask, pos, neg in _gray_cut_scan(g, v, fixed_in=u):
        if pos == neg:
            return CutProfile(_side(mask), pos, neg)
    return None


def max_cut_bruteforce(g: SignedGraph) -> tuple:
    """Largest cut of the underlying graph as ``(size, side)``."""
    check_capacity(g.n, solver_limit(), "max_cut_bruteforce")
    best, best_mask = 0, 0
    if g.n >= 2:
        for mask, pos, neg in _gray_cut_scan(g, 0):
            if pos + neg > best:
                best, best_mask = pos + neg, mask
    return best, _side(best_mask)


# batched evaluation for census work

def cut_masks(g: SignedGraph) -> np.ndarray:
    """Edge bitmask of the cut for every vertex subset avoiding vertex 0."""
    if g.m > 63:
        raise ValueError("batched evaluation supports at most 63 edges")
    inc = [0] * g.n
    for i, (u, v, _) in enumerate(g.edges):
        inc[u] ^= 1 << i
        inc[v] ^= 1 << i
    masks = np.zeros(1, dtype=np.uint64)
    for v in range(1, g.n):
        masks = np.concatenate([masks, masks ^ np.uint64(inc[v])])
    return masks


def frustration_batch(g: SignedGraph, signatures) -> tuple:
    """Frustration index for many signatures of one connected underlying graph.

    ``signatures`` holds signature bitmasks. Returns ``(f, state_masks)`` as
    numpy arrays; ``state_masks[k]`` marks the vertices to switch.
    """
    check_capacity(g.n, solver_limit(), "frustration_batch")
    if not is_connected(g):
        raise ConnectivityError("frustration_batch needs a connected graph")
    sig = np.asarray([int(x) for x in signatures], dtype=np.uint64)
    masks = cut_masks(g)
    f = np.empty(len(sig), dtype=np.int64)
    arg = np.empty(len(sig), dtype=np.int64)
    chunk = max(1, (1 << 22) // max(len(masks), 1))
    for lo in range(0, len(sig), chunk):
        block = np.bitwise_count(masks[:, None] ^ sig[None, lo:lo + chunk])
        a = block.argmin(axis=0)
        arg[lo:lo + chunk] = a
        f[lo:lo + chunk] = block[a, np.arange(block.shape[1])]
    return f, arg << 1
