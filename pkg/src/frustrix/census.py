"""Isomorphism-free generation of small subcubic graphs and their switching classes.

Connected graphs are grown one vertex at a time: every child of a graph on
k vertices gets vertex k joined to 1..3 vertices of degree below three, and
children are deduplicated by canonical certificate. Every connected graph has
a vertex whose removal keeps it connected, so each class is reached. Filters
that survive taking connected induced subgraphs (girth, the deficiency budget
of a cubic target) prune whole levels; the rest are applied at the end.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Iterator

from . import canon
from .errors import (
    CANONICAL_MAX_N,
    CENSUS_MAX_N,
    SWITCH_ISO_MAX_N,
    ConnectivityError,
    GraphFormatError,
    check_capacity,
)
from .sgcore import (
    SignedGraph,
    _forest_potentials,
    fundamental_cycle_signs,
    is_connected,
    is_two_edge_connected,
    tree_canonical_signature,
)


@dataclass(frozen=True)
class CanonicalForm:
    cert: bytes
    relabeling: tuple
    graph: SignedGraph


@dataclass(frozen=True)
class CensusFilter:
    connected: bool = True
    two_edge_connected: bool = False
    cubic: bool = False
    girth_min: int = 0

    def accepts(self, g: SignedGraph) -> bool:
        if self.connected and not is_connected(g):
            return False
        if self.cubic and any(d != 3 for d in g.degrees()):
            return False
        if self.two_edge_connected and not is_two_edge_connected(g):
            return False
        if self.girth_min and _masks_girth(_masks_of(g)) < self.girth_min:
            return False
        return True


# canonical form

def _masks_of(g: SignedGraph) -> tuple:
    return tuple(g.neighbor_mask(v) for v in range(g.n))


def _cert(n: int, rows) -> bytes:
    return bytes([n]) + b"".join(r.to_bytes(2, "little") for r in rows)


def _cert_rows(cert: bytes) -> tuple:
    n = cert[0]
    return tuple(int.from_bytes(cert[1 + 2 * i:3 + 2 * i], "little") for i in range(n))


def graph_from_cert(cert: bytes) -> SignedGraph:
    rows = _cert_rows(cert)
    pairs = [(u, v) for u in range(len(rows)) for v in range(u + 1, len(rows)) if (rows[u] >> v) & 1]
    return SignedGraph.from_pairs(len(rows), pairs)


def _canonical_masks(masks) -> tuple:
    key, lab, _, _ = canon.search(list(masks))
    return _cert(len(masks), key[1]), lab


def canonical_form(g: SignedGraph) -> CanonicalForm:
    """Certificate of the underlying simple graph; signs are carried along."""
    check_capacity(g.n, CANONICAL_MAX_N, "canonical_form")
    if not g.is_simple():
        raise GraphFormatError("canonical_form needs a simple graph")
    cert, lab = _canonical_masks(_masks_of(g))
    perm = [0] * g.n
    for i, v in enumerate(lab):
        perm[v] = i
    return CanonicalForm(cert, tuple(perm), g.relabel(perm))


def automorphisms(g: SignedGraph) -> list:
    """Every automorphism of the underlying graph as a tuple ``perm[v]``."""
    return isomorphisms(g, g)


def isomorphisms(g: SignedGraph, h: SignedGraph) -> list:
    """All vertex bijections mapping the underlying graph of g onto that of h."""
    if g.n != h.n or g.m != h.m:
        return []
    check_capacity(g.n, CANONICAL_MAX_N, "isomorphisms")
    kg, _, _, leaves = canon.search(list(_masks_of(g)), all_leaves=True)
    kh, lab_h, _, _ = canon.search(list(_masks_of(h)))
    if kg[1] != kh[1]:
        return []
    out = []
    for lab in leaves:
        perm = [0] * g.n
        for a, b in zip(lab, lab_h):
            perm[a] = b
        out.append(tuple(perm))
    return sorted(out)


def switching_isomorphic(g: SignedGraph, h: SignedGraph) -> bool:
    """Some isomorphism of underlying graphs carries g's switching class onto h's."""
    check_capacity(max(g.n, h.n), SWITCH_ISO_MAX_N, "switching_isomorphic")
    if not (g.is_simple() and h.is_simple()):
        raise GraphFormatError("switching_isomorphic needs simple graphs")
    for perm in isomorphisms(g, h):
        if fundamental_cycle_signs(h, g.relabel(perm), h):
            return True
    return False


# switching classes

def class_signature_masks(g: SignedGraph) -> list:
    """Signature bitmasks of the tree-canonical representative of every class.

    Tree edges (and digon pairs) keep the canonical choice; each subset of the
    remaining edges, taken in increasing mask order, is one class.
    """
    if not is_connected(g):
        raise ConnectivityError("switching classes need a connected graph")
    _, tree = _forest_potentials(g, g.signs)
    skip = g.digon_edges()
    fixed = sum(1 << i for i in skip if g.edges[i][2] < 0)
    free = [i for i in range(g.m) if i not in tree and i not in skip]
    out = []
    for sub in range(1 << len(free)):
        bits = fixed
        for j, i in enumerate(free):
            if (sub >> j) & 1:
                bits |= 1 << i
        out.append(bits)
    return out


def enumerate_switching_classes(g: SignedGraph, reduce_by_automorphisms: bool = False) -> list:
    """One tree-canonical signed graph per switching class of g's underlying graph."""
    reps = [g.with_signs([-1 if (b >> i) & 1 else 1 for i in range(g.m)])
            for b in class_signature_masks(g)]
    if not reduce_by_automorphisms:
        return reps
    if not g.is_simple():
        raise GraphFormatError("automorphism reduction needs a simple graph")
    autos = automorphisms(g)
    seen = set()
    out = []
    for r in reps:
        key = min(tree_canonical_signature(r.relabel(a))[0].signature.bits for a in autos)
        if key not in seen:
            seen.add(key)
            out.append(r)
    return out


# generation

def _masks_girth(masks) -> int:
    n = len(masks)
    best = 1 << 30
    for r in range(n):
        dist = [-1] * n
        par = [-1] * n
        dist[r] = 0
        q = deque([r])
        while q:
            x = q.popleft()
            if 2 * dist[x] + 1 >= best:
                break
            mk = masks[x]
            while mk:
                low = mk & -mk
                y = low.bit_length() - 1
                mk ^= low
                if dist[y] < 0:
                    dist[y] = dist[x] + 1
                    par[y] = x
                    q.append(y)
                elif par[x] != y:
                    best = min(best, dist[x] + dist[y] + 1)
    return best


def _distances(masks) -> list:
    n = len(masks)
    out = []
    for r in range(n):
        dist = [n + 1] * n
        dist[r] = 0
        q = deque([r])
        while q:
            x = q.popleft()
            mk = masks[x]
            while mk:
                low = mk & -mk
                y = low.bit_length() - 1
                mk ^= low
                if dist[y] > n:
                    dist[y] = dist[x] + 1
                    q.append(y)
        out.append(dist)
    return out


def _cubic_budget_ok(masks, target: int) -> bool:
    k = len(masks)
    left = target - k
    deg = [m.bit_count() for m in masks]
    deficiency = 3 * k - sum(deg)
    if deficiency > 3 * left or (deficiency - 3 * left) % 2:
        return False
    return all(3 - d <= left for d in deg)


def _children(rows, girth_min: int, cubic_target: int) -> list:
    k = len(rows)
    avail = [v for v in range(k) if rows[v].bit_count() < 3]
    dist = _distances(rows) if girth_min > 3 else None
    out = []
    for r in (1, 2, 3):
        for sub in combinations(avail, r):
            if dist is not None and any(dist[a][b] < girth_min - 2 for a, b in combinations(sub, 2)):
                continue
            child = list(rows) + [0]
            for v in sub:
                child[v] |= 1 << k
                child[k] |= 1 << v
            if cubic_target and not _cubic_budget_ok(child, cubic_target):
                continue
            out.append(child)
    return out


def _grow_level(parents, girth_min, cubic_target, workers=1) -> tuple:
    seen = set()
    if workers > 1 and len(parents) > 64:
        from concurrent.futures import ProcessPoolExecutor

        chunks = [parents[i::workers * 4] for i in range(workers * 4)]
        with ProcessPoolExecutor(workers) as pool:
            for part in pool.map(_grow_chunk, chunks, [girth_min] * len(chunks),
                                 [cubic_target] * len(chunks)):
                seen.update(part)
    else:
        seen = _grow_chunk(parents, girth_min, cubic_target)
    return tuple(sorted(seen))


def _grow_chunk(parents, girth_min, cubic_target) -> set:
    seen = set()
    for cert in parents:
        for child in _children(_cert_rows(cert), girth_min, cubic_target):
            c, _ = _canonical_masks(child)
            seen.add(c)
    return seen


@lru_cache(maxsize=None)
def _connected_level(n: int, girth_min: int, cubic_target: int, workers: int = 1) -> tuple:
    """Sorted certificates of connected graphs on n vertices passing the hereditary prunes."""
    if n == 1:
        return (_cert(1, (0,)),)
    parents = _connected_level(n - 1, girth_min, cubic_target, workers)
    return _grow_level(list(parents), girth_min, cubic_target, workers)


def _hereditary_girth(flt: CensusFilter) -> int:
    return flt.girth_min if flt.girth_min > 3 else 0


def enumerate_subcubic(n: int, flt: CensusFilter = CensusFilter(), workers: int = 1) -> Iterator:
    """Yield one all-positive representative per isomorphism class on exactly n vertices.

    Output order is by certificate, independent of ``workers``.
    """
    check_capacity(n, CENSUS_MAX_N, "enumerate_subcubic")
    if n < 1:
        return
    if not flt.connected:
        yield from _enumerate_any(n, flt)
        return
    target = n if flt.cubic else 0
    for cert in _connected_level(n, _hereditary_girth(flt), target, workers):
        g = graph_from_cert(cert)
        if flt.accepts(g):
            yield g


def _enumerate_any(n: int, flt: CensusFilter) -> Iterator:
    """Possibly disconnected graphs as multisets of connected pieces."""
    comp_flt = CensusFilter(True, flt.two_edge_connected, flt.cubic, 0)
    pieces = {}
    for size in range(1, n + 1):
        pieces[size] = [g for g in enumerate_subcubic(size, comp_flt)]
    catalog = [(size, i) for size in range(1, n + 1) for i in range(len(pieces[size]))]
    results = []

    def rec(start, left, chosen):
        if left == 0:
            graphs = [pieces[s][i] for s, i in chosen]
            edges, off = [], 0
            for h in graphs:
                edges += [(u + off, v + off, 1) for u, v, _ in h.edges]
                off += h.n
            results.append(SignedGraph(n, edges))
            return
        for j in range(start, len(catalog)):
            size, _ = catalog[j]
            if size <= left:
                rec(j, left - size, chosen + [catalog[j]])

    rec(0, n, [])
    out = []
    for g in results:
        if flt.girth_min and _masks_girth(_masks_of(g)) < flt.girth_min:
            continue
        out.append((canonical_form(g).cert, g))
    for _, g in sorted(out, key=lambda t: t[0]):
        yield g


def girth_filtered(graphs, g0: int) -> Iterator:
    """Graphs whose girth is at least g0; acyclic graphs pass."""
    for g in graphs:
        if _masks_girth(_masks_of(g)) >= g0:
            yield g


def census_counts(n_max: int, flt: CensusFilter = CensusFilter()) -> dict:
    return {n: sum(1 for _ in enumerate_subcubic(n, flt)) for n in range(1, n_max + 1)}
