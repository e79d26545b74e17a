"""Structural diagnostics: X/Y strata, forbidden tree/cycle cuts, criticality.

The reduction rules live in :mod:`frustrix.reductions` and are re-exported
here.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import EQUILIBRATED_MAX_N, check_capacity
from .sgcore import SignedGraph, delete_edges
from .solver import find_equilibrated_cut_through, frustration_index

from .reductions import (  # noqa: F401  (public re-exports)
    RULE_ORDER,
    ConfigurationMatch,
    ReductionStep,
    apply_reduction,
    detect_all,
    detect_configuration,
    minimize,
    reduce_to_fixpoint,
)


@dataclass(frozen=True)
class XYPartition:
    X: frozenset
    Y: frozenset
    X_strata: tuple
    Y_strata: tuple

    @property
    def X0(self):
        return self.X_strata[0]

    @property
    def X3(self):
        return self.X_strata[3]

    @property
    def Y0(self):
        return self.Y_strata[0]

    @property
    def Y2(self):
        return self.Y_strata[2]


def xy_partition(g: SignedGraph) -> XYPartition:
    """X holds vertices with no negative edge; strata count cross neighbours."""
    touched = set()
    for u, v, s in g.edges:
        if s < 0:
            touched.update((u, v))
    xs = frozenset(v for v in range(g.n) if v not in touched)
    ys = frozenset(touched)
    xstr = [set() for _ in range(4)]
    ystr = [set() for _ in range(3)]
    for v in range(g.n):
        nb = g.neighbors(v)
        if v in xs:
            d = sum(1 for w in nb if w in ys)
            if d > 3:
                raise ValueError(f"vertex {v} has {d} Y-neighbours; graph is not subcubic")
            xstr[d].add(v)
        else:
            d = sum(1 for w in nb if w in xs)
            if d > 2:
                raise ValueError(f"vertex {v} has {d} X-neighbours; graph is not subcubic")
            ystr[d].add(v)
    return XYPartition(xs, ys, tuple(frozenset(s) for s in xstr), tuple(frozenset(s) for s in ystr))


def key_inequality_report(p: XYPartition) -> tuple:
    lhs = len(p.X3) + len(p.Y0)
    rhs = len(p.Y2)
    return lhs, rhs, lhs <= rhs


@dataclass(frozen=True)
class TCWitness:
    kind: str  # "tree" or "cycle"
    vertices: tuple
    k: int
    negative_boundary: int


def _connected_subsets(g: SignedGraph, size: int):
    """Each connected vertex set of the given size exactly once, as a sorted tuple."""
    out = set()

    def grow(current, frontier_mask, floor):
        if len(current) == size:
            out.add(tuple(sorted(current)))
            return
        cand = frontier_mask
        while cand:
            low = cand & -cand
            w = low.bit_length() - 1
            cand ^= low
            if w <= floor or w in current:
                continue
            nxt = current | {w}
            grow(nxt, frontier_mask | g.neighbor_mask(w), floor)

    for r in range(g.n):
        grow({r}, g.neighbor_mask(r), r)
    return sorted(out)


def _negative_boundary(g: SignedGraph, vs) -> int:
    inside = set(vs)
    return sum(1 for u, v, s in g.edges if s < 0 and ((u in inside) != (v in inside)))


def _internal_edges(g: SignedGraph, vs) -> int:
    inside = set(vs)
    return sum(1 for u, v, _ in g.edges if u in inside and v in inside)


def violates_tc_free(g: SignedGraph, k_max: int = 2):
    """An induced tree on 2k+1 vertices with at least k+2 negative boundary
    edges, or an induced odd cycle on 2k+1 vertices with at least k+1, for
    some k <= k_max. Returns the first witness found or ``None``."""
    for k in range(0, k_max + 1):
        size = 2 * k + 1
        if size > g.n:
            break
        for vs in _connected_subsets(g, size):
            inner = _internal_edges(g, vs)
            neg = _negative_boundary(g, vs)
            if inner == size - 1 and neg >= k + 2:
                return TCWitness("tree", vs, k, neg)
            if k >= 1 and inner == size and neg >= k + 1:
                inside = set(vs)
                if all(sum(1 for w in g.neighbors(v) if w in inside) == 2 for v in vs):
                    return TCWitness("cycle", vs, k, neg)
    return None


def is_critically_frustrated(g: SignedGraph, k: int) -> bool:
    if frustration_index(g) != k:
        return False
    return all(frustration_index(delete_edges(g, [e])) < k for e in range(g.m))


def every_positive_edge_in_equilibrated_cut(g: SignedGraph) -> bool:
    check_capacity(g.n, EQUILIBRATED_MAX_N, "every_positive_edge_in_equilibrated_cut")
    for i, (_, _, s) in enumerate(g.edges):
        if s > 0 and find_equilibrated_cut_through(g, i) is None:
            return False
    return True
