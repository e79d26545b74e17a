"""Signed multigraphs with at most one positive and one negative edge per pair.

Edges are stored as sorted ``(u, v, sign)`` triples with ``u < v`` and
``sign`` in ``{+1, -1}``. Edge indices refer to positions in that sorted tuple,
so signature bit ``i`` always talks about ``edges[i]``.

A parallel pair (a *digon*) must carry opposite signs; the negative copy sorts
first. Switching a digon endpoint swaps which copy is negative, which leaves
the sorted edge tuple unchanged, so the pair is effectively sign-free.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import (
    ConnectivityError,
    DimensionError,
    GraphFormatError,
    InvalidCutError,
    MODEL_MAX_N,
    NoCycleError,
    check_capacity,
)


def _parse_sign(s) -> int:
    if s in (1, "+", "+1", True):
        return 1
    if s in (-1, "-", "-1"):
        return -1
    raise GraphFormatError(f"bad sign {s!r}")


@dataclass(frozen=True)
class SignatureBits:
    """Bit ``i`` set means edge ``i`` is negative."""

    bits: int
    m: int

    def __post_init__(self):
        if self.m < 0 or self.bits < 0 or self.bits >> self.m:
            raise DimensionError(f"signature {self.bits:#x} does not fit {self.m} edges")

    @classmethod
    def from_signs(cls, signs: Sequence[int]) -> "SignatureBits":
        bits = 0
        for i, s in enumerate(signs):
            if s < 0:
                bits |= 1 << i
        return cls(bits, len(signs))

    def signs(self) -> tuple:
        return tuple(-1 if (self.bits >> i) & 1 else 1 for i in range(self.m))

    def negative_count(self) -> int:
        return self.bits.bit_count()

    def to_hex(self) -> str:
        width = max(1, -(-self.m // 4))
        return format(self.bits, f"0{width}x")

    @classmethod
    def from_hex(cls, text: str, m: int) -> "SignatureBits":
        try:
            bits = int(text, 16)
        except ValueError as exc:
            raise GraphFormatError(f"bad signature hex {text!r}") from exc
        return cls(bits, m)


@dataclass(frozen=True)
class SwitchState:
    """Per-vertex switching function; ``-1`` marks a switched vertex."""

    signs: tuple

    def __post_init__(self):
        if any(s not in (1, -1) for s in self.signs):
            raise DimensionError("switch state entries must be +1 or -1")

    @property
    def n(self) -> int:
        return len(self.signs)

    @classmethod
    def identity(cls, n: int) -> "SwitchState":
        return cls((1,) * n)

    @classmethod
    def from_mask(cls, n: int, mask: int) -> "SwitchState":
        return cls(tuple(-1 if (mask >> v) & 1 else 1 for v in range(n)))

    @classmethod
    def from_vertices(cls, n: int, vertices: Iterable[int]) -> "SwitchState":
        mask = 0
        for v in vertices:
            if not 0 <= v < n:
                raise DimensionError(f"vertex {v} out of range")
            mask |= 1 << v
        return cls.from_mask(n, mask)

    @property
    def mask(self) -> int:
        out = 0
        for v, s in enumerate(self.signs):
            if s < 0:
                out |= 1 << v
        return out

    def normalized(self) -> "SwitchState":
        """Same switching effect with vertex 0 unswitched."""
        if self.signs and self.signs[0] < 0:
            return SwitchState(tuple(-s for s in self.signs))
        return self


@dataclass(frozen=True)
class CutProfile:
    side: frozenset
    pos: int
    neg: int

    @property
    def size(self) -> int:
        return self.pos + self.neg

    @property
    def equilibrated(self) -> bool:
        return self.pos == self.neg

    @property
    def unequilibrated(self) -> bool:
        return self.neg > self.pos


class SignedGraph:
    """Immutable signed graph on vertices ``0..n-1``."""

    __slots__ = ("n", "edges", "_incident", "_nbrs", "_masks", "_hash")

    def __init__(self, n: int, edges: Iterable = ()):
        if n < 0:
            raise GraphFormatError("negative vertex count")
        check_capacity(n, MODEL_MAX_N, "signed graph")
        norm = []
        for e in edges:
            try:
                u, v, s = e
            except (TypeError, ValueError) as exc:
                raise GraphFormatError(f"edge {e!r} is not a (u, v, sign) triple") from exc
            u, v, s = int(u), int(v), _parse_sign(s)
            if u == v:
                raise GraphFormatError(f"self-loop at {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise GraphFormatError(f"edge ({u},{v}) out of range for n={n}")
            if u > v:
                u, v = v, u
            norm.append((u, v, s))
        norm.sort()
        for a, b in zip(norm, norm[1:]):
            if a[:2] == b[:2]:
                if a[2] == b[2]:
                    raise GraphFormatError(f"parallel edges {a[:2]} must have opposite signs")
        for a, b in zip(norm, norm[2:]):
            if a[:2] == b[:2]:
                raise GraphFormatError(f"more than two edges on pair {a[:2]}")
        self.n = n
        self.edges = tuple(norm)
        incident = [[] for _ in range(n)]
        nbrs = [set() for _ in range(n)]
        for i, (u, v, _) in enumerate(self.edges):
            incident[u].append(i)
            incident[v].append(i)
            nbrs[u].add(v)
            nbrs[v].add(u)
        self._incident = tuple(tuple(x) for x in incident)
        self._nbrs = tuple(tuple(sorted(x)) for x in nbrs)
        masks = []
        for x in nbrs:
            mk = 0
            for w in x:
                mk |= 1 << w
            masks.append(mk)
        self._masks = tuple(masks)
        self._hash = None

    # construction helpers

    @classmethod
    def from_pairs(cls, n: int, pairs: Iterable, negative: Iterable = ()) -> "SignedGraph":
        """Simple graph from vertex pairs; pairs listed in ``negative`` get sign -1."""
        neg = {frozenset(p) for p in negative}
        return cls(n, [(u, v, -1 if frozenset((u, v)) in neg else 1) for u, v in pairs])

    def with_signs(self, signs: Sequence[int]) -> "SignedGraph":
        if len(signs) != self.m:
            raise DimensionError(f"{len(signs)} signs for {self.m} edges")
        return SignedGraph(self.n, [(u, v, s) for (u, v, _), s in zip(self.edges, signs)])

    def with_signature(self, sig: SignatureBits) -> "SignedGraph":
        if sig.m != self.m:
            raise DimensionError(f"signature over {sig.m} edges, graph has {self.m}")
        return self.with_signs(sig.signs())

    def all_positive(self) -> "SignedGraph":
        return self.with_signs((1,) * self.m)

    def relabel(self, perm: Sequence[int]) -> "SignedGraph":
        """Vertex ``v`` becomes ``perm[v]``."""
        if sorted(perm) != list(range(self.n)):
            raise DimensionError("relabeling is not a permutation")
        return SignedGraph(self.n, [(perm[u], perm[v], s) for u, v, s in self.edges])

    # queries

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def signs(self) -> tuple:
        return tuple(e[2] for e in self.edges)

    @property
    def signature(self) -> SignatureBits:
        return SignatureBits.from_signs(self.signs)

    def negative_edges(self) -> tuple:
        return tuple(i for i, e in enumerate(self.edges) if e[2] < 0)

    def neighbors(self, v: int) -> tuple:
        return self._nbrs[v]

    def neighbor_mask(self, v: int) -> int:
        return self._masks[v]

    def incident(self, v: int) -> tuple:
        return self._incident[v]

    def degree(self, v: int) -> int:
        return len(self._incident[v])

    def degrees(self) -> tuple:
        return tuple(len(x) for x in self._incident)

    def has_edge(self, u: int, v: int) -> bool:
        return bool((self._masks[u] >> v) & 1)

    def edge_ids(self, u: int, v: int) -> tuple:
        return tuple(i for i in self._incident[u] if v in self.edges[i][:2])

    def sign(self, u: int, v: int) -> int:
        """Sign of the unique edge ``uv``; digons and non-edges raise."""
        ids = self.edge_ids(u, v)
        if len(ids) != 1:
            raise GraphFormatError(f"pair ({u},{v}) has {len(ids)} edges")
        return self.edges[ids[0]][2]

    def is_simple(self) -> bool:
        return all(a[:2] != b[:2] for a, b in zip(self.edges, self.edges[1:]))

    def digon_edges(self) -> frozenset:
        out = set()
        for i in range(self.m - 1):
            if self.edges[i][:2] == self.edges[i + 1][:2]:
                out.update((i, i + 1))
        return frozenset(out)

    def underlying_pairs(self) -> tuple:
        return tuple((u, v) for u, v, _ in self.edges)

    def __eq__(self, other):
        return isinstance(other, SignedGraph) and self.n == other.n and self.edges == other.edges

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.n, self.edges))
        return self._hash

    def __repr__(self):
        body = ", ".join(f"{u}{'+' if s > 0 else '-'}{v}" for u, v, s in self.edges)
        return f"SignedGraph(n={self.n}, [{body}])"


# switching and cuts

def _state_signs(g: SignedGraph, state) -> tuple:
    signs = state.signs if isinstance(state, SwitchState) else tuple(state)
    if len(signs) != g.n:
        raise DimensionError(f"state of length {len(signs)} for n={g.n}")
    if any(s not in (1, -1) for s in signs):
        raise DimensionError("state entries must be +1 or -1")
    return signs


def switch(g: SignedGraph, state) -> SignedGraph:
    s = _state_signs(g, state)
    return SignedGraph(g.n, [(u, v, sg * s[u] * s[v]) for u, v, sg in g.edges])


def switch_at(g: SignedGraph, vertices: Iterable[int]) -> SignedGraph:
    return switch(g, SwitchState.from_vertices(g.n, vertices))


def negative_edge_count(g: SignedGraph) -> int:
    return sum(1 for e in g.edges if e[2] < 0)


def cut_profile(g: SignedGraph, side: Iterable[int]) -> CutProfile:
    xs = frozenset(side)
    for v in xs:
        if not isinstance(v, int) or not 0 <= v < g.n:
            raise InvalidCutError(f"vertex {v!r} not in graph")
    if not 0 < len(xs) < g.n:
        raise InvalidCutError("a cut side must be a proper non-empty subset")
    pos = neg = 0
    for u, v, s in g.edges:
        if (u in xs) != (v in xs):
            if s > 0:
                pos += 1
            else:
                neg += 1
    return CutProfile(xs, pos, neg)


# structural edits

def subdivide_edge(g: SignedGraph, e: int) -> SignedGraph:
    """Insert vertex ``n`` on edge ``e = (u, v)``; a negative edge becomes u+z, z-v."""
    if not 0 <= e < g.m:
        raise DimensionError(f"edge index {e} out of range")
    u, v, s = g.edges[e]
    z = g.n
    rest = [x for i, x in enumerate(g.edges) if i != e]
    return SignedGraph(g.n + 1, rest + [(u, z, 1), (z, v, s)])


def delete_edges(g: SignedGraph, ids: Iterable[int]) -> SignedGraph:
    drop = set(ids)
    return SignedGraph(g.n, [x for i, x in enumerate(g.edges) if i not in drop])


def induced_subgraph(g: SignedGraph, vertices: Iterable[int]) -> tuple:
    """Subgraph induced on ``vertices``, relabeled in increasing order.

    Returns ``(graph, old_to_new)``.
    """
    keep = sorted(set(vertices))
    index = {v: i for i, v in enumerate(keep)}
    edges = [(index[u], index[v], s) for u, v, s in g.edges if u in index and v in index]
    return SignedGraph(len(keep), edges), index


def delete_vertices(g: SignedGraph, vertices: Iterable[int]) -> tuple:
    gone = set(vertices)
    return induced_subgraph(g, [v for v in range(g.n) if v not in gone])


def disjoint_union(graphs: Sequence[SignedGraph]) -> SignedGraph:
    edges = []
    off = 0
    for h in graphs:
        edges.extend((u + off, v + off, s) for u, v, s in h.edges)
        off += h.n
    return SignedGraph(off, edges)


# connectivity

def components(g: SignedGraph) -> list:
    seen = [False] * g.n
    out = []
    for r in range(g.n):
        if seen[r]:
            continue
        seen[r] = True
        comp = [r]
        stack = [r]
        while stack:
            x = stack.pop()
            for y in g.neighbors(x):
                if not seen[y]:
                    seen[y] = True
                    comp.append(y)
                    stack.append(y)
        out.append(sorted(comp))
    return out


def is_connected(g: SignedGraph) -> bool:
    return g.n <= 1 or len(components(g)) == 1


def bridges(g: SignedGraph) -> list:
    """Indices of bridge edges (iterative Tarjan low-link, digon aware)."""
    if not is_connected(g):
        raise ConnectivityError("bridges needs a connected graph")
    n = g.n
    disc = [-1] * n
    low = [0] * n
    out = []
    t = 0
    for root in range(n):
        if disc[root] >= 0:
            continue
        disc[root] = low[root] = t
        t += 1
        stack = [(root, -1, iter(g.incident(root)))]
        while stack:
            v, pe, it = stack[-1]
            advanced = False
            for ei in it:
                if ei == pe:
                    continue
                a, b, _ = g.edges[ei]
                w = b if a == v else a
                if disc[w] < 0:
                    disc[w] = low[w] = t
                    t += 1
                    stack.append((w, ei, iter(g.incident(w))))
                    advanced = True
                    break
                if disc[w] < low[v]:
                    low[v] = disc[w]
            if advanced:
                continue
            stack.pop()
            if stack:
                p = stack[-1][0]
                if low[v] < low[p]:
                    low[p] = low[v]
                if low[v] > disc[p]:
                    out.append(pe)
    return sorted(out)


def is_two_edge_connected(g: SignedGraph) -> bool:
    return is_connected(g) and not bridges(g)


@dataclass(frozen=True)
class Block:
    """A 2-edge-connected piece left after deleting all bridges."""

    vertices: frozenset
    bridges: tuple
    leaf: bool


def block_decomposition(g: SignedGraph) -> list:
    br = bridges(g)
    rest = delete_edges(g, br)
    where = {}
    comps = components(rest)
    for i, comp in enumerate(comps):
        for v in comp:
            where[v] = i
    touching = [[] for _ in comps]
    for b in br:
        u, v, _ = g.edges[b]
        touching[where[u]].append(b)
        touching[where[v]].append(b)
    return [Block(frozenset(c), tuple(sorted(t)), len(t) == 1) for c, t in zip(comps, touching)]


def girth(g: SignedGraph) -> int:
    """Length of a shortest cycle; a digon counts as a 2-cycle."""
    if not g.is_simple():
        return 2
    best = None
    for r in range(g.n):
        dist = {r: 0}
        parent = {r: -1}
        q = deque([r])
        while q:
            x = q.popleft()
            if best is not None and 2 * dist[x] + 1 >= best:
                break
            for y in g.neighbors(x):
                if y not in dist:
                    dist[y] = dist[x] + 1
                    parent[y] = x
                    q.append(y)
                elif parent[x] != y:
                    c = dist[x] + dist[y] + 1
                    if best is None or c < best:
                        best = c
    if best is None:
        raise NoCycleError("graph is acyclic")
    return best


def is_subcubic(g: SignedGraph) -> bool:
    return all(g.degree(v) <= 3 for v in range(g.n))


# switching classes

def _forest_potentials(g: SignedGraph, signs: Sequence[int]):
    """DFS forest over non-digon edges, roots at the smallest vertex of each piece.

    Returns ``(potential, tree_edge_ids)``: ``potential[v]`` is the sign
    product along the tree path from the root to ``v``.
    """
    skip = g.digon_edges()
    pot = [0] * g.n
    tree = set()
    for root in range(g.n):
        if pot[root]:
            continue
        pot[root] = 1
        stack = [(root, iter(sorted(g.incident(root), key=lambda i: (_other(g, i, root), i))))]
        while stack:
            v, it = stack[-1]
            for ei in it:
                if ei in skip:
                    continue
                w = _other(g, ei, v)
                if not pot[w]:
                    pot[w] = pot[v] * signs[ei]
                    tree.add(ei)
                    stack.append((w, iter(sorted(g.incident(w), key=lambda i, w=w: (_other(g, i, w), i)))))
                    break
            else:
                stack.pop()
    return pot, tree


def _other(g: SignedGraph, ei: int, v: int) -> int:
    a, b, _ = g.edges[ei]
    return b if a == v else a


def tree_canonical_signature(g: SignedGraph) -> tuple:
    """Switch so every edge of the canonical DFS tree is positive.

    The tree is grown from vertex 0 with neighbours taken in ascending order.
    Two signatures are switching equivalent exactly when their canonical
    forms coincide. Returns ``(canonical_graph, state)``.
    """
    if not is_connected(g):
        raise ConnectivityError("tree_canonical_signature needs a connected graph")
    pot, _ = _forest_potentials(g, g.signs)
    state = SwitchState(tuple(pot))
    return switch(g, state), state


def _signs_over(g: SignedGraph, sig) -> tuple:
    if isinstance(sig, SignedGraph):
        if sig.n != g.n or sig.underlying_pairs() != g.underlying_pairs():
            raise DimensionError("signed graph has a different underlying graph")
        return sig.signs
    if isinstance(sig, SignatureBits):
        if sig.m != g.m:
            raise DimensionError(f"signature over {sig.m} edges, graph has {g.m}")
        return sig.signs()
    signs = tuple(sig)
    if len(signs) != g.m:
        raise DimensionError(f"{len(signs)} signs for {g.m} edges")
    return signs


def fundamental_cycle_signs(g: SignedGraph, sigma_a, sigma_b) -> bool:
    """True when both signatures give every fundamental cycle the same sign."""
    a = _signs_over(g, sigma_a)
    b = _signs_over(g, sigma_b)
    for sigs in (a, b):
        for i in range(g.m - 1):
            if g.edges[i][:2] == g.edges[i + 1][:2] and sigs[i] == sigs[i + 1]:
                raise GraphFormatError("digon with equal signs")
    pa, tree = _forest_potentials(g, a)
    pb, _ = _forest_potentials(g, b)
    skip = g.digon_edges()
    for i, (u, v, _) in enumerate(g.edges):
        if i in tree or i in skip:
            continue
        if a[i] * pa[u] * pa[v] != b[i] * pb[u] * pb[v]:
            return False
    return True
