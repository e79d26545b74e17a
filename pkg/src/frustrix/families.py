"""Named signed graphs and parametric constructions.

Named graphs and constructions carry a minimum signature, one whose negative
edge count equals F. Two exceptions: petersen_negative is all-negative by
definition, and random_subcubic draws its signs at random.
Vertex numbering follows the order listed in each docstring.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

from .errors import DimensionError, GraphFormatError
from .sgcore import SignedGraph

P, N = 1, -1


def gamma(i: int) -> SignedGraph:
    """The five exceptional cubic-ish graphs, indexed 1..5.

    1: K4 on x0..x3.  2: as 1 with x1x2 subdivided by x4.
    3: x0, y0, x1..x6.  4: x0, y0, z0, x1..x5.  5: cube u1..u4, v1..v4.
    """
    if i == 1:
        return SignedGraph(4, [(2, 3, P), (3, 1, P), (1, 0, P), (2, 0, P), (1, 2, N), (3, 0, N)])
    if i == 2:
        return SignedGraph(5, [(2, 3, P), (3, 1, P), (1, 0, P), (2, 0, P), (2, 4, P),
                               (1, 4, N), (3, 0, N)])
    if i == 3:
        x0, y0 = 0, 1
        x = {k: k + 1 for k in range(1, 7)}
        return SignedGraph(8, [
            (x[1], x[2], P), (x[2], x[3], P), (x[3], x[4], P), (x[4], x[5], P), (x[1], x[6], P),
            (x[2], x0, P), (x[6], x0, P), (x[3], y0, P), (x[5], y0, P),
            (x[6], x[5], N), (x[1], x0, N), (x[4], y0, N),
        ])
    if i == 4:
        x0, y0, z0 = 0, 1, 2
        x = {k: k + 2 for k in range(1, 6)}
        return SignedGraph(8, [
            (x[1], x[2], P), (x[2], x[3], P), (x[4], x[5], P), (x[5], x[1], P),
            (x[3], y0, P), (x[4], y0, P), (x[1], x0, P), (x0, z0, P), (z0, y0, P),
            (x0, x[2], N), (x[3], x[4], N), (x[5], z0, N),
        ])
    if i == 5:
        u = {k: k - 1 for k in range(1, 5)}
        v = {k: k + 3 for k in range(1, 5)}
        return SignedGraph(8, [
            (u[1], u[2], P), (u[2], u[3], P), (u[3], u[4], P),
            (v[1], v[2], P), (v[2], v[3], P), (v[4], v[1], P),
            (u[1], v[1], P), (u[3], v[3], P), (u[4], v[4], P),
            (u[4], u[1], N), (v[3], v[4], N), (v[2], u[2], N),
        ])
    raise ValueError(f"no exceptional graph number {i}")


def exceptional_graphs() -> dict:
    return {f"gamma{i}": gamma(i) for i in range(1, 6)}


# gadget chains

K4_SIGNED = ((0, 1, P), (0, 2, P), (0, 3, N), (1, 2, N), (1, 3, P), (2, 3, P))


@dataclass(frozen=True)
class GadgetKind:
    """One link of a chain.

    ``"triangle"``: apex a, then x, y; edges a+x, x+y, y-a.
    ``"k4"``: K4 on a, b, c, d with negative matching {ad, bc}, two of its
    edges subdivided by x then y. ``subdivided`` names those two K4 edges by
    endpoint letters; the default subdivides ac and bd.
    """

    kind: str
    subdivided: tuple = ("ac", "bd")

    def __post_init__(self):
        if self.kind not in ("triangle", "k4"):
            raise GraphFormatError(f"unknown gadget kind {self.kind!r}")
        if self.kind == "k4":
            a, b = (tuple(sorted(e)) for e in self.subdivided)
            if a == b or any(len(e) != 2 or not set(e) <= set("abcd") for e in (a, b)):
                raise GraphFormatError(f"bad subdivided edges {self.subdivided!r}")

    def build(self):
        """Return ``(vertex_count, edges, x, y)`` in local numbering."""
        if self.kind == "triangle":
            return 3, [(0, 1, P), (1, 2, P), (2, 0, N)], 1, 2
        letter = {c: i for i, c in enumerate("abcd")}
        targets = [tuple(sorted(letter[c] for c in e)) for e in self.subdivided]
        edges = []
        for u, v, s in K4_SIGNED:
            if (u, v) in targets:
                z = 4 + targets.index((u, v))
                edges += [(u, z, P), (z, v, s)]
            else:
                edges.append((u, v, s))
        return 6, edges, 4, 5


TRIANGLE = GadgetKind("triangle")
K4_GADGET = GadgetKind("k4")


def _as_kind(k) -> GadgetKind:
    if isinstance(k, GadgetKind):
        return k
    if k in ("t", "triangle"):
        return TRIANGLE
    if k in ("g", "k4"):
        return K4_GADGET
    raise GraphFormatError(f"unknown gadget {k!r}")


def gadget_chain(kinds: Sequence) -> SignedGraph:
    """Cyclic chain: gadget i's x joins gadget (i-1)'s y by a positive edge."""
    kinds = [_as_kind(k) for k in kinds]
    if len(kinds) < 2:
        raise DimensionError("a chain needs at least two gadgets")
    edges, xs, ys = [], [], []
    off = 0
    for k in kinds:
        cnt, local, x, y = k.build()
        edges += [(u + off, v + off, s) for u, v, s in local]
        xs.append(x + off)
        ys.append(y + off)
        off += cnt
    for i in range(len(kinds)):
        edges.append((xs[i], ys[i - 1], P))
    return SignedGraph(off, edges)


# triangle trees

# K4 with a positive edge subdivided; the new vertex x sits on positive edges only.
_PENDANT_BLOCK = ((0, 1, P), (1, 2, P), (2, 3, P), (3, 4, P), (4, 0, P), (1, 3, N), (2, 4, N))


def cubic_tree_path(k: int) -> list:
    """Edges of a tree with ``k`` cubic internal vertices in a path, leaves after."""
    if k < 0:
        raise DimensionError("k must be non-negative")
    if k == 0:
        return [(0, 1)]
    edges = [(i, i + 1) for i in range(k - 1)]
    nxt = k
    for i in range(k):
        need = 3 - (i > 0) - (i < k - 1)
        for _ in range(need):
            edges.append((i, nxt))
            nxt += 1
    return edges


def triangle_tree_extremal(tree_edges: Sequence) -> SignedGraph:
    """Each degree-3 tree vertex becomes a negative triangle, each leaf a pendant
    K4-with-one-subdivided-edge block joined at its degree-2 vertex.

    Tree edges become positive bridges. With k internal vertices the result
    has 8k + 10 vertices and frustration 3k + 4.
    """
    tv = sorted({v for e in tree_edges for v in e})
    if tv != list(range(len(tv))):
        raise GraphFormatError("tree vertices must be 0..t-1")
    deg = [0] * len(tv)
    for u, v in tree_edges:
        deg[u] += 1
        deg[v] += 1
    if len(tree_edges) != len(tv) - 1 or any(d not in (1, 3) for d in deg):
        raise GraphFormatError("need a tree whose degrees are 1 or 3")
    edges, ports, off = [], {}, 0
    for t in tv:
        if deg[t] == 3:
            edges += [(off, off + 1, P), (off + 1, off + 2, P), (off + 2, off, N)]
            ports[t] = [off, off + 1, off + 2]
            off += 3
        else:
            edges += [(u + off, v + off, s) for u, v, s in _PENDANT_BLOCK]
            ports[t] = [off]
            off += 5
    for u, v in tree_edges:
        edges.append((ports[u].pop(), ports[v].pop(), P))
    return SignedGraph(off, edges)


# small named graphs

def w_graphs() -> dict:
    """The two cubic 8-vertex graphs, all-positive.

    W1 order: a, b, c, d, a', b', c', d'.  W2 order: a, b, c, u, v, w, x, y.
    """
    a, b, c, d, a2, b2, c2, d2 = range(8)
    w1 = SignedGraph.from_pairs(8, [(a, b), (b, d), (d, c), (c, a), (a, a2), (a2, c2), (c2, c),
                                    (a2, b2), (b2, d2), (d2, c2), (b, d2), (d, b2)])
    a, b, c, u, v, w, x, y = range(8)
    w2 = SignedGraph.from_pairs(8, [(a, b), (b, c), (c, a), (a, u), (u, x), (x, w), (w, y),
                                    (y, v), (v, b), (u, y), (v, x), (c, w)])
    return {"W1": w1, "W2": w2}


def petersen_negative() -> SignedGraph:
    """Petersen graph with every edge negative; outer 0..4, inner 5..9."""
    pairs = [(i, (i + 1) % 5) for i in range(5)]
    pairs += [(i, i + 5) for i in range(5)]
    pairs += [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return SignedGraph(10, [(u, v, N) for u, v in pairs])


def cube_graph() -> SignedGraph:
    return SignedGraph.from_pairs(8, [(i, j) for i, j in combinations(range(8), 2)
                                      if (i ^ j).bit_count() == 1])


def digon_graph(k: int) -> SignedGraph:
    """Ring of k digons; digon i joins 2i and 2i+1, positive links 2i+1 -> 2i+2."""
    if k < 2:
        raise DimensionError("need at least two digons")
    edges = []
    for i in range(k):
        edges += [(2 * i, 2 * i + 1, N), (2 * i, 2 * i + 1, P)]
        edges.append((2 * i + 1, (2 * i + 2) % (2 * k), P))
    return SignedGraph(2 * k, edges)


def random_subcubic(n: int, rng, extra_edges: float = 0.5, negative_p: float = 0.5) -> SignedGraph:
    """Random connected subcubic signed graph: a degree-capped random tree plus
    random chords. ``rng`` is a ``random.Random``."""
    if n < 1:
        raise DimensionError("n must be positive")
    deg = [0] * n
    pairs = set()
    for v in range(1, n):
        hosts = [u for u in range(v) if deg[u] < 3]
        u = rng.choice(hosts)
        pairs.add((u, v))
        deg[u] += 1
        deg[v] += 1
    budget = int(extra_edges * n)
    for _ in range(budget):
        free = [v for v in range(n) if deg[v] < 3]
        if len(free) < 2:
            break
        u, v = sorted(rng.sample(free, 2))
        if (u, v) in pairs:
            continue
        pairs.add((u, v))
        deg[u] += 1
        deg[v] += 1
    return SignedGraph(n, [(u, v, -1 if rng.random() < negative_p else 1) for u, v in sorted(pairs)])
