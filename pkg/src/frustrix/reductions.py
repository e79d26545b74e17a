"""Reducible configurations of subcubic signed graphs and their rewrites.

Each detector scans in a fixed order and yields only matches whose side
conditions hold. Each rewrite deletes a few vertices, reconnects the outside
neighbours and reports by how much the frustration index drops. That offset
is exact when the input signature is minimum, which is why
:func:`reduce_to_fixpoint` switches to a minimum signature before each step.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .errors import RuleInapplicableError
from .sgcore import (
    SignedGraph,
    bridges,
    SwitchState,
    components,
    delete_edges,
    induced_subgraph,
    is_connected,
    negative_edge_count,
    switch,
)
from .solver import frustration

DEGREE2_VERTEX = "DEGREE2_VERTEX"
NEG_TRIANGLE = "NEG_TRIANGLE"
ADJ_TRIANGLES = "ADJ_TRIANGLES"
TRI_4CYCLE_NEG = "TRI_4CYCLE_NEG"
NEG_4CYCLES_SHARED = "NEG_4CYCLES_SHARED"
TRI_PENTA_SHARED = "TRI_PENTA_SHARED"
H1_SUBGRAPH = "H1_SUBGRAPH"
H2_SUBGRAPH = "H2_SUBGRAPH"
POS_2EDGECUT = "POS_2EDGECUT"

RULE_ORDER = (DEGREE2_VERTEX, NEG_TRIANGLE, ADJ_TRIANGLES, TRI_4CYCLE_NEG,
              NEG_4CYCLES_SHARED, TRI_PENTA_SHARED, H1_SUBGRAPH, H2_SUBGRAPH)
ALL_RULES = RULE_ORDER + (POS_2EDGECUT,)


@dataclass(frozen=True)
class ConfigurationMatch:
    rule: str
    roles: tuple
    vertices: tuple
    edges: tuple
    variant: str = ""
    switch_at: tuple = ()
    conditions: tuple = ()

    def __getitem__(self, role):
        return self.vertices[self.roles.index(role)]


@dataclass(frozen=True)
class ReductionStep:
    rule: str
    input: SignedGraph
    output: SignedGraph
    offset: int
    conditions_checked: tuple
    match: ConfigurationMatch = None
    vertex_map: dict = field(default_factory=dict)


# small helpers

def _sign(g, u, v):
    return g.sign(u, v)


def _others(g, v, exclude):
    return [w for w in g.neighbors(v) if w not in exclude]


def _third(g, v, exclude):
    rest = _others(g, v, exclude)
    return rest[0] if rest else None


def _edges_among(g, vs):
    inside = set(v for v in vs if v is not None)
    return tuple(i for i, (u, v, _) in enumerate(g.edges) if u in inside and v in inside)


def _touching(g, vs):
    inside = set(v for v in vs if v is not None)
    return tuple(i for i, (u, v, _) in enumerate(g.edges) if u in inside or v in inside)


def _match(g, rule, roles, verts, variant="", switch_at=(), conditions=(), edges=None):
    if edges is None:
        edges = _touching(g, verts)
    return ConfigurationMatch(rule, tuple(roles), tuple(verts), edges, variant,
                              tuple(switch_at), tuple(conditions))


def _triangles(g):
    out = []
    for u in range(g.n):
        for v in g.neighbors(u):
            if v <= u:
                continue
            common = g.neighbor_mask(u) & g.neighbor_mask(v)
            for w in range(v + 1, g.n):
                if (common >> w) & 1:
                    out.append((u, v, w))
    return out


def _rewrite(g, delete=(), add=(), new_vertices=0, resign=()):
    """Delete vertices, add edges (labels >= n are new vertices), compact labels.

    ``resign`` lists ``(u, v, sign)`` for surviving edges whose sign changes.
    Returns ``(graph, old_to_new)``.
    """
    gone = set(delete)
    change = {frozenset((u, v)): s for u, v, s in resign}
    edges = []
    for u, v, s in g.edges:
        if u in gone or v in gone:
            continue
        edges.append((u, v, change.get(frozenset((u, v)), s)))
    edges.extend(add)
    keep = [v for v in range(g.n + new_vertices) if v not in gone]
    index = {v: i for i, v in enumerate(keep)}
    out = SignedGraph(len(keep), [(index[u], index[v], s) for u, v, s in edges])
    return out, index


# detectors

def _detect_degree2(g):
    for z in range(g.n):
        if g.degree(z) != 2:
            continue
        x, y = g.neighbors(z)
        if not g.has_edge(x, y):
            yield _match(g, DEGREE2_VERTEX, ("z", "x", "y"), (z, x, y), "suppress",
                         conditions=(("x and y non-adjacent", True),))
            continue
        positive = _sign(g, x, z) * _sign(g, z, y) * _sign(g, x, y) > 0
        found = False
        for keep, drop in ((x, y), (y, x)):
            far = _third(g, drop, (keep, z))
            if far is None or not g.has_edge(keep, far):
                found = True
                break
        if not found:
            keep, drop, far = x, y, _third(g, y, (x, z))
        yield _match(g, DEGREE2_VERTEX, ("z", "x", "y", "y'"), (z, keep, drop, far),
                     "positive_triangle",
                     conditions=(("triangle positive", positive),
                                 ("no parallel edge created", found)))


def _detect_neg_triangle(g):
    for tri in _triangles(g):
        pairs = [(tri[0], tri[1]), (tri[0], tri[2]), (tri[1], tri[2])]
        negs = [p for p in pairs if _sign(g, *p) < 0]
        if len(negs) % 2 == 0:
            continue
        single = len(negs) == 1
        low = [v for v in tri if g.degree(v) == 2]
        if low:
            z = low[0]
            x, y = [v for v in tri if v != z]
            xp = _third(g, x, tri)
            yp = _third(g, y, tri)
            ok = all(p is None or _sign(g, q, p) > 0 for q, p in ((x, xp), (y, yp)))
            join = xp is not None and yp is not None and xp != yp and not g.has_edge(xp, yp)
            yield _match(g, NEG_TRIANGLE, ("z", "x", "y", "x'", "y'"), (z, x, y, xp, yp),
                         "join" if join else "drop",
                         conditions=(("single negative edge", single),
                                     ("outside edges positive", ok)))
            continue
        b, c = negs[0]
        a = next(v for v in tri if v not in (b, c))
        x, y, z = (_third(g, v, tri) for v in (a, b, c))
        tag, good = "to_c", False
        for far, t in ((z, "to_c"), (y, "to_b")):
            if far is not None and x != far and not g.has_edge(x, far):
                tag, good = t, True
                break
        yield _match(g, NEG_TRIANGLE, ("a", "b", "c", "x", "y", "z"), (a, b, c, x, y, z),
                     tag, conditions=(("single negative edge bc", single),
                                      ("x distinct from and not adjacent to target", good)))


def _detect_adj_triangles(g):
    for c in range(g.n):
        for d in g.neighbors(c):
            if d <= c:
                continue
            common = [w for w in g.neighbors(c) if g.has_edge(w, d)]
            if len(common) != 2:
                continue
            a, b = common
            if g.has_edge(a, b):
                continue
            x = _third(g, a, (c, d))
            y = _third(g, b, (c, d))
            hedges = {"ac": (a, c), "ad": (a, d), "bc": (b, c), "bd": (b, d), "cd": (c, d)}
            neg = {k for k, p in hedges.items() if _sign(g, *p) < 0}
            flip, normal = (), True
            if len(neg) > 1:
                if neg == {"ac", "bd"}:
                    flip = (a, d)
                elif neg == {"ad", "bc"}:
                    flip = (a, c)
                else:
                    normal = False
            yield _match(g, ADJ_TRIANGLES, ("a", "b", "c", "d", "x", "y"), (a, b, c, d, x, y),
                         "switched" if flip else "plain", flip,
                         (("third neighbours distinct", x is None or x != y),
                          ("at most one negative edge after switching", normal)))


def _detect_tri_4cycle(g):
    for tri in _triangles(g):
        for c, d in ((p, q) for p in tri for q in tri if p != q):
            z = next(v for v in tri if v not in (c, d))
            if _sign(g, d, z) > 0 or _sign(g, c, z) < 0:
                continue
            for a in _others(g, c, (d, z)):
                for b in _others(g, d, (c, z)):
                    if a == b or not g.has_edge(a, b):
                        continue
                    x = _third(g, a, (c, b))
                    y = _third(g, b, (d, a))
                    hedges = {"ab": (a, b), "bd": (b, d), "cd": (c, d), "ac": (a, c),
                              "cz": (c, z), "dz": (d, z)}
                    neg = {k for k, p in hedges.items() if _sign(g, *p) < 0}
                    flip, normal = (), True
                    if neg == {"ab", "dz"}:
                        flip = (b, d)
                    elif neg == {"ac", "dz"}:
                        flip = (c, z)
                    elif neg != {"dz"}:
                        normal = False
                    if y is None or not g.has_edge(y, z):
                        variant = "G1"
                    elif x is None or not g.has_edge(x, z):
                        variant = "G2"
                    else:
                        variant = ""
                    yield _match(g, TRI_4CYCLE_NEG, ("a", "b", "c", "d", "z", "x", "y"),
                                 (a, b, c, d, z, x, y), variant, flip,
                                 (("x, y differ from z", z not in (x, y)),
                                  ("negative edges normalisable", normal),
                                  ("some variant creates no parallel edge", bool(variant))))


def _six_cycle_variant(g, a, b, c, d, a2, b2, c2, d2):
    def apart(p, q):
        return p is None or q is None or p != q

    if apart(a2, c2) and apart(b2, d2):
        return "G1"
    if apart(a2, b2) and apart(c2, d2):
        return "G2"
    return None


def _detect_neg_4cycles(g):
    for i, (p, q, s) in enumerate(g.edges):
        if s > 0:
            continue
        for x, y in ((p, q), (q, p)):
            for a in _others(g, x, (y,)):
                for b in _others(g, y, (x,)):
                    if a == b or not g.has_edge(a, b):
                        continue
                    for c in _others(g, x, (y, a)):
                        for d in _others(g, y, (x, b)):
                            if c == d or not g.has_edge(c, d):
                                continue
                            six = (a, b, c, d, x, y)
                            if len(set(six)) != 6 or len(_edges_among(g, six)) != 7:
                                continue
                            cyc = ((a, x), (a, b), (b, y), (x, c), (c, d), (d, y))
                            if any(_sign(g, *e) < 0 for e in cyc):
                                continue
                            a2 = _third(g, a, (x, b))
                            b2 = _third(g, b, (y, a))
                            c2 = _third(g, c, (x, d))
                            d2 = _third(g, d, (y, c))
                            var = _six_cycle_variant(g, a, b, c, d, a2, b2, c2, d2)
                            yield _match(g, NEG_4CYCLES_SHARED,
                                         ("a", "b", "c", "d", "x", "y", "a'", "b'", "c'", "d'"),
                                         (a, b, c, d, x, y, a2, b2, c2, d2), var or "",
                                         conditions=(("some variant creates no parallel edge",
                                                      var is not None),))


def _detect_tri_penta(g):
    for i, (p, q, s) in enumerate(g.edges):
        if s > 0:
            continue
        for x, y in ((p, q), (q, p)):
            for c in _others(g, x, (y,)):
                if not g.has_edge(c, y):
                    continue
                for a in _others(g, x, (y, c)):
                    for d in _others(g, y, (x, c)):
                        for b in _others(g, a, (x,)):
                            if not g.has_edge(b, d):
                                continue
                            six = (a, b, c, d, x, y)
                            if len(set(six)) != 6 or len(_edges_among(g, six)) != 7:
                                continue
                            cyc = ((a, x), (x, c), (c, y), (y, d), (d, b), (b, a))
                            if any(_sign(g, *e) < 0 for e in cyc):
                                continue
                            a2 = _third(g, a, (x, b))
                            b2 = _third(g, b, (a, d))
                            c2 = _third(g, c, (x, y))
                            d2 = _third(g, d, (y, b))
                            var = _six_cycle_variant(g, a, b, c, d, a2, b2, c2, d2)
                            yield _match(g, TRI_PENTA_SHARED,
                                         ("a", "b", "c", "d", "x", "y", "a'", "b'", "c'", "d'"),
                                         (a, b, c, d, x, y, a2, b2, c2, d2), var or "",
                                         conditions=(("some variant creates no parallel edge",
                                                      var is not None),))


def _oriented_negatives(g):
    for u, v, s in g.edges:
        if s < 0:
            yield u, v
            yield v, u


def _detect_h1(g):
    negs = list(_oriented_negatives(g))
    for a, d in negs:
        for c, b in negs:
            if len({a, b, c, d}) != 4:
                continue
            if not (g.has_edge(a, b) and g.has_edge(d, c)):
                continue
            if _sign(g, a, b) < 0 or _sign(g, d, c) < 0:
                continue
            for x in _others(g, a, (b, d)):
                if x == c or not g.has_edge(x, c) or _sign(g, a, x) < 0 or _sign(g, c, x) < 0:
                    continue
                for y in _others(g, b, (a, c)):
                    if y in (d, x) or not g.has_edge(y, d):
                        continue
                    if _sign(g, b, y) < 0 or _sign(g, d, y) < 0:
                        continue
                    yield _match(g, H1_SUBGRAPH, ("a", "b", "c", "d", "x", "y"), (a, b, c, d, x, y),
                                 conditions=(("x and y non-adjacent", not g.has_edge(x, y)),))


def _detect_h2(g):
    negs = list(_oriented_negatives(g))
    for b, y in negs:
        for c, z in negs:
            core = {b, y, c, z}
            if len(core) != 4:
                continue
            if not (g.has_edge(b, z) and g.has_edge(c, y)):
                continue
            if _sign(g, b, z) < 0 or _sign(g, c, y) < 0:
                continue
            for u in _others(g, y, (b, c)):
                if u == z or not g.has_edge(u, z):
                    continue
                if _sign(g, u, y) < 0 or _sign(g, u, z) < 0:
                    continue
                b2 = _third(g, b, (y, z))
                c2 = _third(g, c, (y, z))
                x = _third(g, u, (y, z))
                if None in (b2, c2, x):
                    continue
                inner = core | {u}
                if {b2, c2, x} & inner:
                    continue
                if _sign(g, b, b2) < 0 or _sign(g, c, c2) < 0 or _sign(g, u, x) < 0:
                    continue
                yield _match(g, H2_SUBGRAPH, ("u", "y", "z", "b", "c", "x", "b'", "c'"),
                             (u, y, z, b, c, x, b2, c2),
                             conditions=(("x not in {b', c'}", x not in (b2, c2)),
                                         ("b' differs from c'", b2 != c2)))


def _detect_pos_2edgecut(g):
    if not is_connected(g):
        return
    pos = [i for i, e in enumerate(g.edges) if e[2] > 0]
    for e, f in combinations(pos, 2):
        if not is_connected(delete_edges(g, [e])) or not is_connected(delete_edges(g, [f])):
            continue
        rest = delete_edges(g, [e, f])
        comps = components(rest)
        if len(comps) != 2:
            continue
        for side in comps:
            inside = set(side)
            ends = []
            for ei in (e, f):
                u, v, _ = g.edges[ei]
                ends.append((u, v) if u in inside else (v, u))
            (u1, v1), (u2, v2) = ends
            h, _ = induced_subgraph(g, side)
            if h.n > 1 and bridges(h):
                continue
            if v1 == v2 or g.has_edge(v1, v2):
                continue
            if not any(g.edges[i][2] < 0 for v in (v1, v2) for i in g.incident(v)):
                continue
            yield _match(g, POS_2EDGECUT, ("u1", "v1", "u2", "v2"), (u1, v1, u2, v2),
                         edges=(e, f),
                         conditions=(("positive 2-edge-cut", True),
                                     ("v1 not adjacent to v2", True),
                                     ("v1 or v2 meets a negative edge", True)))


_DETECTORS = {
    DEGREE2_VERTEX: _detect_degree2,
    NEG_TRIANGLE: _detect_neg_triangle,
    ADJ_TRIANGLES: _detect_adj_triangles,
    TRI_4CYCLE_NEG: _detect_tri_4cycle,
    NEG_4CYCLES_SHARED: _detect_neg_4cycles,
    TRI_PENTA_SHARED: _detect_tri_penta,
    H1_SUBGRAPH: _detect_h1,
    H2_SUBGRAPH: _detect_h2,
    POS_2EDGECUT: _detect_pos_2edgecut,
}


def iter_matches(g: SignedGraph, rule: str):
    if rule not in _DETECTORS:
        raise ValueError(f"unknown rule {rule!r}")
    if not g.is_simple():
        return iter(())
    return _DETECTORS[rule](g)


def is_applicable(m: ConfigurationMatch) -> bool:
    return all(ok for _, ok in m.conditions)


def detect_configuration(g: SignedGraph, rule: str = None, applicable_only: bool = False):
    """First occurrence of ``rule`` (or of the first rule in priority order).

    Occurrences whose side conditions all hold are preferred; otherwise the
    first occurrence is returned with its failing conditions flagged, unless
    ``applicable_only`` is set.
    """
    for r in ([rule] if rule else RULE_ORDER):
        first = None
        for m in iter_matches(g, r):
            if is_applicable(m):
                return m
            if first is None:
                first = m
        if first is not None and not applicable_only:
            return first
    return None


def detect_all(g: SignedGraph) -> dict:
    return {r: detect_configuration(g, r) for r in ALL_RULES}


# rewrites

def apply_reduction(g: SignedGraph, m: ConfigurationMatch) -> ReductionStep:
    fn = _APPLY.get(m.rule)
    if fn is None:
        raise RuleInapplicableError(f"{m.rule} is detect-only")
    failed = [name for name, ok in m.conditions if not ok]
    if failed:
        raise RuleInapplicableError(f"{m.rule}: " + "; ".join(failed))
    h = switch(g, SwitchState.from_vertices(g.n, m.switch_at)) if m.switch_at else g
    out, index, offset = fn(h, m)
    drop = negative_edge_count(g) - negative_edge_count(out)
    conds = m.conditions + (("negative-count drop equals offset", drop == offset),)
    return ReductionStep(m.rule, g, out, offset, conds, m, index)


def _apply_degree2(g, m):
    if m.variant == "suppress":
        z, x, y = m.vertices
        if g.has_edge(x, y):
            raise RuleInapplicableError("x and y already adjacent")
        s = _sign(g, x, z) * _sign(g, z, y)
        out, idx = _rewrite(g, delete=(z,), add=((x, y, s),))
        return out, idx, 0
    z, x, y, far = m.vertices
    add = ((x, far, _sign(g, y, far)),) if far is not None else ()
    out, idx = _rewrite(g, delete=(y, z), add=add)
    return out, idx, 0


def _apply_neg_triangle(g, m):
    if m.variant in ("join", "drop"):
        z, x, y, xp, yp = m.vertices
        add = ((xp, yp, 1),) if m.variant == "join" else ()
        out, idx = _rewrite(g, delete=(x, y, z), add=add)
        return out, idx, 1
    a, b, c, x, y, z = m.vertices
    far = z if m.variant == "to_c" else y
    if g.has_edge(x, far) or x == far:
        raise RuleInapplicableError("rewrite would create a parallel edge")
    out, idx = _rewrite(g, delete=(a, b, c), add=((x, far, _sign(g, a, x)),))
    return out, idx, 1


def _apply_adj_triangles(g, m):
    a, b, c, d, x, y = m.vertices
    inner = [(a, c), (a, d), (b, c), (b, d), (c, d)]
    offset = sum(1 for p in inner if _sign(g, *p) < 0)
    if offset > 1:
        raise RuleInapplicableError("two negative edges remain inside the triangles")
    add = ((a, y, _sign(g, b, y)),) if y is not None else ()
    out, idx = _rewrite(g, delete=(b, c, d), add=add)
    return out, idx, offset


def _apply_tri_4cycle(g, m):
    a, b, c, d, z, x, y = m.vertices
    if m.variant == "G1":
        add = []
        if x is not None:
            add.append((x, c, _sign(g, x, a)))
        if y is not None:
            add.append((y, z, _sign(g, y, b)))
        out, idx = _rewrite(g, delete=(a, b, d), add=add)
    else:
        add = []
        if y is not None:
            add.append((y, d, _sign(g, y, b)))
        if x is not None:
            add.append((x, z, _sign(g, x, a)))
        out, idx = _rewrite(g, delete=(a, b, c), add=add, resign=((d, z, 1),))
    return out, idx, 1


def _apply_six_cycle(g, m):
    a, b, c, d, x, y, a2, b2, c2, d2 = m.vertices
    u, v = g.n, g.n + 1
    if m.variant == "G1":
        plan = ((u, a, a2), (u, c, c2), (v, b, b2), (v, d, d2))
    else:
        plan = ((u, a, a2), (u, b, b2), (v, c, c2), (v, d, d2))
    add = [(new, far, _sign(g, old, far)) for new, old, far in plan if far is not None]
    add.append((u, v, 1))
    out, idx = _rewrite(g, delete=(a, b, c, d, x, y), add=add, new_vertices=2)
    return out, idx, 1


def _apply_h1(g, m):
    a, b, c, d, x, y = m.vertices
    out, idx = _rewrite(g, delete=(b, c, d), add=((x, y, 1), (a, y, -1)))
    return out, idx, 1


def _apply_h2(g, m):
    u, y, z, b, c, x, b2, c2 = m.vertices
    out, idx = _rewrite(g, delete=(y, z, b, c), add=((u, b2, -1), (u, c2, 1)))
    return out, idx, 1


_APPLY = {
    DEGREE2_VERTEX: _apply_degree2,
    NEG_TRIANGLE: _apply_neg_triangle,
    ADJ_TRIANGLES: _apply_adj_triangles,
    TRI_4CYCLE_NEG: _apply_tri_4cycle,
    NEG_4CYCLES_SHARED: _apply_six_cycle,
    TRI_PENTA_SHARED: _apply_six_cycle,
    H1_SUBGRAPH: _apply_h1,
    H2_SUBGRAPH: _apply_h2,
}


# driver

def minimize(g: SignedGraph) -> tuple:
    """Switch every component to a minimum signature; keep g if it already is one."""
    signs = [1] * g.n
    changed = False
    for comp in components(g):
        if len(comp) < 2:
            continue
        h, index = induced_subgraph(g, comp)
        res = frustration(h)
        if res.f < negative_edge_count(h):
            changed = True
            for v in comp:
                signs[v] = res.witness_state.signs[index[v]]
    if not changed:
        return g, SwitchState.identity(g.n)
    st = SwitchState(tuple(signs))
    return switch(g, st), st


def reduce_to_fixpoint(g: SignedGraph, max_steps: int = None) -> tuple:
    """Apply rules in priority order until none matches.

    Returns ``(final_graph, total_offset, steps)``. A failing rewrite raises
    RuleInapplicableError carrying the steps taken so far as ``.steps``.
    """
    steps = []
    total = 0
    current = g
    while max_steps is None or len(steps) < max_steps:
        current, _ = minimize(current)
        m = detect_configuration(current, applicable_only=True)
        if m is None:
            break
        try:
            step = apply_reduction(current, m)
            if not all(ok for _, ok in step.conditions_checked):
                raise RuleInapplicableError(f"{m.rule}: side condition failed")
        except RuleInapplicableError as exc:
            exc.steps, exc.graph = steps, current
            raise
        steps.append(step)
        total += step.offset
        current = step.output
    return current, total, steps
