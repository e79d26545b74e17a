"""Canonical labeling of small simple graphs by partition refinement.

The search individualizes vertices of the first non-trivial cell, refines to
an equitable partition and keeps the leaf whose (trace, adjacency rows) key
is smallest. Traces are labeling invariant, so prefix comparison against the
best trace prunes safely. Automorphisms found along the way prune children
in the same orbit under the pointwise stabilizer of the current path.
"""

from __future__ import annotations


def refine(masks, cells):
    """Coarsest equitable refinement of an ordered partition.

    ``masks[v]`` is the neighbour bitmask of ``v``. Cells are split by their
    neighbour counts into every current cell, sub-cells ordered by that count
    vector, so the result depends on the labeling only through the input.
    Returns ``(cells, trace)``.
    """
    cells = [list(c) for c in cells]
    while True:
        cmasks = []
        for c in cells:
            mk = 0
            for v in c:
                mk |= 1 << v
            cmasks.append(mk)
        out = []
        quotient = []
        for c in cells:
            if len(c) == 1:
                out.append(c)
                quotient.append(tuple((masks[c[0]] & cm).bit_count() for cm in cmasks))
                continue
            groups = {}
            for v in c:
                key = tuple((masks[v] & cm).bit_count() for cm in cmasks)
                groups.setdefault(key, []).append(v)
            for key in sorted(groups):
                out.append(groups[key])
                quotient.append(key)
        if len(out) == len(cells):
            return out, (tuple(len(c) for c in out), tuple(quotient))
        cells = out


def _rows(masks, lab):
    pos = [0] * len(lab)
    for i, v in enumerate(lab):
        pos[v] = i
    rows = []
    for v in lab:
        r = 0
        mk = masks[v]
        while mk:
            low = mk & -mk
            r |= 1 << pos[low.bit_length() - 1]
            mk ^= low
        rows.append(r)
    return tuple(rows)


def _initial_cells(masks, colors=None):
    n = len(masks)
    key = [(m.bit_count(), colors[v] if colors else 0) for v, m in enumerate(masks)]
    groups = {}
    for v in range(n):
        groups.setdefault(key[v], []).append(v)
    return [groups[k] for k in sorted(groups)]


def search(masks, colors=None, all_leaves=False):
    """Canonical leaf search.

    Returns ``(best_key, best_lab, automorphisms, best_leaves)``. With
    ``all_leaves`` every labeling achieving the best key is listed and
    automorphism pruning is off; those labelings form one coset of the
    automorphism group.
    """
    n = len(masks)
    if n == 0:
        return ((), ()), [], [], [[]]
    best = {"trace": None, "key": None, "lab": None}
    autos = []
    leaves = []

    def same_orbit(v, others, path):
        gens = [a for a in autos if all(a[p] == p for p in path)]
        if not gens or not others:
            return False
        parent = list(range(n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for a in gens:
            for x in range(n):
                rx, ry = find(x), find(a[x])
                if rx != ry:
                    parent[max(rx, ry)] = min(rx, ry)
        rv = find(v)
        return any(find(w) == rv for w in others)

    def rec(cells, trace, path):
        cells, t = refine(masks, cells)
        trace = trace + [t]
        bt = best["trace"]
        if bt is not None:
            pre = bt[:len(trace)]
            if trace > pre:
                return
            if trace < pre:
                best["trace"] = None
                best["key"] = None
                leaves.clear()
        target = next((i for i, c in enumerate(cells) if len(c) > 1), None)
        if target is None:
            lab = [c[0] for c in cells]
            key = (tuple(trace), _rows(masks, lab))
            if best["key"] is None or key < best["key"]:
                best.update(trace=trace, key=key, lab=lab)
                leaves[:] = [lab]
            elif key == best["key"]:
                perm = [0] * n
                for a, b in zip(lab, best["lab"]):
                    perm[a] = b
                autos.append(perm)
                if all_leaves:
                    leaves.append(lab)
            return
        cell = cells[target]
        done = []
        for v in cell:
            if not all_leaves and same_orbit(v, done, path):
                continue
            done.append(v)
            rest = [w for w in cell if w != v]
            rec(cells[:target] + [[v], rest] + cells[target + 1:], trace, path + [v])

    rec(_initial_cells(masks, colors), [], [])
    return best["key"], best["lab"], autos, leaves
