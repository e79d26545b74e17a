import random
from collections import deque
from itertools import product

import networkx as nx
import pytest

from frustrix.families import random_subcubic
from frustrix.sgcore import SignedGraph


def naive_frustration(g: SignedGraph) -> int:
    """Minimum over all 2^n vertex states, written independently of the solver."""
    if g.n == 0:
        return 0
    best = g.m
    for tail in product((1, -1), repeat=g.n - 1):
        s = (1,) + tail
        bad = sum(1 for u, v, sg in g.edges if sg * s[u] * s[v] < 0)
        best = min(best, bad)
    return best


def naive_max_cut(g: SignedGraph) -> int:
    best = 0
    for side in product((0, 1), repeat=g.n):
        best = max(best, sum(1 for u, v, _ in g.edges if side[u] != side[v]))
    return best


def bfs_connected(n, pairs) -> bool:
    if n <= 1:
        return True
    adj = [[] for _ in range(n)]
    for u, v in pairs:
        adj[u].append(v)
        adj[v].append(u)
    seen = {0}
    q = deque([0])
    while q:
        x = q.popleft()
        for y in adj[x]:
            if y not in seen:
                seen.add(y)
                q.append(y)
    return len(seen) == n


def atlas_subcubic(n, connected=True):
    """All graphs on n <= 7 vertices with max degree 3 from the networkx atlas."""
    out = []
    for h in nx.graph_atlas_g():
        if h.number_of_nodes() != n:
            continue
        if any(d > 3 for _, d in h.degree()):
            continue
        if connected and n and not nx.is_connected(h):
            continue
        out.append(h)
    return out


def nx_to_signed(h) -> SignedGraph:
    nodes = sorted(h.nodes())
    idx = {v: i for i, v in enumerate(nodes)}
    return SignedGraph.from_pairs(len(nodes), [(idx[u], idx[v]) for u, v in h.edges()])


def random_signed(rng, n_lo=2, n_hi=10, **kw) -> SignedGraph:
    return random_subcubic(rng.randint(n_lo, n_hi), rng, **kw)


def all_signings(g: SignedGraph):
    for bits in range(1 << g.m):
        yield g.with_signs([-1 if (bits >> i) & 1 else 1 for i in range(g.m)])


@pytest.fixture
def rng():
    return random.Random(20240611)


ACCEPTANCE_LINES = []


@pytest.fixture
def criterion(request):
    """Record one PASS/FAIL line per acceptance criterion; printed at the end."""
    recorded = []

    def record(number, ok, detail):
        line = f"{'PASS' if ok else 'FAIL'} criterion {number}: {detail}"
        recorded.append(line)
        ACCEPTANCE_LINES.append(line)
        print(line)
        return ok

    yield record
    if not recorded:
        ACCEPTANCE_LINES.append(f"FAIL {request.node.name}: raised before reporting")


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.write_sep("=", "acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
