import itertools
import random

import numpy as np
import pytest

from kwaypart.graph import BalanceSpec, Partition, build_graph, edge_cut


FIG_XADJ = [0, 2, 5, 7, 9, 12]
FIG_ADJNCY = [1, 4, 0, 2, 4, 1, 3, 2, 4, 0, 1, 3]
FIG_TEXT = "5 6\n2 5\n1 3 5\n2 4\n3 5\n1 2 4\n"


@pytest.fixture
def fig_graph():
    return build_graph(5, FIG_XADJ, FIG_ADJNCY)


def graph_from_edges(n, edges, node_weights=None, edge_weights=None):
    """Build a Graph from undirected (u, v[, w]) tuples."""
    adj = {v: [] for v in range(n)}
    for e in edges:
        u, v = e[0], e[1]
        w = e[2] if len(e) > 2 else 1
        adj[u].append((v, w))
        adj[v].append((u, w))
    xadj = [0]
    adjncy, ew = [], []
    for v in range(n):
        for u, w in sorted(adj[v]):
            adjncy.append(u)
            ew.append(w)
        xadj.append(len(adjncy))
    return build_graph(n, xadj, adjncy, node_weights, ew)


def path_graph(n):
    return graph_from_edges(n, [(i, i + 1) for i in range(n - 1)])


def grid_graph(rows, cols):
    def nid(r, c):
        return r * cols + c
    edges = []
    for r in range(rows):
        for c in range(cols):
            if c + 1 < cols:
                edges.append((nid(r, c), nid(r, c + 1)))
            if r + 1 < rows:
                edges.append((nid(r, c), nid(r + 1, c)))
    return graph_from_edges(rows * cols, edges)


def random_connected_graph(rng, n, extra_edges=None, max_weight=1):
    """Random spanning tree plus extra random edges; positive edge weights."""
    edges = set()
    nodes = list(range(n))
    rng.shuffle(nodes)
    for i in range(1, n):
        u = nodes[rng.randrange(i)]
        v = nodes[i]
        edges.add((min(u, v), max(u, v)))
    if extra_edges is None:
        extra_edges = n
    for _ in range(extra_edges):
        u, v = rng.randrange(n), rng.randrange(n)
        if u != v:
            edges.add((min(u, v), max(u, v)))
    weighted = [(u, v, rng.randint(1, max_weight)) for u, v in sorted(edges)]
    return graph_from_edges(n, weighted)


def random_partition(rng, g, k):
    while True:
        assignment = [rng.randrange(k) for _ in range(g.n)]
        if len(set(assignment)) == k or g.n < k:
            return Partition.from_assignment(g, k, assignment)


def random_feasible_partition(rng, g, k, epsilon):
    """Rejection-sample a feasible random partition (unit-ish weights)."""
    spec = BalanceSpec.for_graph(g, k, epsilon)
    for _ in range(10000):
        p = random_partition(rng, g, k)
        if int(p.block_weight.max()) <= spec.l_max:
            return p, spec
    raise AssertionError("could not sample a feasible partition")


def brute_force_best_bipartition(g, spec):
    """Exhaustive minimum feasible 2-way cut (node 0 pinned to block 0)."""
    best = None
    for bits in range(2 ** max(0, g.n - 1)):
        assignment = [0] + [(bits >> i) & 1 for i in range(g.n - 1)]
        p = Partition.from_assignment(g, 2, assignment)
        if int(p.block_weight.max()) > spec.l_max:
            continue
        cut = edge_cut(g, p)
        if best is None or cut < best:
            best = cut
    return best


def brute_force_min_st_cut(corridor):
    """Exhaustive minimum s-t cut weight of a FlowCorridor network."""
    inner = len(corridor.nodes)
    best = None
    for bits in range(2 ** inner):
        side = [True, False] + [bool((bits >> i) & 1) for i in range(inner)]
        cut = sum(cap for u, v, cap in corridor.edges if side[u] != side[v])
        if best is None or cut < best:
            best = cut
    return best


def brute_force_min_cover(edges):
    """Smallest subset of endpoint nodes covering all edges."""
    nodes = sorted({x for e in edges for x in e})
    for size in range(len(nodes) + 1):
        for subset in itertools.combinations(nodes, size):
            chosen = set(subset)
            if all(u in chosen or v in chosen for u, v in edges):
                return size
    return len(nodes)


@pytest.fixture
def rng():
    return random.Random(12345)


def assignment_of(p):
    return [int(b) for b in p.assignment]
