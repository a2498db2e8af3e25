"""Initial partitioning of the coarsest graph: greedy graph growing with
restarts, each polished by one FM pass.
"""
from __future__ import annotations

import numpy as np

from .errors import InfeasibleInstance
from .graph import Partition, edge_cut

__all__ = ["greedy_graph_growing", "best_of"]


def greedy_graph_growing(g, spec, rng):
    """Grow blocks 0..k-2 from random seeds; the remainder is block k-1.

    Each block absorbs the frontier node with maximal connectivity to it
    until the block reaches ceil(c(V)/k). Empty blocks are legal when the
    graph runs out of nodes (k > n at the coarsest level).
    """
    k = spec.k
    if k == 1:
        return Partition.from_assignment(g, 1, np.zeros(g.n, dtype=np.int64))
    if g.n and int(g.node_weight.max()) > spec.l_max:
        raise InfeasibleInstance(
            "a single node outweighs the per-block ceiling")
    target = spec.ceil_avg()
    assignment = np.full(g.n, -1, dtype=np.int64)
    unassigned = set(range(g.n))
    for b in range(k - 1):
        if not unassigned:
            break
        weight = 0
        conn = {}
        while weight < target:
            if conn:
                v = max(conn, key=lambda u: (conn[u], -u))
            elif unassigned:
                v = rng.choice(sorted(unassigned))
            else:
                break
            cv = int(g.node_weight[v])
            if weight > 0 and weight + cv > spec.l_max:
                break
            assignment[v] = b
            unassigned.discard(v)
            conn.pop(v, None)
            weight += cv
            for j in range(g.xadj[v], g.xadj[v + 1]):
                u = int(g.adjncy[j])
                if assignment[u] == -1:
                    conn[u] = conn.get(u, 0) + int(g.edge_weight[j])
    for v in unassigned:
        assignment[v] = k - 1
    return Partition.from_assignment(g, k, assignment)


def best_of(g, spec, attempts, rng):
    """Best feasible result over restarts (or least overweight if none is)."""
    from .refine import fm_refine

    best = None
    best_key = None
    for _ in range(max(1, attempts)):
        p = greedy_graph_growing(g, spec, rng)
        p = fm_refine(g, p, spec, rng=rng)
        over = max(0, int(p.block_weight.max()) - spec.l_max)
        key = (over > 0, over if over > 0 else edge_cut(g, p))
        if best is None or key < best_key:
            best, best_key = p, key
    return best
