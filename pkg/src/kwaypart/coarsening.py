"""Clusterings for contraction: randomized heavy-edge matching for mesh-like
graphs and size-constrained label propagation for social-type graphs.

Both accept an optional ``class_of`` array; nodes of different classes are
never merged. The multilevel driver uses classes to keep the cut edges of
input partitions uncontracted.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels

__all__ = [
    "Clustering",
    "heavy_edge_matching",
    "label_propagation_clustering",
    "enforce_contraction_forbidden_edges",
    "coarsening_limit",
]

_UNBOUNDED = 1 << 62


@dataclass
class Clustering:
    cluster_of: np.ndarray
    cluster_weight: np.ndarray

    @property
    def num_clusters(self):
        return len(self.cluster_weight)


def _compact(labels, node_weight):
    """Renumber labels by first appearance in node order."""
    remap = {}
    out = np.empty(len(labels), dtype=np.int64)
    for v, lab in enumerate(labels):
        lab = int(lab)
        if lab not in remap:
            remap[lab] = len(remap)
        out[v] = remap[lab]
    weights = np.zeros(len(remap), dtype=np.int64)
    np.add.at(weights, out, node_weight)
    return Clustering(out, weights)


def heavy_edge_matching(g, rng, max_cluster_weight, class_of=None):
    """Greedy matching: random visit order, heaviest available neighbor.

    Clusters have at most two nodes; a pair is allowed only when its combined
    node weight respects the bound. Unmatched nodes stay singletons.
    """
    match = np.full(g.n, -1, dtype=np.int64)
    order = list(range(g.n))
    rng.shuffle(order)
    for v in order:
        if match[v] != -1:
            continue
        best, best_w = -1, 0
        wv = int(g.node_weight[v])
        for j in range(g.xadj[v], g.xadj[v + 1]):
            u = int(g.adjncy[j])
            if match[u] != -1:
                continue
            if class_of is not None and class_of[u] != class_of[v]:
                continue
            if wv + int(g.node_weight[u]) > max_cluster_weight:
                continue
            w = int(g.edge_weight[j])
            if w > best_w:
                best, best_w = u, w
        if best != -1:
            match[v] = best
            match[best] = v
    labels = np.empty(g.n, dtype=np.int64)
    next_id = 0
    for v in range(g.n):
        if match[v] == -1:
            labels[v] = next_id
            next_id += 1
        elif match[v] > v:
            labels[v] = next_id
            labels[match[v]] = next_id
            next_id += 1
    # nodes matched to a smaller id already carry that id
    for v in range(g.n):
        if match[v] != -1 and match[v] < v:
            labels[v] = labels[match[v]]
    weights = np.zeros(next_id, dtype=np.int64)
    np.add.at(weights, labels, g.node_weight)
    return Clustering(labels, weights)


def label_propagation_clustering(g, rng, upper_bound=None, iterations=10,
                                 class_of=None):
    """Size-constrained label propagation from singleton labels.

    Each sweep visits nodes in a fresh random order; a node adopts the
    incident label of maximum total edge weight subject to the target cluster
    weight staying within the bound, ties broken uniformly at random.
    """
    labels = np.arange(g.n, dtype=np.int64)
    weights = g.node_weight.copy()
    ubound = _UNBOUNDED if upper_bound is None else int(upper_bound)
    cls = None if class_of is None else np.ascontiguousarray(class_of,
                                                             dtype=np.int64)
    order = np.arange(g.n, dtype=np.int64)
    for _ in range(iterations):
        rng.shuffle(order)
        moves = kernels.lp_sweep(g.xadj, g.adjncy, g.edge_weight,
                                 g.node_weight, labels, weights,
                                 np.ascontiguousarray(order), ubound,
                                 rng.getrandbits(63), cls)
        if moves == 0:
            break
    return _compact(labels, g.node_weight)


def enforce_contraction_forbidden_edges(g, clustering, forbidden):
    """Split clusters until no forbidden edge is intra-cluster.

    ``forbidden`` holds undirected edges as (u, v) pairs in either order.
    Moving one endpoint of each offending edge into a fresh singleton cluster
    is enough: a singleton contains no edge.
    """
    labels = clustering.cluster_of.copy()
    next_id = int(labels.max()) + 1 if len(labels) else 0
    for u, v in sorted((min(a, b), max(a, b)) for a, b in forbidden):
        if labels[u] == labels[v]:
            labels[u] = next_id
            next_id += 1
    return _compact(labels, g.node_weight)


def coarsening_limit(k):
    """Coarsest-size target: stop contracting at or below this many nodes."""
    return max(2 * k * 20, 60)
