"""CSR graph representation, structural validation, contraction, projection,
and the quality metrics (edge cut, communication volume, balance).

Node weights are nonnegative integers, edge weights strictly positive
integers; all sums are carried in int64.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .errors import InvalidClustering, StructuralError

__all__ = [
    "Graph",
    "Partition",
    "BalanceSpec",
    "QualityReport",
    "ValidationVerdict",
    "build_graph",
    "validate",
    "validate_arrays",
    "contract",
    "project",
    "edge_cut",
    "comm_volume",
    "check_balance",
    "boundary_nodes",
]


def _as_i64(a):
    return np.ascontiguousarray(a, dtype=np.int64)


@dataclass(frozen=True)
class Graph:
    """Undirected graph in CSR form; immutable after construction."""

    n: int
    m: int
    xadj: np.ndarray
    adjncy: np.ndarray
    node_weight: np.ndarray
    edge_weight: np.ndarray

    def neighbors(self, v):
        return self.adjncy[self.xadj[v]:self.xadj[v + 1]]

    def incident_weights(self, v):
        return self.edge_weight[self.xadj[v]:self.xadj[v + 1]]

    def degree(self, v):
        return int(self.xadj[v + 1] - self.xadj[v])

    def weighted_degrees(self):
        """deg_w(v) for every v: total weight of incident edges."""
        return np.add.reduceat(
            np.append(self.edge_weight, 0),
            self.xadj[:-1],
        ) * (np.diff(self.xadj) > 0)

    def total_node_weight(self):
        return int(self.node_weight.sum())

    def effective_node_weights(self, balance_edges):
        if not balance_edges:
            return self.node_weight
        return self.node_weight + self.weighted_degrees()

    def with_edge_balancing_weights(self):
        """Copy of the graph with node weights set to c(v) + deg_w(v)."""
        return Graph(self.n, self.m, self.xadj, self.adjncy,
                     _as_i64(self.effective_node_weights(True)),
                     self.edge_weight)


@dataclass
class Partition:
    """Block assignment for k blocks with cached block weights."""

    k: int
    assignment: np.ndarray
    block_weight: np.ndarray

    @classmethod
    def from_assignment(cls, g, k, assignment):
        assignment = _as_i64(assignment)
        if assignment.shape[0] != g.n:
            raise ValueError("assignment length does not match node count")
        if g.n and (assignment.min() < 0 or assignment.max() >= k):
            raise ValueError("block id out of range")
        bw = np.zeros(k, dtype=np.int64)
        np.add.at(bw, assignment, g.node_weight)
        return cls(k, assignment, bw)

    def copy(self):
        return Partition(self.k, self.assignment.copy(),
                         self.block_weight.copy())

    def move(self, v, target, weight):
        """Move node v of the given weight to ``target``, keeping the cache."""
        self.block_weight[self.assignment[v]] -= weight
        self.block_weight[target] += weight
        self.assignment[v] = target


@dataclass(frozen=True)
class BalanceSpec:
    """Block count, imbalance and the derived per-block weight ceiling.

    Feasibility is decided in integer arithmetic with epsilon expressed in
    thousandths, so there is no float drift at the boundary:
    ``block_weight * 1000 <= (1000 + eps_thousandths) * ceil(total / k)``.
    """

    k: int
    epsilon: float
    l_max: int
    balance_edges: bool = False
    total_weight: int = 0

    @classmethod
    def for_graph(cls, g, k, epsilon, balance_edges=False):
        if k < 1:
            raise ValueError("k must be >= 1")
        if epsilon < 0:
            raise ValueError("epsilon must be >= 0")
        total = int(g.effective_node_weights(balance_edges).sum())
        return cls.for_total(total, k, epsilon, balance_edges)

    @classmethod
    def for_total(cls, total, k, epsilon, balance_edges=False):
        eps_th = int(epsilon * 1000 + 1e-9)
        ceil_avg = -(-total // k) if k else 0
        l_max = (1000 + eps_th) * ceil_avg // 1000
        return cls(k, epsilon, l_max, balance_edges, total)

    def ceil_avg(self):
        return -(-self.total_weight // self.k)


@dataclass(frozen=True)
class QualityReport:
    edge_cut: int
    max_block_weight: int
    is_feasible: bool
    comm_volume_total: int
    comm_volume_max: int


@dataclass
class ValidationVerdict:
    violations: list = field(default_factory=list)

    @property
    def ok(self):
        return not self.violations


def validate_arrays(xadj, adjncy, node_weight=None, edge_weight=None,
                    declared_n=None, declared_m=None, max_violations=50):
    """Collect every structural violation in raw CSR arrays.

    Violations are data, not errors; callers that want an exception use
    ``build_graph``.
    """
    v = ValidationVerdict()
    xadj = _as_i64(xadj)
    adjncy = _as_i64(adjncy)
    n = len(xadj) - 1
    if n < 0 or xadj[0] != 0 or len(adjncy) != xadj[-1]:
        v.violations.append("offset inconsistency: xadj does not index adjncy")
        return v
    if np.any(np.diff(xadj) < 0):
        v.violations.append("offset inconsistency: xadj is not nondecreasing")
        return v
    if node_weight is not None and np.any(_as_i64(node_weight) < 0):
        bad = int(np.nonzero(_as_i64(node_weight) < 0)[0][0])
        v.violations.append(f"negative weight on node {bad}")
    if edge_weight is not None and len(edge_weight) and \
            np.any(_as_i64(edge_weight) <= 0):
        v.violations.append("non-positive edge weight")
    if adjncy.size and (adjncy.min() < 0 or adjncy.max() >= n):
        v.violations.append("neighbor id out of range")
        return v

    ew = _as_i64(edge_weight) if edge_weight is not None else \
        np.ones(len(adjncy), dtype=np.int64)
    arc_w = {}
    for u in range(n):
        seen = set()
        for j in range(xadj[u], xadj[u + 1]):
            if len(v.violations) >= max_violations:
                return v
            w = int(adjncy[j])
            if w == u:
                v.violations.append(f"self-loop at node {u}")
                continue
            if w in seen:
                v.violations.append(f"parallel edge at node {u} (neighbor {w})")
                continue
            seen.add(w)
            arc_w[(u, w)] = int(ew[j])
    for (u, w), wt in arc_w.items():
        if u > w:
            continue
        back = arc_w.get((w, u))
        if back is None:
            v.violations.append(f"missing backward edge for arc ({u},{w})")
        elif back != wt:
            v.violations.append(
                f"forward and backward edges have different weights "
                f"on ({u},{w}): {wt} vs {back}")
    for (u, w) in arc_w:
        if u < w:
            continue
        if (w, u) not in arc_w:
            v.violations.append(f"missing backward edge for arc ({w},{u})")
    if declared_n is not None and declared_n != n:
        v.violations.append(
            f"node count mismatch: declared {declared_n}, found {n}")
    if declared_m is not None and declared_m != len(adjncy) // 2:
        v.violations.append(
            f"edge count mismatch: declared {declared_m} edges, "
            f"found {len(adjncy) // 2}")
    return v


def build_graph(n, xadj, adjncy, node_weights=None, edge_weights=None):
    """Validate the CSR arrays and return a Graph; unit weights by default."""
    xadj = _as_i64(xadj)
    adjncy = _as_i64(adjncy)
    if len(xadj) != n + 1:
        raise StructuralError(f"xadj must have length {n + 1}")
    nw = _as_i64(node_weights) if node_weights is not None else \
        np.ones(n, dtype=np.int64)
    ew = _as_i64(edge_weights) if edge_weights is not None else \
        np.ones(len(adjncy), dtype=np.int64)
    if len(nw) != n:
        raise StructuralError("node weight array has wrong length")
    if len(ew) != len(adjncy):
        raise StructuralError("edge weight array has wrong length")
    verdict = validate_arrays(xadj, adjncy, nw, ew, max_violations=1)
    if not verdict.ok:
        raise StructuralError(verdict.violations[0])
    return Graph(n, len(adjncy) // 2, xadj, adjncy, nw, ew)


def validate(g, declared_n=None, declared_m=None):
    return validate_arrays(g.xadj, g.adjncy, g.node_weight, g.edge_weight,
                           declared_n, declared_m)


def contract(g, cluster_of):
    """Contract each cluster to one node; returns (coarse graph, mapping).

    Coarse node weight sums the members, parallel coarse edges merge by
    summing, intra-cluster edges vanish. Coarse adjacency is emitted in
    ascending neighbor order so output is deterministic.
    """
    cluster_of = _as_i64(cluster_of)
    if len(cluster_of) != g.n:
        raise InvalidClustering("cluster map must cover every node")
    if g.n == 0:
        return Graph(0, 0, np.zeros(1, np.int64), np.zeros(0, np.int64),
                     np.zeros(0, np.int64), np.zeros(0, np.int64)), cluster_of
    nc = int(cluster_of.max()) + 1
    if cluster_of.min() < 0 or np.bincount(cluster_of, minlength=nc).min() == 0:
        raise InvalidClustering("cluster ids must be contiguous from 0")
    cxadj, cadjncy, cadjwgt, cvwgt = kernels.contract_csr(
        g.xadj, g.adjncy, g.edge_weight, g.node_weight, cluster_of, nc)
    coarse = Graph(nc, len(cadjncy) // 2, cxadj, cadjncy, cvwgt, cadjwgt)
    return coarse, cluster_of


def project(p_coarse, mapping):
    """Pull a coarse partition back through a contraction mapping.

    Block weights carry over unchanged because each coarse node weight is the
    sum of its members.
    """
    return Partition(p_coarse.k,
                     p_coarse.assignment[_as_i64(mapping)],
                     p_coarse.block_weight.copy())


def edge_cut(g, p):
    return kernels.edge_cut(g.xadj, g.adjncy, g.edge_weight, p.assignment)


def comm_volume(g, p):
    """(total, max per block) of distinct-foreign-block counts per node.

    The underlying definition is a convention: D(v) counts distinct foreign
    blocks among v's neighbors with unit contribution per node.
    """
    total, per_block = kernels.comm_volume(g.xadj, g.adjncy, p.assignment, p.k)
    return total, int(per_block.max()) if p.k else 0


def check_balance(g, p, spec):
    w = g.effective_node_weights(spec.balance_edges)
    bw = np.zeros(spec.k, dtype=np.int64)
    np.add.at(bw, p.assignment, w)
    max_bw = int(bw.max()) if spec.k else 0
    total, vol_max = comm_volume(g, p)
    return QualityReport(
        edge_cut=edge_cut(g, p),
        max_block_weight=max_bw,
        is_feasible=max_bw <= spec.l_max,
        comm_volume_total=total,
        comm_volume_max=vol_max,
    )


def boundary_nodes(g, p):
    """Ids of nodes with at least one neighbor in a foreign block (sorted)."""
    mask = kernels.boundary_mask(g.xadj, g.adjncy, p.assignment)
    return np.nonzero(mask)[0]
