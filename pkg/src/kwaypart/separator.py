"""Node separators from partitions: minimum vertex cover over the cut edges
of a block pair (via maximum bipartite matching and alternating reachability),
extended to k blocks pair by pair.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "BoundaryBipartiteGraph",
    "SeparatorResult",
    "min_vertex_cover_bipartite",
    "separator_from_bipartition",
    "kway_separator",
]


@dataclass
class BoundaryBipartiteGraph:
    """Cut edges of a block pair as a bipartite graph on boundary nodes."""

    left: list
    right: list
    edges: list  # (left node, right node) pairs


@dataclass
class SeparatorResult:
    separator: set
    blocks: np.ndarray  # residual block per node; separator nodes keep theirs
    matching_size: int = 0

    def separator_sorted(self):
        return sorted(self.separator)


def _max_matching(b: BoundaryBipartiteGraph):
    """Maximum matching via augmenting paths, deterministic under sorted
    node order. Returns (match_left, match_right) dicts."""
    adj = {u: [] for u in sorted(set(b.left))}
    for u, v in sorted(b.edges):
        adj[u].append(v)
    match_left, match_right = {}, {}

    def try_augment(u, visited):
        for v in adj[u]:
            if v in visited:
                continue
            visited.add(v)
            if v not in match_right or try_augment(match_right[v], visited):
                match_left[u] = v
                match_right[v] = u
                return True
        return False

    for u in adj:
        if u not in match_left:
            try_augment(u, set())
    return match_left, match_right


def min_vertex_cover_bipartite(b: BoundaryBipartiteGraph):
    """Minimum vertex cover of the cut edges; |cover| = |maximum matching|.

    Standard alternating-reachability construction: from the unmatched left
    nodes, alternate non-matching edges rightward and matching edges leftward;
    the cover is (left not reached) union (right reached).
    """
    match_left, match_right = _max_matching(b)
    adj = {}
    for u, v in b.edges:
        adj.setdefault(u, []).append(v)
    left_all = set(b.left)
    reached_l = {u for u in left_all if u not in match_left}
    reached_r = set()
    stack = sorted(reached_l)
    while stack:
        u = stack.pop()
        for v in adj.get(u, []):
            if v in reached_r or match_left.get(u) == v:
                continue
            reached_r.add(v)
            w = match_right.get(v)
            if w is not None and w not in reached_l:
                reached_l.add(w)
                stack.append(w)
    cover = (left_all - reached_l) | reached_r
    assert len(cover) == len(match_left)
    return cover


def _pair_cut_edges(g, assignment, a, b, excluded):
    edges = []
    for v in range(g.n):
        if assignment[v] != a or v in excluded:
            continue
        for u in g.neighbors(v):
            u = int(u)
            if assignment[u] == b and u not in excluded:
                edges.append((v, u))
    return edges


def _bipartite_from_edges(edges):
    left = sorted({u for u, _ in edges})
    right = sorted({v for _, v in edges})
    return BoundaryBipartiteGraph(left, right, edges)


def separator_from_bipartition(g, p):
    """2-way separator: minimum vertex cover of the boundary bipartite graph.

    Removing the cover eliminates every cut edge, so what remains of the two
    blocks is disconnected.
    """
    if p.k != 2:
        raise ValueError("separator_from_bipartition requires k = 2")
    return _pairwise_separator(g, p.assignment, 0, 1, set())


def _pairwise_separator(g, assignment, a, b, excluded):
    edges = _pair_cut_edges(g, assignment, a, b, excluded)
    if not edges:
        return SeparatorResult(set(), np.array(assignment, dtype=np.int64))
    bip = _bipartite_from_edges(edges)
    cover = min_vertex_cover_bipartite(bip)
    return SeparatorResult(cover, np.array(assignment, dtype=np.int64),
                           matching_size=len(cover))


def kway_separator(g, p):
    """Union of pairwise vertex-cover separators over all boundary-sharing
    block pairs, each computed on the residual graph with already-selected
    separator nodes excluded."""
    separator = set()
    assignment = p.assignment
    pairs = sorted({(min(int(assignment[v]), int(assignment[u])),
                     max(int(assignment[v]), int(assignment[u])))
                    for v in range(g.n)
                    for u in g.neighbors(v)
                    if assignment[v] != assignment[u]})
    for a, b in pairs:
        result = _pairwise_separator(g, assignment, a, b, separator)
        separator |= result.separator
    return SeparatorResult(separator, np.array(assignment, dtype=np.int64))
