"""Flow corridors around a block-pair boundary and an exact max-flow
min-cut solver (Dinic). Every source-sink cut of a corridor corresponds to a
feasible reassignment of the pair, so applying a minimum cut never breaks the
balance constraint.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .errors import EmptyBoundary

__all__ = ["FlowCorridor", "build_corridor", "max_flow_min_cut",
           "min_cut_candidates"]

SOURCE = 0
SINK = 1


@dataclass
class FlowCorridor:
    """Flow network over a node subset around a pair boundary.

    ``nodes[i]`` is the original id of local node ``i + 2``; locals 0 and 1
    are the source (rest of block a) and sink (rest of block b). ``edges``
    hold undirected capacities. ``outside_cut`` is the weight of pair cut
    edges with both endpoints outside the corridor; it is a constant offset
    on top of the flow value.
    """

    nodes: list
    edges: list = field(default_factory=list)
    block_a: int = 0
    block_b: int = 1
    outside_cut: int = 0
    region_a: set = field(default_factory=set)
    region_b: set = field(default_factory=set)


def _pair_boundary(g, p, a, b):
    assignment = p.assignment
    left, right = [], []
    for v in range(g.n):
        pv = assignment[v]
        if pv != a and pv != b:
            continue
        for u in g.neighbors(v):
            pu = assignment[u]
            if (pv == a and pu == b) or (pv == b and pu == a):
                (left if pv == a else right).append(v)
                break
    return left, right


def _region_budget(scale, guaranteed, ceil_avg, own_weight):
    """Per-side absorption budget for a corridor grown at ``scale``.

    Up to scale 1 the budget stays within ``guaranteed`` (l_max minus the
    other block's weight), where every corridor cut is feasible by
    construction. Beyond scale 1 the corridor keeps growing proportionally to
    the average block weight; cuts of such corridors are only applied after
    an explicit feasibility check. Three quarters of the block always stay
    outside so the source and sink keep an anchor.
    """
    budget = int(min(scale, 1.0) * guaranteed
                 + max(0.0, scale - 1.0) * ceil_avg)
    if scale > 1.0:
        budget = min(budget, max(guaranteed, (3 * own_weight) // 4))
    return budget


def build_corridor(g, p, a, b, spec, scale=1.0):
    """Grow BFS regions from the pair boundary into both blocks.

    Absorption into the region of block a is capped by
    ``scale * (l_max - weight(b))`` while scale <= 1; that bound makes even
    the all-to-one-side cut feasible, so every corridor cut respects l_max.
    Larger scales grow past the guarantee (callers must check feasibility
    before applying a cut).
    """
    boundary_a, boundary_b = _pair_boundary(g, p, a, b)
    if not boundary_a and not boundary_b:
        raise EmptyBoundary(f"blocks {a} and {b} share no cut edge")
    assignment = p.assignment
    w_a = int(p.block_weight[a])
    w_b = int(p.block_weight[b])
    ceil_avg = spec.ceil_avg()
    budget_a = _region_budget(scale, max(0, spec.l_max - w_b), ceil_avg, w_a)
    budget_b = _region_budget(scale, max(0, spec.l_max - w_a), ceil_avg, w_b)

    region = {a: set(), b: set()}
    weight = {a: 0, b: 0}
    budget = {a: budget_a, b: budget_b}
    queue = {a: deque(boundary_a), b: deque(boundary_b)}
    seen = {a: set(boundary_a), b: set(boundary_b)}
    while queue[a] or queue[b]:
        if not queue[b] or (queue[a] and weight[a] <= weight[b]):
            side = a
        else:
            side = b
        v = queue[side].popleft()
        cv = int(g.node_weight[v])
        if weight[side] + cv > budget[side]:
            continue
        region[side].add(v)
        weight[side] += cv
        for u in g.neighbors(v):
            u = int(u)
            if assignment[u] == side and u not in seen[side]:
                seen[side].add(u)
                queue[side].append(u)

    corridor_nodes = sorted(region[a] | region[b])
    idx = {v: i + 2 for i, v in enumerate(corridor_nodes)}
    cor = FlowCorridor(nodes=corridor_nodes, block_a=a, block_b=b,
                       region_a=region[a], region_b=region[b])
    source_cap = {}
    sink_cap = {}
    for v in corridor_nodes:
        for j in range(g.xadj[v], g.xadj[v + 1]):
            u = int(g.adjncy[j])
            w = int(g.edge_weight[j])
            if u in idx:
                if v < u:
                    cor.edges.append((idx[v], idx[u], w))
            elif assignment[u] == a:
                source_cap[idx[v]] = source_cap.get(idx[v], 0) + w
            elif assignment[u] == b:
                sink_cap[idx[v]] = sink_cap.get(idx[v], 0) + w
    for x, w in sorted(source_cap.items()):
        cor.edges.append((SOURCE, x, w))
    for x, w in sorted(sink_cap.items()):
        cor.edges.append((x, SINK, w))

    outside = 0
    for v in range(g.n):
        if assignment[v] != a or v in idx:
            continue
        for j in range(g.xadj[v], g.xadj[v + 1]):
            u = int(g.adjncy[j])
            if assignment[u] == b and u not in idx:
                outside += int(g.edge_weight[j])
    cor.outside_cut = outside
    return cor


class _Dinic:
    def __init__(self, n):
        self.n = n
        self.head = [[] for _ in range(n)]
        self.to = []
        self.cap = []

    def add_undirected(self, u, v, cap):
        # Both residual arcs start at full capacity for an undirected edge.
        self.head[u].append(len(self.to))
        self.to.append(v)
        self.cap.append(cap)
        self.head[v].append(len(self.to))
        self.to.append(u)
        self.cap.append(cap)

    def _bfs(self, s, t):
        level = [-1] * self.n
        level[s] = 0
        q = deque([s])
        while q:
            u = q.popleft()
            for e in self.head[u]:
                v = self.to[e]
                if self.cap[e] > 0 and level[v] < 0:
                    level[v] = level[u] + 1
                    q.append(v)
        self.level = level
        return level[t] >= 0

    def _dfs(self, u, t, pushed):
        if u == t:
            return pushed
        while self.iter[u] < len(self.head[u]):
            e = self.head[u][self.iter[u]]
            v = self.to[e]
            if self.cap[e] > 0 and self.level[v] == self.level[u] + 1:
                d = self._dfs(v, t, min(pushed, self.cap[e]))
                if d > 0:
                    self.cap[e] -= d
                    self.cap[e ^ 1] += d
                    return d
            self.iter[u] += 1
        return 0

    def max_flow(self, s, t):
        flow = 0
        while self._bfs(s, t):
            self.iter = [0] * self.n
            while True:
                f = self._dfs(s, t, 1 << 62)
                if f == 0:
                    break
                flow += f
        return flow

    def min_cut_side(self, s):
        side = [False] * self.n
        side[s] = True
        q = deque([s])
        while q:
            u = q.popleft()
            for e in self.head[u]:
                v = self.to[e]
                if self.cap[e] > 0 and not side[v]:
                    side[v] = True
                    q.append(v)
        return side


def max_flow_min_cut(corridor):
    """Exact max flow of the corridor network and the source-side node set.

    Returns (flow value, set of original node ids on the source side). The
    flow value equals the weight of the returned cut (max-flow/min-cut).
    """
    n = len(corridor.nodes) + 2
    dinic = _Dinic(n)
    for u, v, cap in corridor.edges:
        dinic.add_undirected(u, v, cap)
    flow = dinic.max_flow(SOURCE, SINK)
    side = dinic.min_cut_side(SOURCE)
    source_side = {corridor.nodes[i - 2] for i in range(2, n) if side[i]}
    return flow, source_side


def _residual_condensation(dinic, n):
    """SCCs of the residual graph and the condensation adjacency.

    Returns (comp_of, component count, condensation arc list). Iterative
    Tarjan so deep corridors cannot overflow the Python stack.
    """
    adj = [[] for _ in range(n)]
    for u in range(n):
        for e in dinic.head[u]:
            if dinic.cap[e] > 0:
                adj[u].append(dinic.to[e])
    index = [-1] * n
    low = [0] * n
    on_stack = [False] * n
    comp_of = [-1] * n
    stack = []
    counter = 0
    comps = 0
    for root in range(n):
        if index[root] != -1:
            continue
        work = [(root, 0)]
        while work:
            u, pi = work[-1]
            if pi == 0:
                index[u] = low[u] = counter
                counter += 1
                stack.append(u)
                on_stack[u] = True
            descended = False
            for j in range(pi, len(adj[u])):
                v = adj[u][j]
                if index[v] == -1:
                    work[-1] = (u, j + 1)
                    work.append((v, 0))
                    descended = True
                    break
                if on_stack[v]:
                    low[u] = min(low[u], index[v])
            if descended:
                continue
            if low[u] == index[u]:
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp_of[w] = comps
                    if w == u:
                        break
                comps += 1
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[u])
    arcs = set()
    for u in range(n):
        for v in adj[u]:
            if comp_of[u] != comp_of[v]:
                arcs.add((comp_of[u], comp_of[v]))
    return comp_of, comps, sorted(arcs)


def min_cut_candidates(corridor, rng=None, tries=8, limit=64):
    """Max flow plus a spread of distinct minimum cuts of the corridor.

    After a maximum flow, the source sides of minimum cuts are exactly the
    residual-closed node sets containing the source and excluding the sink;
    suffixes of topological orders of the residual SCC condensation enumerate
    such sets. With an rng, several random topological orders are sampled so
    callers can pick the cut with the best balance. Returns
    (flow, [source-side sets of original node ids]).
    """
    n = len(corridor.nodes) + 2
    dinic = _Dinic(n)
    for u, v, cap in corridor.edges:
        dinic.add_undirected(u, v, cap)
    flow = dinic.max_flow(SOURCE, SINK)
    side = dinic.min_cut_side(SOURCE)
    canonical = frozenset(corridor.nodes[i - 2] for i in range(2, n)
                          if side[i])
    seen = {canonical}
    if rng is None:
        return flow, [set(canonical)]

    comp_of, comps, arcs = _residual_condensation(dinic, n)
    cs, ct = comp_of[SOURCE], comp_of[SINK]
    if cs == ct:
        return flow, [set(canonical)]
    members = [[] for _ in range(comps)]
    for i in range(2, n):
        members[comp_of[i]].append(corridor.nodes[i - 2])
    succ = [[] for _ in range(comps)]
    indeg0 = [0] * comps
    for u, v in arcs:
        succ[u].append(v)
        indeg0[v] += 1
    for _ in range(tries):
        if len(seen) >= limit:
            break
        indeg = indeg0[:]
        ready = [c for c in range(comps) if indeg[c] == 0]
        order = []
        while ready:
            c = ready.pop(rng.randrange(len(ready)))
            order.append(c)
            for d in succ[c]:
                indeg[d] -= 1
                if indeg[d] == 0:
                    ready.append(d)
        p_s = order.index(cs)
        p_t = order.index(ct)
        acc = set()
        for i in range(len(order) - 1, p_t, -1):
            acc.update(members[order[i]])
            if i <= p_s:
                seen.add(frozenset(acc))
    return flow, [set(c) for c in seen]
