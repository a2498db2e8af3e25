"""Local improvement: FM rounds with rollback, multi-try localized FM,
flow-based pair refinement, label-propagation refinement, and explicit
rebalancing.

All refiners leave the input partition untouched and return a new one; every
refiner except ``enforce_balance`` never worsens the cut of a feasible input
and preserves feasibility.
"""
from __future__ import annotations

import heapq
import math
import random
from collections import deque
from dataclasses import dataclass, field

import numpy as np

from .errors import WeightedGraphUnsupported
from .flow import build_corridor, min_cut_candidates
from .graph import boundary_nodes, edge_cut

__all__ = [
    "MoveLog",
    "fm_refine",
    "multi_try_fm",
    "flow_refine_pair",
    "refine_all_pairs",
    "label_prop_refine",
    "enforce_balance",
]


@dataclass
class MoveLog:
    """Sequence of (node, from, to, cut_after, feasible_after) entries."""

    start_cut: int
    entries: list = field(default_factory=list)

    def replay(self, g, p):
        """Apply the log to a copy of ``p``, checking cut_after at each step."""
        q = p.copy()
        for v, frm, to, cut_after, _ in self.entries:
            assert q.assignment[v] == frm
            q.move(v, to, int(g.node_weight[v]))
            assert edge_cut(g, q) == cut_after
        return q


def _connectivity(g, p, v):
    """Total incident edge weight per adjacent block of node v."""
    conn = {}
    for j in range(g.xadj[v], g.xadj[v + 1]):
        b = int(p.assignment[g.adjncy[j]])
        conn[b] = conn.get(b, 0) + int(g.edge_weight[j])
    return conn


def _fm_pass(g, p, spec, seeds, rng, stop_limit, zero_gain_plateau,
             touched=None, start_cut=0):
    """One FM pass seeded with ``seeds``; mutates p, rolls back to the best
    feasible prefix. Returns (cut delta <= 0, MoveLog of the kept prefix).

    A move may overload the target block by up to one node weight; such
    states are recorded as infeasible and can never be the kept prefix, but
    passing through them lets the search realize node swaps under tight
    balance (the pure feasible-moves-only variant stalls when every block
    sits exactly at l_max).
    """
    nw = g.node_weight
    slack = int(nw.max()) if g.n else 0
    heap = []
    cur_gain = {}
    cur_target = {}
    moved = set()

    def push(v):
        own = int(p.assignment[v])
        conn = _connectivity(g, p, v)
        best_t, best_w, ties = -1, None, 0
        for b, w in conn.items():
            if b == own:
                continue
            if best_w is None or w > best_w:
                best_t, best_w, ties = b, w, 1
            elif w == best_w:
                ties += 1
                if rng.random() < 1.0 / ties:
                    best_t = b
        if best_w is None:
            cur_gain.pop(v, None)
            return
        gain = best_w - conn.get(own, 0)
        cur_gain[v] = gain
        cur_target[v] = best_t
        heapq.heappush(heap, (-gain, rng.random(), v))

    for s in seeds:
        if s not in moved:
            push(int(s))

    log = MoveLog(start_cut=start_cut)
    delta = 0
    best_delta = 0
    best_len = 0
    since_best = 0
    while heap:
        ng, _, v = heapq.heappop(heap)
        if v in moved or cur_gain.get(v) != -ng:
            continue
        gain = cur_gain[v]
        target = cur_target[v]
        frm = int(p.assignment[v])
        if int(p.block_weight[target]) + int(nw[v]) > spec.l_max + slack:
            del cur_gain[v]
            continue
        restoring = int(p.block_weight[frm]) > spec.l_max
        if gain == 0 and not restoring and \
                not (zero_gain_plateau and rng.random() < 0.5):
            del cur_gain[v]
            continue
        p.move(v, target, int(nw[v]))
        moved.add(v)
        del cur_gain[v]
        if touched is not None:
            touched[v] = True
        delta -= gain
        feasible = int(p.block_weight.max()) <= spec.l_max
        log.entries.append((v, frm, target, start_cut + delta, feasible))
        if feasible and delta < best_delta:
            best_delta, best_len, since_best = delta, len(log.entries), 0
        else:
            since_best += 1
        for u in g.neighbors(v):
            u = int(u)
            if u not in moved:
                push(u)
        if since_best > stop_limit:
            break
    for v, frm, _, _, _ in reversed(log.entries[best_len:]):
        p.move(v, frm, int(nw[v]))
    log.entries = log.entries[:best_len]
    return best_delta, log


def fm_refine(g, p, spec, rng=None, stop_alpha=15, adaptive=False,
              zero_gain_plateau=False):
    """Round-based FM: all boundary nodes eligible, a node moves at most once
    per round, rollback to the best feasible cut; repeats until no round
    improves."""
    rng = rng or random.Random(0)
    p = p.copy()
    cut = edge_cut(g, p)
    round_idx = 0
    while True:
        seeds = list(boundary_nodes(g, p))
        if not seeds:
            break
        rng.shuffle(seeds)
        limit = stop_alpha if not adaptive else \
            int(100 + 20 * math.sqrt(round_idx + 1))
        delta, _ = _fm_pass(g, p, spec, seeds, rng, limit,
                            zero_gain_plateau, start_cut=cut)
        cut += delta
        round_idx += 1
        if delta == 0:
            break
    return p


def multi_try_fm(g, p, spec, rounds, rng, stop_limit=15):
    """Localized FM: each search starts from a single boundary node."""
    p = p.copy()
    cut = edge_cut(g, p)
    for _ in range(rounds):
        seeds = list(boundary_nodes(g, p))
        rng.shuffle(seeds)
        touched = np.zeros(g.n, dtype=bool)
        improved = False
        for s in seeds:
            s = int(s)
            if touched[s]:
                continue
            delta, _ = _fm_pass(g, p, spec, [s], rng, stop_limit,
                                False, touched=touched, start_cut=cut)
            cut += delta
            if delta < 0:
                improved = True
        if not improved:
            break
    return p


def _pair_cut(g, p, a, b):
    total = 0
    for v in range(g.n):
        if p.assignment[v] != a:
            continue
        for j in range(g.xadj[v], g.xadj[v + 1]):
            if p.assignment[g.adjncy[j]] == b:
                total += int(g.edge_weight[j])
    return total


def _flow_refine_pair_inplace(g, p, a, b, spec, max_iterations, rng=None):
    """Iteratively corridor-refine one pair; picks the most balanced feasible
    minimum cut among the enumerated candidates. Mutates p."""
    rng = rng or random.Random(0x5EED)
    improved_any = False
    pair_cut = _pair_cut(g, p, a, b)
    for i in range(max_iterations):
        if pair_cut == 0:
            break
        scale = 0.5 * 1.5 ** i
        corridor = build_corridor(g, p, a, b, spec, scale)
        flow, candidates = min_cut_candidates(corridor, rng)
        new_cut = flow + corridor.outside_cut
        if new_cut >= pair_cut:
            continue
        weights = {v: int(g.node_weight[v]) for v in corridor.nodes}
        corridor_total = sum(weights.values())
        in_a = sum(w for v, w in weights.items() if p.assignment[v] == a)
        rest_a = int(p.block_weight[a]) - in_a
        rest_b = int(p.block_weight[b]) - (corridor_total - in_a)
        best_side, best_load = None, None
        for side in candidates:
            w_side = sum(weights[v] for v in side)
            new_a = rest_a + w_side
            new_b = rest_b + corridor_total - w_side
            if new_a > spec.l_max or new_b > spec.l_max:
                continue
            load = max(new_a, new_b)
            if best_load is None or load < best_load:
                best_side, best_load = side, load
        if best_side is None:
            continue
        for v in corridor.nodes:
            want = a if v in best_side else b
            if p.assignment[v] != want:
                p.move(v, want, int(g.node_weight[v]))
        pair_cut = new_cut
        improved_any = True
    return improved_any


def flow_refine_pair(g, p, a, b, spec, max_iterations=3, rng=None):
    """Min-cut improvement of one block pair; ties keep the original."""
    p = p.copy()
    if max_iterations > 0:
        _flow_refine_pair_inplace(g, p, a, b, spec, max_iterations, rng)
    return p


def _boundary_pairs(g, p):
    pairs = set()
    for v in range(g.n):
        pv = int(p.assignment[v])
        for u in g.neighbors(v):
            pu = int(p.assignment[u])
            if pu != pv:
                pairs.add((min(pv, pu), max(pv, pu)))
    return sorted(pairs)


def refine_all_pairs(g, p, spec, corridor_iterations=3, rng=None):
    """Flow refinement over all boundary-sharing pairs; a pair is reactivated
    whenever an adjacent pair changed."""
    p = p.copy()
    active = deque(_boundary_pairs(g, p))
    queued = set(active)
    while active:
        a, b = active.popleft()
        queued.discard((a, b))
        if _pair_cut(g, p, a, b) == 0:
            continue
        if _flow_refine_pair_inplace(g, p, a, b, spec, corridor_iterations,
                                     rng):
            for pair in _boundary_pairs(g, p):
                if (a in pair or b in pair) and pair not in queued:
                    active.append(pair)
                    queued.add(pair)
    return p


def label_prop_refine(g, p, spec, iterations, rng):
    """Label-propagation sweeps over blocks: a node may adopt a neighboring
    block only if the move keeps the target within l_max and does not
    increase the cut (ties allowed only when they strictly improve balance)."""
    p = p.copy()
    order = list(range(g.n))
    for _ in range(iterations):
        rng.shuffle(order)
        moves = 0
        for v in order:
            own = int(p.assignment[v])
            conn = _connectivity(g, p, v)
            w_own = conn.pop(own, 0)
            cv = int(g.node_weight[v])
            best, best_w = own, w_own
            for b, w in sorted(conn.items()):
                if int(p.block_weight[b]) + cv > spec.l_max:
                    continue
                if w > best_w or (w == best_w and
                                  int(p.block_weight[b]) + cv <
                                  int(p.block_weight[own])):
                    best, best_w = b, w
            if best != own:
                p.move(v, best, cv)
                moves += 1
        if moves == 0:
            break
    return p


def enforce_balance(g, p, spec):
    """Force feasibility on uniform-node-weight graphs by ejecting nodes from
    overloaded blocks with minimal cut damage; the cut may increase."""
    if g.n and np.any(g.node_weight != g.node_weight[0]):
        raise WeightedGraphUnsupported(
            "balance enforcement supports only graphs without vertex weights")
    p = p.copy()
    while int(p.block_weight.max()) > spec.l_max:
        h = int(p.block_weight.argmax())
        light = int(p.block_weight.argmin())
        best_v, best_damage = -1, None
        for v in range(g.n):
            if p.assignment[v] != h:
                continue
            conn = _connectivity(g, p, v)
            damage = conn.get(h, 0) - conn.get(light, 0)
            if best_damage is None or damage < best_damage:
                best_v, best_damage = v, damage
        p.move(best_v, light, int(g.node_weight[best_v]))
    return p
