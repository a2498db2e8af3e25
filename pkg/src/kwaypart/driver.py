"""Multilevel orchestration: coarsen, partition the coarsest graph, uncoarsen
with refinement. Provides plain V-cycles, time-limited iterated cycles, and
F-cycles with per-level sub-cycles, plus the six named preconfigurations.
"""
from __future__ import annotations

import random
import time
from dataclasses import dataclass, replace

import numpy as np

from .coarsening import (coarsening_limit, heavy_edge_matching,
                         label_propagation_clustering)
from .graph import Partition, contract, edge_cut, project
from .initial import best_of
from .refine import (fm_refine, label_prop_refine, multi_try_fm,
                     refine_all_pairs)

__all__ = ["Preconfiguration", "PRECONFIGS", "preconfiguration",
           "vcycle", "iterated_cycles", "fcycle"]


@dataclass(frozen=True)
class Preconfiguration:
    name: str
    coarsening: str            # "matching" or "lp"
    attempts: int
    fm_adaptive: bool
    zero_gain_plateau: bool
    corridor_iterations: int   # 0 disables flow refinement
    multi_try_rounds: int      # 0 disables multi-try FM
    lp_refine_iterations: int  # 0 disables label-propagation refinement
    cycle: str = "v"           # "v" or "f"
    fcycle_depth: int = 0
    restarts: int = 1          # independent multilevel runs, best kept


PRECONFIGS = {
    "fast": Preconfiguration("fast", "matching", 4, False, False, 0, 0, 0),
    "eco": Preconfiguration("eco", "matching", 8, True, False, 3, 0, 0),
    "strong": Preconfiguration("strong", "matching", 16, True, True, 7, 3, 0,
                               cycle="f", fcycle_depth=2, restarts=4),
    "fastsocial": Preconfiguration("fastsocial", "lp", 4, False, False,
                                   0, 0, 3),
    "ecosocial": Preconfiguration("ecosocial", "lp", 8, True, False,
                                  3, 0, 3),
    "strongsocial": Preconfiguration("strongsocial", "lp", 16, True, True,
                                     7, 3, 3, cycle="f", fcycle_depth=2,
                                     restarts=4),
}


def preconfiguration(name):
    try:
        return PRECONFIGS[name]
    except KeyError:
        raise ValueError(
            f"unknown preconfiguration {name!r}; expected one of "
            f"{sorted(PRECONFIGS)}") from None


def _coarsen(g, spec, pre, rng, class_of):
    """Contract until the node count target or a shrink stall.

    ``class_of`` restricts merges to same-class nodes so that forbidden
    (cut) edges are never contracted; it is projected along each level.
    """
    limit = coarsening_limit(spec.k)
    graphs = [g]
    mappings = []
    classes = [class_of]
    while graphs[-1].n > limit:
        cur = graphs[-1]
        total = cur.total_node_weight()
        max_nw = int(cur.node_weight.max()) if cur.n else 1
        if pre.coarsening == "lp":
            bound = max(-(-total // (spec.k * 4)), max_nw)
            clustering = label_propagation_clustering(
                cur, rng, upper_bound=bound, iterations=10,
                class_of=classes[-1])
        else:
            bound = max(total // limit, 2 * max_nw)
            clustering = heavy_edge_matching(cur, rng, bound,
                                             class_of=classes[-1])
        nc = clustering.num_clusters
        if nc >= cur.n or nc > 0.9 * cur.n:
            break
        coarse, mapping = contract(cur, clustering.cluster_of)
        graphs.append(coarse)
        mappings.append(mapping)
        if classes[-1] is None:
            classes.append(None)
        else:
            ccls = np.zeros(nc, dtype=np.int64)
            ccls[mapping] = classes[-1]
            classes.append(ccls)
    return graphs, mappings, classes


def _refine_level(g_l, p, spec, pre, rng):
    if pre.lp_refine_iterations:
        p = label_prop_refine(g_l, p, spec, pre.lp_refine_iterations, rng)
    p = fm_refine(g_l, p, spec, rng=rng, adaptive=pre.fm_adaptive,
                  zero_gain_plateau=pre.zero_gain_plateau)
    if pre.multi_try_rounds:
        p = multi_try_fm(g_l, p, spec, pre.multi_try_rounds, rng)
    if pre.corridor_iterations and spec.k > 1:
        p = refine_all_pairs(g_l, p, spec, pre.corridor_iterations, rng=rng)
    return p


def _project_assignment(assign, mappings):
    """Block ids of the input partition at every hierarchy level."""
    per_level = [assign]
    for mapping in mappings:
        nc = int(mapping.max()) + 1 if len(mapping) else 0
        coarse = np.zeros(nc, dtype=np.int64)
        coarse[mapping] = per_level[-1]
        per_level.append(coarse)
    return per_level


def vcycle(g, spec, pre, rng, input_partition=None, extra_classes=None,
           _depth=None):
    """One multilevel cycle. With an input partition its cut edges are kept
    uncontracted and it seeds the coarsest level, so the result is never
    worse. ``extra_classes`` further restricts contraction (combine operator).
    """
    k = spec.k
    if k == 1 or g.n == 0:
        return Partition.from_assignment(g, max(k, 1),
                                         np.zeros(g.n, dtype=np.int64))
    class_of = None
    if input_partition is not None:
        class_of = input_partition.assignment.astype(np.int64)
    if extra_classes is not None:
        merged = (class_of if class_of is not None
                  else np.zeros(g.n, dtype=np.int64))
        _, class_of = np.unique(
            np.stack([merged, np.asarray(extra_classes, dtype=np.int64)]),
            axis=1, return_inverse=True)
        class_of = class_of.astype(np.int64)

    graphs, mappings, _ = _coarsen(g, spec, pre, rng, class_of)
    coarsest = graphs[-1]
    if input_partition is not None:
        levels = _project_assignment(input_partition.assignment, mappings)
        p = Partition.from_assignment(coarsest, k, levels[-1])
    else:
        p = best_of(coarsest, spec, pre.attempts, rng)

    depth = pre.fcycle_depth if _depth is None and pre.cycle == "f" else \
        (_depth or 0)
    p = _refine_level(coarsest, p, spec, pre, rng)
    for level in range(len(mappings) - 1, -1, -1):
        p = project(p, mappings[level])
        g_l = graphs[level]
        p = _refine_level(g_l, p, spec, pre, rng)
        if depth > 0 and g_l.n > coarsening_limit(k):
            sub = vcycle(g_l, spec, pre, rng, input_partition=p,
                         _depth=depth - 1)
            if edge_cut(g_l, sub) < edge_cut(g_l, p):
                p = sub
    return p


def fcycle(g, spec, pre, rng, input_partition=None):
    """F-shaped schedule: a V-cycle with one recursive sub-cycle per level."""
    fpre = pre if pre.cycle == "f" else replace(pre, cycle="f",
                                                fcycle_depth=2)
    return vcycle(g, spec, fpre, rng, input_partition=input_partition)


def iterated_cycles(g, spec, pre, rng, time_limit_seconds=0.0,
                    input_partition=None):
    """Repeat the multilevel method until the time limit, feeding the best
    partition forward; time limit 0 means exactly one cycle."""
    run = fcycle if pre.cycle == "f" else vcycle
    best = run(g, spec, pre, rng, input_partition=input_partition)
    best_cut = edge_cut(g, best)
    if input_partition is None:
        # a "partitioner call" of a restarting preconfiguration keeps the
        # best of several independent multilevel runs
        for _ in range(pre.restarts - 1):
            p = run(g, spec, pre, rng)
            c = edge_cut(g, p)
            if c < best_cut:
                best, best_cut = p, c
    if time_limit_seconds <= 0:
        return best
    deadline = time.monotonic() + time_limit_seconds
    while time.monotonic() < deadline:
        p = run(g, spec, pre, rng, input_partition=best)
        c = edge_cut(g, p)
        if c < best_cut:
            best, best_cut = p, c
    return best


def seeded_rng(seed):
    return random.Random(seed)
