"""Library entry points mirroring the CSR-based C interface: one call to
partition, one to partition with node+edge balancing, one to extract a node
separator. Modes name the preconfigurations.
"""
from __future__ import annotations

import enum
import logging
import random

from .driver import preconfiguration, vcycle
from .graph import BalanceSpec, build_graph, edge_cut
from .separator import kway_separator

__all__ = ["Mode", "kaffpa", "kaffpa_balance_NE", "node_separator"]

log = logging.getLogger("kwaypart")


class Mode(enum.Enum):
    FAST = "fast"
    ECO = "eco"
    STRONG = "strong"
    FASTSOCIAL = "fastsocial"
    ECOSOCIAL = "ecosocial"
    STRONGSOCIAL = "strongsocial"


def _mode_name(mode):
    if isinstance(mode, Mode):
        return mode.value
    return str(mode).lower()


def _partition_csr(n, vwgt, xadj, adjcwgt, adjncy, nparts, imbalance,
                   suppress_output, seed, mode, balance_edges):
    g = build_graph(n, xadj, adjncy, vwgt, adjcwgt)
    if balance_edges:
        g = g.with_edge_balancing_weights()
    spec = BalanceSpec.for_graph(g, nparts, imbalance)
    pre = preconfiguration(_mode_name(mode))
    rng = random.Random(seed)
    p = vcycle(g, spec, pre, rng)
    cut = edge_cut(g, p)
    if not suppress_output:
        log.info("partitioned n=%d into k=%d blocks, cut=%d", n, nparts, cut)
    return cut, p


def kaffpa(n, vwgt, xadj, adjcwgt, adjncy, nparts, imbalance,
           suppress_output=False, seed=0, mode=Mode.ECO):
    """Partition a CSR graph into nparts blocks; returns (edgecut, part)."""
    cut, p = _partition_csr(n, vwgt, xadj, adjcwgt, adjncy, nparts,
                            imbalance, suppress_output, seed, mode, False)
    return cut, [int(b) for b in p.assignment]


def kaffpa_balance_NE(n, vwgt, xadj, adjcwgt, adjncy, nparts, imbalance,
                      suppress_output=False, seed=0, mode=Mode.ECO):
    """Like kaffpa, but balances nodes and edges: node weights become
    c(v) + deg_w(v) and the ceiling adapts accordingly."""
    cut, p = _partition_csr(n, vwgt, xadj, adjcwgt, adjncy, nparts,
                            imbalance, suppress_output, seed, mode, True)
    return cut, [int(b) for b in p.assignment]


def node_separator(n, vwgt, xadj, adjcwgt, adjncy, nparts, imbalance,
                   suppress_output=False, seed=0, mode=Mode.ECO):
    """Partition, then derive a node separator; returns the separator ids."""
    g = build_graph(n, xadj, adjncy, vwgt, adjcwgt)
    spec = BalanceSpec.for_graph(g, nparts, imbalance)
    pre = preconfiguration(_mode_name(mode))
    rng = random.Random(seed)
    p = vcycle(g, spec, pre, rng)
    result = kway_separator(g, p)
    if not suppress_output:
        log.info("separator of size %d for k=%d", len(result.separator),
                 nparts)
    return result.separator_sorted()
