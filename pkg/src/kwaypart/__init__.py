"""Multilevel k-way graph partitioning toolkit.

Balanced k-way partitioning of undirected weighted graphs minimizing edge
cut, with FM, flow-based, multi-try and label-propagation refinement, an
evolutionary optimizer, and node-separator extraction. Hot kernels run in a
compiled extension when available (``kwaypart.kernels.BACKEND``).
"""
from .api import Mode, kaffpa, kaffpa_balance_NE, node_separator
from .graph import (BalanceSpec, Graph, Partition, QualityReport,
                    boundary_nodes, build_graph, check_balance, comm_volume,
                    contract, edge_cut, project, validate)
from .kernels import BACKEND

__all__ = [
    "BACKEND",
    "BalanceSpec",
    "Graph",
    "Mode",
    "Partition",
    "QualityReport",
    "boundary_nodes",
    "build_graph",
    "check_balance",
    "comm_volume",
    "contract",
    "edge_cut",
    "kaffpa",
    "kaffpa_balance_NE",
    "node_separator",
    "project",
    "validate",
]

__version__ = "0.1.0"
