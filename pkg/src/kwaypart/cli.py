"""The five command-line programs: kaffpa, kaffpae,
partition_to_vertex_separator, label_propagation, graphchecker.
"""
from __future__ import annotations

import argparse
import logging
import os
import random
import sys
import time

import numpy as np

from . import graphio
from .coarsening import label_propagation_clustering
from .driver import iterated_cycles, preconfiguration
from .errors import KwaypartError, UnsupportedFeature, \
    WeightedGraphUnsupported
from .evolve import EvolveOptions, evolve
from .graph import BalanceSpec, Partition, check_balance, edge_cut
from .refine import enforce_balance, fm_refine
from .separator import kway_separator

log = logging.getLogger("kwaypart")


def _configure_logging():
    level = os.environ.get("KHIP_LOG", "warning").upper()
    logging.basicConfig(level=getattr(logging, level, logging.WARNING),
                        format="%(levelname)s %(message)s")


def _metrics_line(g, p, spec, elapsed):
    report = check_balance(g, p, spec)
    balance = report.max_block_weight / spec.ceil_avg()
    return f"cut={report.edge_cut} balance={balance:.4f} time={elapsed:.3f}"


def _load_graph(path):
    with open(path) as fh:
        return graphio.parse_graph(fh)


def _common_parser(prog, description):
    parser = argparse.ArgumentParser(prog=prog, description=description,
                                     allow_abbrev=False)
    parser.add_argument("file", help="path to the graph file to partition")
    parser.add_argument("--k", type=int, required=True,
                        help="number of blocks to partition the graph into")
    parser.add_argument("--seed", type=int, default=0,
                        help="seed for the random number generator")
    parser.add_argument("--imbalance", type=float, default=3.0,
                        help="desired balance in percent (default: 3)")
    parser.add_argument("--time_limit", type=float, default=0.0,
                        help="time limit in seconds; 0 means a single call")
    parser.add_argument("--input_partition",
                        help="partition file to improve")
    parser.add_argument("--balance_edges", action="store_true",
                        help="balance edges among blocks as well as nodes")
    parser.add_argument("--output_filename",
                        help="output file (default tmppartition$k)")
    return parser


def _prepare(args, balance_edges):
    g = _load_graph(args.file)
    if balance_edges:
        g = g.with_edge_balancing_weights()
    spec = BalanceSpec.for_graph(g, args.k, args.imbalance / 100.0)
    input_p = None
    if args.input_partition:
        assignment = graphio.read_partition(args.input_partition, g.n, args.k)
        input_p = Partition.from_assignment(g, args.k, assignment)
    return g, spec, input_p


def kaffpa_main(argv=None):
    """Multilevel graph partitioning program."""
    _configure_logging()
    parser = _common_parser("kaffpa",
                            "multilevel k-way graph partitioning")
    parser.add_argument("--preconfiguration", default="eco",
                        choices=["strong", "eco", "fast", "fastsocial",
                                 "ecosocial", "strongsocial"],
                        help="quality/speed tradeoff (default: eco)")
    parser.add_argument("--enforce_balance", action="store_true",
                        help="guarantee a feasible output partition "
                             "(graphs without vertex weights only)")
    args = parser.parse_args(argv)
    try:
        g, spec, input_p = _prepare(args, args.balance_edges)
        if args.enforce_balance and g.n and \
                np.any(g.node_weight != g.node_weight[0]):
            raise WeightedGraphUnsupported(
                "--enforce_balance is only supported on graphs "
                "without vertex weights")
        pre = preconfiguration(args.preconfiguration)
        rng = random.Random(args.seed)
        start = time.perf_counter()
        p = iterated_cycles(g, spec, pre, rng, args.time_limit,
                            input_partition=input_p)
        if args.enforce_balance and \
                not check_balance(g, p, spec).is_feasible:
            p = enforce_balance(g, p, spec)
            p = fm_refine(g, p, spec, rng=rng)
        elapsed = time.perf_counter() - start
        print(_metrics_line(g, p, spec, elapsed))
        out = args.output_filename or f"tmppartition{args.k}"
        graphio.write_partition(p, out)
        return 0
    except (KwaypartError, OSError) as exc:
        print(f"kaffpa: error: {exc}", file=sys.stderr)
        return 1


def kaffpae_main(argv=None):
    """Evolutionary partitioner over in-process worker islands."""
    _configure_logging()
    parser = _common_parser("kaffpae",
                            "evolutionary k-way graph partitioning")
    parser.add_argument("--preconfiguration", default="strong",
                        choices=["strong", "eco", "fast", "fastsocial",
                                 "ecosocial", "strongsocial"],
                        help="quality/speed tradeoff (default: strong)")
    parser.add_argument("--workers", type=int, default=1,
                        help="number of in-process workers")
    parser.add_argument("--mh_enable_quickstart", action="store_true",
                        help="share initial partitions among workers "
                             "immediately")
    parser.add_argument("--mh_optimize_communication_volume",
                        action="store_true",
                        help="optimize communication volume instead of cut")
    parser.add_argument("--mh_enable_kabapE", action="store_true",
                        help="unsupported; parsed for compatibility")
    parser.add_argument("--mh_enable_tabu_search", action="store_true",
                        help="unsupported; parsed for compatibility")
    parser.add_argument("--kabaE_internal_bal", type=float, default=0.01,
                        help="internal imbalance used by mutation "
                             "(default: 0.01)")
    args = parser.parse_args(argv)
    try:
        if args.mh_enable_kabapE:
            raise UnsupportedFeature(
                "--mh_enable_kabapE is not supported by this build; "
                "see README for the supported feature set")
        if args.mh_enable_tabu_search:
            raise UnsupportedFeature(
                "--mh_enable_tabu_search is not supported by this build; "
                "see README for the supported feature set")
        g, spec, input_p = _prepare(args, args.balance_edges)
        pre = preconfiguration(args.preconfiguration)
        rng = random.Random(args.seed)
        options = EvolveOptions(
            objective="comm_volume" if args.mh_optimize_communication_volume
            else "cut",
            quickstart=args.mh_enable_quickstart,
            internal_bal=args.kabaE_internal_bal,
        )
        start = time.perf_counter()
        best = evolve(g, spec, pre, args.workers, args.time_limit, options,
                      rng)
        p = best.partition
        if input_p is not None and edge_cut(g, input_p) < edge_cut(g, p):
            p = input_p
        elapsed = time.perf_counter() - start
        print(_metrics_line(g, p, spec, elapsed))
        out = args.output_filename or f"tmppartition{args.k}"
        graphio.write_partition(p, out)
        return 0
    except (KwaypartError, OSError) as exc:
        print(f"kaffpae: error: {exc}", file=sys.stderr)
        return 1


def separator_main(argv=None):
    """Compute a k-way vertex separator from a k-way partition."""
    _configure_logging()
    parser = argparse.ArgumentParser(
        prog="partition_to_vertex_separator",
        description="derive a k-way vertex separator from a partition",
        allow_abbrev=False)
    parser.add_argument("file", help="path to the graph file")
    parser.add_argument("--k", type=int, required=True,
                        help="number of blocks of the input partition")
    parser.add_argument("--input_partition", required=True,
                        help="partition file to compute the separator from")
    parser.add_argument("--seed", type=int, default=0,
                        help="seed for the random number generator")
    parser.add_argument("--output_filename", default="tmpseparator",
                        help="output file (default tmpseparator)")
    args = parser.parse_args(argv)
    try:
        g = _load_graph(args.file)
        assignment = graphio.read_partition(args.input_partition, g.n, args.k)
        p = Partition.from_assignment(g, args.k, assignment)
        result = kway_separator(g, p)
        graphio.write_separator(p, result.separator, args.k,
                                args.output_filename)
        print(f"separator_size={len(result.separator)}")
        return 0
    except (KwaypartError, OSError) as exc:
        print(f"partition_to_vertex_separator: error: {exc}",
              file=sys.stderr)
        return 1


def label_propagation_main(argv=None):
    """Size-constrained label propagation clustering."""
    _configure_logging()
    parser = argparse.ArgumentParser(
        prog="label_propagation",
        description="size-constrained label propagation clustering",
        allow_abbrev=False)
    parser.add_argument("file", help="path to the graph file")
    parser.add_argument("--cluster_upperbound", type=int, default=None,
                        help="size constraint per cluster "
                             "(default: unconstrained)")
    parser.add_argument("--label_propagation_iterations", type=int,
                        default=10, help="number of sweeps (default: 10)")
    parser.add_argument("--seed", type=int, default=0,
                        help="seed for the random number generator")
    parser.add_argument("--output_filename", default="tmpclustering",
                        help="output file (default tmpclustering)")
    args = parser.parse_args(argv)
    try:
        g = _load_graph(args.file)
        rng = random.Random(args.seed)
        clustering = label_propagation_clustering(
            g, rng, upper_bound=args.cluster_upperbound,
            iterations=args.label_propagation_iterations)
        graphio.write_clustering(clustering.cluster_of, args.output_filename)
        print(f"clusters={clustering.num_clusters}")
        return 0
    except (KwaypartError, OSError) as exc:
        print(f"label_propagation: error: {exc}", file=sys.stderr)
        return 1


def graphchecker_main(argv=None):
    """Validate a graph file and report every violation."""
    _configure_logging()
    parser = argparse.ArgumentParser(
        prog="graphchecker",
        description="check that a graph file is valid",
        allow_abbrev=False)
    parser.add_argument("file", help="path to the graph file")
    args = parser.parse_args(argv)
    try:
        with open(args.file) as fh:
            violations = graphio.check_graph_text(fh)
    except OSError as exc:
        print(f"graphchecker: error: {exc}", file=sys.stderr)
        return 1
    if violations:
        for message in violations:
            print(message)
        return 1
    print("OK")
    return 0
