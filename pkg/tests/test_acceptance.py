"""Acceptance suite: one test per criterion, each printing a pass/fail line.

Run with ``python3 -m pytest tests/test_acceptance.py -v -s`` to see the
per-criterion lines as they are produced.
"""
import contextlib
import io
import itertools
import random
import time
from collections import deque

import numpy as np

from kwaypart import graphio
from kwaypart.cli import kaffpa_main, kaffpae_main, label_propagation_main
from kwaypart.coarsening import label_propagation_clustering
from kwaypart.driver import iterated_cycles, preconfiguration
from kwaypart.evolve import Individual, combine
from kwaypart.flow import FlowCorridor, max_flow_min_cut
from kwaypart.graph import (BalanceSpec, Partition, check_balance, edge_cut)
from kwaypart.refine import (enforce_balance, flow_refine_pair, fm_refine,
                             label_prop_refine, multi_try_fm,
                             refine_all_pairs)
from kwaypart.errors import EmptyBoundary
from kwaypart.separator import (_max_matching, min_vertex_cover_bipartite,
                                separator_from_bipartition,
                                _bipartite_from_edges)

from conftest import (FIG_TEXT, brute_force_best_bipartition,
                      brute_force_min_cover, brute_force_min_st_cut,
                      grid_graph, random_connected_graph, random_partition,
                      random_feasible_partition)


@contextlib.contextmanager
def criterion(number, description, budget_seconds):
    start = time.perf_counter()
    try:
        yield
    except BaseException:
        print(f"FAIL criterion {number}: {description}")
        raise
    elapsed = time.perf_counter() - start
    if elapsed >= budget_seconds:
        print(f"FAIL criterion {number}: {description} "
              f"(over time budget: {elapsed:.2f}s >= {budget_seconds}s)")
        raise AssertionError(
            f"criterion {number} exceeded its {budget_seconds}s budget "
            f"({elapsed:.2f}s)")
    print(f"PASS criterion {number}: {description} ({elapsed:.2f}s)")


def test_criterion_1_format_fidelity():
    with criterion(1, "format fidelity and round-trip", 1.0):
        g = graphio.parse_graph(FIG_TEXT)
        assert list(g.xadj) == [0, 2, 5, 7, 9, 12]
        assert list(g.adjncy) == [1, 4, 0, 2, 4, 1, 3, 2, 4, 0, 1, 3]
        buf = io.StringIO()
        graphio.write_graph(g, buf)
        g2 = graphio.parse_graph(buf.getvalue())
        assert list(g2.xadj) == list(g.xadj)
        assert list(g2.adjncy) == list(g.adjncy)
        assert list(g2.node_weight) == list(g.node_weight)
        assert list(g2.edge_weight) == list(g.edge_weight)


INVALID_FILES = [
    ("1 0\n1\n", "self-loop"),
    ("2 2\n2 2\n1 1\n", "parallel edge"),
    ("3 2\n2 3\n1\n\n", "missing backward edge"),
    ("2 1 1\n2 5\n1 7\n", "different weights"),
    ("3 2\n2\n1\n", "expected 3 vertex lines"),
    ("2 3\n2\n1\n", "edge count mismatch"),
    ("2 1\n3\n1\n", "out of range"),
    ("2 1 10\n-1 2\n1 1\n", "negative weight"),
    ("2 1 1\n2 0\n1 0\n", "non-positive edge weight"),
    ("2 1 7\n2\n1\n", "unknown format code"),
]

VALID_FILES = [
    FIG_TEXT,
    "3 2 11\n1 2 4\n2 1 4 3 1\n1 2 1\n",   # node and edge weights
    "0 0\n",                                # empty graph
    "% comment\n2 1\n2\n1\n",
]


def test_criterion_2_graphchecker_corpus():
    with criterion(2, "graphchecker invalid corpus and valid fixtures", 1.0):
        assert len(INVALID_FILES) == 10
        for text, expected in INVALID_FILES:
            violations = graphio.check_graph_text(text)
            assert violations, f"accepted invalid file {text!r}"
            assert any(expected in v for v in violations), \
                (text, expected, violations)
        for text in VALID_FILES:
            assert graphio.check_graph_text(text) == []


def test_criterion_3_small_instance_optimality():
    with criterion(3, "strong matches brute-force optimum on small graphs",
                   60.0):
        pre = preconfiguration("strong")
        gen = random.Random(0xACCE55)
        matched = 0
        instances = 50
        for i in range(instances):
            g = random_connected_graph(gen, gen.randint(2, 12))
            eps = gen.choice([0.0, 0.03])
            spec = BalanceSpec.for_graph(g, 2, eps)
            optimum = brute_force_best_bipartition(g, spec)
            best = None
            for seed in range(10):
                p = iterated_cycles(g, spec, pre, random.Random(seed))
                assert check_balance(g, p, spec).is_feasible, \
                    f"infeasible result on instance {i} seed {seed}"
                cut = edge_cut(g, p)
                best = cut if best is None else min(best, cut)
            if best == optimum:
                matched += 1
        assert matched >= 0.9 * instances, f"only {matched}/{instances}"

        fig = graphio.parse_graph(FIG_TEXT)
        spec = BalanceSpec.for_graph(fig, 2, 0.03)
        for seed in range(10):
            p = iterated_cycles(fig, spec, pre, random.Random(seed))
            assert edge_cut(fig, p) == 2, f"seed {seed}"


def test_criterion_4_no_worsening():
    with criterion(4, "every refiner never worsens the cut and preserves "
                      "feasibility", 60.0):
        gen = random.Random(0xBEEF)
        for i in range(200):
            k = gen.randint(2, 4)
            g = random_connected_graph(gen, gen.randint(k, 30),
                                       max_weight=gen.choice([1, 3]))
            p, spec = random_feasible_partition(gen, g, k, 0.3)
            before = edge_cut(g, p)

            def check(result):
                assert edge_cut(g, result) <= before
                assert check_balance(g, result, spec).is_feasible

            check(fm_refine(g, p.copy(), spec, rng=gen))
            check(multi_try_fm(g, p.copy(), spec, 2, gen))
            check(label_prop_refine(g, p.copy(), spec, 3, gen))
            check(refine_all_pairs(g, p.copy(), spec, 2, rng=gen))
            try:
                check(flow_refine_pair(g, p.copy(), 0, 1, spec, 2, rng=gen))
            except EmptyBoundary:
                pass


def _random_corridor(rng):
    inner = rng.randint(1, 10)
    nodes = list(range(100, 100 + inner))
    edges = []
    locals_ = list(range(2, inner + 2))
    for x in locals_:
        if rng.random() < 0.7:
            edges.append((0, x, rng.randint(1, 5)))
        if rng.random() < 0.7:
            edges.append((x, 1, rng.randint(1, 5)))
    for a, b in itertools.combinations(locals_, 2):
        if rng.random() < 0.4:
            edges.append((a, b, rng.randint(1, 5)))
    if not any(u == 0 for u, _, _ in edges):
        edges.append((0, 2, rng.randint(1, 5)))
    if not any(v == 1 for _, v, _ in edges):
        edges.append((2, 1, rng.randint(1, 5)))
    return FlowCorridor(nodes=nodes, edges=edges)


def test_criterion_5_max_flow_oracle():
    with criterion(5, "max flow equals exhaustive min s-t cut", 10.0):
        gen = random.Random(0xF10)
        for _ in range(100):
            corridor = _random_corridor(gen)
            flow, side = max_flow_min_cut(corridor)
            assert flow == brute_force_min_st_cut(corridor)
            members = {0} | {i + 2 for i, v in enumerate(corridor.nodes)
                             if v in side}
            cut_w = sum(c for u, v, c in corridor.edges
                        if (u in members) != (v in members))
            assert cut_w == flow


def _disconnects(g, assignment, separator):
    seen = [False] * g.n
    for s in range(g.n):
        if seen[s] or s in separator:
            continue
        block = assignment[s]
        seen[s] = True
        q = deque([s])
        while q:
            v = q.popleft()
            for u in g.neighbors(v):
                u = int(u)
                if u in separator or seen[u]:
                    continue
                if assignment[u] != block:
                    return False
                seen[u] = True
                q.append(u)
    return True


def test_criterion_6_separator_suite():
    with criterion(6, "separator size optimal, disconnects, Koenig identity",
                   30.0):
        gen = random.Random(0x5E9A)
        for _ in range(100):
            g = random_connected_graph(gen, gen.randint(3, 14))
            p = random_partition(gen, g, 2)
            assignment = list(p.assignment)
            edges = [(v, int(u)) for v in range(g.n)
                     if assignment[v] == 0
                     for u in g.neighbors(v) if assignment[int(u)] == 1]
            boundary = {x for e in edges for x in e}
            assert len(boundary) <= 16
            result = separator_from_bipartition(g, p)
            assert len(result.separator) == brute_force_min_cover(edges)
            assert _disconnects(g, assignment, result.separator)
            if edges:
                bip = _bipartite_from_edges(edges)
                match_left, _ = _max_matching(bip)
                cover = min_vertex_cover_bipartite(bip)
                assert len(match_left) == len(cover)


def test_criterion_7_combine_guarantee():
    with criterion(7, "offspring never worse than better parent; parent cut "
                      "edges never contracted", 60.0):
        gen = random.Random(0xC09B)
        pre = preconfiguration("eco")
        for _ in range(100):
            k = gen.randint(2, 3)
            g = random_connected_graph(gen, gen.randint(k + 1, 40))
            p1, spec = random_feasible_partition(gen, g, k, 0.2)
            p2, _ = random_feasible_partition(gen, g, k, 0.2)
            i1, i2 = Individual.of(g, p1), Individual.of(g, p2)
            child = combine(g, spec, i1, i2, gen, pre)
            assert child.fitness[0] <= min(i1.fitness[0], i2.fitness[0])
            assert check_balance(g, child.partition, spec).is_feasible
            # the coarsening restriction combine relies on: clustering with
            # the parents' overlay classes never merges a parent cut edge
            _, classes = np.unique(
                np.stack([p1.assignment, p2.assignment]), axis=1,
                return_inverse=True)
            c = label_propagation_clustering(
                g, gen, class_of=classes.astype(np.int64))
            for v in range(g.n):
                for u in g.neighbors(v):
                    u = int(u)
                    if p1.assignment[v] != p1.assignment[u] or \
                            p2.assignment[v] != p2.assignment[u]:
                        assert c.cluster_of[v] != c.cluster_of[u]


def test_criterion_8_enforce_balance_guarantee():
    with criterion(8, "enforce_balance always yields a feasible partition",
                   10.0):
        gen = random.Random(0xBA1)
        done = 0
        while done < 100:
            k = gen.randint(2, 4)
            g = random_connected_graph(gen, gen.randint(k + 1, 30))
            p = random_partition(gen, g, k)
            spec = BalanceSpec.for_graph(g, k, 0.0)
            if check_balance(g, p, spec).is_feasible:
                continue
            done += 1
            fixed = enforce_balance(g, p, spec)
            assert check_balance(g, fixed, spec).is_feasible


def test_criterion_9_grid_regression():
    with criterion(9, "16x16 grid bisection cut <= 16 on all 10 seeds", 30.0):
        g = grid_graph(16, 16)
        spec = BalanceSpec.for_graph(g, 2, 0.0)
        pre = preconfiguration("strong")
        for seed in range(10):
            p = iterated_cycles(g, spec, pre, random.Random(seed))
            assert check_balance(g, p, spec).is_feasible, f"seed {seed}"
            assert edge_cut(g, p) <= 16, \
                f"seed {seed}: cut {edge_cut(g, p)}"


def test_criterion_10_cli_determinism(tmp_path, monkeypatch, capsys):
    with criterion(10, "byte-identical outputs for fixed seeds", 10.0):
        monkeypatch.chdir(tmp_path)
        graph_file = tmp_path / "fig.graph"
        graph_file.write_text(FIG_TEXT)
        outputs = []
        for _ in range(3):
            assert kaffpa_main([str(graph_file), "--k", "2",
                                "--seed", "11"]) == 0
            outputs.append((tmp_path / "tmppartition2").read_bytes())
        assert outputs[0] == outputs[1] == outputs[2]
        outputs = []
        for _ in range(3):
            assert kaffpae_main([str(graph_file), "--k", "2", "--seed", "11",
                                 "--workers", "1"]) == 0
            outputs.append((tmp_path / "tmppartition2").read_bytes())
        assert outputs[0] == outputs[1] == outputs[2]
        capsys.readouterr()


def test_criterion_11_cli_defaults(tmp_path, monkeypatch, capsys):
    with criterion(11, "documented CLI defaults hold", 10.0):
        monkeypatch.chdir(tmp_path)
        graph_file = tmp_path / "fig.graph"
        graph_file.write_text(FIG_TEXT)

        def run(main, args, out):
            assert main([str(graph_file)] + args) == 0
            data = (tmp_path / out).read_bytes()
            (tmp_path / out).unlink()
            return data

        # kaffpa: default preconfiguration eco, imbalance 3, time_limit 0,
        # default output tmppartition$k
        base = run(kaffpa_main, ["--k", "2", "--seed", "5"], "tmppartition2")
        assert base == run(kaffpa_main,
                           ["--k", "2", "--seed", "5",
                            "--preconfiguration", "eco",
                            "--imbalance", "3", "--time_limit", "0"],
                           "tmppartition2")
        # kaffpae: default preconfiguration strong, kabaE_internal_bal 0.01
        base = run(kaffpae_main, ["--k", "2", "--seed", "5"],
                   "tmppartition2")
        assert base == run(kaffpae_main,
                           ["--k", "2", "--seed", "5",
                            "--preconfiguration", "strong",
                            "--kabaE_internal_bal", "0.01",
                            "--time_limit", "0"],
                           "tmppartition2")
        # label_propagation: default 10 iterations, output tmpclustering
        base = run(label_propagation_main, ["--seed", "5"], "tmpclustering")
        assert base == run(label_propagation_main,
                           ["--seed", "5",
                            "--label_propagation_iterations", "10"],
                           "tmpclustering")
        capsys.readouterr()
