"""Time-limited population-based optimizer over in-process worker islands.

The combine operator runs a multilevel cycle whose coarsening never contracts
a cut edge of either parent and seeds the coarsest level with the better
parent, so offspring fitness never falls behind the better parent. Workers
exchange their best individuals through a small shared buffer instead of a
network protocol.
"""
from __future__ import annotations

import random
import threading
import time
from dataclasses import dataclass, field

from .driver import vcycle
from .graph import BalanceSpec, Partition, check_balance, comm_volume, \
    edge_cut
from .refine import enforce_balance, fm_refine

__all__ = ["Individual", "Population", "EvolveOptions",
           "fitness", "combine", "mutate", "evolve"]


def fitness(g, p, objective="cut"):
    """Ordered fitness: (cut, max block weight) or, for the communication
    volume objective, (max per-block volume, cut)."""
    if objective not in ("cut", "comm_volume"):
        raise ValueError(f"unknown objective {objective!r}")
    cut = edge_cut(g, p)
    if objective == "cut":
        return (cut, int(p.block_weight.max()))
    _, vol_max = comm_volume(g, p)
    return (vol_max, cut)


@dataclass
class Individual:
    partition: Partition
    fitness: tuple

    @classmethod
    def of(cls, g, p, objective="cut"):
        return cls(p, fitness(g, p, objective))


@dataclass
class Population:
    capacity: int
    members: list = field(default_factory=list)
    _age: int = 0

    def insert(self, ind):
        self.members.append((ind, self._age))
        self._age += 1
        if len(self.members) > self.capacity:
            self.evict_worst()

    def best(self):
        return min(self.members, key=lambda m: m[0].fitness)[0]

    def evict_worst(self):
        best_i = min(range(len(self.members)),
                     key=lambda i: self.members[i][0].fitness)
        worst_i = max(
            (i for i in range(len(self.members)) if i != best_i),
            key=lambda i: (self.members[i][0].fitness, -self.members[i][1]),
            default=None)
        if worst_i is not None:
            del self.members[worst_i]

    def tournament(self, rng, size=2):
        pick = min((rng.randrange(len(self.members)) for _ in range(size)),
                   key=lambda i: self.members[i][0].fitness)
        return self.members[pick][0]

    def __len__(self):
        return len(self.members)


def combine(g, spec, p1, p2, rng, pre, objective="cut"):
    """Offspring of two individuals: multilevel cycle that forbids
    contracting any cut edge of either parent, seeded by the better one."""
    better, other = (p1, p2) if p1.fitness <= p2.fitness else (p2, p1)
    child = vcycle(g, spec, pre, rng,
                   input_partition=better.partition,
                   extra_classes=other.partition.assignment)
    return Individual.of(g, child, objective)


def mutate(g, spec, p, rng, pre, internal_bal=0.01, objective="cut"):
    """Perturb one individual: a cycle seeded from it under a temporarily
    loosened imbalance, then re-enforce the true constraint."""
    loose = BalanceSpec.for_total(spec.total_weight, spec.k,
                                  spec.epsilon + internal_bal,
                                  spec.balance_edges)
    child = vcycle(g, loose, pre, rng, input_partition=p.partition)
    if not check_balance(g, child, spec).is_feasible:
        try:
            child = enforce_balance(g, child, spec)
            child = fm_refine(g, child, spec, rng=rng)
        except Exception:
            child = p.partition.copy()
    return Individual.of(g, child, objective)


@dataclass
class EvolveOptions:
    objective: str = "cut"
    quickstart: bool = False
    internal_bal: float = 0.01
    population_capacity: int = 10
    initial_individuals: int = 4
    combine_probability: float = 0.9
    exchange_interval: int = 5


class _Exchange:
    """Shared top-B buffer standing in for a gossip protocol."""

    def __init__(self, slots):
        self.lock = threading.Lock()
        self.slots = [None] * max(1, slots)
        self.best = None

    def push(self, ind, rng):
        with self.lock:
            i = rng.randrange(len(self.slots))
            if self.slots[i] is None or ind.fitness < self.slots[i].fitness:
                self.slots[i] = ind
            if self.best is None or ind.fitness < self.best.fitness:
                self.best = ind

    def pull(self, rng):
        with self.lock:
            filled = [s for s in self.slots if s is not None]
            return rng.choice(filled) if filled else None


def _worker(g, spec, pre, options, seed, deadline, exchange):
    rng = random.Random(seed)
    pop = Population(options.population_capacity)
    for _ in range(options.initial_individuals):
        p = vcycle(g, spec, pre, rng)
        ind = Individual.of(g, p, options.objective)
        pop.insert(ind)
        exchange.push(ind, rng)
        if options.quickstart:
            pulled = exchange.pull(rng)
            if pulled is not None:
                pop.insert(pulled)
    generation = 0
    while deadline is not None and time.monotonic() < deadline:
        a = pop.tournament(rng)
        b = pop.tournament(rng)
        if rng.random() < options.combine_probability:
            child = combine(g, spec, a, b, rng, pre, options.objective)
        else:
            child = mutate(g, spec, a, rng, pre, options.internal_bal,
                           options.objective)
        pop.insert(child)
        generation += 1
        if generation % options.exchange_interval == 0:
            exchange.push(pop.best(), rng)
            pulled = exchange.pull(rng)
            if pulled is not None:
                pop.insert(pulled)
    exchange.push(pop.best(), rng)


def evolve(g, spec, pre, workers, time_limit_seconds, options, rng):
    """Run worker islands until the deadline and return the global best.

    A zero time limit builds only the initial populations. Deterministic in
    single-worker mode for a fixed seed.
    """
    options = options or EvolveOptions()
    deadline = None if time_limit_seconds <= 0 else \
        time.monotonic() + time_limit_seconds
    exchange = _Exchange(workers)
    seeds = [rng.getrandbits(63) for _ in range(workers)]
    if workers == 1:
        _worker(g, spec, pre, options, seeds[0], deadline, exchange)
    else:
        threads = [threading.Thread(target=_worker,
                                    args=(g, spec, pre, options, s,
                                          deadline, exchange))
                   for s in seeds]
        for t in threads:
            t.start()
        for t in threads:
            t.join()
    return exchange.best
