"""Generational genetic algorithm over giant-tour route solutions.

Individuals are encoded as explicit routes but varied through their
giant tour: order crossover (OX) recombines the flattened visiting
order and a greedy capacity split decodes it back into routes, so every
offspring is a feasible-capacity solution by construction. Selection is
fitness-proportionate on the dominance-count fitness; a binary
tournament is available behind a config switch. Every individual of
every generation is offered to the archive, so no discovered
alternative is ever lost to the decision maker.

The whole run is a pure function of (instance, config): a fixed seed
reproduces the identical snapshot stream. The generation loop is
sequential and single-writer; snapshots are immutable values.
"""

from __future__ import annotations

import bisect
import itertools
import random
import time
from dataclasses import dataclass, field, fields, replace
from typing import Callable, Sequence

from .heuristics import nearest_neighbor_solution
from .model import (
    OBJECTIVE_NAMES,
    Instance,
    ObjectiveVector,
    Solution,
    TimingPolicy,
    evaluate,
    make_solution,
)
from .pareto import Archive, FitnessParams, Individual, assign_fitness, domination_counts

SELECTION_SCHEMES = ("roulette", "tournament")


@dataclass(frozen=True)
class GAConfig:
    """Run parameters; everything that shapes the snapshot stream."""

    population_size: int = 100
    generations: int = 500
    crossover_rate: float = 0.9
    mutation_rate: float = 0.2
    fitness_params: FitnessParams = field(default_factory=FitnessParams)
    timing_policy: TimingPolicy = TimingPolicy.WAIT_ALLOWED
    rng_seed: int = 0
    archive_capacity: int | None = None
    elitism_count: int = 1
    selection_scheme: str = "roulette"

    def __post_init__(self):
        if self.population_size < 2:
            raise ValueError("population_size must be at least 2")
        if self.generations < 0:
            raise ValueError("generations must be non-negative")
        for name in ("crossover_rate", "mutation_rate"):
            rate = getattr(self, name)
            if not 0.0 <= rate <= 1.0:
                raise ValueError(f"{name} must lie in [0, 1], got {rate}")
        if self.archive_capacity is not None and self.archive_capacity < 1:
            raise ValueError("archive_capacity must be positive when set")
        if not 0 <= self.elitism_count < self.population_size:
            raise ValueError("elitism_count must be non-negative and below population_size")
        if self.selection_scheme not in SELECTION_SCHEMES:
            raise ValueError(
                f"selection_scheme must be one of {SELECTION_SCHEMES}, got {self.selection_scheme!r}"
            )

    def to_dict(self) -> dict:
        return {
            "population_size": self.population_size,
            "generations": self.generations,
            "crossover_rate": self.crossover_rate,
            "mutation_rate": self.mutation_rate,
            "fitness_params": {
                "f_max": self.fitness_params.f_max,
                "f_min": self.fitness_params.f_min,
            },
            "timing_policy": self.timing_policy.value,
            "rng_seed": self.rng_seed,
            "archive_capacity": self.archive_capacity,
            "elitism_count": self.elitism_count,
            "selection_scheme": self.selection_scheme,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "GAConfig":
        kwargs = dict(data)
        known = {f.name for f in fields(cls)}
        for name in kwargs:
            if name not in known:
                raise ValueError(f"unknown config field {name!r}")
        if "fitness_params" in kwargs and isinstance(kwargs["fitness_params"], dict):
            extra = set(kwargs["fitness_params"]) - {"f_max", "f_min"}
            if extra:
                raise ValueError(f"unknown fitness_params field {sorted(extra)[0]!r}")
            kwargs["fitness_params"] = FitnessParams(**kwargs["fitness_params"])
        if "timing_policy" in kwargs and isinstance(kwargs["timing_policy"], str):
            kwargs["timing_policy"] = TimingPolicy.parse(kwargs["timing_policy"])
        return cls(**kwargs)


# Fields a live steering update may change mid-run; everything else
# (seed, population size, ...) would break reproducibility.
STEERABLE_FIELDS = ("mutation_rate", "crossover_rate", "fitness_params")


def apply_steering(config: GAConfig, updates: dict) -> GAConfig:
    """Return config with steerable fields replaced; rejects others."""
    unknown = set(updates) - set(STEERABLE_FIELDS)
    if unknown:
        raise ValueError(f"fields not steerable mid-run: {sorted(unknown)}")
    clean = dict(updates)
    if "fitness_params" in clean and isinstance(clean["fitness_params"], dict):
        clean["fitness_params"] = FitnessParams(**clean["fitness_params"])
    return replace(config, **clean)


@dataclass(frozen=True)
class GenerationSnapshot:
    """Everything a progress view needs about one generation."""

    generation_index: int
    population_objectives: tuple[ObjectiveVector, ...]
    domination_counts: tuple[int, ...]
    fitness_values: tuple[float, ...]
    archive_objectives: tuple[ObjectiveVector, ...]
    best_per_objective: tuple[tuple[str, ObjectiveVector, int], ...]
    elapsed_seconds: float

    def to_dict(self, include_elapsed: bool = True) -> dict:
        """Serializable form; the elapsed clock is excluded from the
        canonical (deterministic) representation."""
        data = {
            "generation_index": self.generation_index,
            "population_objectives": [list(o.as_tuple()) for o in self.population_objectives],
            "domination_counts": list(self.domination_counts),
            "fitness_values": list(self.fitness_values),
            "archive_objectives": [list(o.as_tuple()) for o in self.archive_objectives],
            "best_per_objective": [
                {"objective": name, "values": list(vec.as_tuple()), "individual": idx}
                for name, vec, idx in self.best_per_objective
            ],
        }
        if include_elapsed:
            data["elapsed_seconds"] = self.elapsed_seconds
        return data


@dataclass(frozen=True)
class RunResult:
    archive: Archive
    snapshots: tuple[GenerationSnapshot, ...]
    config: GAConfig  # effective config after any live steering


def _greedy_split(tour: Sequence[int], instance: Instance) -> Solution:
    """Cut a giant tour into routes, greedily respecting capacity.

    Every single demand fits the vehicle, so the walk always succeeds.
    """
    routes: list[list[int]] = []
    current: list[int] = []
    load = 0.0
    for cid in tour:
        demand = instance.by_id[cid].demand
        if current and load + demand > instance.vehicle_capacity:
            routes.append(current)
            current = []
            load = 0.0
        current.append(cid)
        load += demand
    if current:
        routes.append(current)
    return make_solution(routes)


def _randomized_nn_tour(instance: Instance, rng: random.Random) -> list[int]:
    """Nearest-neighbor chain over customers from a random start."""
    remaining = {c.id: c for c in instance.customers}
    start = rng.choice(sorted(remaining))
    tour = [start]
    current = remaining.pop(start)
    while remaining:
        best_id = min(
            sorted(remaining),
            key=lambda cid: (
                (current.x - remaining[cid].x) ** 2 + (current.y - remaining[cid].y) ** 2
            ),
        )
        tour.append(best_id)
        current = remaining.pop(best_id)
    return tour


def initialize_population(
    instance: Instance, config: GAConfig, rng: random.Random
) -> list[Solution]:
    """Seed the population: one deterministic nearest-neighbor build,
    then alternating randomized nearest-neighbor tours and random
    permutations, all decoded by the greedy capacity split."""
    population: list[Solution] = [nearest_neighbor_solution(instance)]
    ids = sorted(instance.customer_ids)
    while len(population) < config.population_size:
        if len(population) % 2 == 1:
            tour = _randomized_nn_tour(instance, rng)
        else:
            tour = list(ids)
            rng.shuffle(tour)
        population.append(_greedy_split(tour, instance))
    return population


def _roulette_index(cumulative: list[float], total: float, rng: random.Random) -> int:
    r = rng.random() * total
    return bisect.bisect_right(cumulative, r)


def select_parent(population: Sequence[Individual], rng: random.Random) -> Individual:
    """Fitness-proportionate (roulette) selection.

    Individual i is drawn with probability fitness(i) / sum of fitness.
    With a positive f_min every individual keeps a nonzero chance.
    """
    cumulative = list(itertools.accumulate(ind.fitness for ind in population))
    total = cumulative[-1]
    return population[_roulette_index(cumulative, total, rng)]


def select_parent_tournament(
    population: Sequence[Individual], rng: random.Random
) -> Individual:
    """Binary tournament: the fitter of two uniform draws, first wins ties."""
    a = population[rng.randrange(len(population))]
    b = population[rng.randrange(len(population))]
    return b if b.fitness > a.fitness else a


def crossover(
    p1: Solution, p2: Solution, instance: Instance, rng: random.Random
) -> Solution:
    """Order crossover (OX) on the giant tours, then capacity re-split.

    A random slice of the first parent is kept in place; the remaining
    positions are filled with the missing customers in the order the
    second parent visits them, wrapping after the slice.
    """
    tour1 = p1.giant_tour()
    tour2 = p2.giant_tour()
    n = len(tour1)
    if n <= 2:
        return _greedy_split(tour1, instance)
    i = rng.randrange(n)
    j = rng.randrange(n)
    if i > j:
        i, j = j, i
    kept = set(tour1[i : j + 1])
    child: list[int | None] = [None] * n
    child[i : j + 1] = tour1[i : j + 1]
    fill = [cid for cid in tour2[j + 1 :] + tour2[: j + 1] if cid not in kept]
    positions = list(range(j + 1, n)) + list(range(0, i))
    for pos, cid in zip(positions, fill):
        child[pos] = cid
    return _greedy_split(child, instance)


def _two_opt(solution: Solution, rng: random.Random) -> Solution:
    """Reverse a random segment inside one route."""
    routes = [list(r) for r in solution.routes]
    route = routes[rng.randrange(len(routes))]
    if len(route) < 2:
        return solution
    i = rng.randrange(len(route))
    j = rng.randrange(len(route))
    if i > j:
        i, j = j, i
    route[i : j + 1] = reversed(route[i : j + 1])
    return make_solution(routes)


def _relocate(solution: Solution, rng: random.Random) -> Solution:
    """Move one customer to a random position, possibly another route."""
    positions = [
        (r, p) for r, route in enumerate(solution.routes) for p in range(len(route))
    ]
    if len(positions) < 2:
        return solution
    routes = [list(r) for r in solution.routes]
    src_r, src_p = positions[rng.randrange(len(positions))]
    cid = routes[src_r].pop(src_p)
    dst_r = rng.randrange(len(routes))
    dst_p = rng.randrange(len(routes[dst_r]) + 1)
    routes[dst_r].insert(dst_p, cid)
    return make_solution(routes)


def _swap(solution: Solution, rng: random.Random) -> Solution:
    """Exchange two customers, across routes or within one."""
    positions = [
        (r, p) for r, route in enumerate(solution.routes) for p in range(len(route))
    ]
    if len(positions) < 2:
        return solution
    a = rng.randrange(len(positions))
    b = rng.randrange(len(positions) - 1)
    if b >= a:
        b += 1
    (ra, pa), (rb, pb) = positions[a], positions[b]
    routes = [list(r) for r in solution.routes]
    routes[ra][pa], routes[rb][pb] = routes[rb][pb], routes[ra][pa]
    return make_solution(routes)


_MUTATION_OPS = (_two_opt, _relocate, _swap)


def mutate(
    solution: Solution, instance: Instance, rate: float, rng: random.Random
) -> Solution:
    """With probability rate, apply one of segment reversal, relocate
    or swap (chosen uniformly); re-split the giant tour if the move
    broke capacity. Always returns a valid solution."""
    if rng.random() >= rate:
        return solution
    op = _MUTATION_OPS[rng.randrange(len(_MUTATION_OPS))]
    mutated = op(solution, rng)
    for route in mutated.routes:
        load = sum(instance.by_id[cid].demand for cid in route)
        if load > instance.vehicle_capacity:
            return _greedy_split(mutated.giant_tour(), instance)
    return mutated


def score_generation(
    solutions: Sequence[Solution],
    archive: Archive,
    instance: Instance,
    config: GAConfig,
    generation_index: int = 0,
    elapsed_seconds: float = 0.0,
) -> tuple[list[Individual], GenerationSnapshot]:
    """Evaluate, count dominations, assign fitness, feed the archive.

    Consumes no randomness, so live steering between generations never
    perturbs the part of the stream that already happened.
    """
    objectives = [evaluate(instance, s, config.timing_policy) for s in solutions]
    counts = domination_counts(objectives)
    fitness = assign_fitness(counts, config.fitness_params)
    ranked = [
        Individual(s, o, c, f) for s, o, c, f in zip(solutions, objectives, counts, fitness)
    ]
    for individual in ranked:
        archive.add(individual.solution, individual.objectives)
    best = []
    for dim, name in enumerate(OBJECTIVE_NAMES):
        idx = min(range(len(objectives)), key=lambda k: objectives[k].as_tuple()[dim])
        best.append((name, objectives[idx], idx))
    snapshot = GenerationSnapshot(
        generation_index=generation_index,
        population_objectives=tuple(objectives),
        domination_counts=tuple(counts),
        fitness_values=tuple(fitness),
        archive_objectives=archive.objective_vectors(),
        best_per_objective=tuple(best),
        elapsed_seconds=elapsed_seconds,
    )
    return ranked, snapshot


def reproduce(
    ranked: Sequence[Individual],
    instance: Instance,
    config: GAConfig,
    rng: random.Random,
) -> list[Solution]:
    """Build the next generation: elites carried as-is, the rest bred
    by selection, order crossover and mutation.

    Elites are the individuals with the smallest domination counts,
    ties broken by total distance then position in the population.
    """
    order = sorted(
        range(len(ranked)),
        key=lambda i: (
            ranked[i].domination_count,
            ranked[i].objectives.total_distance,
            i,
        ),
    )
    next_generation = [ranked[i].solution for i in order[: config.elitism_count]]
    if config.selection_scheme == "tournament":
        def pick() -> Individual:
            return select_parent_tournament(ranked, rng)
    else:
        cumulative = list(itertools.accumulate(ind.fitness for ind in ranked))
        total = cumulative[-1]
        def pick() -> Individual:
            return ranked[_roulette_index(cumulative, total, rng)]
    while len(next_generation) < config.population_size:
        p1 = pick()
        p2 = pick()
        if rng.random() < config.crossover_rate:
            child = crossover(p1.solution, p2.solution, instance, rng)
        else:
            child = p1.solution
        child = mutate(child, instance, config.mutation_rate, rng)
        next_generation.append(child)
    return next_generation


def step_generation(
    solutions: Sequence[Solution],
    archive: Archive,
    instance: Instance,
    config: GAConfig,
    rng: random.Random,
    generation_index: int = 0,
    elapsed_seconds: float = 0.0,
) -> tuple[list[Individual], list[Solution], GenerationSnapshot]:
    """One full generational step: score the incoming population and
    breed its successor. Returns (ranked population, next generation,
    snapshot of the scored state)."""
    ranked, snapshot = score_generation(
        solutions, archive, instance, config, generation_index, elapsed_seconds
    )
    next_solutions = reproduce(ranked, instance, config, rng)
    return ranked, next_solutions, snapshot


def run(
    instance: Instance,
    config: GAConfig,
    progress_sink: Callable[[GenerationSnapshot], None] | None = None,
    cancel: Callable[[], bool] | None = None,
    boundary_hook: Callable[[int, GAConfig], GAConfig | None] | None = None,
    archive: Archive | None = None,
) -> RunResult:
    """Run the full loop, delivering every snapshot to progress_sink in
    order.

    Snapshot g describes the population entering generation g, so a run
    of G generations yields G+1 snapshots. Cancellation (a callable
    polled at generation boundaries) is a normal outcome: the archive
    accumulated so far is returned. boundary_hook may replace the
    steerable config fields between generations (live steering); it is
    also the pause point a service wrapper can block in.
    """
    rng = random.Random(config.rng_seed)
    if archive is None:
        archive = Archive(capacity=config.archive_capacity)
    solutions = initialize_population(instance, config, rng)
    snapshots: list[GenerationSnapshot] = []
    started = time.perf_counter()
    effective = config
    for generation in range(config.generations + 1):
        ranked, snapshot = score_generation(
            solutions,
            archive,
            instance,
            effective,
            generation,
            time.perf_counter() - started,
        )
        snapshots.append(snapshot)
        if progress_sink is not None:
            progress_sink(snapshot)
        if generation == config.generations:
            break
        if cancel is not None and cancel():
            break
        if boundary_hook is not None:
            updated = boundary_hook(generation, effective)
            if updated is not None:
                effective = updated
            if cancel is not None and cancel():
                break
        solutions = reproduce(ranked, instance, effective, rng)
    return RunResult(archive=archive, snapshots=tuple(snapshots), config=effective)
