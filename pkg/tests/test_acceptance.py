"""Acceptance gate for the solver library.

Each test covers one contract-level guarantee and records a single
``ACCEPTANCE PASS/FAIL: <label>`` line, printed as a checklist section
at the end of the pytest run.
"""

import json
import math
import random
import time
from contextlib import contextmanager

from routefront import (
    Archive,
    GAConfig,
    ObjectiveVector,
    Solution,
    TimingPolicy,
    assign_fitness,
    brute_force_front,
    build_front_document,
    domination_counts,
    evaluate,
    generate_random_instance,
    nearest_neighbor_solution,
    run,
    write_front,
)
from routefront.pareto import FitnessParams
from tests.conftest import build_instance, random_partition_solution, record_verdict


@contextmanager
def verdict(label: str):
    try:
        yield
    except BaseException:
        record_verdict("FAIL", label)
        raise
    record_verdict("PASS", label)


def random_objectives(rng: random.Random) -> ObjectiveVector:
    if rng.random() < 0.5:
        violation, violated = 0.0, 0
    else:
        violation, violated = rng.uniform(0.1, 500.0), rng.randint(1, 15)
    return ObjectiveVector(
        total_distance=rng.uniform(0.0, 1000.0),
        vehicle_count=rng.randint(1, 20),
        total_tw_violation=violation,
        violated_tw_count=violated,
    )


def gridded_objectives(rng: random.Random) -> ObjectiveVector:
    """Coarse integer grid, so duplicates and dominance are both common."""
    if rng.random() < 0.4:
        violation, violated = 0.0, 0
    else:
        violation, violated = float(rng.randint(1, 5)), rng.randint(1, 4)
    return ObjectiveVector(
        total_distance=float(rng.randint(0, 7)),
        vehicle_count=rng.randint(1, 4),
        total_tw_violation=violation,
        violated_tw_count=violated,
    )


def test_domination_counts_stay_bounded():
    with verdict("domination counts bounded by population size"):
        rng = random.Random(101)
        start = time.perf_counter()
        for _ in range(1000):
            size = rng.randint(2, 200)
            vectors = [random_objectives(rng) for _ in range(size)]
            counts = domination_counts(vectors)
            assert len(counts) == size
            assert all(0 <= c <= size - 1 for c in counts)
        elapsed = time.perf_counter() - start
        assert elapsed < 5.0, f"bounds campaign took {elapsed:.2f}s"


def _count_campaign():
    rng = random.Random(202)
    campaign = []
    for _ in range(1000):
        size = rng.randint(2, 60)
        counts = [rng.randint(0, size - 1) for _ in range(size)]
        f_max = rng.uniform(1.0, 1e6)
        params = FitnessParams(f_max=f_max, f_min=rng.uniform(0.0, f_max / 2))
        campaign.append((counts, params, assign_fitness(counts, params)))
    return campaign


def test_fitness_follows_count_order_exactly():
    with verdict("fitness strictly follows domination-count order"):
        start = time.perf_counter()
        campaign = _count_campaign()
        for counts, _, fitness in campaign:
            by_count: dict[int, set[float]] = {}
            for count, value in zip(counts, fitness):
                by_count.setdefault(count, set()).add(value)
            for values in by_count.values():
                assert len(values) == 1
            ordered = sorted(by_count)
            for lower, higher in zip(ordered, ordered[1:]):
                assert min(by_count[lower]) > max(by_count[higher])
        elapsed = time.perf_counter() - start
        assert elapsed < 1.0, f"ordering campaign took {elapsed:.2f}s"


def test_fitness_extremes_hit_the_configured_poles():
    with verdict("fitness endpoints hit f_max and f_min"):
        for counts, params, fitness in _count_campaign():
            peak = max(counts)
            for count, value in zip(counts, fitness):
                if count == 0:
                    assert value == params.f_max
                if count == peak and peak > 0:
                    assert abs(value - params.f_min) <= math.ulp(params.f_min)


def test_hull_interior_point_keeps_equal_fitness_but_loses_weighted_sums():
    with verdict("hull-interior alternative keeps equal fitness yet loses every weighted sum"):
        triple = [
            ObjectiveVector(0.0, 11, 0.0, 0),
            ObjectiveVector(6.0, 7, 0.0, 0),
            ObjectiveVector(10.0, 1, 0.0, 0),
        ]
        counts = domination_counts(triple)
        assert tuple(counts) == (0, 0, 0)
        params = FitnessParams()
        fitness = assign_fitness(counts, params)
        assert fitness[0] == fitness[1] == fitness[2] == params.f_max

        rng = random.Random(303)
        rows = [v.as_tuple() for v in triple]
        for _ in range(1000):
            raw = [rng.random() for _ in range(4)]
            total = sum(raw)
            weights = [w / total for w in raw]
            scores = [sum(w * x for w, x in zip(weights, row)) for row in rows]
            assert min(scores[0], scores[2]) < scores[1]


def test_archive_equals_exhaustive_front():
    with verdict("archive equals the exhaustive non-dominated set"):
        rng = random.Random(404)
        placeholder = Solution(((1,),))
        for _ in range(200):
            stream = [gridded_objectives(rng) for _ in range(rng.randint(1, 200))]
            archive = Archive()
            for vector in stream:
                archive.add(placeholder, vector)
            kept = {v.as_tuple() for v in archive.objective_vectors()}
            expected = {stream[i].as_tuple() for i in brute_force_front(stream)}
            assert kept == expected


def plain_arrival_simulation(instance, solution, policy):
    """Deliberately naive re-implementation of the scoring walk, kept
    free of shared helpers so the two routes to the numbers stay
    independent."""
    lookup = {c.id: c for c in instance.customers}
    total_distance = 0.0
    total_violation = 0.0
    violated = 0
    for route in solution.routes:
        x, y = instance.depot.x, instance.depot.y
        clock = 0.0
        for cid in route:
            customer = lookup[cid]
            dx, dy = customer.x - x, customer.y - y
            leg = (dx * dx + dy * dy) ** 0.5
            total_distance += leg
            arrival = clock + leg
            lateness = arrival - customer.due_time
            if lateness < 0.0:
                lateness = 0.0
            earliness = customer.ready_time - arrival
            if earliness < 0.0:
                earliness = 0.0
            if policy is TimingPolicy.WAIT_ALLOWED:
                violation = lateness
                begin = arrival if arrival > customer.ready_time else customer.ready_time
            else:
                violation = lateness + earliness
                begin = arrival
            if violation > 0.0:
                violated += 1
            total_violation += violation
            clock = begin + customer.service_time
            x, y = customer.x, customer.y
        dx, dy = instance.depot.x - x, instance.depot.y - y
        total_distance += (dx * dx + dy * dy) ** 0.5
    return total_distance, len(solution.routes), total_violation, violated


def test_evaluation_matches_independent_simulation():
    with verdict("evaluation matches an independent arrival simulation"):
        rng = random.Random(505)
        policies = (TimingPolicy.WAIT_ALLOWED, TimingPolicy.NO_WAIT)
        for i in range(500):
            instance = build_instance(rng.randint(1, 10), rng)
            solution = random_partition_solution(instance, rng)
            policy = policies[i % 2]
            got = evaluate(instance, solution, policy)
            dist, vehicles, violation, violated = plain_arrival_simulation(
                instance, solution, policy
            )
            assert abs(got.total_distance - dist) <= 1e-9
            assert got.vehicle_count == vehicles
            assert abs(got.total_tw_violation - violation) <= 1e-9
            assert got.violated_tw_count == violated


def test_equal_seeds_reproduce_bytes():
    with verdict("equal seeds give byte-identical streams and fronts"):
        instance = generate_random_instance(12, tightness=0.5, seed=3)
        config = GAConfig(population_size=20, generations=15, rng_seed=9)
        first = run(instance, config)
        second = run(instance, config)

        def stream_bytes(result):
            return json.dumps(
                [s.to_dict(include_elapsed=False) for s in result.snapshots],
                sort_keys=True,
            ).encode()

        assert stream_bytes(first) == stream_bytes(second)

        def front_bytes(result):
            document = build_front_document(
                instance, config, result.archive,
                produced_at="2026-01-01T00:00:00Z",
            )
            return write_front(document).encode()

        assert front_bytes(first) == front_bytes(second)


def test_desk_scale_run_beats_the_greedy_baseline():
    with verdict("desk-scale run finishes fast and beats the greedy baseline"):
        instance = generate_random_instance(25, tightness=0.6, seed=42)
        config = GAConfig(population_size=100, generations=500, rng_seed=7)
        start = time.perf_counter()
        result = run(instance, config)
        elapsed = time.perf_counter() - start
        assert elapsed < 30.0, f"run took {elapsed:.2f}s"

        vectors = result.archive.objective_vectors()
        assert len(vectors) >= 3
        for i, a in enumerate(vectors):
            for j, b in enumerate(vectors):
                if i != j:
                    assert not _dominates_tuple(a.as_tuple(), b.as_tuple())

        baseline = evaluate(
            instance, nearest_neighbor_solution(instance), config.timing_policy
        )
        best = min(v.total_distance for v in vectors)
        assert best <= baseline.total_distance


def _dominates_tuple(a, b):
    return all(x <= y for x, y in zip(a, b)) and any(x < y for x, y in zip(a, b))
