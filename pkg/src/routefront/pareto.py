"""Pareto dominance, domination-count fitness, and the non-dominated archive.

Fitness assignment works on dominance information alone: each
individual is scored by how many population members dominate it, and
that count is linearly normalized into [f_min, f_max]. Non-dominated
individuals all receive f_max, the most-dominated receives f_min, and
equal counts always map to equal fitness. Because the scheme never
aggregates objectives into a weighted sum, efficient alternatives
inside the convex hull of the front keep full selection pressure.

dominates, domination_counts, assign_fitness and brute_force_front are
pure and thread-safe. Archive is single-writer; readers get immutable
snapshots via entries()/objective_vectors().
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .model import ObjectiveVector, Solution


@dataclass(frozen=True)
class FitnessParams:
    """Range of the fitness scale; f_max must clearly exceed f_min.

    A positive f_min keeps every individual selectable under
    fitness-proportionate selection.
    """

    f_max: float = 100.0
    f_min: float = 1.0

    def __post_init__(self):
        if self.f_min < 0:
            raise ValueError(f"f_min must be non-negative, got {self.f_min}")
        if not self.f_max > self.f_min:
            raise ValueError(
                f"f_max must exceed f_min, got f_max={self.f_max}, f_min={self.f_min}"
            )


@dataclass(frozen=True)
class Individual:
    """A solution with cached objectives, domination count and fitness."""

    solution: Solution
    objectives: ObjectiveVector
    domination_count: int
    fitness: float


def dominates(a: ObjectiveVector, b: ObjectiveVector) -> bool:
    """True iff a is no worse than b everywhere and strictly better somewhere.

    All four objectives are minimized. The relation is irreflexive,
    asymmetric and transitive.
    """
    at = a.as_tuple()
    bt = b.as_tuple()
    better = False
    for av, bv in zip(at, bt):
        if av > bv:
            return False
        if av < bv:
            better = True
    return better


def _objective_matrix(vectors: Sequence[ObjectiveVector]) -> np.ndarray:
    return np.array([v.as_tuple() for v in vectors], dtype=np.float64)


def domination_counts(vectors: Sequence[ObjectiveVector]) -> list[int]:
    """For each vector, the number of other vectors that dominate it.

    Every count lies in [0, n-1]; non-dominated vectors score 0.
    """
    if len(vectors) == 0:
        raise ValueError("domination_counts requires a non-empty collection")
    matrix = _objective_matrix(vectors)
    # dominated[j, i] is true when vector j dominates vector i; the
    # diagonal is false because nothing is strictly better than itself.
    no_worse = (matrix[:, None, :] <= matrix[None, :, :]).all(axis=2)
    strictly_better = (matrix[:, None, :] < matrix[None, :, :]).any(axis=2)
    dominated = no_worse & strictly_better
    return [int(c) for c in dominated.sum(axis=0)]


def assign_fitness(counts: Sequence[int], params: FitnessParams) -> list[float]:
    """Linearly normalize domination counts into [f_min, f_max].

    A count of 0 maps exactly to f_max and the maximum count maps
    exactly to f_min; counts in between fall on the line connecting
    the two. When every count is 0 (a fully non-dominated population)
    everyone receives f_max. Lower counts always receive strictly
    higher fitness and equal counts identical fitness.
    """
    if len(counts) == 0:
        raise ValueError("assign_fitness requires a non-empty collection")
    xi_max = max(counts)
    if xi_max == 0:
        return [params.f_max] * len(counts)
    slope = (params.f_max - params.f_min) / xi_max
    fitness = []
    for xi in counts:
        if xi == 0:
            fitness.append(params.f_max)
        elif xi == xi_max:
            # Pinned so the extreme is exact rather than off by rounding.
            fitness.append(params.f_min)
        else:
            fitness.append(params.f_max - slope * xi)
    return fitness


def brute_force_front(vectors: Sequence[ObjectiveVector]) -> list[int]:
    """Indices of non-dominated vectors by exhaustive pairwise comparison.

    Deliberately simple and independent of the archive machinery; used
    as the oracle in tests.
    """
    front = []
    for i, candidate in enumerate(vectors):
        if not any(dominates(other, candidate) for j, other in enumerate(vectors) if j != i):
            front.append(i)
    return front


class Archive:
    """The mutually non-dominated set of alternatives found so far.

    A candidate is inserted unless some entry dominates it or matches
    its objectives exactly (first such entry wins); insertion evicts
    every entry the candidate dominates. With a capacity set, the entry
    with the smallest objective-space crowding distance is pruned, ties
    broken in favor of removing the earliest-inserted.
    """

    def __init__(self, capacity: int | None = None):
        if capacity is not None and capacity < 1:
            raise ValueError("archive capacity must be positive")
        self.capacity = capacity
        self._solutions: list[Solution] = []
        self._objectives: list[ObjectiveVector] = []
        self._matrix = np.empty((0, 4), dtype=np.float64)
        self._sequence: list[int] = []
        self._next_seq = 0

    def __len__(self) -> int:
        return len(self._solutions)

    def add(self, solution: Solution, objectives: ObjectiveVector) -> bool:
        """Offer a candidate; returns True when it was inserted."""
        row = np.array(objectives.as_tuple(), dtype=np.float64)
        if len(self._solutions) > 0:
            no_worse = (self._matrix <= row).all(axis=1)
            strictly = (self._matrix < row).any(axis=1)
            if bool((no_worse & strictly).any()):
                return False
            if bool((self._matrix == row).all(axis=1).any()):
                return False
            keep = ~((row <= self._matrix).all(axis=1) & (row < self._matrix).any(axis=1))
            if not keep.all():
                self._solutions = [s for s, k in zip(self._solutions, keep) if k]
                self._objectives = [o for o, k in zip(self._objectives, keep) if k]
                self._sequence = [q for q, k in zip(self._sequence, keep) if k]
                self._matrix = self._matrix[keep]
        self._solutions.append(solution)
        self._objectives.append(objectives)
        self._sequence.append(self._next_seq)
        self._next_seq += 1
        self._matrix = np.vstack([self._matrix, row[None, :]])
        if self.capacity is not None and len(self._solutions) > self.capacity:
            self._prune_most_crowded()
        return True

    def _prune_most_crowded(self) -> None:
        crowding = self._crowding_distances()
        victim = 0
        for i in range(1, len(crowding)):
            if crowding[i] < crowding[victim] or (
                crowding[i] == crowding[victim] and self._sequence[i] < self._sequence[victim]
            ):
                victim = i
        del self._solutions[victim]
        del self._objectives[victim]
        del self._sequence[victim]
        self._matrix = np.delete(self._matrix, victim, axis=0)

    def _crowding_distances(self) -> list[float]:
        n = len(self._solutions)
        inf = float("inf")
        distances = [0.0] * n
        for dim in range(4):
            values = self._matrix[:, dim]
            order = np.argsort(values, kind="stable")
            span = float(values[order[-1]] - values[order[0]])
            distances[order[0]] = inf
            distances[order[-1]] = inf
            if span == 0.0:
                continue
            for rank in range(1, n - 1):
                idx = order[rank]
                if distances[idx] == inf:
                    continue
                gap = float(values[order[rank + 1]] - values[order[rank - 1]]) / span
                distances[idx] += gap
        return distances

    def entries(self) -> tuple[tuple[Solution, ObjectiveVector], ...]:
        """Immutable snapshot of (solution, objectives) pairs."""
        return tuple(zip(self._solutions, self._objectives))

    def objective_vectors(self) -> tuple[ObjectiveVector, ...]:
        return tuple(self._objectives)
