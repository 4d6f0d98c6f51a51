"""Problem model and deterministic evaluation for vehicle routing with time windows.

A solution is a partition of all customers into ordered routes, each
driven by one vehicle that starts and ends at the depot. Solutions are
scored on four minimization objectives: total travel distance, number
of vehicles, total time-window violation, and number of violated
windows. Travel time numerically equals Euclidean distance and service
times are additive; distances are kept at full floating precision.

All types are immutable after construction and evaluation is a pure
function, so everything here is safe to call concurrently.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import Iterable


class TimingPolicy(Enum):
    """How early arrivals are treated during evaluation.

    WAIT_ALLOWED: the vehicle waits for the window to open; only
    lateness counts as a violation (soft time windows).
    NO_WAIT: service starts on arrival; earliness and lateness both
    count, because arriving too early matters to the planner as well.
    """

    WAIT_ALLOWED = "wait"
    NO_WAIT = "nowait"

    @classmethod
    def parse(cls, text: str) -> "TimingPolicy":
        for policy in cls:
            if policy.value == text:
                return policy
        raise ValueError(f"unknown timing policy {text!r}; expected 'wait' or 'nowait'")


class InvalidSolutionError(ValueError):
    """The genotype contract is broken; this signals an internal bug."""


@dataclass(frozen=True)
class Customer:
    """One customer (or the depot) with location, demand and time window."""

    id: int
    x: float
    y: float
    demand: float
    ready_time: float
    due_time: float
    service_time: float

    def __post_init__(self):
        if self.id < 0:
            raise ValueError(f"customer id must be non-negative, got {self.id}")
        if self.demand < 0:
            raise ValueError(f"customer {self.id}: demand must be non-negative")
        if self.service_time < 0:
            raise ValueError(f"customer {self.id}: service time must be non-negative")
        if self.ready_time > self.due_time:
            raise ValueError(
                f"customer {self.id}: ready time {self.ready_time} exceeds due time {self.due_time}"
            )


@dataclass(frozen=True)
class Instance:
    """An immutable problem statement: depot, customers, fleet limits."""

    name: str
    depot: Customer
    customers: tuple[Customer, ...]
    vehicle_capacity: float
    max_vehicles: int

    def __post_init__(self):
        object.__setattr__(self, "customers", tuple(self.customers))
        if self.depot.demand != 0:
            raise ValueError("depot demand must be zero")
        if self.vehicle_capacity <= 0:
            raise ValueError("vehicle capacity must be positive")
        if self.max_vehicles < 1:
            raise ValueError("max_vehicles must be positive")
        if not self.customers:
            raise ValueError("instance must have at least one customer")
        ids = [c.id for c in self.customers]
        if len(set(ids)) != len(ids):
            raise ValueError("customer ids must be unique")
        if self.depot.id in set(ids):
            raise ValueError("customer ids must be distinct from the depot id")
        for c in self.customers:
            if c.demand > self.vehicle_capacity:
                raise ValueError(
                    f"customer {c.id} demand {c.demand} exceeds vehicle capacity "
                    f"{self.vehicle_capacity}; instance is infeasible"
                )

    @cached_property
    def by_id(self) -> dict[int, Customer]:
        """Customers keyed by id (depot excluded)."""
        return {c.id: c for c in self.customers}

    @cached_property
    def customer_ids(self) -> frozenset[int]:
        return frozenset(c.id for c in self.customers)

    @property
    def n_customers(self) -> int:
        return len(self.customers)


@dataclass(frozen=True)
class Solution:
    """The genotype: an ordered partition of customer ids into routes."""

    routes: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "routes", tuple(tuple(r) for r in self.routes))

    def giant_tour(self) -> tuple[int, ...]:
        """All customer ids in visiting order, routes concatenated."""
        return tuple(cid for route in self.routes for cid in route)


@dataclass(frozen=True)
class ObjectiveVector:
    """The four minimization objectives of one solution."""

    total_distance: float
    vehicle_count: int
    total_tw_violation: float
    violated_tw_count: int

    def __post_init__(self):
        if self.total_distance < 0 or self.total_tw_violation < 0:
            raise ValueError("distance and violation must be non-negative")
        if self.vehicle_count < 1:
            raise ValueError("vehicle count must be positive")
        if (self.violated_tw_count == 0) != (self.total_tw_violation == 0):
            raise ValueError("violation count and magnitude must be zero together")

    def as_tuple(self) -> tuple[float, int, float, int]:
        return (
            self.total_distance,
            self.vehicle_count,
            self.total_tw_violation,
            self.violated_tw_count,
        )

    def to_dict(self) -> dict:
        return {
            "total_distance": self.total_distance,
            "vehicle_count": self.vehicle_count,
            "total_tw_violation": self.total_tw_violation,
            "violated_tw_count": self.violated_tw_count,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "ObjectiveVector":
        return cls(
            total_distance=float(data["total_distance"]),
            vehicle_count=int(data["vehicle_count"]),
            total_tw_violation=float(data["total_tw_violation"]),
            violated_tw_count=int(data["violated_tw_count"]),
        )


OBJECTIVE_NAMES = (
    "total_distance",
    "vehicle_count",
    "total_tw_violation",
    "violated_tw_count",
)


@dataclass(frozen=True)
class CustomerVisit:
    """Timing record for one customer visit, for violation bar rendering.

    Lateness and earliness are both recorded regardless of policy; the
    violation field holds what the active policy actually counted.
    """

    customer_id: int
    route_index: int
    position: int
    arrival: float
    service_start: float
    departure: float
    lateness: float
    earliness: float
    violation: float

    def to_dict(self) -> dict:
        return {
            "customer_id": self.customer_id,
            "route_index": self.route_index,
            "position": self.position,
            "arrival": self.arrival,
            "service_start": self.service_start,
            "departure": self.departure,
            "lateness": self.lateness,
            "earliness": self.earliness,
            "violation": self.violation,
        }


def distance(a: Customer, b: Customer) -> float:
    """Euclidean distance between two nodes."""
    return math.hypot(a.x - b.x, a.y - b.y)


def make_solution(routes: Iterable[Iterable[int]]) -> Solution:
    """Build a Solution, normalizing empty routes away."""
    return Solution(tuple(tuple(r) for r in routes if len(tuple(r)) > 0))


def validate_solution(instance: Instance, solution: Solution) -> None:
    """Raise InvalidSolutionError unless the genotype contract holds.

    Checks: no empty routes, every customer visited exactly once, no
    unknown ids, and every route within vehicle capacity.
    """
    if not solution.routes:
        raise InvalidSolutionError("solution has no routes")
    seen: set[int] = set()
    for r_idx, route in enumerate(solution.routes):
        if not route:
            raise InvalidSolutionError(f"route {r_idx} is empty")
        load = 0.0
        for cid in route:
            customer = instance.by_id.get(cid)
            if customer is None:
                raise InvalidSolutionError(f"route {r_idx} visits unknown customer {cid}")
            if cid in seen:
                raise InvalidSolutionError(f"customer {cid} is visited more than once")
            seen.add(cid)
            load += customer.demand
        if load > instance.vehicle_capacity:
            raise InvalidSolutionError(
                f"route {r_idx} load {load} exceeds capacity {instance.vehicle_capacity}"
            )
    missing = instance.customer_ids - seen
    if missing:
        raise InvalidSolutionError(f"customers never visited: {sorted(missing)}")


def evaluate(
    instance: Instance,
    solution: Solution,
    policy: TimingPolicy = TimingPolicy.WAIT_ALLOWED,
) -> ObjectiveVector:
    """Score a solution on the four objectives.

    Arrival at the first customer of a route equals its distance from
    the depot. Under WAIT_ALLOWED service starts at max(arrival, ready)
    and only lateness is a violation; under NO_WAIT service starts on
    arrival and earliness counts too. Total distance includes the
    return leg to the depot of every route.
    """
    validate_solution(instance, solution)
    depot = instance.depot
    by_id = instance.by_id
    wait = policy is TimingPolicy.WAIT_ALLOWED
    # totals via exact-rounded summation so reordering routes can never
    # change the result by even one bit
    legs: list[float] = []
    violations: list[float] = []
    violated = 0
    for route in solution.routes:
        previous = depot
        clock = 0.0
        for cid in route:
            customer = by_id[cid]
            leg = math.hypot(previous.x - customer.x, previous.y - customer.y)
            legs.append(leg)
            arrival = clock + leg
            lateness = arrival - customer.due_time
            if lateness < 0.0:
                lateness = 0.0
            if wait:
                violation = lateness
                start = arrival if arrival > customer.ready_time else customer.ready_time
            else:
                earliness = customer.ready_time - arrival
                if earliness < 0.0:
                    earliness = 0.0
                violation = lateness + earliness
                start = arrival
            if violation > 0.0:
                violated += 1
                violations.append(violation)
            clock = start + customer.service_time
            previous = customer
        legs.append(math.hypot(previous.x - depot.x, previous.y - depot.y))
    return ObjectiveVector(
        math.fsum(legs), len(solution.routes), math.fsum(violations), violated
    )


def trace_solution(
    instance: Instance,
    solution: Solution,
    policy: TimingPolicy = TimingPolicy.WAIT_ALLOWED,
) -> tuple[CustomerVisit, ...]:
    """Per-customer arrival/violation trace, in visiting order.

    Follows the same timing recursion as evaluate; the sums of the
    violation fields reproduce the evaluated objectives.
    """
    validate_solution(instance, solution)
    depot = instance.depot
    wait = policy is TimingPolicy.WAIT_ALLOWED
    visits: list[CustomerVisit] = []
    for r_idx, route in enumerate(solution.routes):
        previous = depot
        clock = 0.0
        for position, cid in enumerate(route):
            customer = instance.by_id[cid]
            arrival = clock + math.hypot(previous.x - customer.x, previous.y - customer.y)
            lateness = max(0.0, arrival - customer.due_time)
            earliness = max(0.0, customer.ready_time - arrival)
            if wait:
                violation = lateness
                start = max(arrival, customer.ready_time)
            else:
                violation = lateness + earliness
                start = arrival
            departure = start + customer.service_time
            visits.append(
                CustomerVisit(
                    customer_id=cid,
                    route_index=r_idx,
                    position=position,
                    arrival=arrival,
                    service_start=start,
                    departure=departure,
                    lateness=lateness,
                    earliness=earliness,
                    violation=violation,
                )
            )
            clock = departure
            previous = customer
    return tuple(visits)


def route_demands(instance: Instance, solution: Solution) -> list[float]:
    """Total demand carried on each route."""
    return [sum(instance.by_id[cid].demand for cid in route) for route in solution.routes]
