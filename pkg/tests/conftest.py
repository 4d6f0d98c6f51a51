"""Shared builders for randomized test campaigns.

Everything here is deliberately plain: hand-rolled random instances and
solutions built with the stdlib random module, so the campaigns do not
depend on the code paths they are meant to check.
"""

import random
from pathlib import Path

import pytest

from routefront import Customer, Instance, Solution, make_solution

FIXTURES = Path(__file__).parent / "fixtures"

# verdicts recorded by the acceptance tests; printed once capture is
# released so they survive pytest's fd-level stdout capture
ACCEPTANCE_RESULTS: list[tuple[str, str]] = []


def record_verdict(status: str, label: str) -> None:
    ACCEPTANCE_RESULTS.append((status, label))


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance checklist")
    for status, label in ACCEPTANCE_RESULTS:
        terminalreporter.write_line(f"ACCEPTANCE {status}: {label}")


def build_instance(
    n: int,
    rng: random.Random,
    capacity: float = 100.0,
    extent: float = 100.0,
    horizon: float = 1000.0,
) -> Instance:
    """A random instance assembled directly from the value types."""
    depot = Customer(0, rng.uniform(0, extent), rng.uniform(0, extent), 0.0, 0.0, horizon, 0.0)
    customers = []
    for cid in range(1, n + 1):
        ready = rng.uniform(0, horizon * 0.8)
        due = rng.uniform(ready, horizon)
        customers.append(
            Customer(
                id=cid,
                x=rng.uniform(0, extent),
                y=rng.uniform(0, extent),
                demand=rng.uniform(1, capacity),
                ready_time=ready,
                due_time=due,
                service_time=rng.uniform(0, 20),
            )
        )
    return Instance(
        name=f"built-{n}",
        depot=depot,
        customers=tuple(customers),
        vehicle_capacity=capacity,
        max_vehicles=max(3, n),
    )


def random_partition_solution(instance: Instance, rng: random.Random) -> Solution:
    """A random permutation of all customers cut into random routes,
    ignoring capacity unless a route would exceed it."""
    ids = [c.id for c in instance.customers]
    rng.shuffle(ids)
    routes: list[list[int]] = [[]]
    load = 0.0
    for cid in ids:
        demand = instance.by_id[cid].demand
        if routes[-1] and (load + demand > instance.vehicle_capacity or rng.random() < 0.3):
            routes.append([])
            load = 0.0
        routes[-1].append(cid)
        load += demand
    return make_solution(routes)


@pytest.fixture
def tiny_instance():
    from routefront import parse_solomon

    return parse_solomon((FIXTURES / "tiny.txt").read_text())
