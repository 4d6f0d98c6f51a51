"""Construction heuristics, kept separate from the genetic algorithm.

The nearest-neighbor construction doubles as a quality baseline: any
optimizer worth running should match or beat its total distance.
"""

from __future__ import annotations

import math

from .model import Instance, Solution, make_solution


def nearest_neighbor_solution(instance: Instance) -> Solution:
    """Greedy capacity-aware nearest-neighbor construction.

    Starting at the depot, repeatedly drive to the nearest unserved
    customer that still fits the remaining capacity; when none fits,
    return to the depot and open a new route. Ties go to the smaller
    customer id, so the result is deterministic.
    """
    unserved = {c.id: c for c in instance.customers}
    routes: list[list[int]] = []
    while unserved:
        route: list[int] = []
        load = 0.0
        x, y = instance.depot.x, instance.depot.y
        while True:
            best_id = None
            best_dist = math.inf
            for cid in sorted(unserved):
                customer = unserved[cid]
                if load + customer.demand > instance.vehicle_capacity:
                    continue
                d = math.hypot(x - customer.x, y - customer.y)
                if d < best_dist:
                    best_dist = d
                    best_id = cid
            if best_id is None:
                break
            customer = unserved.pop(best_id)
            route.append(best_id)
            load += customer.demand
            x, y = customer.x, customer.y
        routes.append(route)
    return make_solution(routes)
