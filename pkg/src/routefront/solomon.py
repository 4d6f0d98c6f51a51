"""Reading and writing Solomon-format instance files, plus a generator
for random test instances.

The layout is the classic benchmark text format: a name line, a VEHICLE
section carrying the fleet size and capacity, and a CUSTOMER table with
columns CUST NO., XCOORD., YCOORD., DEMAND, READY TIME, DUE DATE,
SERVICE TIME. Row 0 is the depot. Parsing is whitespace-tolerant and
never raises anything but SolomonParseError on bad input.
"""

from __future__ import annotations

import math
import random

from .model import Customer, Instance


class SolomonParseError(ValueError):
    """Malformed instance text; carries the offending line number."""

    def __init__(self, line_no: int | None, message: str):
        self.line_no = line_no
        self.message = message
        where = f"line {line_no}: " if line_no is not None else ""
        super().__init__(f"{where}{message}")


def _is_number(token: str) -> bool:
    try:
        float(token)
    except ValueError:
        return False
    return True


def _numeric_row(line: str) -> list[float] | None:
    tokens = line.split()
    if len(tokens) < 7:
        return None
    if not all(_is_number(t) for t in tokens[:7]):
        return None
    return [float(t) for t in tokens[:7]]


def parse_solomon(text: str) -> Instance:
    """Parse Solomon-format text into an Instance.

    Structural problems (missing sections, non-numeric fields,
    duplicate ids, demand over capacity) raise SolomonParseError naming
    the line.
    """
    lines = text.splitlines()
    vehicle_at = None
    customer_at = None
    for idx, line in enumerate(lines):
        word = line.strip().upper()
        if word == "VEHICLE" and vehicle_at is None:
            vehicle_at = idx
        elif word == "CUSTOMER" and customer_at is None:
            customer_at = idx
    if vehicle_at is None:
        raise SolomonParseError(None, "missing VEHICLE section")
    if customer_at is None or customer_at < vehicle_at:
        raise SolomonParseError(None, "missing CUSTOMER section")

    name = None
    for line in lines[:vehicle_at]:
        if line.strip():
            name = line.strip()
            break
    if name is None:
        raise SolomonParseError(1, "missing instance name before VEHICLE section")

    max_vehicles = None
    capacity = None
    for idx in range(vehicle_at + 1, customer_at):
        tokens = lines[idx].split()
        if len(tokens) >= 2 and all(_is_number(t) for t in tokens[:2]):
            max_vehicles = int(float(tokens[0]))
            capacity = float(tokens[1])
            if max_vehicles < 1:
                raise SolomonParseError(idx + 1, "vehicle count must be positive")
            if capacity <= 0:
                raise SolomonParseError(idx + 1, "vehicle capacity must be positive")
            break
    if capacity is None:
        raise SolomonParseError(
            vehicle_at + 1, "VEHICLE section has no numeric count/capacity row"
        )

    depot = None
    customers: list[Customer] = []
    seen_ids: set[int] = set()
    table_started = False
    for idx in range(customer_at + 1, len(lines)):
        line = lines[idx]
        if not line.strip():
            continue
        row = _numeric_row(line)
        if row is None:
            if table_started:
                raise SolomonParseError(idx + 1, f"non-numeric customer row: {line.strip()!r}")
            continue  # header line such as "CUST NO.  XCOORD. ..."
        table_started = True
        raw_id, x, y, demand, ready, due, service = row
        if raw_id != int(raw_id):
            raise SolomonParseError(idx + 1, f"customer id must be an integer, got {raw_id}")
        cid = int(raw_id)
        if cid in seen_ids or (depot is not None and cid == depot.id):
            raise SolomonParseError(idx + 1, f"duplicate customer id {cid}")
        if ready > due:
            raise SolomonParseError(idx + 1, f"customer {cid}: ready time exceeds due date")
        if demand < 0 or service < 0:
            raise SolomonParseError(
                idx + 1, f"customer {cid}: demand and service time must be non-negative"
            )
        if depot is None:
            if cid != 0:
                raise SolomonParseError(idx + 1, "first customer row must be the depot (id 0)")
            if demand != 0:
                raise SolomonParseError(idx + 1, "depot demand must be zero")
            depot = Customer(cid, x, y, 0.0, ready, due, service)
            continue
        if demand > capacity:
            raise SolomonParseError(
                idx + 1,
                f"customer {cid} demand {demand} exceeds vehicle capacity {capacity}",
            )
        seen_ids.add(cid)
        customers.append(Customer(cid, x, y, demand, ready, due, service))

    if depot is None:
        raise SolomonParseError(customer_at + 1, "CUSTOMER section has no data rows")
    if not customers:
        raise SolomonParseError(customer_at + 1, "instance has no customers besides the depot")
    return Instance(
        name=name,
        depot=depot,
        customers=tuple(customers),
        vehicle_capacity=capacity,
        max_vehicles=max_vehicles,
    )


def _fmt(value: float) -> str:
    """Format a number losslessly: integers bare, floats via repr."""
    if value == int(value) and abs(value) < 1e15:
        return str(int(value))
    return repr(float(value))


def format_solomon(instance: Instance) -> str:
    """Emit the canonical Solomon layout; parse(format(x)) == x."""
    out = [instance.name, "", "VEHICLE", "NUMBER     CAPACITY"]
    out.append(f"{_fmt(instance.max_vehicles):>6} {_fmt(instance.vehicle_capacity):>10}")
    out.append("")
    out.append("CUSTOMER")
    out.append(
        "CUST NO.  XCOORD.   YCOORD.    DEMAND   READY TIME   DUE DATE   SERVICE TIME"
    )
    out.append("")
    for c in (instance.depot, *instance.customers):
        row = [
            _fmt(c.id),
            _fmt(c.x),
            _fmt(c.y),
            _fmt(c.demand),
            _fmt(c.ready_time),
            _fmt(c.due_time),
            _fmt(c.service_time),
        ]
        out.append("  ".join(f"{v:>10}" for v in row))
    return "\n".join(out) + "\n"


def generate_random_instance(
    n: int,
    extent: float = 100.0,
    tightness: float = 0.5,
    seed: int = 0,
    capacity: float = 200.0,
    service_time: float = 10.0,
) -> Instance:
    """Deterministic random instance on a [0, extent] square.

    tightness interpolates window width: 0 gives every customer the
    whole planning horizon [0, horizon], 1 shrinks windows to exactly
    the service time. Demands are small integers well under capacity.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    if not 0.0 <= tightness <= 1.0:
        raise ValueError("tightness must lie in [0, 1]")
    if extent <= 0:
        raise ValueError("extent must be positive")
    rng = random.Random(seed)
    horizon = 4.0 * extent + n * service_time
    depot = Customer(0, extent / 2.0, extent / 2.0, 0.0, 0.0, horizon, 0.0)
    width = service_time + (1.0 - tightness) * (horizon - service_time)
    customers = []
    total_demand = 0.0
    for cid in range(1, n + 1):
        x = rng.uniform(0.0, extent)
        y = rng.uniform(0.0, extent)
        demand = float(rng.randint(1, min(30, int(capacity))))
        total_demand += demand
        start = rng.uniform(0.0, horizon - width)
        customers.append(
            Customer(cid, x, y, demand, start, start + width, service_time)
        )
    max_vehicles = max(3, 2 * math.ceil(total_demand / capacity))
    return Instance(
        name=f"random-n{n}-t{tightness:g}-s{seed}",
        depot=depot,
        customers=tuple(customers),
        vehicle_capacity=capacity,
        max_vehicles=max_vehicles,
    )
