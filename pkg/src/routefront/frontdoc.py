"""The front document: the set of non-dominated alternatives a run
produced, serialized as diff-friendly JSON.

Entries carry full routes and per-customer arrival/violation traces so
a viewer can draw tours and violation bars without re-running the
evaluation. Keys are written in sorted order and floats at full
precision, so identical runs produce byte-identical documents.
"""

from __future__ import annotations

import json
import warnings
from dataclasses import dataclass
from datetime import datetime, timezone

from .model import (
    CustomerVisit,
    Instance,
    ObjectiveVector,
    Solution,
    TimingPolicy,
    trace_solution,
)
from .pareto import Archive, dominates

FORMAT_TAG = "vrptw-front/1"

_ENTRY_KEYS = {"objectives", "routes", "trace"}
_DOC_KEYS = {"format", "instance", "seed", "produced_at", "config", "entries"}
_OBJECTIVE_KEYS = {
    "total_distance",
    "vehicle_count",
    "total_tw_violation",
    "violated_tw_count",
}
_TRACE_KEYS = {
    "customer_id",
    "route_index",
    "position",
    "arrival",
    "service_start",
    "departure",
    "lateness",
    "earliness",
    "violation",
}


class FrontSchemaError(ValueError):
    """A document violates the schema; the path names the spot."""

    def __init__(self, path: str, message: str):
        self.path = path
        self.message = message
        super().__init__(f"{path}: {message}")


@dataclass(frozen=True)
class FrontEntry:
    objectives: ObjectiveVector
    routes: tuple[tuple[int, ...], ...]
    trace: tuple[CustomerVisit, ...]

    def to_dict(self) -> dict:
        return {
            "objectives": self.objectives.to_dict(),
            "routes": [list(r) for r in self.routes],
            "trace": [v.to_dict() for v in self.trace],
        }


@dataclass(frozen=True)
class FrontDocument:
    instance_name: str
    seed: int
    produced_at: str
    config: dict
    entries: tuple[FrontEntry, ...]

    def to_dict(self) -> dict:
        return {
            "format": FORMAT_TAG,
            "instance": self.instance_name,
            "seed": self.seed,
            "produced_at": self.produced_at,
            "config": self.config,
            "entries": [e.to_dict() for e in self.entries],
        }


def _utc_now() -> str:
    return datetime.now(timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")


def build_front_document(
    instance: Instance,
    config,
    archive,
    produced_at: str | None = None,
) -> FrontDocument:
    """Assemble the document from an archive (or a bare sequence of
    (solution, objectives) pairs), tracing every entry.

    Entries are ordered by objective value so the document is stable
    and diffable. produced_at defaults to the current UTC time; pass a
    fixed value for reproducible output.
    """
    policy = config.timing_policy
    raw = archive.entries() if isinstance(archive, Archive) else archive
    pairs = sorted(raw, key=lambda e: e[1].as_tuple())
    entries = tuple(
        FrontEntry(
            objectives=obj,
            routes=sol.routes,
            trace=trace_solution(instance, sol, policy),
        )
        for sol, obj in pairs
    )
    return FrontDocument(
        instance_name=instance.name,
        seed=config.rng_seed,
        produced_at=produced_at if produced_at is not None else _utc_now(),
        config=config.to_dict(),
        entries=entries,
    )


def _check_mutual_nondomination(entries: tuple[FrontEntry, ...]) -> None:
    for i, a in enumerate(entries):
        for j, b in enumerate(entries):
            if i != j and dominates(a.objectives, b.objectives):
                raise FrontSchemaError(
                    f"entries[{j}]",
                    f"dominated by entries[{i}]; entries must be mutually non-dominated",
                )


def write_front(document: FrontDocument) -> str:
    """Serialize to canonical JSON text; rejects dominated entries."""
    _check_mutual_nondomination(document.entries)
    return json.dumps(document.to_dict(), sort_keys=True, indent=2) + "\n"


def _require(data: dict, key: str, kind, path: str):
    if key not in data:
        raise FrontSchemaError(f"{path}.{key}", "missing required field")
    value = data[key]
    if kind is float:
        if not isinstance(value, (int, float)) or isinstance(value, bool):
            raise FrontSchemaError(f"{path}.{key}", f"expected a number, got {type(value).__name__}")
        return float(value)
    if kind is int:
        if not isinstance(value, int) or isinstance(value, bool):
            raise FrontSchemaError(f"{path}.{key}", f"expected an integer, got {type(value).__name__}")
        return value
    if not isinstance(value, kind):
        raise FrontSchemaError(f"{path}.{key}", f"expected {kind.__name__}, got {type(value).__name__}")
    return value


def _warn_unknown(data: dict, known: set[str], path: str) -> None:
    for key in data:
        if key not in known:
            warnings.warn(f"ignoring unknown field {path}.{key}", stacklevel=2)


def _parse_objectives(data, path: str) -> ObjectiveVector:
    if not isinstance(data, dict):
        raise FrontSchemaError(path, "expected an object")
    _warn_unknown(data, _OBJECTIVE_KEYS, path)
    values = {
        "total_distance": _require(data, "total_distance", float, path),
        "vehicle_count": _require(data, "vehicle_count", int, path),
        "total_tw_violation": _require(data, "total_tw_violation", float, path),
        "violated_tw_count": _require(data, "violated_tw_count", int, path),
    }
    try:
        return ObjectiveVector(**values)
    except ValueError as exc:
        raise FrontSchemaError(path, str(exc)) from exc


def _parse_routes(data, path: str) -> tuple[tuple[int, ...], ...]:
    if not isinstance(data, list) or not data:
        raise FrontSchemaError(path, "expected a non-empty array of routes")
    routes = []
    for r, route in enumerate(data):
        if not isinstance(route, list) or not route:
            raise FrontSchemaError(f"{path}[{r}]", "expected a non-empty array of customer ids")
        for k, cid in enumerate(route):
            if not isinstance(cid, int) or isinstance(cid, bool):
                raise FrontSchemaError(f"{path}[{r}][{k}]", "expected an integer customer id")
        routes.append(tuple(route))
    return tuple(routes)


def _parse_trace(data, path: str) -> tuple[CustomerVisit, ...]:
    if not isinstance(data, list):
        raise FrontSchemaError(path, "expected an array of visit records")
    visits = []
    for k, raw in enumerate(data):
        vp = f"{path}[{k}]"
        if not isinstance(raw, dict):
            raise FrontSchemaError(vp, "expected an object")
        _warn_unknown(raw, _TRACE_KEYS, vp)
        visits.append(
            CustomerVisit(
                customer_id=_require(raw, "customer_id", int, vp),
                route_index=_require(raw, "route_index", int, vp),
                position=_require(raw, "position", int, vp),
                arrival=_require(raw, "arrival", float, vp),
                service_start=_require(raw, "service_start", float, vp),
                departure=_require(raw, "departure", float, vp),
                lateness=_require(raw, "lateness", float, vp),
                earliness=_require(raw, "earliness", float, vp),
                violation=_require(raw, "violation", float, vp),
            )
        )
    return tuple(visits)


def read_front(text: str) -> FrontDocument:
    """Parse and validate front JSON; unknown fields warn, schema
    violations raise FrontSchemaError naming the path."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FrontSchemaError("$", f"not valid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise FrontSchemaError("$", "expected a JSON object")
    _warn_unknown(data, _DOC_KEYS, "$")
    tag = _require(data, "format", str, "$")
    if tag != FORMAT_TAG:
        raise FrontSchemaError("$.format", f"unsupported format {tag!r}")
    instance_name = _require(data, "instance", str, "$")
    seed = _require(data, "seed", int, "$")
    produced_at = _require(data, "produced_at", str, "$")
    config = _require(data, "config", dict, "$")
    raw_entries = _require(data, "entries", list, "$")
    entries = []
    for i, raw in enumerate(raw_entries):
        path = f"$.entries[{i}]"
        if not isinstance(raw, dict):
            raise FrontSchemaError(path, "expected an object")
        _warn_unknown(raw, _ENTRY_KEYS, path)
        for key in ("objectives", "routes", "trace"):
            if key not in raw:
                raise FrontSchemaError(f"{path}.{key}", "missing required field")
        entries.append(
            FrontEntry(
                objectives=_parse_objectives(raw["objectives"], f"{path}.objectives"),
                routes=_parse_routes(raw["routes"], f"{path}.routes"),
                trace=_parse_trace(raw["trace"], f"{path}.trace"),
            )
        )
    document = FrontDocument(
        instance_name=instance_name,
        seed=seed,
        produced_at=produced_at,
        config=dict(config),
        entries=tuple(entries),
    )
    try:
        _check_mutual_nondomination(document.entries)
    except FrontSchemaError as exc:
        raise FrontSchemaError(f"$.{exc.path}", exc.message) from exc
    return document
