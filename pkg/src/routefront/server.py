"""Local HTTP service wrapping the solver so a browser client can
start, steer, watch, and compare runs.

Each run owns one background thread executing the sequential GA loop;
the API layer only ever touches immutable snapshots and lock-guarded
control state. Every run accumulates an ordered frame log (snapshot
frames interleaved with status-change frames); the event stream replays
it from any position, so reconnecting clients lose nothing.

Control semantics: pause, resume, cancel and config patches are
accepted immediately but take effect at the next generation boundary.
Only mutation_rate, crossover_rate and fitness_params may change
mid-run; population size and seed are frozen at start.

Single-process desk tool: no authentication, no persistence.
"""

from __future__ import annotations

import argparse
import json
import os
import threading
import time
from dataclasses import dataclass, field

from fastapi import FastAPI, HTTPException, Request
from fastapi.responses import StreamingResponse

from .frontdoc import build_front_document
from .ga import GAConfig, GenerationSnapshot, apply_steering, run
from .model import Instance, trace_solution
from .pareto import Archive
from .solomon import SolomonParseError, parse_solomon

RUNNING = "Running"
PAUSED = "Paused"
CANCELLED = "Cancelled"
FINISHED = "Finished"

_KEEPALIVE_SECONDS = 5.0
_MAX_THROTTLE_MS = 10_000


@dataclass(frozen=True)
class Frame:
    """One entry of a run's ordered event log."""

    seq: int
    kind: str  # "snapshot" or "status"
    data: dict

    def render(self) -> str:
        payload = json.dumps(self.data, sort_keys=True, separators=(",", ":"))
        return f"id: {self.seq}\nevent: {self.kind}\ndata: {payload}\n\n"


class RunController:
    """Owns one run: its thread, status, frame log and steering state."""

    def __init__(
        self,
        run_id: str,
        instance_id: str,
        instance: Instance,
        config: GAConfig,
        throttle_ms: int = 0,
    ):
        self.run_id = run_id
        self.instance_id = instance_id
        self.instance = instance
        self.initial_config = config
        self.effective_config = config
        self.throttle_seconds = throttle_ms / 1000.0
        self.status = RUNNING
        self._cond = threading.Condition()
        self._frames: list[Frame] = []
        self._pause_requested = False
        self._cancel_requested = False
        self._pending_patch: dict | None = None
        self._front_pairs: tuple = ()
        self._latest_index: int | None = None
        self._archive = Archive(capacity=config.archive_capacity)
        self._thread = threading.Thread(target=self._run_loop, daemon=True)
        self._append_status("created", status=RUNNING)

    def start(self) -> None:
        self._thread.start()

    # -- frame log ---------------------------------------------------

    def _append(self, kind: str, data: dict) -> None:
        # callers hold no lock; the log is the single ordering point
        with self._cond:
            self._append_locked(kind, data)

    def _append_locked(self, kind: str, data: dict) -> None:
        self._frames.append(Frame(seq=len(self._frames), kind=kind, data=data))
        self._cond.notify_all()

    def _append_status(self, cause: str, status: str, **extra) -> None:
        with self._cond:
            data = {
                "status": status,
                "cause": cause,
                "generation_index": self._latest_index,
            }
            data.update(extra)
            self._append_locked("status", data)

    def frames_after(self, seq: int, timeout: float) -> tuple[list[Frame], bool]:
        """Frames with sequence number strictly above seq, waiting up to
        timeout for news; the flag reports whether the log is complete
        (run terminal and caught up)."""
        deadline = time.monotonic() + timeout
        with self._cond:
            while True:
                fresh = self._frames[seq + 1 :]
                terminal = self.status in (CANCELLED, FINISHED) and not self._thread.is_alive()
                if fresh or terminal:
                    return fresh, terminal and not fresh
                remaining = deadline - time.monotonic()
                if remaining <= 0:
                    return [], False
                self._cond.wait(remaining)

    # -- GA thread ---------------------------------------------------

    def _sink(self, snapshot: GenerationSnapshot) -> None:
        with self._cond:
            self._front_pairs = self._archive.entries()
            self._latest_index = snapshot.generation_index
            self._append_locked("snapshot", snapshot.to_dict(include_elapsed=True))

    def _cancelled(self) -> bool:
        with self._cond:
            return self._cancel_requested

    def _boundary(self, generation: int, effective: GAConfig) -> GAConfig | None:
        if self.throttle_seconds > 0:
            time.sleep(self.throttle_seconds)
        with self._cond:
            while self._pause_requested and not self._cancel_requested:
                self._cond.wait(0.1)
            if self._cancel_requested:
                return None
            if self._pending_patch is None:
                return None
            updated = apply_steering(effective, self._pending_patch)
            self._pending_patch = None
            self.effective_config = updated
            self._append_locked(
                "status",
                {
                    "status": self.status,
                    "cause": "config",
                    "generation_index": generation,
                    "config": updated.to_dict(),
                },
            )
            return updated

    def _run_loop(self) -> None:
        result = run(
            self.instance,
            self.initial_config,
            progress_sink=self._sink,
            cancel=self._cancelled,
            boundary_hook=self._boundary,
            archive=self._archive,
        )
        with self._cond:
            self.effective_config = result.config
            self._front_pairs = self._archive.entries()
            self.status = CANCELLED if self._cancel_requested else FINISHED
            cause = "cancel" if self._cancel_requested else "finished"
            self._append_locked(
                "status",
                {
                    "status": self.status,
                    "cause": cause,
                    "generation_index": self._latest_index,
                },
            )

    # -- control plane -----------------------------------------------

    def handle(self) -> dict:
        with self._cond:
            return {
                "run_id": self.run_id,
                "instance_id": self.instance_id,
                "status": self.status,
                "config": self.effective_config.to_dict(),
                "latest_snapshot_index": self._latest_index,
                "throttle_ms": int(self.throttle_seconds * 1000),
            }

    def pause(self) -> dict:
        with self._cond:
            if self.status != RUNNING:
                raise HTTPException(409, f"cannot pause a {self.status} run")
            self.status = PAUSED
            self._pause_requested = True
        self._append_status("pause", status=PAUSED)
        return self.handle()

    def resume(self) -> dict:
        with self._cond:
            if self.status != PAUSED:
                raise HTTPException(409, f"cannot resume a {self.status} run")
            self.status = RUNNING
            self._pause_requested = False
            self._cond.notify_all()
        self._append_status("resume", status=RUNNING)
        return self.handle()

    def cancel(self) -> dict:
        with self._cond:
            if self.status in (CANCELLED, FINISHED):
                raise HTTPException(409, f"cannot cancel a {self.status} run")
            # flip eagerly; the loop stops at its next boundary check
            self.status = CANCELLED
            self._cancel_requested = True
            self._pause_requested = False
            self._cond.notify_all()
        return self.handle()

    def patch_config(self, updates: dict) -> dict:
        with self._cond:
            if self.status in (CANCELLED, FINISHED):
                raise HTTPException(409, f"cannot reconfigure a {self.status} run")
            merged = dict(self._pending_patch or {})
            merged.update(updates)
            try:
                apply_steering(self.effective_config, merged)
            except (ValueError, TypeError) as exc:
                raise HTTPException(422, str(exc)) from exc
            self._pending_patch = merged
            pending = dict(merged)
        handle = self.handle()
        handle["pending_config"] = pending
        handle["applies"] = "next generation boundary"
        return handle

    def front_document(self) -> dict:
        with self._cond:
            pairs = self._front_pairs
            config = self.effective_config
        document = build_front_document(self.instance, config, pairs)
        return document.to_dict()

    def alternative_trace(self, k: int) -> dict:
        with self._cond:
            pairs = self._front_pairs
            config = self.effective_config
        ordered = sorted(pairs, key=lambda pair: pair[1].as_tuple())
        if not 0 <= k < len(ordered):
            raise HTTPException(404, f"no alternative {k}; front has {len(ordered)} entries")
        solution, objectives = ordered[k]
        visits = trace_solution(self.instance, solution, config.timing_policy)
        return {
            "alternative": k,
            "objectives": objectives.to_dict(),
            "routes": [list(route) for route in solution.routes],
            "trace": [visit.to_dict() for visit in visits],
        }


@dataclass
class ServerState:
    instances: dict[str, Instance] = field(default_factory=dict)
    runs: dict[str, RunController] = field(default_factory=dict)
    _counter: int = 0
    _lock: threading.Lock = field(default_factory=threading.Lock)

    def next_id(self, prefix: str) -> str:
        with self._lock:
            self._counter += 1
            return f"{prefix}{self._counter}"


def _instance_summary(instance_id: str, instance: Instance) -> dict:
    return {
        "instance_id": instance_id,
        "name": instance.name,
        "customer_count": len(instance.customers),
        "vehicle_capacity": instance.vehicle_capacity,
        "max_vehicles": instance.max_vehicles,
        "depot": {"x": instance.depot.x, "y": instance.depot.y},
        "customers": [
            {
                "id": c.id,
                "x": c.x,
                "y": c.y,
                "demand": c.demand,
                "ready_time": c.ready_time,
                "due_time": c.due_time,
                "service_time": c.service_time,
            }
            for c in instance.customers
        ],
    }


def create_app() -> FastAPI:
    state = ServerState()
    app = FastAPI(title="routefront", description="Live multi-objective routing solver")

    def get_instance(instance_id: str) -> Instance:
        instance = state.instances.get(instance_id)
        if instance is None:
            raise HTTPException(404, f"unknown instance {instance_id}")
        return instance

    def get_run(run_id: str) -> RunController:
        controller = state.runs.get(run_id)
        if controller is None:
            raise HTTPException(404, f"unknown run {run_id}")
        return controller

    @app.post("/instances")
    async def create_instance(request: Request) -> dict:
        text = (await request.body()).decode("utf-8", errors="replace")
        try:
            instance = parse_solomon(text)
        except SolomonParseError as exc:
            raise HTTPException(422, str(exc)) from exc
        instance_id = state.next_id("i")
        state.instances[instance_id] = instance
        return _instance_summary(instance_id, instance)

    @app.get("/instances/{instance_id}")
    def read_instance(instance_id: str) -> dict:
        return _instance_summary(instance_id, get_instance(instance_id))

    @app.post("/runs")
    async def create_run(request: Request) -> dict:
        try:
            payload = await request.json()
        except json.JSONDecodeError as exc:
            raise HTTPException(422, f"body must be JSON: {exc}") from exc
        if not isinstance(payload, dict):
            raise HTTPException(422, "body must be a JSON object")
        instance_id = payload.get("instance_id")
        if not isinstance(instance_id, str):
            raise HTTPException(422, "instance_id: required string field")
        instance = get_instance(instance_id)
        raw_config = payload.get("config", {})
        if not isinstance(raw_config, dict):
            raise HTTPException(422, "config: expected an object")
        try:
            config = GAConfig.from_dict(raw_config)
        except (ValueError, TypeError) as exc:
            raise HTTPException(422, str(exc)) from exc
        throttle_ms = payload.get("throttle_ms", 0)
        if not isinstance(throttle_ms, int) or isinstance(throttle_ms, bool):
            raise HTTPException(422, "throttle_ms: expected an integer")
        if not 0 <= throttle_ms <= _MAX_THROTTLE_MS:
            raise HTTPException(422, f"throttle_ms: must lie in [0, {_MAX_THROTTLE_MS}]")
        run_id = state.next_id("r")
        controller = RunController(run_id, instance_id, instance, config, throttle_ms)
        state.runs[run_id] = controller
        controller.start()
        return controller.handle()

    @app.get("/runs/{run_id}")
    def read_run(run_id: str) -> dict:
        return get_run(run_id).handle()

    @app.post("/runs/{run_id}/pause")
    def pause_run(run_id: str) -> dict:
        return get_run(run_id).pause()

    @app.post("/runs/{run_id}/resume")
    def resume_run(run_id: str) -> dict:
        return get_run(run_id).resume()

    @app.post("/runs/{run_id}/cancel")
    def cancel_run(run_id: str) -> dict:
        return get_run(run_id).cancel()

    @app.patch("/runs/{run_id}/config")
    async def patch_run_config(run_id: str, request: Request) -> dict:
        controller = get_run(run_id)
        try:
            updates = await request.json()
        except json.JSONDecodeError as exc:
            raise HTTPException(422, f"body must be JSON: {exc}") from exc
        if not isinstance(updates, dict):
            raise HTTPException(422, "body must be a JSON object")
        return controller.patch_config(updates)

    @app.get("/runs/{run_id}/front")
    def read_front(run_id: str) -> dict:
        return get_run(run_id).front_document()

    @app.get("/runs/{run_id}/alternatives/{k}/trace")
    def read_trace(run_id: str, k: int) -> dict:
        return get_run(run_id).alternative_trace(k)

    @app.get("/runs/{run_id}/events")
    def stream_events(run_id: str, request: Request, since: int = -1) -> StreamingResponse:
        controller = get_run(run_id)
        last_event_id = request.headers.get("last-event-id")
        if last_event_id is not None:
            try:
                since = max(since, int(last_event_id))
            except ValueError:
                pass

        def frames():
            seq = since
            while True:
                fresh, done = controller.frames_after(seq, timeout=_KEEPALIVE_SECONDS)
                for frame in fresh:
                    seq = frame.seq
                    yield frame.render()
                if done:
                    return
                if not fresh:
                    yield ": keepalive\n\n"

        return StreamingResponse(frames(), media_type="text/event-stream")

    return app


app = create_app()


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(prog="routefront-server")
    parser.add_argument("--host", default=os.environ.get("ROUTEFRONT_HOST", "127.0.0.1"))
    parser.add_argument("--port", type=int, default=int(os.environ.get("ROUTEFRONT_PORT", "8000")))
    args = parser.parse_args(argv)
    import uvicorn

    uvicorn.run(app, host=args.host, port=args.port)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
