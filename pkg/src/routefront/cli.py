"""Batch command line: solve an instance to a front document, generate
random instances, summarize fronts as a table.

Exit codes are part of the contract: 0 success, 2 bad flags or flag
values, 3 input parse failures (unreadable or malformed instance/front
files), 4 output I/O failures. Errors go to standard error. With
--quiet the only standard output is the final front path line.

Set SOURCE_DATE_EPOCH to pin the document timestamp; reruns of the same
command are then byte-identical.
"""

from __future__ import annotations

import argparse
import os
import sys
from datetime import datetime, timezone
from pathlib import Path

from .frontdoc import FrontSchemaError, build_front_document, read_front, write_front
from .ga import GAConfig, run
from .model import OBJECTIVE_NAMES, TimingPolicy
from .pareto import FitnessParams
from .solomon import (
    SolomonParseError,
    format_solomon,
    generate_random_instance,
    parse_solomon,
)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_PARSE = 3
EXIT_IO = 4

PROGRESS_EVERY = 10

_SHORT_LABELS = {
    "total_distance": "dist",
    "vehicle_count": "veh",
    "total_tw_violation": "tw",
    "violated_tw_count": "late",
}


def _fail(message: str, code: int) -> int:
    print(f"routefront: error: {message}", file=sys.stderr)
    return code


def _produced_at() -> str:
    """Current UTC time, or the SOURCE_DATE_EPOCH override for
    reproducible output."""
    raw = os.environ.get("SOURCE_DATE_EPOCH")
    if raw is None:
        return datetime.now(timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")
    stamp = int(raw)
    return datetime.fromtimestamp(stamp, tz=timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")


def _cmd_solve(args: argparse.Namespace) -> int:
    try:
        text = Path(args.instance).read_text(encoding="utf-8")
    except OSError as exc:
        return _fail(f"cannot read instance: {exc}", EXIT_PARSE)
    try:
        instance = parse_solomon(text)
    except SolomonParseError as exc:
        return _fail(f"{args.instance}: {exc}", EXIT_PARSE)
    try:
        produced_at = _produced_at()
    except ValueError:
        return _fail("SOURCE_DATE_EPOCH must be an integer timestamp", EXIT_USAGE)
    try:
        config = GAConfig(
            population_size=args.pop,
            generations=args.generations,
            rng_seed=args.seed,
            timing_policy=TimingPolicy.parse(args.policy),
            fitness_params=FitnessParams(f_max=args.fmax, f_min=args.fmin),
        )
    except ValueError as exc:
        return _fail(str(exc), EXIT_USAGE)

    def progress(snapshot) -> None:
        index = snapshot.generation_index
        if index % PROGRESS_EVERY != 0 and index != config.generations:
            return
        bests = "  ".join(
            f"{_SHORT_LABELS[name]} {getattr(vec, name):g}"
            for name, vec, _ in snapshot.best_per_objective
        )
        print(
            f"generation {index:>5}  archive {len(snapshot.archive_objectives):>4}  best: {bests}"
        )

    result = run(instance, config, progress_sink=None if args.quiet else progress)
    document = build_front_document(instance, config, result.archive, produced_at=produced_at)
    out_path = Path(args.out) if args.out else Path(args.instance).with_suffix(".front.json")
    try:
        out_path.write_text(write_front(document), encoding="utf-8")
    except OSError as exc:
        return _fail(f"cannot write front: {exc}", EXIT_IO)
    print(out_path)
    return EXIT_OK


def _cmd_gen_instance(args: argparse.Namespace) -> int:
    try:
        instance = generate_random_instance(
            args.customers,
            extent=args.extent,
            tightness=args.tightness,
            seed=args.seed,
            capacity=args.capacity,
            service_time=args.service_time,
        )
    except ValueError as exc:
        return _fail(str(exc), EXIT_USAGE)
    text = format_solomon(instance)
    if args.out:
        try:
            Path(args.out).write_text(text, encoding="utf-8")
        except OSError as exc:
            return _fail(f"cannot write instance: {exc}", EXIT_IO)
        print(args.out)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _cmd_front_summary(args: argparse.Namespace) -> int:
    try:
        text = Path(args.front).read_text(encoding="utf-8")
    except OSError as exc:
        return _fail(f"cannot read front: {exc}", EXIT_PARSE)
    try:
        document = read_front(text)
    except FrontSchemaError as exc:
        return _fail(f"{args.front}: {exc}", EXIT_PARSE)
    print(f"instance {document.instance_name}  seed {document.seed}  alternatives {len(document.entries)}")
    header = f"{'alt':>4}  {'total_distance':>14}  {'vehicle_count':>13}  {'total_tw_violation':>18}  {'violated_tw_count':>17}"
    print(header)
    rows = sorted(
        enumerate(document.entries),
        key=lambda pair: (pair[1].objectives.total_distance, pair[0]),
    )
    for index, entry in rows:
        o = entry.objectives
        print(
            f"{index:>4}  {o.total_distance:>14.2f}  {o.vehicle_count:>13}  "
            f"{o.total_tw_violation:>18.2f}  {o.violated_tw_count:>17}"
        )
    return EXIT_OK


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="routefront",
        description="Multi-objective route solver: evolve a set of trade-off alternatives for a time-window routing instance.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    solve = sub.add_parser("solve", help="run the solver on a Solomon-format instance")
    solve.add_argument("instance", help="path to a Solomon-format instance file")
    solve.add_argument("--pop", type=int, default=100, help="population size (default 100)")
    solve.add_argument("--generations", type=int, default=500, help="generation count (default 500)")
    solve.add_argument("--seed", type=int, default=0, help="random seed (default 0)")
    solve.add_argument(
        "--policy",
        choices=[p.value for p in TimingPolicy],
        default=TimingPolicy.WAIT_ALLOWED.value,
        help="timing policy: wait = early arrivals wait at the customer, nowait = early arrivals count as violations",
    )
    solve.add_argument("--fmax", type=float, default=100.0, help="fitness of the least dominated (default 100)")
    solve.add_argument("--fmin", type=float, default=1.0, help="fitness of the most dominated (default 1)")
    solve.add_argument("--out", help="front output path (default: instance path with .front.json)")
    solve.add_argument("--quiet", action="store_true", help="print only the final front path")
    solve.set_defaults(func=_cmd_solve)

    gen = sub.add_parser("gen-instance", help="generate a random instance in Solomon format")
    gen.add_argument("--customers", type=int, default=25, help="customer count (default 25)")
    gen.add_argument("--extent", type=float, default=100.0, help="side length of the coordinate square (default 100)")
    gen.add_argument(
        "--tightness",
        type=float,
        default=0.5,
        help="time-window tightness in [0, 1]: 0 all-day windows, 1 service-time-wide (default 0.5)",
    )
    gen.add_argument("--seed", type=int, default=0, help="random seed (default 0)")
    gen.add_argument("--capacity", type=float, default=200.0, help="vehicle capacity (default 200)")
    gen.add_argument("--service-time", type=float, default=10.0, help="per-customer service time (default 10)")
    gen.add_argument("--out", help="output path (default: standard output)")
    gen.set_defaults(func=_cmd_gen_instance)

    front = sub.add_parser("front", help="inspect front documents")
    front_sub = front.add_subparsers(dest="front_command", required=True)
    summary = front_sub.add_parser("summary", help="print one table row per alternative")
    summary.add_argument("front", help="path to a front document")
    summary.set_defaults(func=_cmd_front_summary)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
