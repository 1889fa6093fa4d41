"""Command-line interface.

Three subcommands: ``decide`` dumps one placement decision, ``run``
executes a scenario sweep into a CSV, and ``serve`` runs a surrogate
daemon. Exit codes: 0 success, 1 runtime failure, 2 usage or config error.
Set FORAGE_LOG to a level name (DEBUG, INFO, ...) to see logs.
"""

from __future__ import annotations

import argparse
import json
import logging
import math
import os
import sys
from pathlib import Path

from .context_model import (
    parse_application,
    parse_mobile,
    parse_network,
    parse_surrogate,
    split_address,
)
from .errors import (
    BadUnit,
    ConfigError,
    ForageError,
    InvalidWeights,
    MalformedDocument,
    MissingField,
    OrderSyntaxError,
    RangeError,
)
from .harness import load_scenario, run_scenario
from .runtime import serve
from .solver import Decision, SolverWeights, decide
from .workloads import get_task

_USAGE_ERRORS = (
    BadUnit,
    ConfigError,
    InvalidWeights,
    MalformedDocument,
    MissingField,
    OrderSyntaxError,
    RangeError,
)


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc}") from exc


def _jsonable(value: float | None) -> float | str | None:
    if value is None:
        return None
    return value if math.isfinite(value) else repr(value)


def _decision_dict(decision: Decision) -> dict:
    return {
        "outcome": decision.outcome,
        "target": decision.target,
        "elapsed_decision_time_s": decision.elapsed_decision_time,
        "ranked": [
            {
                "location": c.location,
                "kind": "local" if c.is_local else "surrogate",
                "feasible": c.verdict.feasible,
                "reason": c.verdict.reason,
                "cost": _jsonable(c.cost),
                "est_time_s": _jsonable(c.estimate.time) if c.estimate else None,
                "est_energy_j": _jsonable(c.estimate.energy) if c.estimate else None,
            }
            for c in decision.ranked
        ],
    }


def _print_decision(decision: Decision) -> None:
    header = f"{'location':<24} {'kind':<10} {'feasible':<9} {'cost':<24} {'time_s':<24} {'energy_j':<24} reason"
    print(header)
    for c in decision.ranked:
        time_s = repr(c.estimate.time) if c.estimate else ""
        energy = repr(c.estimate.energy) if c.estimate else ""
        print(
            f"{c.location:<24} {'local' if c.is_local else 'surrogate':<10} "
            f"{str(c.verdict.feasible).lower():<9} {repr(c.cost):<24} "
            f"{time_s:<24} {energy:<24} {c.verdict.reason or ''}"
        )
    if decision.outcome == "offload":
        winner = decision.ranked[0]
        print(f"DECISION: OFFLOAD -> {decision.target} (cost={winner.cost!r})")
    elif decision.outcome == "local":
        winner = decision.ranked[0]
        print(f"DECISION: LOCAL ({winner.location}, cost={winner.cost!r})")
    else:
        print("DECISION: INFEASIBLE (no location passes the memory and energy checks)")


def _cmd_decide(args: argparse.Namespace) -> int:
    mobile = parse_mobile(_read(args.mobile))
    surrogates = [parse_surrogate(_read(p)) for p in args.surrogate]
    link = parse_network(_read(args.network))
    app = parse_application(_read(args.app))
    weights = SolverWeights.from_text(args.weights)
    try:
        payload_bytes = float(len(get_task(app.name).make_input(args.input)))
    except ForageError:
        payload_bytes = 0.0  # no registered task; transfer floor still applies
    decision = decide(
        mobile,
        surrogates,
        [link] * len(surrogates),
        app,
        args.input,
        payload_bytes,
        weights,
        args.mode,
    )
    if args.json:
        print(json.dumps(_decision_dict(decision), indent=2))
    else:
        _print_decision(decision)
    return 0


def _cmd_run(args: argparse.Namespace) -> int:
    cfg = load_scenario(args.scenario)
    rows = run_scenario(cfg, out_path=args.out)
    print(f"wrote {len(rows)} rows to {args.out}")
    return 0


def _cmd_serve(args: argparse.Namespace) -> int:
    context = parse_surrogate(_read(args.context)) if args.context else None
    bind = split_address(args.bind)
    print(f"serving tasks on {bind[0]}:{bind[1]} (interrupt to stop)")
    serve(bind, context)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="forage",
        description="Offload-decision engine and execution runtime for mobile tasks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_decide = sub.add_parser("decide", help="rank locations for one task input")
    p_decide.add_argument("--mobile", required=True, help="mobile device descriptor")
    p_decide.add_argument(
        "--surrogate", required=True, action="append",
        help="surrogate descriptor (repeatable)",
    )
    p_decide.add_argument("--network", required=True, help="network descriptor")
    p_decide.add_argument("--app", required=True, help="application descriptor")
    p_decide.add_argument("--input", required=True, type=int, help="input value N")
    p_decide.add_argument("--weights", required=True, help="w1,w2,w3,w4 summing to 1")
    p_decide.add_argument("--mode", choices=("raw", "normalized"), default="raw")
    p_decide.add_argument("--json", action="store_true", help="machine-readable output")
    p_decide.set_defaults(func=_cmd_decide)

    p_run = sub.add_parser("run", help="run a scenario sweep into a CSV")
    p_run.add_argument("--scenario", required=True, help="scenario XML file")
    p_run.add_argument("--out", required=True, help="output CSV path")
    p_run.set_defaults(func=_cmd_run)

    p_serve = sub.add_parser("serve", help="run a surrogate task daemon")
    p_serve.add_argument(
        "--bind", default="127.0.0.1:9733", help="host:port to listen on"
    )
    p_serve.add_argument("--context", help="surrogate descriptor, for the daemon name")
    p_serve.set_defaults(func=_cmd_serve)
    return parser


def main(argv: list[str] | None = None) -> int:
    level = os.environ.get("FORAGE_LOG", "WARNING").upper()
    if not isinstance(logging.getLevelName(level), int):
        level = "WARNING"
    logging.basicConfig(level=level)
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except _USAGE_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ForageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
