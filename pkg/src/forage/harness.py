"""Experiment runner: three placement strategies across an input sweep.

For every input value a scenario runs the task three ways: always on the
device, always on the first surrogate (blind offloading), and wherever the
solver points. Each run lands in one CSV row. In simulated mode all timing
comes from the virtual clock, so a fixed scenario yields a byte-identical
file on every run; in real mode offloads cross an actual socket and rows
carry wall-clock measurements.
"""

from __future__ import annotations

import csv
import logging
from dataclasses import dataclass, fields
from pathlib import Path

from .context_model import (
    ApplicationContext,
    MobileContext,
    NetworkLink,
    SurrogateContext,
    parse_application,
    parse_mobile,
    parse_network,
    parse_surrogate,
)
from .errors import ConfigError, ForageError
from .estimator import estimate_local, estimate_offload, plan_transfer
from .runtime import SimulatedLink, VirtualClock, execute_local, execute_remote
from .solver import SolverWeights, cost, decide, feasibility
from .workloads import Task, get_task
from .xmlio import child_text, load_root, required_text

logger = logging.getLogger(__name__)

STRATEGIES = ("local", "offload", "solver")
LINK_MODES = ("simulated", "real")


@dataclass(frozen=True)
class ScenarioConfig:
    name: str
    mobile_path: Path
    surrogate_paths: tuple[Path, ...]
    network_path: Path
    app_path: Path
    sweep: tuple[int, ...]
    weights: SolverWeights
    mode: str = "raw"
    link_mode: str = "simulated"

    def __post_init__(self):
        if not self.sweep:
            raise ConfigError("sweep must list at least one input value")
        if not self.surrogate_paths:
            raise ConfigError("scenario needs at least one surrogate descriptor")
        if self.mode not in ("raw", "normalized"):
            raise ConfigError(f"mode must be raw or normalized, got {self.mode!r}")
        if self.link_mode not in LINK_MODES:
            raise ConfigError(
                f"link mode must be one of {LINK_MODES}, got {self.link_mode!r}"
            )


@dataclass(frozen=True)
class ResultRow:
    """One strategy at one input value. Field order is the CSV column order."""

    scenario: str
    input_value: int
    strategy: str
    decision: str
    location: str
    est_time_s: float | None
    meas_time_s: float | None
    est_energy_j: float | None
    cost: float | None
    feasible: bool
    notes: str = ""


CSV_COLUMNS = tuple(f.name for f in fields(ResultRow))


def parse_sweep(text: str) -> tuple[int, ...]:
    """Comma-separated input values; 'a..b' and 'a..b..step' expand to
    inclusive integer ranges."""
    values: list[int] = []
    for item in text.split(","):
        item = item.strip()
        if not item:
            raise ConfigError(f"empty item in sweep {text!r}")
        parts = item.split("..")
        try:
            numbers = [int(p) for p in parts]
        except ValueError:
            raise ConfigError(f"sweep item {item!r} is not an integer or range") from None
        if len(numbers) == 1:
            values.append(numbers[0])
        elif len(numbers) in (2, 3):
            start, stop = numbers[0], numbers[1]
            step = numbers[2] if len(numbers) == 3 else 1
            if step <= 0:
                raise ConfigError(f"sweep step must be positive in {item!r}")
            if stop < start:
                raise ConfigError(f"descending sweep range {item!r}")
            values.extend(range(start, stop + 1, step))
        else:
            raise ConfigError(f"sweep item {item!r} has too many '..'")
    if not values:
        raise ConfigError("sweep must list at least one input value")
    return tuple(values)


def load_scenario(path: str | Path) -> ScenarioConfig:
    """Load a scenario document; descriptor paths resolve relative to it.

    Expected tags: Name (optional, defaults to the file stem), Mobile,
    Surrogate (one or more), Network, Application, Sweep, Weights, and the
    optional Mode and LinkMode.
    """
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read scenario file {path}: {exc}") from exc
    try:
        root = load_root(text, "Scenario")
        base = path.parent

        def resolve(tag: str) -> Path:
            return base / required_text(root, tag)

        surrogate_paths = tuple(
            base / (node.text or "").strip() for node in root.findall("Surrogate")
        )
        if not surrogate_paths or any(p == base for p in surrogate_paths):
            raise ConfigError("scenario needs at least one non-empty <Surrogate> path")
        return ScenarioConfig(
            name=child_text(root, "Name") or path.stem,
            mobile_path=resolve("Mobile"),
            surrogate_paths=surrogate_paths,
            network_path=resolve("Network"),
            app_path=resolve("Application"),
            sweep=parse_sweep(required_text(root, "Sweep")),
            weights=SolverWeights.from_text(required_text(root, "Weights")),
            mode=child_text(root, "Mode") or "raw",
            link_mode=child_text(root, "LinkMode") or "simulated",
        )
    except ConfigError:
        raise
    except ForageError as exc:
        raise ConfigError(f"invalid scenario {path}: {exc}") from exc


def _load_descriptor(path: Path, parser, what: str):
    try:
        return parser(path.read_text(encoding="utf-8"))
    except OSError as exc:
        raise ConfigError(f"cannot read {what} descriptor {path}: {exc}") from exc
    except ForageError as exc:
        raise ConfigError(f"invalid {what} descriptor {path}: {exc}") from exc


@dataclass
class _Bench:
    """Everything run_scenario needs per row, loaded once."""

    cfg: ScenarioConfig
    mobile: MobileContext
    surrogates: tuple[SurrogateContext, ...]
    link: NetworkLink
    app: ApplicationContext
    task: Task
    clock: VirtualClock


def run_scenario(cfg: ScenarioConfig, out_path: str | Path | None = None) -> list[ResultRow]:
    """Execute the sweep and return the rows, optionally writing the CSV.

    Per-row execution failures are recorded in the row's notes and the run
    continues; only configuration problems abort.
    """
    mobile = _load_descriptor(cfg.mobile_path, parse_mobile, "mobile")
    surrogates = tuple(
        _load_descriptor(p, parse_surrogate, "surrogate") for p in cfg.surrogate_paths
    )
    link = _load_descriptor(cfg.network_path, parse_network, "network")
    app = _load_descriptor(cfg.app_path, parse_application, "application")
    try:
        task = get_task(app.name)
    except ForageError as exc:
        raise ConfigError(f"application {app.name!r} has no registered task: {exc}") from exc

    bench = _Bench(cfg, mobile, surrogates, link, app, task, VirtualClock())
    rows: list[ResultRow] = []
    for value in cfg.sweep:
        payload = task.make_input(value)
        rows.append(_local_row(bench, value, payload))
        rows.append(_offload_row(bench, value, payload))
        rows.append(_solver_row(bench, value, payload))
    if out_path is not None:
        write_csv(rows, out_path)
    return rows


def _local_row(bench: _Bench, value: int, payload: bytes) -> ResultRow:
    cfg, app, mobile = bench.cfg, bench.app, bench.mobile
    try:
        est = estimate_local(app, value, float(len(payload)), mobile)
    except ForageError as exc:
        return ResultRow(
            cfg.name, value, "local", "local", mobile.name,
            None, None, None, None, False, f"estimate failed: {exc}",
        )
    verdict = feasibility(est, app, mobile)
    c = cost(est, cfg.weights)
    if not verdict.feasible:
        return ResultRow(
            cfg.name, value, "local", "local", mobile.name,
            est.time, None, est.energy, c, False, verdict.reason or "",
        )
    meas, notes = _measure_local(bench, est, payload)
    return ResultRow(
        cfg.name, value, "local", "local", mobile.name,
        est.time, meas, est.energy, c, True, notes,
    )


def _offload_row(bench: _Bench, value: int, payload: bytes) -> ResultRow:
    cfg, app, mobile = bench.cfg, bench.app, bench.mobile
    surrogate = bench.surrogates[0]  # blind offloading targets the first surrogate
    try:
        est = estimate_offload(app, value, float(len(payload)), mobile, surrogate, bench.link)
    except ForageError as exc:
        return ResultRow(
            cfg.name, value, "offload", "offload", surrogate.name,
            None, None, None, None, False, f"estimate failed: {exc}",
        )
    verdict = feasibility(est, app, mobile)
    c = cost(est, cfg.weights)
    if not verdict.feasible:
        return ResultRow(
            cfg.name, value, "offload", "offload", surrogate.name,
            est.time, None, est.energy, c, False, verdict.reason or "",
        )
    meas, notes = _measure_offload(bench, surrogate, est, payload)
    return ResultRow(
        cfg.name, value, "offload", "offload", surrogate.name,
        est.time, meas, est.energy, c, True, notes,
    )


def _solver_row(bench: _Bench, value: int, payload: bytes) -> ResultRow:
    cfg, app, mobile = bench.cfg, bench.app, bench.mobile
    links = [bench.link] * len(bench.surrogates)
    decision = decide(
        mobile, list(bench.surrogates), links, app, value, float(len(payload)),
        cfg.weights, cfg.mode,
    )
    if decision.outcome == "infeasible":
        return ResultRow(
            cfg.name, value, "solver", "infeasible", "",
            None, None, None, None, False, "no feasible location",
        )
    winner = decision.ranked[0]
    est = winner.estimate
    assert est is not None  # a winner always carries its estimate
    if winner.is_local:
        meas, notes = _measure_local(bench, est, payload)
    else:
        surrogate = next(s for s in bench.surrogates if s.name == winner.location)
        meas, notes = _measure_offload(bench, surrogate, est, payload)
    return ResultRow(
        cfg.name, value, "solver", decision.outcome, winner.location,
        est.time, meas, est.energy, winner.cost, True, notes,
    )


def _measure_local(bench, est, payload: bytes) -> tuple[float | None, str]:
    try:
        if bench.cfg.link_mode == "simulated":
            _, timings = execute_local(
                bench.app.name, payload, model_seconds=est.t_exec, clock=bench.clock
            )
            assert timings.total == est.time  # modeled timing is the estimate
        else:
            _, timings = execute_local(bench.app.name, payload)
        return timings.total, ""
    except ForageError as exc:
        return None, f"execution failed: {exc}"


def _measure_offload(bench, surrogate, est, payload: bytes) -> tuple[float | None, str]:
    try:
        if bench.cfg.link_mode == "simulated":
            plan = plan_transfer(bench.app, float(len(payload)), bench.link)
            sim = SimulatedLink(bench.link.data_transmission_rate, bench.clock)
            _, timings = execute_remote(
                sim,
                bench.app.name,
                payload,
                uplink_bytes=plan.uplink_bytes,
                downlink_bytes=plan.downlink_bytes,
                model_exec_seconds=est.t_exec,
            )
            assert timings.total == est.time  # modeled timing is the estimate
        else:
            _, timings = execute_remote(surrogate.address, bench.app.name, payload)
        return timings.total, ""
    except ForageError as exc:
        return None, f"execution failed: {exc}"


def _cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def write_csv(rows: list[ResultRow], path: str | Path) -> None:
    """Fixed column order, '.' decimals, LF line endings, UTF-8."""
    with open(path, "w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(CSV_COLUMNS)
        for row in rows:
            writer.writerow(
                _cell(getattr(row, column)) for column in CSV_COLUMNS
            )
