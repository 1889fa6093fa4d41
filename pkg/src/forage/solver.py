"""Execution-location selection.

Every candidate location (the device itself plus each surrogate) gets a
time and energy estimate, is filtered on memory and battery feasibility,
and the survivors are scored with a weighted cost ratio:

    cost = (w1 * time + w2 * energy) / (w3 * processing_power + w4 * memory)

The weights are non-negative and sum to one. When w3 and w4 are both zero
the denominator falls back to 1 (a pure time/energy objective); if the
chosen weights make the denominator zero for some candidate, that candidate
costs +inf. The lowest-cost feasible candidate wins; ties keep the earlier
candidate, with the device listed first.
"""

from __future__ import annotations

import math
import time as _time
from dataclasses import dataclass

from .context_model import ApplicationContext, MobileContext, NetworkLink, SurrogateContext
from .errors import ForageError, InvalidWeights
from .estimator import CandidateEstimate, estimate_local, estimate_offload

WEIGHT_SUM_TOLERANCE = 1e-9

MODES = ("raw", "normalized")


@dataclass(frozen=True)
class SolverWeights:
    """Objective weights: time, energy, processing power, memory."""

    w1: float
    w2: float
    w3: float
    w4: float

    def __post_init__(self):
        values = (self.w1, self.w2, self.w3, self.w4)
        for i, w in enumerate(values, start=1):
            if not w >= 0.0:
                raise InvalidWeights(f"w{i} must be >= 0, got {w!r}")
        total = self.w1 + self.w2 + self.w3 + self.w4
        if abs(total - 1.0) > WEIGHT_SUM_TOLERANCE:
            raise InvalidWeights(f"weights must sum to 1, got {total!r}")

    @classmethod
    def from_text(cls, text: str) -> "SolverWeights":
        parts = [p.strip() for p in text.split(",")]
        if len(parts) != 4:
            raise InvalidWeights(f"expected four comma-separated weights, got {text!r}")
        try:
            values = [float(p) for p in parts]
        except ValueError:
            raise InvalidWeights(f"weights must be numbers, got {text!r}") from None
        return cls(*values)


@dataclass(frozen=True)
class Verdict:
    feasible: bool
    reason: str | None = None


@dataclass(frozen=True)
class RankedCandidate:
    """One candidate's estimate, cost, and feasibility verdict.

    ``estimate`` is None when estimation itself failed; the failure message
    lands in the verdict reason and the candidate costs +inf.
    """

    location: str
    is_local: bool
    estimate: CandidateEstimate | None
    cost: float
    verdict: Verdict


@dataclass(frozen=True)
class Decision:
    """Outcome of one placement decision.

    ``ranked`` lists every candidate, best first: feasible ones sorted by
    cost, then infeasible ones. When the outcome is not "infeasible",
    ``ranked[0]`` is the winner.
    """

    outcome: str  # "local" | "offload" | "infeasible"
    target: str | None  # surrogate name when outcome == "offload"
    ranked: tuple[RankedCandidate, ...]
    elapsed_decision_time: float  # seconds spent deciding

    @property
    def chosen(self) -> RankedCandidate | None:
        if self.outcome == "infeasible":
            return None
        return self.ranked[0]


def _weighted(weight: float, value: float) -> float:
    # A zero weight ignores the factor outright, even an infinite one
    # (otherwise 0 * inf would turn the cost into NaN).
    return 0.0 if weight == 0.0 else weight * value


def _cost_of(
    time: float, energy: float, pc: float, memory: float, weights: SolverWeights
) -> float:
    numerator = _weighted(weights.w1, time) + _weighted(weights.w2, energy)
    if weights.w3 == 0.0 and weights.w4 == 0.0:
        return numerator
    denominator = _weighted(weights.w3, pc) + _weighted(weights.w4, memory)
    if denominator == 0.0:
        return math.inf
    return numerator / denominator


def cost(estimate: CandidateEstimate, weights: SolverWeights) -> float:
    """Weighted cost of one candidate, lower is better."""
    return _cost_of(
        estimate.time,
        estimate.energy,
        estimate.processing_power,
        estimate.available_memory,
        weights,
    )


def feasibility(
    estimate: CandidateEstimate, app: ApplicationContext, mobile: MobileContext
) -> Verdict:
    """A candidate is feasible when it has room for the task and the run
    would not drain the mobile battery."""
    if estimate.available_memory < app.required_memory:
        return Verdict(
            False,
            "insufficient memory: "
            f"{estimate.available_memory:.0f} B available, "
            f"{app.required_memory:.0f} B required",
        )
    if mobile.available_energy < estimate.energy:
        return Verdict(
            False,
            "insufficient energy: "
            f"{mobile.available_energy:.6g} J available, "
            f"{estimate.energy:.6g} J required",
        )
    return Verdict(True)


def _factor_scales(
    estimates: list[CandidateEstimate],
) -> tuple[float, float, float, float]:
    """Per-factor maxima over the finite values, for normalized mode."""

    def scale(values: list[float]) -> float:
        finite = [v for v in values if math.isfinite(v)]
        top = max(finite, default=0.0)
        return top if top > 0.0 else 1.0

    return (
        scale([e.time for e in estimates]),
        scale([e.energy for e in estimates]),
        scale([e.processing_power for e in estimates]),
        scale([e.available_memory for e in estimates]),
    )


def decide(
    mobile: MobileContext,
    surrogates: list[SurrogateContext],
    links: list[NetworkLink],
    app: ApplicationContext,
    input_value: float,
    input_payload_bytes: float,
    weights: SolverWeights,
    mode: str = "raw",
) -> Decision:
    """Pick the execution location for one task input.

    ``links[i]`` is the link to ``surrogates[i]``. In "normalized" mode each
    cost factor is divided by its maximum over the candidates before
    weighting, so the four factors are compared on a common scale. A
    candidate whose estimation fails is recorded as infeasible rather than
    aborting the decision.
    """
    start = _time.perf_counter()
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}, got {mode!r}")
    if len(surrogates) != len(links):
        raise ValueError(
            f"got {len(surrogates)} surrogates but {len(links)} links"
        )

    entries: list[tuple[str, bool, CandidateEstimate | None, str | None]] = []
    try:
        entries.append(
            (mobile.name, True, estimate_local(app, input_value, input_payload_bytes, mobile), None)
        )
    except ForageError as exc:
        entries.append((mobile.name, True, None, f"estimate failed: {exc}"))
    for surrogate, link in zip(surrogates, links):
        try:
            est = estimate_offload(
                app, input_value, input_payload_bytes, mobile, surrogate, link
            )
            entries.append((surrogate.name, False, est, None))
        except ForageError as exc:
            entries.append((surrogate.name, False, None, f"estimate failed: {exc}"))

    if mode == "normalized":
        s_time, s_energy, s_pc, s_mem = _factor_scales(
            [est for _, _, est, _ in entries if est is not None]
        )

    indexed: list[tuple[int, RankedCandidate]] = []
    for index, (location, is_local, est, failure) in enumerate(entries):
        if est is None:
            candidate = RankedCandidate(
                location, is_local, None, math.inf, Verdict(False, failure)
            )
        else:
            verdict = feasibility(est, app, mobile)
            if mode == "raw":
                c = cost(est, weights)
            else:
                c = _cost_of(
                    est.time / s_time,
                    est.energy / s_energy,
                    est.processing_power / s_pc,
                    est.available_memory / s_mem,
                    weights,
                )
            candidate = RankedCandidate(location, is_local, est, c, verdict)
        indexed.append((index, candidate))

    best: tuple[int, RankedCandidate] | None = None
    for index, candidate in indexed:
        if not candidate.verdict.feasible:
            continue
        if best is None or candidate.cost < best[1].cost:
            best = (index, candidate)

    ranked = tuple(
        candidate
        for _, candidate in sorted(
            indexed, key=lambda ic: (not ic[1].verdict.feasible, ic[1].cost, ic[0])
        )
    )
    elapsed = _time.perf_counter() - start
    if best is None:
        return Decision("infeasible", None, ranked, elapsed)
    winner = best[1]
    if winner.is_local:
        return Decision("local", None, ranked, elapsed)
    return Decision("offload", winner.location, ranked, elapsed)
