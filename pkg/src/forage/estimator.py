"""Per-location time and energy estimation.

Execution time at a location is the task's instruction count (the
complexity expression evaluated at the input value) divided by the
location's leftover instruction rate. Offloading adds uplink and downlink
transfer terms on a symmetric link; energy is always charged to the mobile
device, phase by phase, from its own power profile.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .context_model import (
    ApplicationContext,
    MobileContext,
    NetworkLink,
    SurrogateContext,
    current_processing_power,
)
from .errors import RangeError, ZeroCapacity
from .order_expr import eval_order


@dataclass(frozen=True)
class TransferPlan:
    """Byte volumes and rate for one offload round trip."""

    uplink_bytes: float
    downlink_bytes: float
    rate: float  # bytes per second, same both ways

    def __post_init__(self):
        if not self.uplink_bytes >= 0.0:
            raise RangeError(f"uplink_bytes must be >= 0, got {self.uplink_bytes!r}")
        if not self.downlink_bytes >= 0.0:
            raise RangeError(f"downlink_bytes must be >= 0, got {self.downlink_bytes!r}")
        if not self.rate > 0.0:
            raise RangeError(f"rate must be > 0, got {self.rate!r}")


@dataclass(frozen=True)
class CandidateEstimate:
    """Predicted behavior of one execution location for one input."""

    location: str
    is_local: bool
    time: float  # seconds, equals t_send + t_exec + t_recv
    energy: float  # joules drawn from the mobile battery
    processing_power: float  # leftover instruction rate at the location
    available_memory: float  # bytes free at the location
    t_send: float
    t_exec: float
    t_recv: float


def estimate_execution_time(
    app: ApplicationContext, input_value: float, processing_power: float
) -> float:
    """Seconds to run the task at a location with the given leftover rate."""
    if not processing_power > 0.0:
        raise ZeroCapacity(
            f"processing power must be > 0, got {processing_power!r}"
        )
    return eval_order(app.order_ast, input_value) / processing_power


def transfer_time(nbytes: float, rate: float) -> float:
    """Seconds to move ``nbytes`` over a link at ``rate`` bytes per second."""
    if not nbytes >= 0.0:
        raise RangeError(f"nbytes must be >= 0, got {nbytes!r}")
    if not rate > 0.0:
        raise ZeroCapacity(f"rate must be > 0, got {rate!r}")
    return nbytes / rate


def plan_transfer(
    app: ApplicationContext, input_payload_bytes: float, link: NetworkLink
) -> TransferPlan:
    """Uplink carries the code plus the larger of the declared base input
    size and the actual payload; downlink carries the declared output size.
    """
    if not (input_payload_bytes >= 0.0 and math.isfinite(input_payload_bytes)):
        raise RangeError(
            f"input_payload_bytes must be finite and >= 0, got {input_payload_bytes!r}"
        )
    uplink = app.code_size + max(app.base_input_size, input_payload_bytes)
    return TransferPlan(uplink, app.base_output_size, link.data_transmission_rate)


def _energy_term(seconds: float, watts: float) -> float:
    # A zero-power phase draws nothing even if the phase never ends
    # (otherwise inf * 0 would poison the sum with NaN).
    return 0.0 if watts == 0.0 else seconds * watts


def estimate_local(
    app: ApplicationContext,
    input_value: float,
    input_payload_bytes: float,
    mobile: MobileContext,
) -> CandidateEstimate:
    """Estimate for running on the mobile device itself: no transfers, all
    time spent computing at the device's own power draw.

    A fully loaded device (cpu_usage == 1) still yields an estimate, with
    infinite execution time, so the solver can rank and reject it rather
    than fail outright.
    """
    del input_payload_bytes  # local runs move no bytes
    pc = mobile.processing_power
    if pc > 0.0:
        t_exec = estimate_execution_time(app, input_value, pc)
    else:
        t_exec = math.inf
    energy = _energy_term(t_exec, mobile.power_comp)
    return CandidateEstimate(
        location=mobile.name,
        is_local=True,
        time=t_exec,
        energy=energy,
        processing_power=pc,
        available_memory=mobile.available_memory,
        t_send=0.0,
        t_exec=t_exec,
        t_recv=0.0,
    )


def estimate_offload(
    app: ApplicationContext,
    input_value: float,
    input_payload_bytes: float,
    mobile: MobileContext,
    surrogate: SurrogateContext,
    link: NetworkLink,
) -> CandidateEstimate:
    """Estimate for offloading to one surrogate: send, remote compute,
    receive. The mobile pays send power, then standby power while it waits,
    then receive power.
    """
    plan = plan_transfer(app, input_payload_bytes, link)
    t_send = transfer_time(plan.uplink_bytes, plan.rate)
    t_recv = transfer_time(plan.downlink_bytes, plan.rate)
    pc = current_processing_power(
        surrogate.cpu_usage, surrogate.instructions_per_second
    )
    if pc > 0.0:
        t_exec = estimate_execution_time(app, input_value, pc)
    else:
        t_exec = math.inf
    time = t_send + t_exec + t_recv
    energy = (
        _energy_term(t_send, mobile.power_send)
        + _energy_term(t_exec, mobile.power_standby)
        + _energy_term(t_recv, mobile.power_receive)
    )
    return CandidateEstimate(
        location=surrogate.name,
        is_local=False,
        time=time,
        energy=energy,
        processing_power=pc,
        available_memory=surrogate.available_memory,
        t_send=t_send,
        t_exec=t_exec,
        t_recv=t_recv,
    )
