"""Context descriptors for the entities involved in an offload decision.

Four descriptor kinds describe the world: the mobile device, each candidate
surrogate, the network link between them, and the application whose task is
up for placement. Each kind has an XML form (parse_* / render_*) and an
in-memory dataclass form whose fields use base units throughout: bytes,
bytes per second, joules, watts, instructions per second, and fractions in
[0, 1] for utilization.
"""

from __future__ import annotations

import math
import xml.etree.ElementTree as ET
from dataclasses import dataclass, field
from enum import Enum

from .errors import RangeError
from .order_expr import OrderExpr, parse_order
from .xmlio import (
    child_text,
    load_root,
    parse_number,
    parse_rate,
    parse_size,
    required_text,
)

_MB = 1024.0**2


class AppClass(str, Enum):
    CPU_INTENSIVE = "CpuIntensive"
    MEMORY_INTENSIVE = "MemoryIntensive"
    IO_INTENSIVE = "IoIntensive"


def _check_fraction(name: str, value: float) -> None:
    if not 0.0 <= value <= 1.0:
        raise RangeError(f"{name} must be within [0, 1], got {value!r}")


def _check_nonneg(name: str, value: float) -> None:
    if not (value >= 0.0 and math.isfinite(value)):
        raise RangeError(f"{name} must be finite and >= 0, got {value!r}")


def _check_positive(name: str, value: float) -> None:
    if not (value > 0.0 and math.isfinite(value)):
        raise RangeError(f"{name} must be finite and > 0, got {value!r}")


def current_processing_power(cpu_usage: float, instructions_per_second: float) -> float:
    """Instruction throughput left over after current load: (1 - u) * rate."""
    _check_fraction("cpu_usage", cpu_usage)
    _check_nonneg("instructions_per_second", instructions_per_second)
    return (1.0 - cpu_usage) * instructions_per_second


def split_address(address: str) -> tuple[str, int]:
    """Split 'host:port' and validate the port."""
    host, sep, port_text = address.rpartition(":")
    if not sep or not host:
        raise RangeError(f"address must look like host:port, got {address!r}")
    try:
        port = int(port_text)
    except ValueError:
        raise RangeError(f"port is not an integer in {address!r}") from None
    if not 1 <= port <= 65535:
        raise RangeError(f"port {port} is outside 1..65535")
    return host, port


@dataclass(frozen=True)
class MobileContext:
    """The device that owns the task and pays the energy bill."""

    name: str
    instructions_per_second: float
    cpu_usage: float
    available_memory: float  # bytes
    available_energy: float  # joules
    power_comp: float  # watts drawn while computing locally
    power_send: float
    power_receive: float
    power_standby: float

    def __post_init__(self):
        _check_positive("instructions_per_second", self.instructions_per_second)
        _check_fraction("cpu_usage", self.cpu_usage)
        _check_nonneg("available_memory", self.available_memory)
        _check_nonneg("available_energy", self.available_energy)
        for attr in ("power_comp", "power_send", "power_receive", "power_standby"):
            _check_nonneg(attr, getattr(self, attr))

    @property
    def processing_power(self) -> float:
        return current_processing_power(self.cpu_usage, self.instructions_per_second)


@dataclass(frozen=True)
class SurrogateContext:
    """A nearby machine offering spare cycles over the network."""

    name: str
    instructions_per_second: float
    cpu_usage: float
    available_memory: float  # bytes
    address: str  # host:port of the task daemon

    def __post_init__(self):
        _check_positive("instructions_per_second", self.instructions_per_second)
        _check_fraction("cpu_usage", self.cpu_usage)
        _check_nonneg("available_memory", self.available_memory)
        split_address(self.address)

    @property
    def processing_power(self) -> float:
        return current_processing_power(self.cpu_usage, self.instructions_per_second)


@dataclass(frozen=True)
class NetworkLink:
    """The link between mobile and surrogates, assumed symmetric.

    An infinite rate is allowed for idealized in-memory links; descriptors
    parsed from XML always carry finite rates.
    """

    network_type: str
    data_transmission_rate: float  # bytes per second
    signal_strength: float | None = None

    def __post_init__(self):
        if not self.data_transmission_rate > 0.0:
            raise RangeError(
                "data_transmission_rate must be > 0, "
                f"got {self.data_transmission_rate!r}"
            )


@dataclass(frozen=True)
class ApplicationContext:
    """What the task needs and how its cost scales with input size."""

    name: str
    app_class: AppClass
    required_memory: float  # bytes
    code_size: float  # bytes shipped on offload
    base_input_size: float  # bytes, floor for the uplink payload
    base_output_size: float  # bytes expected back
    order: str  # complexity expression, kept verbatim
    order_ast: OrderExpr = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        for attr in ("required_memory", "code_size", "base_input_size", "base_output_size"):
            _check_nonneg(attr, getattr(self, attr))
        object.__setattr__(self, "order_ast", parse_order(self.order))


def parse_mobile(text: str) -> MobileContext:
    root = load_root(text, "MobileContext")
    return MobileContext(
        name=required_text(root, "Name"),
        instructions_per_second=parse_number(required_text(root, "InstructionPSecond")),
        cpu_usage=parse_number(required_text(root, "CpuUsage")),
        available_memory=parse_number(required_text(root, "AvailableMemoryMB")) * _MB,
        available_energy=parse_number(required_text(root, "AvailableEnergyJ")),
        power_comp=parse_number(required_text(root, "PowerCompW")),
        power_send=parse_number(required_text(root, "PowerSendW")),
        power_receive=parse_number(required_text(root, "PowerReceiveW")),
        power_standby=parse_number(required_text(root, "PowerStandbyW")),
    )


def parse_surrogate(text: str) -> SurrogateContext:
    root = load_root(text, "SurrogateContext")
    return SurrogateContext(
        name=required_text(root, "Name"),
        instructions_per_second=parse_number(required_text(root, "InstructionPSecond")),
        cpu_usage=parse_number(required_text(root, "CpuUsage")),
        available_memory=parse_number(required_text(root, "AvailableMemoryMB")) * _MB,
        address=required_text(root, "Address"),
    )


def parse_network(text: str) -> NetworkLink:
    root = load_root(text, "NetworkContext")
    signal = child_text(root, "SignalStrength")
    return NetworkLink(
        network_type=required_text(root, "Type"),
        data_transmission_rate=parse_rate(required_text(root, "DataTransmissionRate")),
        signal_strength=parse_number(signal) if signal else None,
    )


def parse_application(text: str) -> ApplicationContext:
    root = load_root(text, "ApplicationContext")
    class_text = child_text(root, "Class")
    if not class_text:
        app_class = AppClass.CPU_INTENSIVE
    else:
        try:
            app_class = AppClass(class_text)
        except ValueError:
            raise RangeError(f"unknown application class {class_text!r}") from None
    return ApplicationContext(
        name=required_text(root, "Name"),
        app_class=app_class,
        required_memory=parse_size(required_text(root, "RequiredMemory")),
        code_size=parse_size(required_text(root, "CodeSize")),
        base_input_size=parse_size(required_text(root, "BaseInputSize")),
        base_output_size=parse_size(required_text(root, "BaseOutputSize")),
        order=required_text(root, "Order"),
    )


def _document(root_tag: str, fields: list[tuple[str, str]]) -> str:
    root = ET.Element(root_tag)
    for tag, value in fields:
        node = ET.SubElement(root, tag)
        node.text = value
    ET.indent(root)
    return ET.tostring(root, encoding="unicode") + "\n"


def render_mobile(ctx: MobileContext) -> str:
    return _document(
        "MobileContext",
        [
            ("Name", ctx.name),
            ("InstructionPSecond", repr(ctx.instructions_per_second)),
            ("CpuUsage", repr(ctx.cpu_usage)),
            ("AvailableMemoryMB", repr(ctx.available_memory / _MB)),
            ("AvailableEnergyJ", repr(ctx.available_energy)),
            ("PowerCompW", repr(ctx.power_comp)),
            ("PowerSendW", repr(ctx.power_send)),
            ("PowerReceiveW", repr(ctx.power_receive)),
            ("PowerStandbyW", repr(ctx.power_standby)),
        ],
    )


def render_surrogate(ctx: SurrogateContext) -> str:
    return _document(
        "SurrogateContext",
        [
            ("Name", ctx.name),
            ("InstructionPSecond", repr(ctx.instructions_per_second)),
            ("CpuUsage", repr(ctx.cpu_usage)),
            ("AvailableMemoryMB", repr(ctx.available_memory / _MB)),
            ("Address", ctx.address),
        ],
    )


def render_network(link: NetworkLink) -> str:
    fields = [
        ("Type", link.network_type),
        ("DataTransmissionRate", repr(link.data_transmission_rate)),
    ]
    if link.signal_strength is not None:
        fields.append(("SignalStrength", repr(link.signal_strength)))
    return _document("NetworkContext", fields)


def render_application(app: ApplicationContext) -> str:
    return _document(
        "ApplicationContext",
        [
            ("Name", app.name),
            ("Class", app.app_class.value),
            ("RequiredMemory", repr(app.required_memory)),
            ("CodeSize", repr(app.code_size)),
            ("BaseInputSize", repr(app.base_input_size)),
            ("BaseOutputSize", repr(app.base_output_size)),
            ("Order", app.order),
        ],
    )
