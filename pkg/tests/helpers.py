"""Context builders and hypothesis strategies shared across test modules."""

from __future__ import annotations

from hypothesis import strategies as st

from forage.context_model import (
    AppClass,
    ApplicationContext,
    MobileContext,
    NetworkLink,
    SurrogateContext,
)

MB = 1024.0**2

PRIME_ORDER = "(N*ln(N)+(N*ln(ln(N)))) * (pow(N*ln(N)+(N*ln(ln(N))),0.5))"
FACTORIAL_ORDER = "N!"


def make_mobile(**overrides) -> MobileContext:
    values = dict(
        name="handset",
        instructions_per_second=528e6,
        cpu_usage=0.0,
        available_memory=256 * MB,
        available_energy=1000.0,
        power_comp=0.9,
        power_send=0.9,
        power_receive=0.9,
        power_standby=0.9,
    )
    values.update(overrides)
    return MobileContext(**values)


def make_surrogate(**overrides) -> SurrogateContext:
    values = dict(
        name="desktop",
        instructions_per_second=2.5e9,
        cpu_usage=0.0,
        available_memory=4096 * MB,
        address="127.0.0.1:9733",
    )
    values.update(overrides)
    return SurrogateContext(**values)


def make_link(**overrides) -> NetworkLink:
    values = dict(
        network_type="802.11g",
        data_transmission_rate=1.0 * MB,
        signal_strength=None,
    )
    values.update(overrides)
    return NetworkLink(**values)


def make_app(**overrides) -> ApplicationContext:
    values = dict(
        name="Nth Prime Number",
        app_class=AppClass.CPU_INTENSIVE,
        required_memory=0.6 * MB,
        code_size=1024.0,
        base_input_size=51.2,
        base_output_size=51.2,
        order=PRIME_ORDER,
    )
    values.update(overrides)
    return ApplicationContext(**values)


names = st.from_regex(r"[A-Za-z][A-Za-z0-9_.-]{0,15}", fullmatch=True)
fractions = st.floats(min_value=0.0, max_value=1.0, allow_nan=False)
rates = st.floats(min_value=1.0, max_value=1e12, allow_nan=False, allow_infinity=False)
ips_values = st.floats(min_value=1e3, max_value=1e12, allow_nan=False, allow_infinity=False)
byte_sizes = st.floats(min_value=0.0, max_value=1e15, allow_nan=False, allow_infinity=False)
energies = st.floats(min_value=0.0, max_value=1e9, allow_nan=False, allow_infinity=False)
powers = st.floats(min_value=0.0, max_value=1e3, allow_nan=False, allow_infinity=False)
ports = st.integers(min_value=1, max_value=65535)


@st.composite
def mobile_contexts(draw) -> MobileContext:
    return MobileContext(
        name=draw(names),
        instructions_per_second=draw(ips_values),
        cpu_usage=draw(fractions),
        available_memory=draw(byte_sizes),
        available_energy=draw(energies),
        power_comp=draw(powers),
        power_send=draw(powers),
        power_receive=draw(powers),
        power_standby=draw(powers),
    )


@st.composite
def surrogate_contexts(draw) -> SurrogateContext:
    return SurrogateContext(
        name=draw(names),
        instructions_per_second=draw(ips_values),
        cpu_usage=draw(fractions),
        available_memory=draw(byte_sizes),
        address=f"{draw(names)}:{draw(ports)}",
    )


@st.composite
def network_links(draw) -> NetworkLink:
    return NetworkLink(
        network_type=draw(names),
        data_transmission_rate=draw(rates),
        signal_strength=draw(
            st.none() | st.floats(min_value=-120, max_value=0, allow_nan=False)
        ),
    )


safe_orders = st.sampled_from(
    ["N", "2*N", "N*N", "N*ln(N)", "pow(N,1.5)", "N+100", PRIME_ORDER]
)


@st.composite
def applications(draw) -> ApplicationContext:
    return ApplicationContext(
        name=draw(names),
        app_class=draw(st.sampled_from(list(AppClass))),
        required_memory=draw(byte_sizes),
        code_size=draw(st.floats(min_value=0, max_value=1e9, allow_nan=False)),
        base_input_size=draw(st.floats(min_value=0, max_value=1e9, allow_nan=False)),
        base_output_size=draw(st.floats(min_value=0, max_value=1e9, allow_nan=False)),
        order=draw(safe_orders),
    )
