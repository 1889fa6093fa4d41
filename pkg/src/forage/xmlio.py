"""Helpers for the XML descriptor dialect.

All descriptors follow the same conventions: one value per tag, tag order
irrelevant, unknown tags ignored. Sizes accept B, KB, MB, GB suffixes and
rates accept Bps, KBps, MBps; both use binary multiples (KB = 1024 B) and a
bare number means the base unit.
"""

from __future__ import annotations

import xml.etree.ElementTree as ET

from .errors import BadUnit, MalformedDocument, MissingField

SIZE_UNITS = {"": 1.0, "B": 1.0, "KB": 1024.0, "MB": 1024.0**2, "GB": 1024.0**3}
RATE_UNITS = {"": 1.0, "Bps": 1.0, "KBps": 1024.0, "MBps": 1024.0**2}

_BIT_RATE_SUFFIXES = {"bps", "Kbps", "kbps", "Mbps", "mbps"}


def load_root(text: str, expected_tag: str) -> ET.Element:
    """Parse a document and check its root element name."""
    try:
        root = ET.fromstring(text)
    except ET.ParseError as exc:
        raise MalformedDocument(f"not well-formed XML: {exc}") from exc
    if root.tag != expected_tag:
        raise MalformedDocument(
            f"expected root element <{expected_tag}>, found <{root.tag}>"
        )
    return root


def child_text(root: ET.Element, tag: str) -> str | None:
    """Text of the first child named ``tag``, stripped, or None if absent."""
    node = root.find(tag)
    if node is None:
        return None
    return (node.text or "").strip()


def required_text(root: ET.Element, tag: str) -> str:
    text = child_text(root, tag)
    if not text:
        raise MissingField(tag)
    return text


def parse_number(text: str) -> float:
    """A bare number with no unit suffix."""
    try:
        return float(text.strip())
    except ValueError:
        raise BadUnit(f"not a number: {text!r}") from None


def split_suffix(text: str) -> tuple[str, str]:
    """Split trailing letters off a value, e.g. '0.6MB' -> ('0.6', 'MB').

    Exponent markers ('528e6') survive because only the trailing run of
    letters is treated as a suffix.
    """
    s = text.strip()
    i = len(s)
    while i > 0 and s[i - 1].isalpha():
        i -= 1
    return s[:i].strip(), s[i:]


def parse_size(text: str) -> float:
    """A size in bytes; accepts B/KB/MB/GB suffixes."""
    magnitude, suffix = split_suffix(text)
    if suffix not in SIZE_UNITS:
        raise BadUnit(f"unknown size unit {suffix!r} in {text!r}")
    return parse_number(magnitude) * SIZE_UNITS[suffix]


def parse_rate(text: str) -> float:
    """A rate in bytes per second; accepts Bps/KBps/MBps suffixes."""
    magnitude, suffix = split_suffix(text)
    if suffix in _BIT_RATE_SUFFIXES:
        raise BadUnit(
            f"bit-rate suffix {suffix!r} is not supported; use Bps, KBps, or MBps"
        )
    if suffix not in RATE_UNITS:
        raise BadUnit(f"unknown rate unit {suffix!r} in {text!r}")
    return parse_number(magnitude) * RATE_UNITS[suffix]
