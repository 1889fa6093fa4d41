"""Reference workloads and their byte codecs.

Two tasks exercise the runtime: nth-prime search (cheap per input, scales
almost linearly) and matrix determinant by cofactor expansion (factorial
blowup, punishing past N = 10). Each task pairs a pure function with
fixed-width big-endian codecs so a payload means the same thing locally and
on a surrogate.
"""

from __future__ import annotations

import math
import random
import struct
from dataclasses import dataclass
from typing import Callable, Sequence

from .errors import CodecError, NotSquare, OutOfRange, TooLarge, UnknownTask

MAX_PRIME_INDEX = 10_000_000
MAX_MATRIX_SIZE = 11

TASK_NTH_PRIME = "Nth Prime Number"
TASK_MATRIX_DETERMINANT = "Matrix Determinant"

_U64 = struct.Struct(">Q")
_U32 = struct.Struct(">I")
_F64 = struct.Struct(">d")


def nth_prime(n: int, *, max_index: int = MAX_PRIME_INDEX) -> int:
    """The n-th prime, 1-indexed: nth_prime(1) == 2, nth_prime(25) == 97.

    Sieves the odd numbers up to an analytic upper bound for the n-th
    prime, so large indexes stay cheap.
    """
    if not isinstance(n, int) or isinstance(n, bool) or not 1 <= n <= max_index:
        raise OutOfRange(f"prime index must be an integer in 1..{max_index}, got {n!r}")
    if n == 1:
        return 2
    if n < 6:
        bound = 15
    else:
        # p_n < n * (ln n + ln ln n) for n >= 6
        bound = int(n * (math.log(n) + math.log(math.log(n)))) + 3
    half = (bound + 1) // 2
    composite = bytearray(half)  # index i stands for the odd number 2i + 1
    i = 1
    while True:
        p = 2 * i + 1
        if p * p > bound:
            break
        if not composite[i]:
            start = (p * p) // 2
            count = len(range(start, half, p))
            composite[start::p] = b"\x01" * count
        i += 1
    found = 1  # the prime 2
    for i in range(1, half):
        if not composite[i]:
            found += 1
            if found == n:
                return 2 * i + 1
    raise AssertionError("sieve bound too small")


def matrix_determinant(
    rows: Sequence[Sequence[float]], *, max_size: int = MAX_MATRIX_SIZE
) -> float:
    """Determinant by cofactor expansion along the first row.

    Deliberately the O(N!) textbook algorithm; the size cap keeps a single
    call under a second on commodity hardware. A linked list of live column
    indexes avoids building minors explicitly.
    """
    n = len(rows)
    if n == 0:
        raise NotSquare("matrix must have at least one row")
    if any(len(row) != n for row in rows):
        raise NotSquare(f"matrix is not square: {n} rows, widths {[len(r) for r in rows]}")
    if n > max_size:
        raise TooLarge(f"matrix size {n} exceeds the cap of {max_size}")
    a = [[float(x) for x in row] for row in rows]
    if n == 1:
        return a[0][0]
    nxt = list(range(1, n + 1))  # linked list over live columns

    def expand(r: int, first: int, size: int) -> float:
        if size == 2:
            c0 = first
            c1 = nxt[c0]
            return a[r][c0] * a[r + 1][c1] - a[r][c1] * a[r + 1][c0]
        total = 0.0
        sign = 1.0
        prev = -1
        c = first
        while c < n:
            coef = a[r][c]
            if coef != 0.0:
                if prev < 0:
                    total += sign * coef * expand(r + 1, nxt[c], size - 1)
                else:
                    nxt[prev] = nxt[c]  # unlink column c for the minor
                    total += sign * coef * expand(r + 1, first, size - 1)
                    nxt[prev] = c
            sign = -sign
            prev = c
            c = nxt[c]
        return total

    return expand(0, 0, n)


def _encode_u64(value: int, what: str) -> bytes:
    if not isinstance(value, int) or isinstance(value, bool):
        raise CodecError(f"{what} must be an integer, got {value!r}")
    if not 0 <= value < 2**64:
        raise CodecError(f"{what} does not fit in 64 bits: {value!r}")
    return _U64.pack(value)


def _decode_u64(payload: bytes, what: str) -> int:
    if len(payload) != _U64.size:
        raise CodecError(f"{what} must be exactly {_U64.size} bytes, got {len(payload)}")
    return _U64.unpack(payload)[0]


def encode_prime_input(n: int) -> bytes:
    return _encode_u64(n, "prime index")


def decode_prime_input(payload: bytes) -> int:
    return _decode_u64(payload, "prime index")


def encode_prime_output(p: int) -> bytes:
    return _encode_u64(p, "prime value")


def decode_prime_output(payload: bytes) -> int:
    return _decode_u64(payload, "prime value")


def encode_matrix(rows: Sequence[Sequence[float]]) -> bytes:
    """4-byte size header, then row-major float64 entries, all big-endian."""
    n = len(rows)
    if n == 0:
        raise NotSquare("matrix must have at least one row")
    if any(len(row) != n for row in rows):
        raise NotSquare(f"matrix is not square: {n} rows, widths {[len(r) for r in rows]}")
    parts = [_U32.pack(n)]
    for row in rows:
        for x in row:
            parts.append(_F64.pack(float(x)))
    return b"".join(parts)


def decode_matrix(payload: bytes) -> list[list[float]]:
    if len(payload) < _U32.size:
        raise CodecError(f"matrix payload too short for its header: {len(payload)} bytes")
    n = _U32.unpack_from(payload)[0]
    expected = _U32.size + n * n * _F64.size
    if n == 0 or len(payload) != expected:
        raise CodecError(
            f"matrix payload of {len(payload)} bytes does not match size header {n}"
        )
    values = struct.unpack_from(f">{n * n}d", payload, _U32.size)
    return [list(values[i * n : (i + 1) * n]) for i in range(n)]


def encode_determinant(value: float) -> bytes:
    return _F64.pack(float(value))


def decode_determinant(payload: bytes) -> float:
    if len(payload) != _F64.size:
        raise CodecError(f"determinant must be exactly {_F64.size} bytes, got {len(payload)}")
    return _F64.unpack(payload)[0]


@dataclass(frozen=True)
class Task:
    """A named task: run a payload, and synthesize one for a sweep value."""

    name: str
    run: Callable[[bytes], bytes]
    make_input: Callable[[int], bytes]


def _run_nth_prime(payload: bytes) -> bytes:
    return encode_prime_output(nth_prime(decode_prime_input(payload)))


def _run_matrix_determinant(payload: bytes) -> bytes:
    return encode_determinant(matrix_determinant(decode_matrix(payload)))


def _matrix_input(n: int) -> bytes:
    # One fixed matrix per size, so sweeps are reproducible across runs.
    rng = random.Random(0x5EED ^ n)
    rows = [[rng.uniform(-1.0, 1.0) for _ in range(n)] for _ in range(n)]
    return encode_matrix(rows)


REGISTRY: dict[str, Task] = {
    TASK_NTH_PRIME: Task(TASK_NTH_PRIME, _run_nth_prime, encode_prime_input),
    TASK_MATRIX_DETERMINANT: Task(
        TASK_MATRIX_DETERMINANT, _run_matrix_determinant, _matrix_input
    ),
}


def get_task(name: str, registry: dict[str, Task] | None = None) -> Task:
    table = REGISTRY if registry is None else registry
    try:
        return table[name]
    except KeyError:
        raise UnknownTask(name) from None
