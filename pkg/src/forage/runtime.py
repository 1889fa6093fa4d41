"""Wire protocol, surrogate daemon, and execution clients.

Frame layout, all integers big-endian:

    magic   4 bytes  b"CFOR"
    version 1 byte   0x01
    type    1 byte   message type
    length  4 bytes  payload length
    payload

Message types: 0x01 TASK_REQUEST, 0x02 TASK_RESULT, 0x03 ERROR, 0x04 PING,
0x05 PONG. A TASK_REQUEST payload is a 2-byte length-prefixed UTF-8 task
name followed by the input bytes; a TASK_RESULT payload is a status byte
(0x00) followed by the output bytes. Each connection carries exactly one
request and one response.

Execution comes in two flavors. Real mode talks to a daemon over TCP and
reports wall-clock timings. Simulated mode runs the task in-process and
advances a virtual clock by the modeled transfer and execution durations,
which makes timing deterministic and exactly equal to the estimates.
"""

from __future__ import annotations

import logging
import socket
import socketserver
import struct
import threading
import time as _time
from dataclasses import dataclass
from typing import BinaryIO

from .context_model import SurrogateContext, split_address
from .errors import (
    ConnectionFailed,
    ForageError,
    ProtocolError,
    RangeError,
    RemoteError,
    Timeout,
    UnknownTask,
)
from .workloads import REGISTRY, Task, get_task

logger = logging.getLogger(__name__)

MAGIC = b"CFOR"
PROTOCOL_VERSION = 1

MSG_TASK_REQUEST = 0x01
MSG_TASK_RESULT = 0x02
MSG_ERROR = 0x03
MSG_PING = 0x04
MSG_PONG = 0x05

_MESSAGE_TYPES = frozenset(
    (MSG_TASK_REQUEST, MSG_TASK_RESULT, MSG_ERROR, MSG_PING, MSG_PONG)
)

RESULT_OK = 0x00

ERR_UNKNOWN_TASK = 0x01
ERR_BAD_REQUEST = 0x02
ERR_EXECUTION = 0x03

MAX_PAYLOAD = 64 * 1024 * 1024  # refuse absurd lengths before allocating

_HEADER = struct.Struct(">4sBBI")
_NAME_LEN = struct.Struct(">H")
_ERR_CODE = struct.Struct(">B")

DEFAULT_TIMEOUT = 60.0


@dataclass(frozen=True)
class Frame:
    msg_type: int
    payload: bytes = b""


@dataclass(frozen=True)
class Timings:
    """Per-phase durations of one execution, in seconds."""

    t_send: float = 0.0
    t_exec: float = 0.0
    t_recv: float = 0.0

    @property
    def total(self) -> float:
        return self.t_send + self.t_exec + self.t_recv


def encode_frame(frame: Frame) -> bytes:
    if frame.msg_type not in _MESSAGE_TYPES:
        raise ProtocolError(f"unknown message type {frame.msg_type!r}")
    if len(frame.payload) > MAX_PAYLOAD:
        raise ProtocolError(f"payload of {len(frame.payload)} bytes exceeds {MAX_PAYLOAD}")
    return _HEADER.pack(MAGIC, PROTOCOL_VERSION, frame.msg_type, len(frame.payload)) + frame.payload


def _check_header(magic: bytes, version: int, msg_type: int, length: int) -> None:
    if magic != MAGIC:
        raise ProtocolError(f"bad magic {magic!r}")
    if version != PROTOCOL_VERSION:
        raise ProtocolError(f"unsupported protocol version {version}")
    if msg_type not in _MESSAGE_TYPES:
        raise ProtocolError(f"unknown message type {msg_type:#04x}")
    if length > MAX_PAYLOAD:
        raise ProtocolError(f"declared payload of {length} bytes exceeds {MAX_PAYLOAD}")


def decode_frame(data: bytes) -> Frame:
    """Decode one complete frame from a buffer; the length must match exactly."""
    if len(data) < _HEADER.size:
        raise ProtocolError(f"frame of {len(data)} bytes is shorter than the header")
    magic, version, msg_type, length = _HEADER.unpack_from(data)
    _check_header(magic, version, msg_type, length)
    if len(data) != _HEADER.size + length:
        raise ProtocolError(
            f"frame length mismatch: header declares {length}, "
            f"buffer carries {len(data) - _HEADER.size}"
        )
    return Frame(msg_type, data[_HEADER.size :])


def read_frame(rfile: BinaryIO) -> Frame | None:
    """Read one frame from a stream; None on a clean EOF before any byte."""
    header = rfile.read(_HEADER.size)
    if not header:
        return None
    if len(header) < _HEADER.size:
        raise ProtocolError(f"truncated header: {len(header)} of {_HEADER.size} bytes")
    magic, version, msg_type, length = _HEADER.unpack(header)
    _check_header(magic, version, msg_type, length)
    payload = rfile.read(length)
    if payload is None or len(payload) < length:
        got = 0 if payload is None else len(payload)
        raise ProtocolError(f"truncated payload: {got} of {length} bytes")
    return Frame(msg_type, payload)


def encode_task_request(name: str, payload: bytes) -> bytes:
    encoded = name.encode("utf-8")
    if len(encoded) > 0xFFFF:
        raise ProtocolError(f"task name of {len(encoded)} bytes is too long")
    return _NAME_LEN.pack(len(encoded)) + encoded + payload


def decode_task_request(body: bytes) -> tuple[str, bytes]:
    if len(body) < _NAME_LEN.size:
        raise ProtocolError("request body is shorter than the name length prefix")
    (name_len,) = _NAME_LEN.unpack_from(body)
    end = _NAME_LEN.size + name_len
    if len(body) < end:
        raise ProtocolError(f"request body truncates the task name at {len(body)} bytes")
    try:
        name = body[_NAME_LEN.size : end].decode("utf-8")
    except UnicodeDecodeError as exc:
        raise ProtocolError(f"task name is not valid UTF-8: {exc}") from None
    return name, body[end:]


def encode_task_result(output: bytes) -> bytes:
    return bytes((RESULT_OK,)) + output


def decode_task_result(body: bytes) -> bytes:
    if not body:
        raise ProtocolError("result body is missing its status byte")
    if body[0] != RESULT_OK:
        raise ProtocolError(f"unexpected result status {body[0]:#04x}")
    return body[1:]


def encode_error(code: int, message: str) -> bytes:
    return _ERR_CODE.pack(code) + message.encode("utf-8")


def decode_error(body: bytes) -> tuple[int, str]:
    if not body:
        raise ProtocolError("error body is missing its code byte")
    return body[0], body[1:].decode("utf-8", errors="replace")


# --- simulated time ---------------------------------------------------------


class VirtualClock:
    """A time source that only moves when told to."""

    def __init__(self, start: float = 0.0):
        self._now = float(start)

    def now(self) -> float:
        return self._now

    def advance(self, seconds: float) -> float:
        if seconds < 0:
            raise ValueError(f"cannot advance by {seconds!r} seconds")
        self._now += seconds
        return self._now


class SimulatedLink:
    """A link whose transfers cost modeled time on a virtual clock."""

    def __init__(self, rate: float, clock: VirtualClock | None = None):
        if not rate > 0.0:
            raise RangeError(f"rate must be > 0, got {rate!r}")
        self.rate = float(rate)
        self.clock = clock if clock is not None else VirtualClock()

    def transfer(self, nbytes: float) -> float:
        """Advance the clock by the transfer duration and return it."""
        if not nbytes >= 0.0:
            raise RangeError(f"nbytes must be >= 0, got {nbytes!r}")
        duration = nbytes / self.rate
        self.clock.advance(duration)
        return duration


# --- execution ---------------------------------------------------------------


def execute_local(
    task_name: str,
    payload: bytes,
    *,
    registry: dict[str, Task] | None = None,
    model_seconds: float | None = None,
    clock: VirtualClock | None = None,
) -> tuple[bytes, Timings]:
    """Run a task in-process.

    With ``model_seconds`` the reported duration is the modeled one (and
    any supplied clock advances by it); otherwise it is wall-clock time.
    """
    task = get_task(task_name, registry)
    start = _time.perf_counter()
    output = task.run(payload)
    wall = _time.perf_counter() - start
    if model_seconds is not None:
        if clock is not None:
            clock.advance(model_seconds)
        return output, Timings(t_exec=model_seconds)
    return output, Timings(t_exec=wall)


def execute_remote(
    target: "SimulatedLink | str | tuple[str, int]",
    task_name: str,
    payload: bytes,
    *,
    registry: dict[str, Task] | None = None,
    uplink_bytes: float | None = None,
    downlink_bytes: float | None = None,
    model_exec_seconds: float | None = None,
    timeout: float = DEFAULT_TIMEOUT,
) -> tuple[bytes, Timings]:
    """Run a task at a remote location.

    ``target`` selects the mode: a SimulatedLink runs the task in-process
    under modeled timing, while an address ("host:port" or a tuple) speaks
    the wire protocol to a live daemon and reports wall-clock phases. The
    byte-volume overrides let callers charge the modeled transfer sizes
    (code plus padded input) rather than the raw payload lengths.
    """
    if isinstance(target, SimulatedLink):
        return _execute_simulated(
            target, task_name, payload, registry, uplink_bytes, downlink_bytes,
            model_exec_seconds,
        )
    return _execute_real(target, task_name, payload, timeout)


def _execute_simulated(
    link: SimulatedLink,
    task_name: str,
    payload: bytes,
    registry: dict[str, Task] | None,
    uplink_bytes: float | None,
    downlink_bytes: float | None,
    model_exec_seconds: float | None,
) -> tuple[bytes, Timings]:
    task = get_task(task_name, registry)
    t_send = link.transfer(float(len(payload)) if uplink_bytes is None else uplink_bytes)
    try:
        output = task.run(payload)
    except ForageError as exc:
        raise RemoteError(str(exc)) from exc
    t_exec = 0.0 if model_exec_seconds is None else model_exec_seconds
    link.clock.advance(t_exec)
    t_recv = link.transfer(float(len(output)) if downlink_bytes is None else downlink_bytes)
    return output, Timings(t_send, t_exec, t_recv)


def _read_exact(sock: socket.socket, count: int) -> bytes:
    buf = bytearray()
    while len(buf) < count:
        chunk = sock.recv(count - len(buf))
        if not chunk:
            raise ProtocolError(f"connection closed after {len(buf)} of {count} bytes")
        buf += chunk
    return bytes(buf)


def _execute_real(
    target: str | tuple[str, int], task_name: str, payload: bytes, timeout: float
) -> tuple[bytes, Timings]:
    if isinstance(target, str):
        host, port = split_address(target)
    else:
        host, port = target
    request = encode_frame(Frame(MSG_TASK_REQUEST, encode_task_request(task_name, payload)))
    try:
        sock = socket.create_connection((host, port), timeout=timeout)
    except OSError as exc:
        raise ConnectionFailed(f"cannot reach {host}:{port}: {exc}") from exc
    with sock:
        sock.settimeout(timeout)
        try:
            t0 = _time.perf_counter()
            sock.sendall(request)
            t1 = _time.perf_counter()
            header = _read_exact(sock, _HEADER.size)
            t2 = _time.perf_counter()
            magic, version, msg_type, length = _HEADER.unpack(header)
            _check_header(magic, version, msg_type, length)
            body = _read_exact(sock, length)
            t3 = _time.perf_counter()
        except socket.timeout:
            raise Timeout(f"{host}:{port} did not answer within {timeout} s") from None
        except OSError as exc:
            raise ConnectionFailed(f"connection to {host}:{port} failed: {exc}") from exc
    if msg_type == MSG_ERROR:
        code, message = decode_error(body)
        raise RemoteError(f"remote error {code:#04x}: {message}")
    if msg_type != MSG_TASK_RESULT:
        raise ProtocolError(f"expected a task result, got message type {msg_type:#04x}")
    output = decode_task_result(body)
    return output, Timings(t_send=t1 - t0, t_exec=t2 - t1, t_recv=t3 - t2)


# --- daemon -------------------------------------------------------------------


def handle_connection(
    rfile: BinaryIO, wfile: BinaryIO, registry: dict[str, Task] | None = None
) -> None:
    """Serve one framed exchange. Never raises: malformed input gets an
    ERROR reply when the peer is still listening, and is dropped otherwise.
    """
    try:
        try:
            frame = read_frame(rfile)
        except ProtocolError as exc:
            _reply(wfile, Frame(MSG_ERROR, encode_error(ERR_BAD_REQUEST, str(exc))))
            return
        if frame is None:
            return
        if frame.msg_type == MSG_PING:
            _reply(wfile, Frame(MSG_PONG, frame.payload))
            return
        if frame.msg_type != MSG_TASK_REQUEST:
            _reply(
                wfile,
                Frame(MSG_ERROR, encode_error(ERR_BAD_REQUEST, "expected a task request")),
            )
            return
        try:
            name, payload = decode_task_request(frame.payload)
        except ProtocolError as exc:
            _reply(wfile, Frame(MSG_ERROR, encode_error(ERR_BAD_REQUEST, str(exc))))
            return
        try:
            task = get_task(name, registry)
        except UnknownTask as exc:
            _reply(wfile, Frame(MSG_ERROR, encode_error(ERR_UNKNOWN_TASK, str(exc))))
            return
        try:
            output = task.run(payload)
        except ForageError as exc:
            _reply(wfile, Frame(MSG_ERROR, encode_error(ERR_EXECUTION, str(exc))))
            return
        except Exception:
            logger.exception("task %r failed unexpectedly", name)
            _reply(wfile, Frame(MSG_ERROR, encode_error(ERR_EXECUTION, "internal error")))
            return
        _reply(wfile, Frame(MSG_TASK_RESULT, encode_task_result(output)))
    except OSError:
        logger.debug("peer vanished mid-exchange", exc_info=True)


def _reply(wfile: BinaryIO, frame: Frame) -> None:
    wfile.write(encode_frame(frame))
    wfile.flush()


class _Handler(socketserver.StreamRequestHandler):
    def handle(self):
        handle_connection(self.rfile, self.wfile, self.server.registry)


class _Server(socketserver.ThreadingTCPServer):
    allow_reuse_address = True
    daemon_threads = True


class SurrogateDaemon:
    """A TCP daemon executing registered tasks on behalf of mobile clients.

    Bind to port 0 to let the OS pick; the resolved address is in
    ``self.address``. Usable as a context manager around start/shutdown.
    """

    def __init__(
        self,
        bind: tuple[str, int] = ("127.0.0.1", 0),
        registry: dict[str, Task] | None = None,
        name: str = "surrogate",
    ):
        self.name = name
        self._server = _Server(bind, _Handler)
        self._server.registry = REGISTRY if registry is None else registry
        self.address: tuple[str, int] = self._server.server_address[:2]
        self._thread: threading.Thread | None = None

    def start(self) -> "SurrogateDaemon":
        self._thread = threading.Thread(
            target=self._server.serve_forever, name=f"forage-daemon-{self.name}", daemon=True
        )
        self._thread.start()
        logger.info("daemon %s listening on %s:%d", self.name, *self.address)
        return self

    def serve_forever(self) -> None:
        logger.info("daemon %s listening on %s:%d", self.name, *self.address)
        self._server.serve_forever()

    def shutdown(self) -> None:
        self._server.shutdown()
        self._server.server_close()
        if self._thread is not None:
            self._thread.join(timeout=5.0)
            self._thread = None

    def __enter__(self) -> "SurrogateDaemon":
        return self.start()

    def __exit__(self, *exc_info) -> None:
        self.shutdown()


def ping(address: str | tuple[str, int], timeout: float = DEFAULT_TIMEOUT) -> bool:
    """True when a daemon answers PING with PONG at the address."""
    if isinstance(address, str):
        host, port = split_address(address)
    else:
        host, port = address
    try:
        sock = socket.create_connection((host, port), timeout=timeout)
    except OSError:
        return False
    with sock:
        sock.settimeout(timeout)
        try:
            sock.sendall(encode_frame(Frame(MSG_PING, b"ping")))
            header = _read_exact(sock, _HEADER.size)
            magic, version, msg_type, length = _HEADER.unpack(header)
            _check_header(magic, version, msg_type, length)
            body = _read_exact(sock, length)
        except (OSError, ProtocolError):
            return False
    return msg_type == MSG_PONG and body == b"ping"


def serve(
    bind: tuple[str, int],
    context: SurrogateContext | None = None,
    registry: dict[str, Task] | None = None,
) -> None:
    """Run a daemon in the foreground until interrupted."""
    name = context.name if context is not None else "surrogate"
    daemon = SurrogateDaemon(bind, registry, name=name)
    try:
        daemon.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        daemon._server.server_close()
