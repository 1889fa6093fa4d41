"""Exception hierarchy shared across the package.

Everything raised deliberately by this package derives from ForageError so
callers can catch one type at the boundary and still tell failure classes
apart where it matters.
"""


class ForageError(Exception):
    """Base class for all errors raised by this package."""


# --- descriptor parsing ---------------------------------------------------


class MalformedDocument(ForageError):
    """The input is not well-formed XML or has the wrong root element."""


class MissingField(ForageError):
    """A required tag is absent or empty."""

    def __init__(self, tag: str):
        super().__init__(f"missing required tag <{tag}>")
        self.tag = tag


class BadUnit(ForageError):
    """A numeric value could not be parsed or carries an unknown suffix."""


class RangeError(ForageError):
    """A field value is outside its documented range."""


# --- complexity expressions -----------------------------------------------


class OrderSyntaxError(ForageError):
    """The complexity expression does not match the grammar."""

    def __init__(self, position: int, message: str):
        super().__init__(f"at offset {position}: {message}")
        self.position = position
        self.message = message


class EvalDomainError(ForageError):
    """Evaluation hit an argument outside a function's domain."""


class EvalOverflow(ForageError):
    """Evaluation produced a non-finite value."""


# --- estimation and solving -----------------------------------------------


class ZeroCapacity(ForageError):
    """A rate or instruction throughput of zero makes the estimate undefined."""


class InvalidWeights(ForageError):
    """Solver weights are negative or do not sum to one."""


# --- workloads --------------------------------------------------------------


class OutOfRange(ForageError):
    """A workload argument is outside the supported range."""


class NotSquare(ForageError):
    """The matrix argument is empty, ragged, or not square."""


class TooLarge(ForageError):
    """The matrix exceeds the size cap for cofactor expansion."""


class CodecError(ForageError):
    """A payload does not decode as the expected fixed-width format."""


class UnknownTask(ForageError):
    """No registered task carries the requested name."""

    def __init__(self, name: str):
        super().__init__(f"unknown task {name!r}")
        self.name = name


# --- runtime -----------------------------------------------------------------


class ProtocolError(ForageError):
    """A frame violates the wire format."""


class ConnectionFailed(ForageError):
    """The remote endpoint could not be reached or dropped mid-exchange."""


class RemoteError(ForageError):
    """The remote side reported a failure while executing the task."""


class Timeout(ForageError):
    """The remote side did not answer within the deadline."""


# --- harness -----------------------------------------------------------------


class ConfigError(ForageError):
    """A scenario file is missing, malformed, or references bad inputs."""
