"""Parser and evaluator for task-complexity expressions.

Application descriptors state how many instructions a task costs as a
closed-form expression over the input size N, e.g. ``N*ln(N)`` or ``N!``.

Grammar (whitespace-insensitive; 'N' is case-sensitive):

    expr    := term (('+' | '-') term)*
    term    := unary (('*' | '/') unary)*
    unary   := '-' unary | postfix
    postfix := primary '!'*
    primary := NUMBER | 'N' | 'ln' '(' expr ')'
             | 'pow' '(' expr ',' expr ')' | '(' expr ')'

Binary operators are left-associative and '!' binds tighter than unary
minus. Factorial of a non-integral value is defined through the gamma
function, exp(lgamma(x + 1)).
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass

from .errors import EvalDomainError, EvalOverflow, OrderSyntaxError


@dataclass(frozen=True)
class Literal:
    value: float


@dataclass(frozen=True)
class Var:
    """The input-size variable N."""


@dataclass(frozen=True)
class Neg:
    operand: "OrderExpr"


@dataclass(frozen=True)
class Factorial:
    operand: "OrderExpr"


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "OrderExpr"
    right: "OrderExpr"


@dataclass(frozen=True)
class Call:
    name: str
    args: tuple["OrderExpr", ...]


OrderExpr = Literal | Var | Neg | Factorial | BinOp | Call

_FUNCTIONS = {"ln": 1, "pow": 2}

_TOKEN_RE = re.compile(
    r"(?P<num>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)|(?P<name>[A-Za-z]+)|(?P<op>\S)"
)


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    n = len(text)
    while pos < n:
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN_RE.match(text, pos)
        if m is None:  # \S always matches, so this cannot happen
            raise OrderSyntaxError(pos, f"unexpected character {text[pos]!r}")
        if m.lastgroup == "num":
            tokens.append(("num", m.group(), pos))
        elif m.lastgroup == "name":
            tokens.append(("name", m.group(), pos))
        else:
            ch = m.group()
            if ch not in "+-*/()!,":
                raise OrderSyntaxError(pos, f"unexpected character {ch!r}")
            tokens.append((ch, ch, pos))
        pos = m.end()
    tokens.append(("end", "", n))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.index = 0

    def peek(self) -> tuple[str, str, int]:
        return self.tokens[self.index]

    def advance(self) -> tuple[str, str, int]:
        token = self.tokens[self.index]
        self.index += 1
        return token

    def expect(self, kind: str) -> tuple[str, str, int]:
        token = self.peek()
        if token[0] != kind:
            raise OrderSyntaxError(
                token[2], f"expected {kind!r}, found {token[1] or 'end of input'!r}"
            )
        return self.advance()

    def parse(self) -> OrderExpr:
        node = self.expr()
        kind, text, pos = self.peek()
        if kind != "end":
            raise OrderSyntaxError(pos, f"unexpected trailing input {text!r}")
        return node

    def expr(self) -> OrderExpr:
        node = self.term()
        while self.peek()[0] in ("+", "-"):
            op = self.advance()[0]
            node = BinOp(op, node, self.term())
        return node

    def term(self) -> OrderExpr:
        node = self.unary()
        while self.peek()[0] in ("*", "/"):
            op = self.advance()[0]
            node = BinOp(op, node, self.unary())
        return node

    def unary(self) -> OrderExpr:
        if self.peek()[0] == "-":
            self.advance()
            return Neg(self.unary())
        return self.postfix()

    def postfix(self) -> OrderExpr:
        node = self.primary()
        while self.peek()[0] == "!":
            self.advance()
            node = Factorial(node)
        return node

    def primary(self) -> OrderExpr:
        kind, text, pos = self.advance()
        if kind == "num":
            return Literal(float(text))
        if kind == "name":
            if text == "N":
                return Var()
            if text in _FUNCTIONS:
                return self.call(text, pos)
            raise OrderSyntaxError(pos, f"unknown name {text!r}")
        if kind == "(":
            node = self.expr()
            self.expect(")")
            return node
        raise OrderSyntaxError(pos, f"expected a value, found {text or 'end of input'!r}")

    def call(self, name: str, pos: int) -> OrderExpr:
        self.expect("(")
        args = [self.expr()]
        while self.peek()[0] == ",":
            self.advance()
            args.append(self.expr())
        self.expect(")")
        arity = _FUNCTIONS[name]
        if len(args) != arity:
            raise OrderSyntaxError(
                pos, f"{name} expects {arity} argument(s), got {len(args)}"
            )
        return Call(name, tuple(args))


def parse_order(text: str) -> OrderExpr:
    """Parse an expression into its tree form."""
    return _Parser(text).parse()


def render(expr: OrderExpr) -> str:
    """Serialize a tree back to text.

    Compound operands are parenthesized unconditionally, so the output is
    noisier than the input but reparses to a structurally equal tree.
    """
    if isinstance(expr, Literal):
        return repr(expr.value)
    if isinstance(expr, Var):
        return "N"
    if isinstance(expr, Neg):
        return f"-({render(expr.operand)})"
    if isinstance(expr, Factorial):
        return f"({render(expr.operand)})!"
    if isinstance(expr, BinOp):
        return f"({render(expr.left)} {expr.op} {render(expr.right)})"
    if isinstance(expr, Call):
        return f"{expr.name}({', '.join(render(a) for a in expr.args)})"
    raise TypeError(f"not an expression node: {expr!r}")


def eval_order(expr: OrderExpr, n: float) -> float:
    """Evaluate at input size ``n`` (a positive, finite real).

    The result must be finite and non-negative: an instruction count. A
    non-finite value raises EvalOverflow, a negative one EvalDomainError.
    """
    if not math.isfinite(n) or n <= 0:
        raise EvalDomainError(f"input size must be positive and finite, got {n!r}")
    value = _eval(expr, float(n))
    if not math.isfinite(value):
        raise EvalOverflow(f"expression value is not finite at N={n!r}")
    if value < 0:
        raise EvalDomainError(f"expression value is negative at N={n!r}")
    return value


def _eval(expr: OrderExpr, n: float) -> float:
    if isinstance(expr, Literal):
        return expr.value
    if isinstance(expr, Var):
        return n
    if isinstance(expr, Neg):
        return -_eval(expr.operand, n)
    if isinstance(expr, Factorial):
        operand = _eval(expr.operand, n)
        if operand < 0:
            raise EvalDomainError(f"factorial of negative value {operand!r}")
        try:
            return math.exp(math.lgamma(operand + 1.0))
        except OverflowError:
            raise EvalOverflow(f"factorial overflows at {operand!r}") from None
    if isinstance(expr, BinOp):
        left = _eval(expr.left, n)
        right = _eval(expr.right, n)
        if expr.op == "+":
            return left + right
        if expr.op == "-":
            return left - right
        if expr.op == "*":
            return left * right
        if right == 0.0:
            raise EvalDomainError("division by zero")
        return left / right
    if isinstance(expr, Call):
        args = [_eval(a, n) for a in expr.args]
        if expr.name == "ln":
            if args[0] <= 0:
                raise EvalDomainError(f"ln of non-positive value {args[0]!r}")
            return math.log(args[0])
        try:
            return math.pow(args[0], args[1])
        except ValueError:
            raise EvalDomainError(
                f"pow({args[0]!r}, {args[1]!r}) is undefined"
            ) from None
        except OverflowError:
            raise EvalOverflow(f"pow({args[0]!r}, {args[1]!r}) overflows") from None
    raise TypeError(f"not an expression node: {expr!r}")
