"""A tiny formula language for one-variable test functions.

    expr   := term (('+' | '-') term)*
    term   := factor (('*' | '/') factor)*
    factor := '-' factor | atom ('^' factor)?
    atom   := NUMBER | 'x' | 'abs(' expr ')' | 'exp(' expr ')' | 'log(' expr ')'
            | 'min(' expr ',' expr ')' | 'max(' expr ',' expr ')' | '(' expr ')'

'^' binds tighter than unary minus and associates to the right, so
-x^2 is -(x^2) and 2^3^2 is 2^(3^2). Numbers are unsigned decimal
literals with optional fraction and exponent; a leading minus is
negation. No implicit multiplication, no unary plus.

Powers with an integer exponent >= 0 are computed by multiplication;
any other exponent takes the exp/log route, which needs a positive
base. Division by zero, log of a non-positive number, and overflow to
a non-finite value raise EvalError with the offending x. parse raises
ParseError carrying the offset of the rejected character and the set
of token descriptions acceptable there.

unparse emits a fully parenthesized form that parses back to an
identical tree.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass

from .errors import EvalError, GridViolation, OrderViolation, ParseError

_ARITY = {"abs": 1, "exp": 1, "log": 1, "min": 2, "max": 2}


@dataclass(frozen=True)
class Num:
    value: float


@dataclass(frozen=True)
class Var:
    pass


@dataclass(frozen=True)
class Neg:
    arg: object


@dataclass(frozen=True)
class Bin:
    op: str
    left: object
    right: object


@dataclass(frozen=True)
class Call:
    name: str
    args: tuple


_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+(?:\.\d*)?(?:[eE][+-]?\d+)?|\.\d+(?:[eE][+-]?\d+)?)"
    r"|(?P<name>[A-Za-z_]\w*)"
    r"|(?P<op>[-+*/^(),]))"
)


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            rest = text[pos:].lstrip()
            if not rest:
                break
            at = len(text) - len(rest)
            raise ParseError(at, {"number", "name", "operator"}, found=repr(rest[0]))
        if m.group("num") is not None:
            tokens.append(("num", m.group("num"), m.start("num")))
        elif m.group("name") is not None:
            tokens.append(("name", m.group("name"), m.start("name")))
        else:
            tokens.append(("op", m.group("op"), m.start("op")))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self) -> tuple[str, str, int]:
        return self.tokens[self.i]

    def advance(self) -> tuple[str, str, int]:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def fail(self, expected: set[str]):
        kind, text, offset = self.peek()
        found = "end of input" if kind == "end" else repr(text)
        raise ParseError(offset, expected, found=found)

    def expect_op(self, op: str):
        kind, text, _ = self.peek()
        if kind == "op" and text == op:
            self.advance()
            return
        self.fail({f"'{op}'"})

    def expr(self):
        node = self.term()
        while True:
            kind, text, _ = self.peek()
            if kind == "op" and text in "+-":
                self.advance()
                node = Bin(text, node, self.term())
            else:
                return node

    def term(self):
        node = self.factor()
        while True:
            kind, text, _ = self.peek()
            if kind == "op" and text in "*/":
                self.advance()
                node = Bin(text, node, self.factor())
            else:
                return node

    def factor(self):
        kind, text, _ = self.peek()
        if kind == "op" and text == "-":
            self.advance()
            return Neg(self.factor())
        node = self.atom()
        kind, text, _ = self.peek()
        if kind == "op" and text == "^":
            self.advance()
            return Bin("^", node, self.factor())
        return node

    def atom(self):
        kind, text, offset = self.peek()
        if kind == "num":
            self.advance()
            return Num(float(text))
        if kind == "name":
            self.advance()
            if text == "x":
                return Var()
            arity = _ARITY.get(text)
            if arity is None:
                raise ParseError(offset, {"'x'", "function name"}, found=repr(text))
            self.expect_op("(")
            args = [self.expr()]
            for _ in range(arity - 1):
                self.expect_op(",")
                args.append(self.expr())
            self.expect_op(")")
            return Call(text, tuple(args))
        if kind == "op" and text == "(":
            self.advance()
            node = self.expr()
            self.expect_op(")")
            return node
        self.fail({"number", "'x'", "function name", "'('", "'-'"})


def parse(text: str):
    """Parse formula text into a tree; ParseError pinpoints failures."""
    p = _Parser(text)
    node = p.expr()
    if p.peek()[0] != "end":
        p.fail({"operator", "end of input"})
    return node


def unparse(node) -> str:
    """Fully parenthesized text that parses back to the same tree."""
    if isinstance(node, Num):
        return repr(node.value)
    if isinstance(node, Var):
        return "x"
    if isinstance(node, Neg):
        return f"(-{unparse(node.arg)})"
    if isinstance(node, Bin):
        return f"({unparse(node.left)} {node.op} {unparse(node.right)})"
    if isinstance(node, Call):
        return f"{node.name}({', '.join(unparse(a) for a in node.args)})"
    raise TypeError(f"not an expression node: {node!r}")


def _pow(base: float, exponent: float, x: float) -> float:
    if exponent == math.floor(exponent) and exponent >= 0.0:
        # integer powers multiply out; small ones stay exact on exact data
        if exponent <= 64:
            acc = 1.0
            for _ in range(int(exponent)):
                acc *= base
            return acc
        try:
            return math.pow(base, exponent)
        except OverflowError:
            raise EvalError("overflow", x) from None
    if base <= 0.0:
        raise EvalError("domain", x)
    try:
        return math.pow(base, exponent)
    except OverflowError:
        raise EvalError("overflow", x) from None


def eval_expr(node, x: float) -> float:
    """Evaluate at x; raises EvalError rather than returning inf/nan."""
    x = float(x)
    v = _eval(node, x)
    if not math.isfinite(v):
        raise EvalError("overflow", x)
    return v


def _eval(node, x: float) -> float:
    if isinstance(node, Num):
        return node.value
    if isinstance(node, Var):
        return x
    if isinstance(node, Neg):
        return -_eval(node.arg, x)
    if isinstance(node, Bin):
        a = _eval(node.left, x)
        b = _eval(node.right, x)
        if node.op == "+":
            return a + b
        if node.op == "-":
            return a - b
        if node.op == "*":
            return a * b
        if node.op == "/":
            if b == 0.0:
                raise EvalError("division_by_zero", x)
            return a / b
        return _pow(a, b, x)
    if isinstance(node, Call):
        vals = [_eval(a, x) for a in node.args]
        if node.name == "abs":
            return abs(vals[0])
        if node.name == "exp":
            try:
                return math.exp(vals[0])
            except OverflowError:
                raise EvalError("overflow", x) from None
        if node.name == "log":
            if vals[0] <= 0.0:
                raise EvalError("domain", x)
            return math.log(vals[0])
        if node.name == "min":
            return min(vals)
        return max(vals)
    raise TypeError(f"not an expression node: {node!r}")


def sample_expr(source, a: float, b: float, n: int):
    """Evaluate a formula (text or parsed tree) on an n-point uniform grid over [a, b]."""
    from .functions import make_sampled

    node = parse(source) if isinstance(source, str) else source
    a, b = float(a), float(b)
    if not a < b:
        raise OrderViolation(f"need a < b, got a = {a!r}, b = {b!r}")
    n = int(n)
    if n < 2:
        raise GridViolation(f"need at least two sample points, got {n}")
    xs = [a + (b - a) * (i / (n - 1)) for i in range(n)]
    xs[-1] = b
    return make_sampled(xs, [eval_expr(node, x) for x in xs])
