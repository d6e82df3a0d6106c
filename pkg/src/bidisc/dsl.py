"""Text and JSON forms of map expressions.

Grammar (standard precedence, left-associative binaries)::

    sum     := product (('+' | '-') product)*
    product := unary (('*' | '/') unary)*
    unary   := '-' unary | power
    power   := atom ('^' INT)*
    atom    := NUMBER ['i'] | 'i' | 'x' | 'y' | '(' sum ')'

so ``-x^2`` is ``-(x^2)`` and ``2i`` is an imaginary literal.
"""

from __future__ import annotations

import json
import re
from pathlib import Path

from .errors import ParseError
from .expr import (Add, BidiscMap, Const, Div, IntPow, MapExpr, Mul, Sub, VarX,
                   VarY, X, Y)

_MINUS_SIGNS = "-−"
_NUMBER = re.compile(r"(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?")


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def offset(self, pos=None) -> int:
        pos = self.pos if pos is None else pos
        return len(self.text[:pos].encode("utf-8"))

    def error(self, msg, pos=None):
        return ParseError(msg, self.offset(pos))

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def parse(self) -> MapExpr:
        if not self.text.strip():
            raise self.error("empty expression")
        e = self.sum()
        if self.peek():
            raise self.error(f"unexpected {self.peek()!r}")
        return e

    def sum(self):
        e = self.product()
        while True:
            c = self.peek()
            if c == "+":
                self.pos += 1
                e = Add(e, self.product())
            elif c and c in _MINUS_SIGNS:
                self.pos += 1
                e = Sub(e, self.product())
            else:
                return e

    def product(self):
        e = self.unary()
        while True:
            c = self.peek()
            if c == "*":
                self.pos += 1
                e = Mul(e, self.unary())
            elif c == "/":
                self.pos += 1
                start = self.pos
                d = self.unary()
                if isinstance(d, Const) and d.value == 0:
                    raise self.error("division by zero constant", start)
                e = Div(e, d)
            else:
                return e

    def unary(self):
        c = self.peek()
        if c and c in _MINUS_SIGNS:
            self.pos += 1
            operand = self.unary()
            if isinstance(operand, Const):
                return Const(-operand.value)
            return Sub(Const(0), operand)
        if c == "+":
            self.pos += 1
            return self.unary()
        return self.power()

    def power(self):
        e = self.atom()
        while self.peek() == "^":
            self.pos += 1
            self.skip()
            start = self.pos
            if self.peek() and self.peek() in _MINUS_SIGNS:
                raise self.error("negative exponents are not allowed", start)
            m = _NUMBER.match(self.text, self.pos)
            if not m:
                raise self.error("exponent must be a nonnegative integer literal", start)
            if not m.group(0).isdigit():
                raise self.error("exponent must be an integer", start)
            self.pos = m.end()
            e = IntPow(e, int(m.group(0)))
        return e

    def atom(self):
        c = self.peek()
        start = self.pos
        if not c:
            raise self.error("unexpected end of input")
        if c == "(":
            self.pos += 1
            e = self.sum()
            if self.peek() != ")":
                raise self.error("expected ')'")
            self.pos += 1
            return e
        if c == "x" or c == "y":
            self.pos += 1
            self._no_trailing_name(start)
            return X if c == "x" else Y
        if c == "i":
            self.pos += 1
            self._no_trailing_name(start)
            return Const(1j)
        m = _NUMBER.match(self.text, self.pos)
        if m:
            self.pos = m.end()
            v = float(m.group(0))
            if self.pos < len(self.text) and self.text[self.pos] == "i":
                self.pos += 1
                self._no_trailing_name(start)
                return Const(complex(0, v))
            return Const(v)
        raise self.error(f"unexpected {c!r}")

    def _no_trailing_name(self, start):
        if self.pos < len(self.text) and (self.text[self.pos].isalnum() or self.text[self.pos] == "_"):
            raise self.error(f"unknown name starting {self.text[start:self.pos + 1]!r}", start)


def parse_map_dsl(text: str) -> MapExpr:
    """Parse DSL text into an expression tree."""
    return _Parser(text).parse()


# --- printing ------------------------------------------------------------------


def _fmt_const(c: complex) -> str:
    if c.imag == 0:
        return f"({c.real!r})" if c.real < 0 else repr(c.real)
    if c.real == 0:
        return f"({c.imag!r}i)"
    return f"({c.real!r}+{c.imag!r}i)".replace("+-", "-")


def to_dsl(e: MapExpr) -> str:
    """Fully parenthesised DSL text; ``parse_map_dsl(to_dsl(e))`` evaluates like ``e``."""
    if isinstance(e, Const):
        return _fmt_const(e.value)
    if isinstance(e, VarX):
        return "x"
    if isinstance(e, VarY):
        return "y"
    if isinstance(e, IntPow):
        return f"({to_dsl(e.a)})^{e.n}"
    op = {Add: "+", Sub: "-", Mul: "*", Div: "/"}[type(e)]
    return f"({to_dsl(e.a)}{op}{to_dsl(e.b)})"


# --- JSON trees ----------------------------------------------------------------

_BINARY = {"add": Add, "sub": Sub, "mul": Mul, "div": Div}


def expr_from_json(obj) -> MapExpr:
    """Build a tree from a DSL string or a ``{"op": ...}`` object."""
    if isinstance(obj, str):
        return parse_map_dsl(obj)
    if isinstance(obj, (int, float)) and not isinstance(obj, bool):
        return Const(obj)
    if not isinstance(obj, dict) or "op" not in obj:
        raise ParseError(f"not an expression object: {obj!r}")
    op = obj["op"]
    if op == "const":
        return Const(complex(obj.get("re", 0.0), obj.get("im", 0.0)))
    if op == "x":
        return X
    if op == "y":
        return Y
    if op == "pow":
        n = obj.get("n")
        if not isinstance(n, int) or isinstance(n, bool) or n < 0:
            raise ParseError(f"pow exponent must be a nonnegative integer, got {n!r}")
        return IntPow(expr_from_json(obj["a"]), n)
    if op in _BINARY:
        try:
            return _BINARY[op](expr_from_json(obj["a"]), expr_from_json(obj["b"]))
        except KeyError as exc:
            raise ParseError(f"'{op}' node missing operand {exc}") from None
    raise ParseError(f"unknown op {op!r}")


def expr_to_json(e: MapExpr) -> dict:
    if isinstance(e, Const):
        return {"op": "const", "re": e.value.real, "im": e.value.imag}
    if isinstance(e, VarX):
        return {"op": "x"}
    if isinstance(e, VarY):
        return {"op": "y"}
    if isinstance(e, IntPow):
        return {"op": "pow", "a": expr_to_json(e.a), "n": e.n}
    name = {Add: "add", Sub: "sub", Mul: "mul", Div: "div"}[type(e)]
    return {"op": name, "a": expr_to_json(e.a), "b": expr_to_json(e.b)}


def map_from_json(obj) -> BidiscMap:
    if not isinstance(obj, dict) or "f1" not in obj or "f2" not in obj:
        raise ParseError("map file needs 'f1' and 'f2' entries")
    return BidiscMap(expr_from_json(obj["f1"]), expr_from_json(obj["f2"]))


def map_to_json(f: BidiscMap) -> dict:
    return {"f1": to_dsl(f.f1), "f2": to_dsl(f.f2)}


def load_map(path) -> BidiscMap:
    try:
        obj = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON in {path}: {exc.msg}", exc.pos) from None
    return map_from_json(obj)


def make_map(f1: str | MapExpr, f2: str | MapExpr) -> BidiscMap:
    conv = lambda e: parse_map_dsl(e) if isinstance(e, str) else e
    return BidiscMap(conv(f1), conv(f2))
