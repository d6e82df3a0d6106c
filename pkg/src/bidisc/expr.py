"""Expression trees for rational maps of one or two complex variables.

Trees are immutable.  ``compile_expr`` turns a tree into a plain Python
closure which works unchanged on complex scalars, numpy complex arrays and
:class:`Dual` numbers, so the same tree drives scalar iteration, vectorised
sampling and forward-mode differentiation.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Union

import numpy as np

from .errors import PoleError

POLE_THRESHOLD = 1e-14


@dataclass(frozen=True)
class Const:
    value: complex

    def __post_init__(self):
        object.__setattr__(self, "value", complex(self.value))


@dataclass(frozen=True)
class VarX:
    pass


@dataclass(frozen=True)
class VarY:
    pass


@dataclass(frozen=True)
class Add:
    a: "MapExpr"
    b: "MapExpr"


@dataclass(frozen=True)
class Sub:
    a: "MapExpr"
    b: "MapExpr"


@dataclass(frozen=True)
class Mul:
    a: "MapExpr"
    b: "MapExpr"


@dataclass(frozen=True)
class Div:
    a: "MapExpr"
    b: "MapExpr"

    def __post_init__(self):
        if isinstance(self.b, Const) and self.b.value == 0:
            raise PoleError("division by the zero constant")


@dataclass(frozen=True)
class IntPow:
    a: "MapExpr"
    n: int

    def __post_init__(self):
        if not isinstance(self.n, int) or isinstance(self.n, bool) or self.n < 0:
            raise ValueError(f"exponent must be a nonnegative integer, got {self.n!r}")


MapExpr = Union[Const, VarX, VarY, Add, Sub, Mul, Div, IntPow]

X = VarX()
Y = VarY()


@dataclass(frozen=True)
class BidiscMap:
    f1: MapExpr
    f2: MapExpr

    def __call__(self, x, y):
        return compile_expr(self.f1)(x, y), compile_expr(self.f2)(x, y)


def variables(e: MapExpr) -> frozenset:
    if isinstance(e, VarX):
        return frozenset("x")
    if isinstance(e, VarY):
        return frozenset("y")
    if isinstance(e, Const):
        return frozenset()
    if isinstance(e, IntPow):
        return variables(e.a)
    return variables(e.a) | variables(e.b)


# --- dual numbers --------------------------------------------------------------


class Dual:
    """First-order dual number ``value + deriv * eps`` over the complex numbers."""

    __slots__ = ("value", "deriv")

    def __init__(self, value, deriv=0j):
        self.value = value
        self.deriv = deriv

    @staticmethod
    def _lift(o):
        return o if isinstance(o, Dual) else Dual(o, 0j)

    def __add__(self, o):
        o = Dual._lift(o)
        return Dual(self.value + o.value, self.deriv + o.deriv)

    __radd__ = __add__

    def __sub__(self, o):
        o = Dual._lift(o)
        return Dual(self.value - o.value, self.deriv - o.deriv)

    def __rsub__(self, o):
        return Dual._lift(o) - self

    def __mul__(self, o):
        o = Dual._lift(o)
        return Dual(self.value * o.value, self.value * o.deriv + self.deriv * o.value)

    __rmul__ = __mul__

    def __truediv__(self, o):
        o = Dual._lift(o)
        q = self.value / o.value
        return Dual(q, (self.deriv - q * o.deriv) / o.value)

    def __rtruediv__(self, o):
        return Dual._lift(o) / self

    def __pow__(self, n: int):
        if n == 0:
            return Dual(1.0 + 0j * self.value, 0j * self.deriv)
        p = self.value ** (n - 1)
        return Dual(p * self.value, n * p * self.deriv)

    def __repr__(self):
        return f"Dual({self.value!r}, {self.deriv!r})"


# --- compilation -------------------------------------------------------------------


def _check_pole(den):
    v = den.value if isinstance(den, Dual) else den
    if isinstance(v, np.ndarray):
        if v.size and np.min(np.abs(v)) < POLE_THRESHOLD:
            raise PoleError("denominator vanished during evaluation")
    elif abs(v) < POLE_THRESHOLD:
        raise PoleError(f"denominator |{v}| below pole threshold")


def _compile(e: MapExpr) -> Callable:
    if isinstance(e, Const):
        c = e.value
        return lambda x, y: c
    if isinstance(e, VarX):
        return lambda x, y: x
    if isinstance(e, VarY):
        return lambda x, y: y
    if isinstance(e, IntPow):
        fa, n = _compile(e.a), e.n
        if n == 0:
            return lambda x, y: 1.0 + 0j
        if n == 1:
            return fa
        return lambda x, y: fa(x, y) ** n
    fa, fb = _compile(e.a), _compile(e.b)
    if isinstance(e, Add):
        return lambda x, y: fa(x, y) + fb(x, y)
    if isinstance(e, Sub):
        return lambda x, y: fa(x, y) - fb(x, y)
    if isinstance(e, Mul):
        return lambda x, y: fa(x, y) * fb(x, y)
    if isinstance(e, Div):
        def div(x, y):
            den = fb(x, y)
            _check_pole(den)
            return fa(x, y) / den
        return div
    raise TypeError(f"unknown node {e!r}")


@lru_cache(maxsize=512)
def compile_expr(e: MapExpr) -> Callable:
    return _compile(e)


def eval_expr(e: MapExpr, x, y):
    """Arithmetic value of ``e`` at ``(x, y)``; raises PoleError on a vanishing denominator."""
    with np.errstate(all="ignore"):
        return compile_expr(e)(x, y)


def eval_dual(e: MapExpr, x, y, dx, dy) -> tuple[complex, complex]:
    """Value and directional derivative of ``e`` at ``(x, y)`` along ``(dx, dy)``."""
    r = compile_expr(e)(Dual(complex(x), complex(dx)), Dual(complex(y), complex(dy)))
    if not isinstance(r, Dual):
        return complex(r), 0j
    return complex(r.value), complex(r.deriv)


def partials(e: MapExpr, x, y) -> tuple[complex, complex, complex]:
    """``(value, d/dx, d/dy)`` at ``(x, y)``."""
    v, dx = eval_dual(e, x, y, 1, 0)
    _, dy = eval_dual(e, x, y, 0, 1)
    return v, dx, dy


# --- one-variable views ------------------------------------------------------------


class DiscFunction:
    """A holomorphic function of one disc variable with a derivative.

    Subclasses implement ``__call__`` and ``derivative``; composition uses
    the chain rule.
    """

    def __call__(self, z):
        raise NotImplementedError

    def derivative(self, z) -> complex:
        raise NotImplementedError

    def compose(self, inner: "DiscFunction") -> "DiscFunction":
        return Composition(self, inner)


class ExprFunction(DiscFunction):
    """One-variable view of a MapExpr.

    A tree in a single variable (``x`` or ``y``) is a function of that
    variable; the other variable is pinned to ``other`` when given.
    """

    def __init__(self, e: MapExpr, var: str | None = None, other=0j):
        used = variables(e)
        if var is None:
            if len(used) > 1:
                raise ValueError("expression depends on both x and y; pick a variable")
            var = next(iter(used), "x")
        self.expr, self.var, self.other = e, var, complex(other)
        self._f = compile_expr(e)

    def __call__(self, z):
        if self.var == "x":
            return self._f(z, self.other)
        return self._f(self.other, z)

    def derivative(self, z) -> complex:
        if self.var == "x":
            return eval_dual(self.expr, z, self.other, 1, 0)[1]
        return eval_dual(self.expr, self.other, z, 0, 1)[1]

    def __repr__(self):
        return f"ExprFunction({self.expr!r}, var={self.var!r})"


class Composition(DiscFunction):
    def __init__(self, outer: DiscFunction, inner: DiscFunction):
        self.outer, self.inner = outer, inner

    def __call__(self, z):
        return self.outer(self.inner(z))

    def derivative(self, z) -> complex:
        w = self.inner(z)
        return self.outer.derivative(w) * self.inner.derivative(z)


class CallableFunction(DiscFunction):
    """Wraps a plain callable; derivative by central differences."""

    def __init__(self, f, h: float = 1e-7):
        self.f, self.h = f, h

    def __call__(self, z):
        return self.f(z)

    def derivative(self, z) -> complex:
        h = self.h
        return (self.f(z + h) - self.f(z - h)) / (2 * h)


def as_disc_function(g) -> DiscFunction:
    if isinstance(g, DiscFunction):
        return g
    if isinstance(g, (Const, VarX, VarY, Add, Sub, Mul, Div, IntPow)):
        return ExprFunction(g)
    if isinstance(g, str):
        from .dsl import parse_map_dsl

        return ExprFunction(parse_map_dsl(g))
    if callable(g):
        return CallableFunction(g)
    raise TypeError(f"cannot interpret {g!r} as a disc function")
