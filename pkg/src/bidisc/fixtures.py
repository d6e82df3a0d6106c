"""Reference maps with known classification, used by tests and scripts."""

from __future__ import annotations

from .dsl import make_map
from .expr import BidiscMap

FIXTURES: dict[str, tuple[str, str]] = {
    # fixed-point curves in both components; lambda1 = 2, lambda2 = 1/2
    "example_i": ("(x+y^2)/2", "(y+(3*x+1)/(x+3))/2"),
    "example_ii": ("(x+(5*y+3)/(3*y+5))/2", "(y+(3*x+1)/(x+3))/2"),
    # f1 slices share the Wolff point 1
    "example_iii": ("(3*x+1)/(x+3)", "(y+(5*x+3)/(3*x+5))/2"),
    "example_iv": ("(3*x+1)/(x+3)", "(y+x^2)/2"),
    "example_v": ("(3*x+1)/(x+3)", "(5*y+3)/(3*y+5)"),
    # interior fixed points
    "contraction": ("x/2", "y/2"),
    "averaging": ("(x+y)/2", "(x+y)/2"),
    "not_proper": ("(x+(1-y)/2)/2", "y"),
    "identity": ("x", "y"),
    "projection": ("x", "(3*y+1)/(y+3)"),
}


def fixture(name: str) -> BidiscMap:
    return make_map(*FIXTURES[name])
