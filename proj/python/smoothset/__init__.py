"""Exact computations on finite simplicial sets."""

from ._core import (
    IncompatibilityError,
    ParseError,
    bump_factor,
    chern_number,
    homology,
    run,
    strip_timing,
)

__all__ = [
    "IncompatibilityError",
    "ParseError",
    "bump_factor",
    "chern_number",
    "homology",
    "run",
    "strip_timing",
]
