"""Optimal transport between histograms on the circle."""

from ._core import (
    Assignment,
    CircotError,
    Cost,
    Histogram,
    SolveResult,
    TransportPlan,
    avg_cost,
    extract_plan,
    minimize,
    mk_distance,
    oracle_breakpoints,
    oracle_rotations,
)

__all__ = [
    "Assignment",
    "CircotError",
    "Cost",
    "Histogram",
    "SolveResult",
    "TransportPlan",
    "avg_cost",
    "extract_plan",
    "minimize",
    "mk_distance",
    "oracle_breakpoints",
    "oracle_rotations",
]
