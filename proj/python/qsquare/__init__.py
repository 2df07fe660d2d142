"""Garbage-free quantum squaring circuits."""

from ._core import (
    QsqError,
    Squarer,
    arrange,
    baseline_costs,
    grid_value,
    proposed_costs,
    reconcile,
    reduction_ratios,
    synthesize,
)

__all__ = [
    "QsqError",
    "Squarer",
    "arrange",
    "baseline_costs",
    "grid_value",
    "proposed_costs",
    "reconcile",
    "reduction_ratios",
    "synthesize",
]
