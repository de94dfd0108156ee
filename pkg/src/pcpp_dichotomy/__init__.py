"""Schaefer classification, PCPP adversaries, and gadget reductions for Boolean CSPs."""

from .core import (
    ID,
    NOT,
    Application,
    CapacityError,
    Constraint,
    ConstraintSet,
    Formula,
    InvariantViolation,
    UsageError,
    apply_constraint,
    evaluate,
)

__all__ = [
    "ID",
    "NOT",
    "Application",
    "CapacityError",
    "Constraint",
    "ConstraintSet",
    "Formula",
    "InvariantViolation",
    "UsageError",
    "apply_constraint",
    "evaluate",
]
