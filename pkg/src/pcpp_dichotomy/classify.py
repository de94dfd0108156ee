"""Schaefer class membership for constraints and constraint sets.

Membership is decided by closure under a polymorphism (AND for Horn, OR for
dual-Horn, ternary XOR for affine, ternary majority for bijunctive).
:func:`synthesize_clauses` is the independent route: it builds the clause
form literally and checks equivalence, and the test suite holds the two
routes against each other.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Literal

import numpy as np

from .core import ID, NOT, Constraint, ConstraintSet, UsageError

POLYMORPHISMS = ("and2", "or2", "xor3", "maj3")
FAMILIES = ("horn", "dual-horn", "two-clause", "linear-equation")
FAMILY_POLYMORPHISM = {
    "horn": "and2",
    "dual-horn": "or2",
    "linear-equation": "xor3",
    "two-clause": "maj3",
}

# set-level classes that make the CSP tractable, in reporting order
TRACTABLE = ("0-valid", "1-valid", "weakly-positive", "weakly-negative", "linear", "2cnf")
CLASSES = TRACTABLE + ("c-closed",)
ATTACKABLE = ("linear", "weakly-positive", "weakly-negative", "2cnf")


def _members(c: Constraint) -> np.ndarray:
    return np.array([(c.table >> p) & 1 for p in range(c.size)], dtype=bool)


def closed_under(c: Constraint, op: str) -> bool:
    """True iff the relation of ``c`` is closed under the coordinate-wise ``op``."""
    if op not in POLYMORPHISMS:
        raise UsageError(f"unknown polymorphism {op!r}")
    rel = np.array(c.relation(), dtype=np.int64)
    if len(rel) <= 1:
        return True
    member = _members(c)
    if op == "and2":
        return bool(member[rel[:, None] & rel[None, :]].all())
    if op == "or2":
        return bool(member[rel[:, None] | rel[None, :]].all())
    if op == "xor3":
        # closed under x^y^z iff the relation is a coset of a linear subspace
        shifted = rel ^ rel[0]
        return bool(member[(shifted[:, None] ^ shifted[None, :]) ^ rel[0]].all())
    both = rel[:, None] & rel[None, :]
    either = rel[:, None] | rel[None, :]
    for a in rel:
        if not member[(a & either) | both].all():
            return False
    return True


@dataclass(frozen=True)
class ClauseRepresentation:
    """Maximal set of implied clauses of one family.

    Clauses are tuples of signed variable indices (``-j`` is the negated
    literal of variable ``j``). Linear equations are ``(variables, parity)``.
    """

    family: str
    clauses: tuple


def _family_clauses(k: int, family: str):
    """Every clause of ``family`` over ``k`` variables as ``(pos_mask, neg_mask)``."""
    for signs in product((0, 1, -1), repeat=k):
        pos = sum(1 << j for j, s in enumerate(signs) if s == 1)
        neg = sum(1 << j for j, s in enumerate(signs) if s == -1)
        npos, nneg = bin(pos).count("1"), bin(neg).count("1")
        if family == "horn" and npos > 1:
            continue
        if family == "dual-horn" and nneg > 1:
            continue
        if family == "two-clause" and npos + nneg > 2:
            continue
        yield pos, neg


def _clause_literals(pos: int, neg: int, k: int) -> tuple[int, ...]:
    lits = []
    for j in range(k):
        if (pos >> j) & 1:
            lits.append(j + 1)
        elif (neg >> j) & 1:
            lits.append(-(j + 1))
    return tuple(lits)


def synthesize_clauses(c: Constraint, family: str) -> ClauseRepresentation | None:
    """Clause form of ``c`` in ``family``, or ``None`` if ``c`` has none.

    Collects every family clause satisfied by all of ``c``'s satisfying
    inputs and returns them iff their conjunction defines exactly ``c``.
    """
    if family not in FAMILIES:
        raise UsageError(f"unknown clause family {family!r}")
    k = c.arity
    points = np.arange(c.size, dtype=np.int64)
    member = _members(c)
    rel = points[member]
    allowed = np.ones(c.size, dtype=bool)
    implied = []
    if family == "linear-equation":
        parity = np.bitwise_count(points[:, None] & points[None, :]) & 1  # [subset, x]
        for subset in range(c.size):
            for b in (0, 1):
                sat = parity[subset] == b
                if sat[rel].all():
                    implied.append((subset, b))
                    allowed &= sat
        clauses = tuple(
            (tuple(j + 1 for j in range(k) if (s >> j) & 1), b) for s, b in sorted(implied)
        )
    else:
        for pos, neg in _family_clauses(k, family):
            sat = ((points & pos) != 0) | ((~points & neg) != 0)
            if sat[rel].all():
                implied.append(_clause_literals(pos, neg, k))
                allowed &= sat
        clauses = tuple(sorted(implied, key=lambda cl: (len(cl), [abs(x) for x in cl], cl)))
    if not np.array_equal(allowed, member):
        return None
    return ClauseRepresentation(family, clauses)


@dataclass(frozen=True)
class ConstraintFlags:
    zero_valid: bool
    one_valid: bool
    weakly_positive: bool
    weakly_negative: bool
    linear: bool
    two_cnf: bool
    c_closed: bool

    _KEYS = {
        "0-valid": "zero_valid",
        "1-valid": "one_valid",
        "weakly-positive": "weakly_positive",
        "weakly-negative": "weakly_negative",
        "linear": "linear",
        "2cnf": "two_cnf",
        "c-closed": "c_closed",
    }

    def __getitem__(self, cls: str) -> bool:
        return getattr(self, self._KEYS[cls])

    def as_dict(self) -> dict[str, bool]:
        return {cls: self[cls] for cls in CLASSES}

    def holding(self) -> list[str]:
        return [cls for cls in CLASSES if self[cls]]


def classify_constraint(c: Constraint) -> ConstraintFlags:
    full = c.full_mask
    return ConstraintFlags(
        zero_valid=c.holds_at(0),
        one_valid=c.holds_at(full),
        weakly_positive=closed_under(c, "or2"),
        weakly_negative=closed_under(c, "and2"),
        linear=closed_under(c, "xor3"),
        two_cnf=closed_under(c, "maj3"),
        c_closed=all(c.holds_at(p) == c.holds_at(p ^ full) for p in range(c.size)),
    )


@dataclass(frozen=True)
class ClassificationReport:
    flags: dict[str, bool]
    per_constraint: dict[str, dict[str, bool]]

    @property
    def tractable_classes(self) -> list[str]:
        return [cls for cls in TRACTABLE if self.flags[cls]]

    @property
    def np_hard(self) -> bool:
        return not self.tractable_classes

    @property
    def verdict(self) -> str:
        if self.np_hard:
            return "NP-hard (Schaefer)"
        return f"polynomial ({', '.join(self.tractable_classes)}; under P!=NP the CSP is tractable)"

    def to_dict(self) -> dict:
        return {
            "flags": dict(self.flags),
            "verdict": self.verdict,
            "verdict_kind": "np-hard" if self.np_hard else "polynomial",
            "tractable_classes": self.tractable_classes,
            "apx_hard": "not applicable / out of scope",
            "per_constraint": {k: dict(v) for k, v in self.per_constraint.items()},
        }


def classify_set(s: ConstraintSet) -> ClassificationReport:
    per = {c.name: classify_constraint(c).as_dict() for c in s}
    flags = {cls: all(f[cls] for f in per.values()) for cls in CLASSES}
    return ClassificationReport(flags, per)


def de_c_close(s: ConstraintSet, which: Literal["id", "not"]) -> ConstraintSet:
    if which == "id":
        return s.union([ID])
    if which == "not":
        return s.union([NOT])
    raise UsageError(f"expected 'id' or 'not', got {which!r}")


def all_tables(arity: int):
    """Every constraint of the given arity, in table order."""
    for table in range(1 << (1 << arity)):
        yield Constraint(f"R{arity}_{table}", arity, table)

