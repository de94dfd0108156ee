"""Constraints, formulas and exact weighted evaluation.

Truth tables are stored as int bitmasks: bit ``p`` of ``table`` is ``f(x)``
where ``p = sum(x_j << (j - 1))``, i.e. variable 1 is the least significant
bit. Assignments are plain tuples of 0/1 ints, and the same little-endian
convention maps an assignment to an integer (see :func:`bits_to_int`).
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

MAX_ARITY = 10

Bits = tuple[int, ...]


class UsageError(ValueError):
    """Malformed input, a violated precondition, or a parse error."""


class CapacityError(RuntimeError):
    """The instance is larger than the configured brute-force limits."""


class InvariantViolation(RuntimeError):
    """A guaranteed property failed; signals a bug or an input outside its class."""


def check_arity(arity: int) -> None:
    if arity < 1:
        raise UsageError(f"arity must be >= 1, got {arity}")
    if arity > MAX_ARITY:
        raise CapacityError(f"arity {arity} exceeds MAX_ARITY={MAX_ARITY}")


@dataclass(frozen=True)
class Constraint:
    name: str
    arity: int
    table: int

    def __post_init__(self):
        check_arity(self.arity)
        if not 0 <= self.table < (1 << (1 << self.arity)):
            raise UsageError(f"table of {self.name!r} does not fit arity {self.arity}")

    @classmethod
    def from_string(cls, name: str, table: str) -> "Constraint":
        """Build from a 0/1 string whose character ``p`` is the value at position ``p``."""
        if not table or set(table) - {"0", "1"}:
            raise UsageError(f"bad truth table {table!r}")
        arity = len(table).bit_length() - 1
        if arity < 1 or len(table) != 1 << arity:
            raise UsageError(f"table length {len(table)} is not 2^k for k >= 1")
        check_arity(arity)
        return cls(name, arity, int(table[::-1], 2))

    @property
    def size(self) -> int:
        return 1 << self.arity

    @property
    def full_mask(self) -> int:
        """Index mask with all ``arity`` bits set (the all-ones input)."""
        return self.size - 1

    def table_string(self) -> str:
        return format(self.table, f"0{self.size}b")[::-1]

    def holds_at(self, position: int) -> bool:
        return bool((self.table >> position) & 1)

    def relation(self) -> list[int]:
        """Encoded satisfying inputs, ascending."""
        return [p for p in range(self.size) if (self.table >> p) & 1]

    def __call__(self, *values: int) -> int:
        return apply_constraint(self, values)


def encode(values: Sequence[int]) -> int:
    p = 0
    for j, v in enumerate(values):
        if v not in (0, 1):
            raise UsageError(f"non-bit value {v!r}")
        p |= v << j
    return p


def decode(p: int, length: int) -> Bits:
    return tuple((p >> j) & 1 for j in range(length))


bits_to_int = encode
int_to_bits = decode


def apply_constraint(c: Constraint, values: Sequence[int]) -> int:
    if len(values) != c.arity:
        raise UsageError(f"{c.name} expects {c.arity} values, got {len(values)}")
    return (c.table >> encode(values)) & 1


def complement_table(c: Constraint) -> int:
    """Table of ``x -> c(not x)``."""
    full = c.full_mask
    out = 0
    for p in range(c.size):
        if (c.table >> (p ^ full)) & 1:
            out |= 1 << p
    return out


ID = Constraint.from_string("ID", "01")
NOT = Constraint.from_string("NOT", "10")
RESERVED = {"ID": ID, "NOT": NOT}

_CLAUSE_NAME = re.compile(r"^CL_([pn]+)$")


def clause_constraint(pattern: str) -> Constraint:
    """Disjunction with one literal per character: ``p`` positive, ``n`` negated.

    ``clause_constraint("pn")`` is ``x1 or not x2`` and is named ``CL_pn``.
    """
    if not pattern or set(pattern) - {"p", "n"}:
        raise UsageError(f"bad clause pattern {pattern!r}")
    k = len(pattern)
    check_arity(k)
    # the unique falsifying input sets every literal false
    falsifier = sum(1 << j for j, s in enumerate(pattern) if s == "n")
    table = ((1 << (1 << k)) - 1) & ~(1 << falsifier)
    return Constraint(f"CL_{pattern}", k, table)


def clause_pattern(c: Constraint) -> str | None:
    """Inverse of :func:`clause_constraint` by truth table; ``None`` if not a clause."""
    falsified = [p for p in range(c.size) if not (c.table >> p) & 1]
    if len(falsified) != 1:
        return None
    return "".join("n" if (falsified[0] >> j) & 1 else "p" for j in range(c.arity))


def builtin_constraint(name: str) -> Constraint | None:
    if name in RESERVED:
        return RESERVED[name]
    m = _CLAUSE_NAME.match(name)
    if m:
        return clause_constraint(m.group(1))
    return None


def complement_constraint(c: Constraint) -> Constraint:
    """``x -> c(not x)`` with a readable name: clause polarities flip, ID and NOT swap."""
    table = complement_table(c)
    swapped = {"ID": "NOT", "NOT": "ID"}.get(c.name)
    if swapped is not None and RESERVED[swapped].table == table:
        return RESERVED[swapped]
    pattern = clause_pattern(c)
    if pattern is not None:
        return clause_constraint(pattern.translate(str.maketrans("pn", "np")))
    return Constraint(c.name + "~", c.arity, table)


@dataclass(frozen=True)
class ConstraintSet:
    constraints: tuple[Constraint, ...]
    _by_name: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        constraints = tuple(self.constraints)
        object.__setattr__(self, "constraints", constraints)
        if not constraints:
            raise UsageError("a constraint set must be non-empty")
        by_name = {}
        for c in constraints:
            if c.name in by_name:
                raise UsageError(f"duplicate constraint name {c.name!r}")
            reserved = RESERVED.get(c.name)
            if reserved is not None and reserved.table != c.table:
                raise UsageError(f"{c.name} is reserved for table {reserved.table_string()}")
            by_name[c.name] = c
        object.__setattr__(self, "_by_name", by_name)

    def __iter__(self) -> Iterator[Constraint]:
        return iter(self.constraints)

    def __len__(self) -> int:
        return len(self.constraints)

    def __contains__(self, name: str) -> bool:
        return name in self._by_name

    def __getitem__(self, name: str) -> Constraint:
        try:
            return self._by_name[name]
        except KeyError:
            raise UsageError(f"unknown constraint {name!r}") from None

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(c.name for c in self.constraints)

    def union(self, extra: Iterable[Constraint]) -> "ConstraintSet":
        out = list(self.constraints)
        for c in extra:
            if c.name in self._by_name:
                if self._by_name[c.name].table != c.table:
                    raise UsageError(f"conflicting definitions of {c.name!r}")
                continue
            out.append(c)
        return ConstraintSet(tuple(out))


@dataclass(frozen=True)
class Application:
    constraint: str
    indices: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "indices", tuple(self.indices))

    def values(self, a: Sequence[int]) -> Bits:
        return tuple(a[i - 1] for i in self.indices)


@dataclass(frozen=True)
class Formula:
    """Weighted multiset of constraint applications over variables ``1..num_vars``.

    An empty application list is allowed (it arises from pruning and from
    reducing an empty 3SAT formula); it is vacuously satisfied.
    """

    num_vars: int
    cset: ConstraintSet
    applications: tuple[tuple[Application, int], ...] = ()

    def __post_init__(self):
        apps = tuple((app, int(w)) for app, w in self.applications)
        object.__setattr__(self, "applications", apps)
        if self.num_vars < 1:
            raise UsageError("a formula needs at least one variable")
        for app, w in apps:
            if w <= 0:
                raise UsageError(f"weights must be positive, got {w}")
            c = self.cset[app.constraint]
            if len(app.indices) != c.arity:
                raise UsageError(f"{app.constraint} has arity {c.arity}, got {app.indices}")
            for i in app.indices:
                if not 1 <= i <= self.num_vars:
                    raise UsageError(f"variable {i} outside [1, {self.num_vars}]")

    @property
    def total_weight(self) -> int:
        return sum(w for _, w in self.applications)

    def satisfied(self, app: Application, a: Sequence[int]) -> int:
        return apply_constraint(self.cset[app.constraint], app.values(a))

    def with_applications(self, apps: Iterable[tuple[Application, int]]) -> "Formula":
        return Formula(self.num_vars, self.cset, tuple(apps))


def check_assignment(phi: Formula, a: Sequence[int]) -> None:
    if len(a) != phi.num_vars:
        raise UsageError(f"assignment has length {len(a)}, formula has {phi.num_vars} variables")


def evaluate(phi: Formula, a: Sequence[int]) -> Fraction:
    """Satisfied weight over total weight, as an exact fraction."""
    check_assignment(phi, a)
    total = phi.total_weight
    if total == 0:
        return Fraction(1)
    good = sum(w for app, w in phi.applications if phi.satisfied(app, a))
    return Fraction(good, total)


def parse_bits(text: str) -> Bits:
    text = text.strip()
    if not text or set(text) - {"0", "1"}:
        raise UsageError(f"bad bit string {text!r}")
    return tuple(int(ch) for ch in text)


def format_bits(a: Sequence[int]) -> str:
    return "".join(str(b) for b in a)


def format_fraction(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"
