"""Exhaustive ground truth: max-sat, gap decisions, distances, and the GF(2) attack."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .classify import synthesize_clauses
from .core import (
    Bits,
    CapacityError,
    Formula,
    UsageError,
    bits_to_int,
    check_assignment,
    int_to_bits,
)

N_MAX = 24
CHUNK = 1 << 16

INFINITE = math.inf


def _check_capacity(n: int, n_max: int | None = None) -> None:
    limit = N_MAX if n_max is None else n_max
    if n > limit:
        raise CapacityError(f"{n} variables exceeds N_MAX={limit}")


def _chunk_scores(phi: Formula, xs: np.ndarray) -> np.ndarray:
    """Satisfied weight of every encoded assignment in ``xs``."""
    score = np.zeros(len(xs), dtype=np.int64)
    tables = {}
    for app, w in phi.applications:
        c = phi.cset[app.constraint]
        table = tables.get(c.name)
        if table is None:
            table = tables[c.name] = np.array(
                [(c.table >> p) & 1 for p in range(c.size)], dtype=np.int64
            )
        pos = np.zeros(len(xs), dtype=np.int64)
        for j, i in enumerate(app.indices):
            pos |= ((xs >> (i - 1)) & 1) << j
        score += w * table[pos]
    return score


def scan(phi: Formula, n_max: int | None = None):
    """Yield ``(encoded assignments, satisfied weights)`` over all of ``{0,1}^n`` in order."""
    _check_capacity(phi.num_vars, n_max)
    total = 1 << phi.num_vars
    for start in range(0, total, CHUNK):
        xs = np.arange(start, min(total, start + CHUNK), dtype=np.int64)
        yield xs, _chunk_scores(phi, xs)


def satisfying_assignments(phi: Formula, n_max: int | None = None) -> list[int]:
    """Encoded assignments that satisfy every application, ascending."""
    W = phi.total_weight
    out = []
    for xs, score in scan(phi, n_max):
        out.extend(int(x) for x in xs[score == W])
    return out


def max_sat(phi: Formula, n_max: int | None = None) -> tuple[Fraction, Bits]:
    """Best satisfied fraction and its smallest maximizer (little-endian order)."""
    best, arg = -1, 0
    for xs, score in scan(phi, n_max):
        i = int(np.argmax(score))
        if score[i] > best:
            best, arg = int(score[i]), int(xs[i])
    W = phi.total_weight
    frac = Fraction(1) if W == 0 else Fraction(best, W)
    return frac, int_to_bits(arg, phi.num_vars)


@dataclass(frozen=True)
class CspQuery:
    formula: Formula
    kappa: Fraction
    sigma: Fraction

    def __post_init__(self):
        kappa, sigma = Fraction(self.kappa), Fraction(self.sigma)
        if not 0 <= sigma < kappa <= 1:
            raise UsageError(f"need 0 <= sigma < kappa <= 1, got sigma={sigma}, kappa={kappa}")
        object.__setattr__(self, "kappa", kappa)
        object.__setattr__(self, "sigma", sigma)


KAPPA_SATISFIABLE = "kappa-satisfiable"
AT_MOST_SIGMA = "at-most-sigma"
GAP_VIOLATED = "gap-violated"


def decide_csp(q: CspQuery, n_max: int | None = None) -> str:
    best, _ = max_sat(q.formula, n_max)
    if best >= q.kappa:
        return KAPPA_SATISFIABLE
    if best <= q.sigma:
        return AT_MOST_SIGMA
    return GAP_VIOLATED


def distance(a: Sequence[int], b: Sequence[int]) -> Fraction:
    """Normalized Hamming distance."""
    if len(a) != len(b):
        raise UsageError(f"length mismatch: {len(a)} vs {len(b)}")
    if not a:
        return Fraction(0)
    return Fraction(sum(x != y for x, y in zip(a, b)), len(a))


def distance_to_satisfying(phi: Formula, a: Sequence[int], n_max: int | None = None):
    """Distance from ``a`` to the nearest fully satisfying assignment, or ``INFINITE``."""
    check_assignment(phi, a)
    target = bits_to_int(a)
    W = phi.total_weight
    best = None
    for xs, score in scan(phi, n_max):
        sats = xs[score == W]
        if len(sats):
            d = int(np.bitwise_count(sats ^ target).min())
            best = d if best is None else min(best, d)
    if best is None:
        return INFINITE
    return Fraction(best, phi.num_vars)


def linear_system(phi: Formula) -> list[tuple[int, int]]:
    """Stack each application's linear equations as ``(variable mask, parity)`` rows.

    Variable ``i`` is bit ``i - 1`` of the mask; repeated variables cancel.
    """
    reps = {}
    for c in phi.cset:
        rep = synthesize_clauses(c, "linear-equation")
        if rep is None:
            raise UsageError(f"constraint {c.name} is not linear")
        reps[c.name] = rep
    rows = []
    for app, _ in phi.applications:
        for positions, b in reps[app.constraint].clauses:
            mask = 0
            for j in positions:
                mask ^= 1 << (app.indices[j - 1] - 1)
            rows.append((mask, b))
    return rows


def solve_gf2(rows: list[tuple[int, int]], n: int) -> Bits | None:
    """Gauss-Jordan elimination over GF(2); free variables are set to 0."""
    pivots: list[tuple[int, int, int]] = []  # (column, mask, parity)
    for mask, b in rows:
        for col, pmask, pb in pivots:
            if (mask >> col) & 1:
                mask ^= pmask
                b ^= pb
        if mask == 0:
            if b:
                return None
            continue
        col = (mask & -mask).bit_length() - 1
        # keep the basis fully reduced so back-substitution is a read-off
        reduced = []
        for c2, m2, b2 in pivots:
            if (m2 >> col) & 1:
                m2 ^= mask
                b2 ^= b
            reduced.append((c2, m2, b2))
        pivots = reduced + [(col, mask, b)]
    x = [0] * n
    for col, mask, b in pivots:
        x[col] = b  # every other bit in mask is a free column, fixed to 0
    return tuple(x)


def linear_attack(phi: Formula) -> Bits | None:
    """Assignment satisfying every application of a linear formula, or ``None``."""
    return solve_gf2(linear_system(phi), phi.num_vars)
