"""Perfect gadgets: search, verification, and 3SAT compilation through a gadget library.

A gadget for a target of arity ``r`` lives on variables ``1..r+a``; the
first ``r`` are the target's inputs and the rest are auxiliary. Truth sets
over ``{0,1}^(r+a)`` are Python int bitsets indexed by the little-endian
encoding, so the target inputs are the low ``r`` bits of each index.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from itertools import product

from .core import (
    Application,
    CapacityError,
    Constraint,
    ConstraintSet,
    Formula,
    UsageError,
    clause_constraint,
    clause_pattern,
)
from . import oracle

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class Gadget:
    target: Constraint
    aux_count: int
    applications: tuple[Application, ...]

    @property
    def num_vars(self) -> int:
        return self.target.arity + self.aux_count

    def as_formula(self, s: ConstraintSet) -> Formula:
        return Formula(self.num_vars, s, tuple((a, 1) for a in self.applications))


def _app_mask(c: Constraint, indices: tuple[int, ...], nvars: int) -> int:
    """Bitset of assignments over ``nvars`` variables that satisfy ``c`` on ``indices``."""
    mask = 0
    for x in range(1 << nvars):
        p = 0
        for j, i in enumerate(indices):
            p |= ((x >> (i - 1)) & 1) << j
        if (c.table >> p) & 1:
            mask |= 1 << x
    return mask


def _fibers(r: int, a: int) -> list[int]:
    """For each target input ``x``, the bitset of its ``2^a`` extensions."""
    out = []
    for x in range(1 << r):
        f = 0
        for e in range(1 << a):
            f |= 1 << (x | (e << r))
        out.append(f)
    return out


def _projection(sat: int, fibers: list[int]) -> int:
    proj = 0
    for x, f in enumerate(fibers):
        if sat & f:
            proj |= 1 << x
    return proj


def implemented_relation(g: Gadget, s: ConstraintSet) -> int:
    """Truth table (as an int) of the projection of the gadget onto its target variables."""
    r, a = g.target.arity, g.aux_count
    nvars = r + a
    if nvars > oracle.N_MAX:
        raise CapacityError(f"{nvars} gadget variables exceeds N_MAX={oracle.N_MAX}")
    sat = (1 << (1 << nvars)) - 1
    for app in g.applications:
        c = s[app.constraint]
        if len(app.indices) != c.arity or not all(1 <= i <= nvars for i in app.indices):
            raise UsageError(f"malformed gadget application {app}")
        sat &= _app_mask(c, app.indices, nvars)
    return _projection(sat, _fibers(r, a))


def verify_perfect(g: Gadget, s: ConstraintSet) -> bool:
    """True iff some auxiliary extension satisfies every application exactly on target-true inputs."""
    return implemented_relation(g, s) == g.target.table


def _candidates(s: ConstraintSet, nvars: int):
    """All applications over ``nvars`` variables sorted by ``(constraint name, indices)``."""
    out = []
    for c in sorted(s, key=lambda c: c.name):
        for idx in product(range(1, nvars + 1), repeat=c.arity):
            out.append((c, idx))
    return out


def _search_level(target: Constraint, s: ConstraintSet, a: int, t: int):
    r = target.arity
    nvars = r + a
    fibers = _fibers(r, a)
    want = [x for x in range(1 << r) if (target.table >> x) & 1]
    want_fibers = [fibers[x] for x in want]
    full = (1 << (1 << nvars)) - 1

    def complete(sat: int) -> bool:
        return all(sat & f for f in want_fibers)

    cands = []
    for c, idx in _candidates(s, nvars):
        mask = _app_mask(c, idx, nvars)
        # an application that alone kills a target-true input can never be used
        if complete(mask):
            cands.append((Application(c.name, idx), mask, idx))
    if t == 0:
        if _projection(full, fibers) == target.table:
            return ()
        return None

    chosen: list[Application] = []

    def dfs(start: int, depth: int, sat: int, next_aux: int):
        if depth == t:
            if next_aux == a and _projection(sat, fibers) == target.table:
                return tuple(chosen)
            return None
        for pos in range(start, len(cands)):
            app, mask, idx = cands[pos]
            nxt = next_aux
            ok = True
            for i in idx:
                if i > r:
                    k = i - r  # 1-based aux number
                    if k > nxt + 1:
                        ok = False
                        break
                    if k == nxt + 1:
                        nxt += 1
            if not ok:
                continue
            # unused auxiliaries must still fit in the remaining slots
            if a - nxt > (t - depth - 1) * max_arity:
                continue
            new = sat & mask
            if not complete(new):
                continue
            chosen.append(app)
            found = dfs(pos + 1, depth + 1, new, nxt)
            if found is not None:
                return found
            chosen.pop()
        return None

    max_arity = max(c.arity for c in s)
    return dfs(0, 0, full, 0)


def search_gadget(target: Constraint, s: ConstraintSet, max_aux: int, max_apps: int) -> Gadget | None:
    """First perfect gadget in (aux count, application count, canonical order), or ``None``.

    Applications within a gadget are distinct and sorted by
    ``(constraint name, indices)``; auxiliary variables first appear in
    increasing order and all of them are used. Every gadget is equivalent
    to one of that shape, so the bounded search is exhaustive.
    """
    if target.arity + max_aux > oracle.N_MAX:
        raise CapacityError("search space exceeds N_MAX variables")
    for a in range(max_aux + 1):
        for t in range(max_apps + 1):
            found = _search_level(target, s, a, t)
            log.debug("gadget level aux=%d apps=%d: %s", a, t, "hit" if found is not None else "none")
            if found is not None:
                g = Gadget(target, a, found)
                if not verify_perfect(g, s):
                    raise AssertionError("search returned a gadget that fails verification")
                return g
    return None


def pattern_key(c: Constraint) -> str:
    pattern = clause_pattern(c)
    if pattern is None:
        raise UsageError(f"{c.name} is not a clause")
    return pattern


def reduce_3sat(phi: Formula, s: ConstraintSet, library: dict[str, Gadget]) -> Formula:
    """Replace every clause of ``phi`` by its gadget over ``s`` with fresh auxiliaries.

    ``library`` maps a clause polarity pattern (``"pnn"`` is
    ``x or not y or not z``, see :func:`pcpp_dichotomy.core.clause_pattern`)
    to a perfect gadget for that clause. Application weights carry over to
    every application of the gadget.
    """
    for key, g in library.items():
        if pattern_key(g.target) != key:
            raise UsageError(f"library entry {key!r} has a target of pattern {pattern_key(g.target)!r}")
    apps = []
    nvars = phi.num_vars
    for app, w in phi.applications:
        key = pattern_key(phi.cset[app.constraint])
        g = library.get(key)
        if g is None:
            raise UsageError(f"gadget library has no entry for clause pattern {key!r}")
        r = g.target.arity
        base = nvars
        nvars += g.aux_count

        def rename(i: int) -> int:
            return app.indices[i - 1] if i <= r else base + (i - r)

        for gapp in g.applications:
            apps.append((Application(gapp.constraint, tuple(rename(i) for i in gapp.indices)), w))
    return Formula(nvars, s, tuple(apps))


ONE_IN_THREE = Constraint.from_string("1in3", "01101000")


def _chained_clause_gadget(pattern: str, name: str) -> Gadget:
    """Three-literal clause over exactly-one-of-three via a constant/negation prelude.

    ``R(not l1, a, b), R(b, l2, c), R(c, d, not l3)`` is satisfiable iff some
    literal is true; negated inputs come from ``R(x, x', f)`` with ``f`` pinned
    to 0 by ``R(f, f, t)``.
    """
    nxt = 3
    apps: list[Application] = []

    def fresh() -> int:
        nonlocal nxt
        nxt += 1
        return nxt

    need_neg = {1: pattern[0] == "p", 2: pattern[1] == "n", 3: pattern[2] == "p"}
    neg = {}
    if any(need_neg.values()):
        f, t = fresh(), fresh()
        apps.append(Application(name, (f, f, t)))
        for i in (1, 2, 3):
            if need_neg[i]:
                neg[i] = fresh()
                apps.append(Application(name, (i, neg[i], f)))
    first = neg.get(1, 1)
    middle = neg.get(2, 2)
    last = neg.get(3, 3)
    a, b, c, d = fresh(), fresh(), fresh(), fresh()
    apps += [
        Application(name, (first, a, b)),
        Application(name, (b, middle, c)),
        Application(name, (c, d, last)),
    ]
    return Gadget(clause_constraint(pattern), nxt - 3, tuple(apps))


def one_in_three_library(max_aux: int = 5, max_apps: int = 4) -> dict[str, Gadget]:
    """Verified gadgets over ``{1in3}`` for every clause pattern of one to three literals.

    Patterns of up to two literals come from :func:`search_gadget`; three
    literal patterns use the chained construction.
    """
    s = ConstraintSet((ONE_IN_THREE,))
    library = {}
    for k in (1, 2, 3):
        for signs in product("pn", repeat=k):
            pattern = "".join(signs)
            if k < 3:
                g = search_gadget(clause_constraint(pattern), s, max_aux, max_apps)
                if g is None:
                    raise RuntimeError(f"no gadget for {pattern} within bounds")
            else:
                g = _chained_clause_gadget(pattern, ONE_IN_THREE.name)
            if not verify_perfect(g, s):
                raise AssertionError(f"gadget for {pattern} is not perfect")
            library[pattern] = g
    return library
