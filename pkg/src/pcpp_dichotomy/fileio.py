"""Text formats: constraint sets (.cset), formulas (.cfr), bit-vector lists, gadgets (.gad).

.cset::

    # comment
    constraint XOR2 2 0110

.cfr (``constraint`` lines may be embedded so a formula file is
self-contained; names like ``ID``, ``NOT`` and ``CL_pnn`` resolve without a
definition)::

    vars 3
    app 1 XOR2 1 2

bit vectors, one per line, with an optional ``split <n> <p>`` header::

    split 2 3
    10110

.gad is a .cfr body under a ``target <name> <arity> <table>`` header, where
``vars`` counts target plus auxiliary variables.
"""

from __future__ import annotations

from pathlib import Path
from typing import Iterable

from .core import (
    Application,
    Bits,
    Constraint,
    ConstraintSet,
    Formula,
    UsageError,
    builtin_constraint,
    format_bits,
    parse_bits,
)
from .gadget import Gadget, pattern_key


def _lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line.split()


def _parse_constraint(tok: list[str], lineno: int) -> Constraint:
    if len(tok) != 4:
        raise UsageError(f"line {lineno}: expected 'constraint <name> <arity> <table>'")
    _, name, arity, table = tok
    c = Constraint.from_string(name, table)
    if str(c.arity) != arity:
        raise UsageError(f"line {lineno}: table length does not match arity {arity}")
    return c


def parse_cset(text: str) -> ConstraintSet:
    out = []
    for lineno, tok in _lines(text):
        if tok[0] != "constraint":
            raise UsageError(f"line {lineno}: unexpected {tok[0]!r} in constraint set")
        out.append(_parse_constraint(tok, lineno))
    return ConstraintSet(tuple(out))


def dump_cset(s: ConstraintSet) -> str:
    return "".join(f"constraint {c.name} {c.arity} {c.table_string()}\n" for c in s)


def _parse_body(text: str, cset: ConstraintSet | None, header: str | None = None):
    num_vars = None
    defined: list[Constraint] = []
    raw_apps = []
    head = None
    for lineno, tok in _lines(text):
        kind = tok[0]
        if kind == "constraint":
            defined.append(_parse_constraint(tok, lineno))
        elif kind == "vars":
            if len(tok) != 2 or num_vars is not None:
                raise UsageError(f"line {lineno}: expected a single 'vars <n>'")
            num_vars = int(tok[1])
        elif kind == "app":
            if len(tok) < 3:
                raise UsageError(f"line {lineno}: expected 'app <weight> <name> <i1> ...'")
            try:
                w, idx = int(tok[1]), tuple(int(t) for t in tok[3:])
            except ValueError:
                raise UsageError(f"line {lineno}: non-integer weight or index") from None
            raw_apps.append((Application(tok[2], idx), w))
        elif header is not None and kind == header:
            if head is not None:
                raise UsageError(f"line {lineno}: duplicate {header!r}")
            head = _parse_constraint(["constraint"] + tok[1:], lineno)
        else:
            raise UsageError(f"line {lineno}: unknown directive {kind!r}")
    if num_vars is None:
        raise UsageError("missing 'vars <n>' line")

    pool = ConstraintSet(tuple(defined)) if defined else None
    if cset is not None:
        pool = cset if pool is None else cset.union(pool)
    used = []
    for app, _ in raw_apps:
        if pool is not None and app.constraint in pool:
            c = pool[app.constraint]
        else:
            c = builtin_constraint(app.constraint)
            if c is None:
                raise UsageError(f"undefined constraint {app.constraint!r}")
        if all(u.name != c.name for u in used):
            used.append(c)
    if pool is None:
        pool = ConstraintSet(tuple(used)) if used else None
    else:
        pool = pool.union(used)
    return num_vars, pool, raw_apps, head


def parse_cfr(text: str, cset: ConstraintSet | None = None) -> Formula:
    """Parse a formula; ``cset`` supplies constraints not defined in the file."""
    num_vars, pool, apps, _ = _parse_body(text, cset)
    if pool is None:
        raise UsageError("formula has no constraints to draw on")
    return Formula(num_vars, pool, tuple(apps))


def dump_cfr(phi: Formula, embed: bool = True) -> str:
    out = [f"constraint {c.name} {c.arity} {c.table_string()}\n" for c in phi.cset] if embed else []
    out.append(f"vars {phi.num_vars}\n")
    for app, w in phi.applications:
        out.append(f"app {w} {app.constraint} {' '.join(map(str, app.indices))}\n")
    return "".join(out)


def parse_bit_lines(text: str) -> tuple[list[Bits], tuple[int, int] | None]:
    """Bit vectors plus the ``(n, p)`` split header if present."""
    split = None
    vectors = []
    for lineno, tok in _lines(text):
        if tok[0] == "split":
            if len(tok) != 3 or split is not None or vectors:
                raise UsageError(f"line {lineno}: 'split <n> <p>' must be a single leading header")
            split = (int(tok[1]), int(tok[2]))
            continue
        if len(tok) != 1:
            raise UsageError(f"line {lineno}: expected one 0/1 string")
        vectors.append(parse_bits(tok[0]))
    if split is not None:
        for v in vectors:
            if len(v) != sum(split):
                raise UsageError(f"vector of length {len(v)} does not match split {split}")
    return vectors, split


def dump_bit_lines(vectors: Iterable[Bits], split: tuple[int, int] | None = None) -> str:
    out = [f"split {split[0]} {split[1]}\n"] if split else []
    out += [format_bits(v) + "\n" for v in vectors]
    return "".join(out)


def parse_gadget(text: str, s: ConstraintSet) -> Gadget:
    num_vars, _, apps, target = _parse_body(text, s, header="target")
    if target is None:
        raise UsageError("gadget file needs a 'target <name> <arity> <table>' line")
    aux = num_vars - target.arity
    if aux < 0:
        raise UsageError("vars must count the target variables")
    for app, w in apps:
        if w != 1:
            raise UsageError("gadget applications must have weight 1")
        if app.constraint not in s:
            raise UsageError(f"gadget uses {app.constraint!r}, which is not in the set")
    return Gadget(target, aux, tuple(app for app, _ in apps))


def dump_gadget(g: Gadget) -> str:
    t = g.target
    out = [f"target {t.name} {t.arity} {t.table_string()}\n", f"vars {g.num_vars}\n"]
    for app in g.applications:
        out.append(f"app 1 {app.constraint} {' '.join(map(str, app.indices))}\n")
    return "".join(out)


def load_library(directory: str | Path, s: ConstraintSet) -> dict[str, Gadget]:
    """Every ``*.gad`` file in ``directory``, keyed by clause pattern."""
    library = {}
    for path in sorted(Path(directory).glob("*.gad")):
        g = parse_gadget(path.read_text(), s)
        key = pattern_key(g.target)
        if key in library:
            raise UsageError(f"two gadgets for pattern {key!r}")
        library[key] = g
    if not library:
        raise UsageError(f"no .gad files in {directory}")
    return library


def save_library(library: dict[str, Gadget], directory: str | Path) -> None:
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    for key, g in sorted(library.items()):
        (directory / f"CL_{key}.gad").write_text(dump_gadget(g))
