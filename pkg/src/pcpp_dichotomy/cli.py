"""Command-line front end.

Exit codes: 0 success, 1 usage or parse error, 2 capacity error, 3 negative
result (unsatisfiable, inconsistent, gadget not found, attack invariant
violated). Reports go to stdout, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import core, oracle
from .adversary import BlockSpec, WitnessPair, build_demo, gen_onehot_formula, pair_keys, run_attack
from .classify import FAMILIES, classify_set, synthesize_clauses
from .core import CapacityError, Constraint, InvariantViolation, UsageError, format_bits, format_fraction
from .fileio import (
    dump_bit_lines,
    dump_cfr,
    dump_gadget,
    load_library,
    parse_bit_lines,
    parse_cfr,
    parse_cset,
)
from .gadget import reduce_3sat, search_gadget

EXIT_OK, EXIT_USAGE, EXIT_CAPACITY, EXIT_NEGATIVE = 0, 1, 2, 3

NAMED = {
    "AND2": "0001",
    "ANDN": "0100",
    "EQ2": "1001",
    "NAND": "1110",
    "NOR": "1000",
    "OR2": "0111",
    "OR3": "01111111",
    "XOR2": "0110",
    "ONE_IN_THREE": "01101000",
    "1in3": "01101000",
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


class _Negative(Exception):
    """Carries a finished report whose outcome is negative."""

    def __init__(self, result: dict):
        super().__init__(result.get("status", "negative"))
        self.result = result


class Session:
    def __init__(self, argv: list[str]):
        self.argv = argv
        self.inputs: dict[str, str] = {}

    def read(self, path: str) -> str:
        try:
            data = Path(path).read_bytes()
        except OSError as exc:
            raise UsageError(f"cannot read {path}: {exc.strerror}") from None
        self.inputs[path] = hashlib.sha256(data).hexdigest()
        return data.decode()

    def cset(self, path: str | None):
        return parse_cset(self.read(path)) if path else None

    def formula(self, args):
        return parse_cfr(self.read(args.formula), self.cset(getattr(args, "set", None)))


def _frac(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"not a rational number: {text!r}") from None


def cmd_classify(ses: Session, args) -> dict:
    return classify_set(ses.cset(args.set)).to_dict()


def cmd_synth(ses: Session, args) -> dict:
    s = ses.cset(args.set)
    families = [args.family] if args.family else list(FAMILIES)
    out = {}
    for c in s:
        if args.constraint and c.name != args.constraint:
            continue
        out[c.name] = {}
        for fam in families:
            rep = synthesize_clauses(c, fam)
            out[c.name][fam] = None if rep is None else [list(map(_jsonable, cl)) for cl in rep.clauses]
    if args.constraint and not out:
        raise UsageError(f"no constraint named {args.constraint!r}")
    return {"representations": out}


def _jsonable(x):
    return list(x) if isinstance(x, tuple) else x


def cmd_solve(ses: Session, args) -> dict:
    phi = ses.formula(args)
    best, witness = oracle.max_sat(phi)
    result = {"max_fraction": format_fraction(best), "witness": format_bits(witness)}
    if args.kappa is not None or args.sigma is not None:
        if args.kappa is None or args.sigma is None:
            raise UsageError("--kappa and --sigma go together")
        decision = oracle.decide_csp(oracle.CspQuery(phi, _frac(args.kappa), _frac(args.sigma)))
        result["decision"] = decision
        result["status"] = decision
        if decision != oracle.KAPPA_SATISFIABLE:
            raise _Negative(result)
    else:
        result["status"] = "satisfiable" if best == 1 else "unsatisfiable"
        if best != 1:
            raise _Negative(result)
    return result


def cmd_lin_attack(ses: Session, args) -> dict:
    phi = ses.formula(args)
    solution = oracle.linear_attack(phi)
    if solution is None:
        raise _Negative({"status": "inconsistent"})
    return {
        "status": "solved",
        "assignment": format_bits(solution),
        "fraction": format_fraction(core.evaluate(phi, solution)),
    }


def cmd_distance(ses: Session, args) -> dict:
    phi = ses.formula(args)
    a = core.parse_bits(args.assignment)
    d = oracle.distance_to_satisfying(phi, a)
    if d == oracle.INFINITE:
        raise _Negative({"status": "unsatisfiable", "distance": "inf"})
    return {"status": "ok", "distance": format_fraction(d), "fraction": format_fraction(core.evaluate(phi, a))}


def cmd_gen(ses: Session, args) -> dict:
    out = Path(args.out)
    if args.demo:
        eps = [_frac(e) for e in args.eps.split(",")] if args.eps else None
        demo = build_demo(args.demo, args.n, args.m, eps)
        if demo.spec.mode != args.mode:
            raise UsageError(f"--demo {args.demo} uses {demo.spec.mode} blocks, not {args.mode}")
        ws = list(demo.witnesses.values()) if isinstance(demo.witnesses, dict) else demo.witnesses
        split = (len(ws[0].base), len(ws[0].proof))
        wit, alp = out.with_suffix(".wit"), out.with_suffix(".alpha")
        out.write_text(dump_cfr(demo.psi))
        wit.write_text(dump_bit_lines([w.full for w in ws], split))
        alp.write_text(dump_bit_lines(demo.alphas))
        return {
            "formula": str(out),
            "witnesses": str(wit),
            "alphas": str(alp),
            "num_vars": demo.psi.num_vars,
            "applications": len(demo.psi.applications),
            "total_weight": demo.psi.total_weight,
        }
    spec = BlockSpec(args.n, args.m, args.mode)
    phi, sats = gen_onehot_formula(spec)
    out.write_text(dump_cfr(phi))
    return {
        "formula": str(out),
        "num_vars": phi.num_vars,
        "applications": len(phi.applications),
        "satisfying": [format_bits(a) for a in sats],
    }


def cmd_attack(ses: Session, args) -> dict:
    psi = ses.formula(args)
    vectors, split = parse_bit_lines(ses.read(args.witnesses))
    alphas, _ = parse_bit_lines(ses.read(args.alphas))
    if split is not None:
        n_base = split[0]
    elif alphas:
        n_base = len(alphas[0])
    else:
        raise UsageError("witness file needs a split header or an alphas file with vectors")
    ws = [WitnessPair.split(v, n_base) for v in vectors]
    if args.cls == "2cnf":
        m = 1
        while m * (m + 1) // 2 < len(ws):
            m += 1
        if m * (m + 1) // 2 != len(ws):
            raise UsageError(f"2cnf needs m(m+1)/2 witnesses in pair order, got {len(ws)}")
        witnesses = dict(zip(pair_keys(m), ws))
    else:
        witnesses = ws
    try:
        result = run_attack(args.cls, psi, witnesses, alphas)
    except InvariantViolation as exc:
        raise _Negative({"status": "invariant-violated", "detail": str(exc)}) from None
    return {"status": "ok", **result.to_dict()}


def _target(name: str, s, table: str | None) -> Constraint:
    if table:
        return Constraint.from_string(name, table)
    if s is not None and name in s:
        return s[name]
    if name in NAMED:
        return Constraint.from_string(name, NAMED[name])
    c = core.builtin_constraint(name)
    if c is None:
        raise UsageError(f"unknown target {name!r}; pass --target-table")
    return c


def cmd_gadget(ses: Session, args) -> dict:
    s = ses.cset(args.set)
    target = _target(args.target, s, args.target_table)
    g = search_gadget(target, s, args.max_aux, args.max_apps)
    if g is None:
        raise _Negative({"status": "not-found", "target": target.name})
    text = dump_gadget(g)
    if args.out:
        Path(args.out).write_text(text)
    return {
        "status": "found",
        "target": target.name,
        "aux_count": g.aux_count,
        "applications": [[a.constraint, *a.indices] for a in g.applications],
        "gadget": text,
    }


def cmd_reduce(ses: Session, args) -> dict:
    s = ses.cset(args.set)
    phi = parse_cfr(ses.read(args.formula))
    library = load_library(args.library, s)
    for path in sorted(Path(args.library).glob("*.gad")):
        ses.read(str(path))
    out = reduce_3sat(phi, s, library)
    result = {
        "num_vars": out.num_vars,
        "applications": len(out.applications),
        "formula": dump_cfr(out),
    }
    if args.out:
        Path(args.out).write_text(result["formula"])
    if out.num_vars <= oracle.N_MAX:
        best, _ = oracle.max_sat(out)
        result["satisfiable"] = best == 1
    return result


COMMANDS = {
    "classify": cmd_classify,
    "synth": cmd_synth,
    "solve": cmd_solve,
    "lin-attack": cmd_lin_attack,
    "distance": cmd_distance,
    "gen": cmd_gen,
    "attack": cmd_attack,
    "gadget": cmd_gadget,
    "reduce": cmd_reduce,
}


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--report", choices=("json", "text"), default="text")
    common.add_argument("--max-arity", type=int, default=None)
    common.add_argument("--n-max", type=int, default=None)

    p = _Parser(prog="pcpp-dichotomy", description=__doc__.splitlines()[0], parents=[common])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sp = sub.add_parser("classify", parents=[common], help="Schaefer classes of a constraint set")
    sp.add_argument("--set", required=True)

    sp = sub.add_parser("synth", parents=[common], help="clause representations")
    sp.add_argument("--set", required=True)
    sp.add_argument("--family", choices=FAMILIES)
    sp.add_argument("--constraint")

    for name, helptext in (
        ("solve", "exhaustive max-sat"),
        ("lin-attack", "GF(2) elimination on a linear formula"),
        ("distance", "distance to the nearest satisfying assignment"),
    ):
        sp = sub.add_parser(name, parents=[common], help=helptext)
        sp.add_argument("--formula", required=True)
        sp.add_argument("--set")
        if name == "solve":
            sp.add_argument("--kappa")
            sp.add_argument("--sigma")
        if name == "distance":
            sp.add_argument("--assignment", required=True)

    sp = sub.add_parser("gen", parents=[common], help="one-hot counterexample formulas and demos")
    sp.add_argument("--mode", choices=("pairwise", "triplewise"), required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--out", required=True)
    sp.add_argument("--demo", choices=("linear", "weakly-positive", "weakly-negative", "2cnf"))
    sp.add_argument("--eps", help="comma-separated per-witness violated fractions")

    sp = sub.add_parser("attack", parents=[common], help="run an adversary")
    sp.add_argument("--class", dest="cls", required=True)
    sp.add_argument("--formula", required=True)
    sp.add_argument("--witnesses", required=True)
    sp.add_argument("--alphas", required=True)
    sp.add_argument("--set")

    sp = sub.add_parser("gadget", parents=[common], help="search for a perfect gadget")
    sp.add_argument("--target", required=True)
    sp.add_argument("--target-table")
    sp.add_argument("--set", required=True)
    sp.add_argument("--max-aux", type=int, required=True)
    sp.add_argument("--max-apps", type=int, required=True)
    sp.add_argument("--out")

    sp = sub.add_parser("reduce", parents=[common], help="compile a 3SAT formula through gadgets")
    sp.add_argument("--formula", required=True)
    sp.add_argument("--set", required=True)
    sp.add_argument("--library", required=True)
    sp.add_argument("--out")
    return p


def render(report: dict, mode: str) -> str:
    if mode == "json":
        return json.dumps(report, indent=2, sort_keys=True) + "\n"
    lines = [f"command: {' '.join(report['command'])}"]

    def walk(prefix: str, value):
        if isinstance(value, dict):
            for k, v in value.items():
                walk(f"{prefix}{k}.", v)
        elif isinstance(value, list):
            lines.append(f"{prefix[:-1]}: {json.dumps(value)}")
        elif isinstance(value, str) and "\n" in value:
            lines.append(f"{prefix[:-1]}:")
            lines.extend("  " + ln for ln in value.splitlines())
        else:
            lines.append(f"{prefix[:-1]}: {value}")

    walk("", report["result"])
    lines.append(f"exit_status: {report['exit_status']}")
    return "\n".join(lines) + "\n"


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    saved = (core.MAX_ARITY, oracle.N_MAX)
    ses = Session(argv)
    try:
        args = build_parser().parse_args(argv)
        if args.max_arity is not None:
            core.MAX_ARITY = args.max_arity
        if args.n_max is not None:
            oracle.N_MAX = args.n_max
        try:
            result, status = COMMANDS[args.command](ses, args), EXIT_OK
        except _Negative as neg:
            result, status = neg.result, EXIT_NEGATIVE
            print(f"negative result: {neg}", file=sys.stderr)
    except (UsageError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CapacityError as exc:
        print(f"capacity error: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except InvariantViolation as exc:
        print(f"invariant violated: {exc}", file=sys.stderr)
        return EXIT_NEGATIVE
    finally:
        core.MAX_ARITY, oracle.N_MAX = saved
    report = {
        "command": argv,
        "inputs": dict(sorted(ses.inputs.items())),
        "result": result,
        "exit_status": status,
    }
    sys.stdout.write(render(report, args.report))
    return status


if __name__ == "__main__":
    sys.exit(main())
