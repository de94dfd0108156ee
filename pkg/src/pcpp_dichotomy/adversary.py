"""Adversaries that defeat almost-perfect PCPPs over tractable constraint sets.

Each attack takes a formula ``psi`` (what a verifier would check) and the
honest proofs for a family of satisfying base assignments, throws away every
application some proof violates, and combines the proofs coordinate-wise
into a single assignment that satisfies everything that is left, even
though its base part is far from every honest base assignment.

Variable ``x_i^j`` (``i``-th variable of block ``j``) has index
``(j - 1) * n + i``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from math import lcm
from typing import Mapping, Sequence

from .classify import ATTACKABLE, classify_set, synthesize_clauses
from .core import (
    ID,
    NOT,
    Application,
    Bits,
    Constraint,
    ConstraintSet,
    Formula,
    InvariantViolation,
    UsageError,
    clause_constraint,
    complement_constraint,
    evaluate,
    format_bits,
    format_fraction,
)
from .oracle import distance

EQ2 = Constraint.from_string("EQ2", "1001")
XOR3_0 = Constraint.from_string("XOR3_0", "10010110")

MODES = ("pairwise", "triplewise")


@dataclass(frozen=True)
class BlockSpec:
    n: int
    m: int
    mode: str = "pairwise"

    def __post_init__(self):
        if self.mode not in MODES:
            raise UsageError(f"mode must be one of {MODES}, got {self.mode!r}")
        if self.n < 1:
            raise UsageError("block size n must be >= 1")
        if self.m < (2 if self.mode == "pairwise" else 3):
            raise UsageError(f"{self.mode} needs more blocks, got m={self.m}")

    @property
    def num_base(self) -> int:
        return self.n * self.m

    def var(self, i: int, j: int) -> int:
        return (j - 1) * self.n + i

    def block_assignment(self, blocks) -> Bits:
        """Base assignment with exactly the given blocks set to 1."""
        on = set(blocks)
        return tuple(1 if j in on else 0 for j in range(1, self.m + 1) for _ in range(self.n))

    def alphas(self) -> list[Bits]:
        """All satisfying assignments of the one-hot formula, ``alpha_0`` first."""
        out = [self.block_assignment(())]
        if self.mode == "pairwise":
            out += [self.block_assignment((j,)) for j in range(1, self.m + 1)]
        else:
            out += [self.block_assignment({j, k}) for j, k in pair_keys(self.m)]
        return out


def pair_keys(m: int) -> list[tuple[int, int]]:
    """Unordered pairs ``(j, k)``, ``1 <= j <= k <= m``, in canonical order."""
    return [(j, k) for j in range(1, m + 1) for k in range(j, m + 1)]


def gen_onehot_formula(spec: BlockSpec) -> tuple[Formula, list[Bits]]:
    """The one-hot counterexample formula and its full list of satisfying assignments."""
    cross = clause_constraint("nn" if spec.mode == "pairwise" else "nnn")
    imp = clause_constraint("np")
    apps = []
    for j in range(1, spec.m + 1):
        for i, i2 in combinations(range(1, spec.n + 1), 2):
            a, b = spec.var(i, j), spec.var(i2, j)
            apps.append(Application(imp.name, (a, b)))
            apps.append(Application(imp.name, (b, a)))
    arity = 2 if spec.mode == "pairwise" else 3
    rng = range(1, spec.n + 1)
    for blocks in combinations(range(1, spec.m + 1), arity):
        for idx in product(rng, repeat=arity):
            apps.append(Application(cross.name, tuple(spec.var(i, j) for i, j in zip(idx, blocks))))
    phi = Formula(spec.num_base, ConstraintSet((imp, cross)), tuple((a, 1) for a in apps))
    return phi, spec.alphas()


@dataclass(frozen=True)
class WitnessPair:
    base: Bits
    proof: Bits = ()

    @property
    def full(self) -> Bits:
        return tuple(self.base) + tuple(self.proof)

    @classmethod
    def split(cls, bits: Sequence[int], n_base: int) -> "WitnessPair":
        bits = tuple(bits)
        return cls(bits[:n_base], bits[n_base:])


def _full(w) -> Bits:
    return w.full if isinstance(w, WitnessPair) else tuple(w)


def _check_lengths(witnesses) -> None:
    pairs = [w for w in witnesses if isinstance(w, WitnessPair)]
    if len({(len(w.base), len(w.proof)) for w in pairs}) > 1:
        raise UsageError("witnesses disagree on base/proof lengths")


def prune(psi: Formula, witnesses: Sequence) -> tuple[Formula, Fraction]:
    """Drop every application that some witness violates.

    Returns the pruned formula and the fraction of weight it keeps, which is
    at least ``1 - sum(eps_j)`` by the union bound.
    """
    _check_lengths(witnesses)
    fulls = [_full(w) for w in witnesses]
    for a in fulls:
        if len(a) != psi.num_vars:
            raise UsageError(f"witness length {len(a)} != {psi.num_vars} variables")
    kept = [(app, w) for app, w in psi.applications if all(psi.satisfied(app, a) for a in fulls)]
    pruned = psi.with_applications(kept)
    total = psi.total_weight
    frac = Fraction(1) if total == 0 else Fraction(pruned.total_weight, total)
    return pruned, frac


def _combine(witnesses, op) -> Bits:
    fulls = [_full(w) for w in witnesses]
    if not fulls:
        raise UsageError("cannot combine an empty witness list")
    if len({len(a) for a in fulls}) > 1:
        raise UsageError("witnesses have different lengths")
    return tuple(op(col) for col in zip(*fulls))


def combine_xor(witnesses: Sequence) -> Bits:
    if len(witnesses) % 2 == 0:
        raise UsageError("XOR combination needs an odd number of witnesses")
    return _combine(witnesses, lambda col: sum(col) & 1)


def combine_or(witnesses: Sequence) -> Bits:
    return _combine(witnesses, lambda col: int(any(col)))


def combine_and(witnesses: Sequence) -> Bits:
    return _combine(witnesses, lambda col: int(all(col)))


@dataclass(frozen=True)
class MatrixClass:
    """Variables sharing one value matrix across the pair-indexed witnesses.

    ``matrix`` packs the symmetric ``m x m`` 0/1 matrix row-major into an int
    (entry ``(p, q)`` is bit ``(p - 1) * m + (q - 1)``).
    """

    matrix: int
    members: tuple[int, ...]
    value: int
    rule: str

    def rows(self, m: int) -> list[str]:
        return [
            "".join(str((self.matrix >> ((p * m) + q)) & 1) for q in range(m)) for p in range(m)
        ]


def _d_matrix(j: int, m: int) -> int:
    out = 0
    for p in range(1, m + 1):
        for q in range(1, m + 1):
            if j in (p, q):
                out |= 1 << ((p - 1) * m + (q - 1))
    return out


def _normalize_pairs(witnesses: Mapping, m: int) -> dict[tuple[int, int], Bits]:
    if m % 2 == 0 or m < 1:
        raise InvariantViolation(f"m must be odd, got {m}")
    out: dict[tuple[int, int], Bits] = {}
    for (j, k), w in witnesses.items():
        if not (1 <= j <= m and 1 <= k <= m):
            raise InvariantViolation(f"witness key {(j, k)} outside 1..{m}")
        key = (min(j, k), max(j, k))
        a = _full(w)
        if key in out and out[key] != a:
            raise InvariantViolation(f"witnesses for {(j, k)} and {(k, j)} differ")
        out[key] = a
    missing = [key for key in pair_keys(m) if key not in out]
    if missing:
        raise InvariantViolation(f"missing witnesses for pairs {missing}")
    return out


def matrix_classes(
    psi: Formula, witnesses: Mapping, m: int, n_base: int = 0
) -> tuple[Bits, list[MatrixClass]]:
    """Assign every variable of ``psi`` from its value matrix and check the implication graph.

    Returns the combined assignment and the classes with their values and
    the rule that fixed each. Raises :class:`InvariantViolation` if the
    witness map is malformed, an implication edge runs from ``V_A`` to
    ``V_B`` without ``A <= B``, or the resulting assignment breaks a kept
    application.
    """
    pairs = _normalize_pairs(witnesses, m)
    for a in pairs.values():
        if len(a) != psi.num_vars:
            raise UsageError(f"witness length {len(a)} != {psi.num_vars} variables")
    size = m * m
    ones = (1 << size) - 1
    d = [_d_matrix(j, m) for j in range(1, m + 1)]

    value_matrix = [0] * (psi.num_vars + 1)
    for (j, k), a in pairs.items():
        bits = (1 << ((j - 1) * m + (k - 1))) | (1 << ((k - 1) * m + (j - 1)))
        for z in range(1, psi.num_vars + 1):
            if a[z - 1]:
                value_matrix[z] |= bits

    groups: dict[int, list[int]] = {}
    for z in range(1, psi.num_vars + 1):
        groups.setdefault(value_matrix[z], []).append(z)

    classes = {}
    for A, members in groups.items():
        above = [j for j, dj in enumerate(d, 1) if dj & ~A == 0]
        below = [j for j, dj in enumerate(d, 1) if A & dj == 0]
        both = set(above) & set(below)
        if both:
            raise InvariantViolation(f"D^j <= A <= 1 - D^j for j in {sorted(both)}")
        if above:
            value, rule = 1, f"D^{above[0]} <= A"
        elif below:
            value, rule = 0, f"A <= 1 - D^{below[0]}"
        else:
            value, rule = int(2 * bin(A).count("1") > size), "majority"
        classes[A] = MatrixClass(A, tuple(members), value, rule)

    for A, cls in classes.items():
        comp = classes.get(ones ^ A)
        if comp is not None and comp.value == cls.value:
            raise InvariantViolation("complementary classes received the same value")

    assignment = tuple(classes[value_matrix[z]].value for z in range(1, psi.num_vars + 1))
    for z in range(1, n_base + 1):
        if assignment[z - 1] != 1:
            raise InvariantViolation(f"base variable {z} is not in any V_(D^j)")

    def literal(lit: int, app: Application) -> tuple[int, int]:
        z = app.indices[abs(lit) - 1]
        mat = value_matrix[z]
        val = assignment[z - 1]
        return (mat, val) if lit > 0 else (ones ^ mat, 1 - val)

    reps = {}
    for app, _ in psi.applications:
        rep = reps.get(app.constraint)
        if rep is None:
            rep = synthesize_clauses(psi.cset[app.constraint], "two-clause")
            if rep is None:
                raise UsageError(f"{app.constraint} is not expressible in 2CNF")
            reps[app.constraint] = rep
        for clause in rep.clauses:
            if not clause:
                raise InvariantViolation("kept application is unsatisfiable")
            lits = [literal(lit, app) for lit in clause]
            if len(lits) == 1:
                lits = lits * 2
            (ma, va), (mb, vb) = lits
            # clause a or b gives edges (not a -> b) and (not b -> a)
            for (m_from, v_from), (m_to, v_to) in (((ones ^ ma, 1 - va), (mb, vb)),
                                                   ((ones ^ mb, 1 - vb), (ma, va))):
                if m_from & ~m_to:
                    raise InvariantViolation("implication edge from V_A to V_B without A <= B")
                if v_from and not v_to:
                    raise InvariantViolation("combined assignment violates an implication edge")
    return assignment, sorted(classes.values(), key=lambda c: c.members)


def construct_2cnf_proof(psi: Formula, witnesses: Mapping, m: int, n_base: int = 0) -> Bits:
    """Combined ``(beta, pi)`` for a pruned 2CNF ``psi`` and pair-indexed witnesses."""
    assignment, _ = matrix_classes(psi, witnesses, m, n_base)
    return assignment


@dataclass
class AttackResult:
    class_tag: str
    pruned: Formula
    pruned_weight_fraction: Fraction
    combined: Bits
    n_base: int
    satisfied_fraction_pruned: Fraction
    satisfied_fraction_original: Fraction
    distances: list[Fraction]
    epsilon_per_witness: list[Fraction]
    bound: Fraction
    eps_multiplier: int
    classes: list[MatrixClass] = field(default_factory=list)

    @property
    def beta(self) -> Bits:
        return self.combined[: self.n_base]

    @property
    def proof(self) -> Bits:
        return self.combined[self.n_base :]

    @property
    def epsilon_max(self) -> Fraction:
        return max(self.epsilon_per_witness, default=Fraction(0))

    @property
    def lambda_(self) -> Fraction:
        """Largest eps at which ``1 - eps_multiplier * eps`` is still positive."""
        return Fraction(1, self.eps_multiplier)

    def to_dict(self) -> dict:
        out = {
            "class": self.class_tag,
            "pruned_weight_fraction": format_fraction(self.pruned_weight_fraction),
            "combined": format_bits(self.combined),
            "beta": format_bits(self.beta),
            "proof": format_bits(self.proof),
            "satisfied_fraction_pruned": format_fraction(self.satisfied_fraction_pruned),
            "satisfied_fraction_original": format_fraction(self.satisfied_fraction_original),
            "distances": [format_fraction(d) for d in self.distances],
            "epsilon_per_witness": [format_fraction(e) for e in self.epsilon_per_witness],
            "epsilon_max": format_fraction(self.epsilon_max),
            "bound": format_fraction(self.bound),
            "eps_multiplier": self.eps_multiplier,
            "lambda": format_fraction(self.lambda_),
        }
        if self.classes:
            out["matrix_classes"] = [
                {"members": list(c.members), "value": c.value, "rule": c.rule}
                for c in self.classes
            ]
        return out


def run_attack(class_tag: str, psi: Formula, witnesses, alphas: Sequence[Bits]) -> AttackResult:
    """Prune, combine by class, and measure the combined assignment.

    ``witnesses`` is a list of :class:`WitnessPair` for the pairwise classes
    and a mapping ``(j, k) -> WitnessPair`` for ``2cnf``.
    """
    if class_tag not in ATTACKABLE:
        raise UsageError(
            f"no attack for class {class_tag!r}; 0-valid and 1-valid sets are defeated by "
            "the constant assignment"
        )
    report = classify_set(psi.cset)
    if not report.flags[class_tag]:
        raise UsageError(f"constraint set is not {class_tag}")

    if class_tag == "2cnf":
        if not isinstance(witnesses, Mapping):
            raise UsageError("2cnf attack needs witnesses keyed by block pairs")
        m = max(max(key) for key in witnesses)
        if m % 2 == 0:
            raise UsageError(f"2cnf attack needs odd m, got {m}")
        try:
            pairs = _normalize_pairs(witnesses, m)
        except InvariantViolation as exc:
            raise UsageError(str(exc)) from None
        wlist = [witnesses.get(key, witnesses.get(key[::-1])) for key in pair_keys(m)]
    else:
        wlist = list(witnesses)
        if class_tag == "linear" and len(wlist) % 2 == 0:
            raise UsageError("linear attack needs an odd number of witnesses")
    if not wlist:
        raise UsageError("no witnesses")
    _check_lengths(wlist)

    first = wlist[0]
    if isinstance(first, WitnessPair):
        n_base = len(first.base)
    elif alphas:
        n_base = len(alphas[0])
    else:
        n_base = psi.num_vars

    eps = [1 - evaluate(psi, _full(w)) for w in wlist]
    pruned, kept = prune(psi, wlist)

    classes: list[MatrixClass] = []
    if class_tag == "linear":
        combined = combine_xor(wlist)
    elif class_tag == "weakly-positive":
        combined = combine_or(wlist)
    elif class_tag == "weakly-negative":
        combined = combine_and(wlist)
    else:
        combined, classes = matrix_classes(pruned, pairs, m, n_base)

    sat_pruned = evaluate(pruned, combined)
    if sat_pruned != 1:
        raise InvariantViolation(
            f"combined assignment satisfies only {sat_pruned} of the pruned formula"
        )
    sat_orig = evaluate(psi, combined)
    beta = combined[:n_base]
    distances = [distance(beta, a) for a in alphas]

    if class_tag == "2cnf":
        mult = m * (m + 1) // 2
        bound = 1 - mult * max(eps)
    else:
        mult = len(wlist)
        bound = 1 - sum(eps)
    if sat_orig < bound:
        raise InvariantViolation(f"satisfied fraction {sat_orig} below the bound {bound}")
    return AttackResult(
        class_tag=class_tag,
        pruned=pruned,
        pruned_weight_fraction=kept,
        combined=combined,
        n_base=n_base,
        satisfied_fraction_pruned=sat_pruned,
        satisfied_fraction_original=sat_orig,
        distances=distances,
        epsilon_per_witness=eps,
        bound=bound,
        eps_multiplier=mult,
        classes=classes,
    )


def double_formula(phi: Formula, force: str = "true-half") -> Formula:
    """Copy ``phi`` onto the first half of ``2n`` variables and pin the second half."""
    if force == "true-half":
        unit = ID
    elif force == "false-half":
        unit = NOT
    else:
        raise UsageError(f"force must be 'true-half' or 'false-half', got {force!r}")
    n = phi.num_vars
    apps = list(phi.applications) + [(Application(unit.name, (n + i,)), 1) for i in range(1, n + 1)]
    return Formula(2 * n, phi.cset.union([unit]), tuple(apps))


# Demo verifier formulas. Each builder returns unit-weight core applications
# satisfied by every honest witness; _inject_slack then adds one weighted
# slack unit per perturbed witness so that witness misses exactly eps_j.


@dataclass
class Demo:
    class_tag: str
    spec: BlockSpec
    psi: Formula
    witnesses: object  # list[WitnessPair], or dict for 2cnf
    alphas: list[Bits]


def _linear_core(spec: BlockSpec):
    n, m = spec.n, spec.m
    nb = spec.num_base
    y = [nb + t for t in range(1, m + 1)]
    apps = []
    for j in range(1, m + 1):
        for i in range(2, n + 1):
            apps.append(Application(EQ2.name, (spec.var(1, j), spec.var(i, j))))
    apps.append(Application(EQ2.name, (y[0], spec.var(1, 1))))
    for t in range(2, m + 1):
        apps.append(Application(XOR3_0.name, (y[t - 2], spec.var(1, t), y[t - 1])))
    apps.append(Application(ID.name, (y[-1],)))
    cset = ConstraintSet((EQ2, XOR3_0, ID))
    fulls = []
    for j in range(1, m + 1):
        prefix = tuple(int(t >= j) for t in range(1, m + 1))
        fulls.append(spec.block_assignment((j,)) + prefix)
    return cset, nb + m, apps, fulls


def _dual_horn_core(spec: BlockSpec):
    n, m = spec.n, spec.m
    nb = spec.num_base
    pn, ppn = clause_constraint("pn"), clause_constraint("ppn")
    z = [nb + t for t in range(1, m + 1)]
    apps = []
    for j in range(1, m + 1):
        for i in range(2, n + 1):
            a, b = spec.var(1, j), spec.var(i, j)
            apps.append(Application(pn.name, (a, b)))
            apps.append(Application(pn.name, (b, a)))
    for t in range(1, m + 1):
        apps.append(Application(pn.name, (z[t - 1], spec.var(1, t))))  # block t on -> z_t
    for t in range(2, m + 1):
        apps.append(Application(pn.name, (z[t - 1], z[t - 2])))  # z_{t-1} -> z_t
        apps.append(Application(ppn.name, (z[t - 2], spec.var(1, t), z[t - 1])))
    apps.append(Application(pn.name, (spec.var(1, 1), z[0])))
    apps.append(Application(ID.name, (z[-1],)))
    cset = ConstraintSet((pn, ppn, ID))
    fulls = []
    for j in range(1, m + 1):
        prefix = tuple(int(t >= j) for t in range(1, m + 1))
        fulls.append(spec.block_assignment((j,)) + prefix)
    return cset, nb + m, apps, fulls


def _two_cnf_core(spec: BlockSpec):
    n, m = spec.n, spec.m
    pn, pp, nn = clause_constraint("pn"), clause_constraint("pp"), clause_constraint("nn")
    nxt = spec.num_base
    neg = {}
    for t in range(1, m + 1):
        nxt += 1
        neg[t] = nxt
    pairs = list(combinations(range(1, m + 1), 2))
    either, both = {}, {}
    for pq in pairs:
        nxt += 1
        either[pq] = nxt
    for pq in pairs:
        nxt += 1
        both[pq] = nxt
    nxt += 1
    distinct = nxt

    apps = []
    for j in range(1, m + 1):
        for i in range(2, n + 1):
            a, b = spec.var(1, j), spec.var(i, j)
            apps.append(Application(pn.name, (a, b)))
            apps.append(Application(pn.name, (b, a)))
    for t in range(1, m + 1):
        apps.append(Application(pp.name, (spec.var(1, t), neg[t])))
        apps.append(Application(nn.name, (spec.var(1, t), neg[t])))
    for p, q in pairs:
        apps.append(Application(pn.name, (either[p, q], spec.var(1, p))))
        apps.append(Application(pn.name, (either[p, q], spec.var(1, q))))
        apps.append(Application(pn.name, (spec.var(1, p), both[p, q])))
        apps.append(Application(pn.name, (spec.var(1, q), both[p, q])))
        apps.append(Application(pn.name, (distinct, both[p, q])))
    cset = ConstraintSet((pn, pp, nn, ID))

    fulls = {}
    for j, k in pair_keys(m):
        on = {j, k}
        proof = [1 - int(t in on) for t in range(1, m + 1)]
        proof += [int(p in on or q in on) for p, q in pairs]
        proof += [int(on == {p, q}) for p, q in pairs]
        proof.append(int(j != k))
        fulls[j, k] = spec.block_assignment(on) + tuple(proof)
    return cset, distinct, apps, fulls


def _inject_slack(cset, num_vars, apps, fulls: list[Bits], eps):
    """Weight the core so each witness ``j`` with ``eps_j > 0`` misses exactly ``eps_j``."""
    eps = [Fraction(e) for e in eps]
    if len(eps) != len(fulls):
        raise UsageError(f"need {len(fulls)} eps values, got {len(eps)}")
    if any(e < 0 for e in eps) or sum(eps) >= 1:
        raise UsageError("eps values must be >= 0 with sum < 1")
    perturbed = [j for j, e in enumerate(eps) if e > 0]
    if not perturbed:
        return Formula(num_vars, cset, tuple((a, 1) for a in apps)), fulls
    total = Fraction(len(apps)) / (1 - sum(eps))
    scale = lcm(total.denominator, *((total * eps[j]).denominator for j in perturbed))
    weighted = [(a, scale) for a in apps]
    slack_vars = {}
    for j in perturbed:
        num_vars += 1
        slack_vars[j] = num_vars
        weighted.append((Application(ID.name, (num_vars,)), int(scale * total * eps[j])))
    new_fulls = []
    for j, a in enumerate(fulls):
        new_fulls.append(tuple(a) + tuple(int(j2 != j) for j2 in perturbed))
    return Formula(num_vars, cset.union([ID]), tuple(weighted)), new_fulls


def _complement_formula(phi: Formula) -> Formula:
    mapping = {c.name: complement_constraint(c) for c in phi.cset}
    apps = tuple((Application(mapping[a.constraint].name, a.indices), w) for a, w in phi.applications)
    return Formula(phi.num_vars, ConstraintSet(tuple(mapping.values())), apps)


def _flip(a: Sequence[int]) -> Bits:
    return tuple(1 - b for b in a)


def build_demo(class_tag: str, n: int, m: int, eps=None) -> Demo:
    """A ready-to-attack ``psi`` in the target class, honest witnesses, and base alphas.

    ``eps`` lists the violated weight fraction to inject per witness (pair
    witnesses in :func:`pair_keys` order for ``2cnf``); default all zero.
    """
    if class_tag == "2cnf":
        spec = BlockSpec(n, m, "triplewise")
        if m % 2 == 0:
            raise UsageError("the 2cnf demo needs odd m")
        cset, num_vars, apps, full_map = _two_cnf_core(spec)
        keys = pair_keys(m)
        fulls = [full_map[key] for key in keys]
    elif class_tag in ("linear", "weakly-positive", "weakly-negative"):
        spec = BlockSpec(n, m, "pairwise")
        if class_tag == "linear":
            if m % 2 == 0:
                raise UsageError("the linear demo needs odd m")
            cset, num_vars, apps, fulls = _linear_core(spec)
        else:
            cset, num_vars, apps, fulls = _dual_horn_core(spec)
    else:
        raise UsageError(f"no demo for class {class_tag!r}")

    if eps is None:
        eps = [0] * len(fulls)
    psi, fulls = _inject_slack(cset, num_vars, apps, fulls, eps)
    nb = spec.num_base
    if class_tag == "2cnf":
        witnesses = {key: WitnessPair.split(a, nb) for key, a in zip(keys, fulls)}
        alphas = [spec.block_assignment({j, k}) for j, k in keys if j != k]
    else:
        alphas = [spec.block_assignment((j,)) for j in range(1, m + 1)]
        if class_tag == "weakly-negative":
            psi = _complement_formula(psi)
            fulls = [_flip(a) for a in fulls]
            alphas = [_flip(a) for a in alphas]
        witnesses = [WitnessPair.split(a, nb) for a in fulls]
    return Demo(class_tag, spec, psi, witnesses, alphas)
