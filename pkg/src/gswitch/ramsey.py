"""Witness verification, exhaustive value checks and rule-driven bound certificates."""

from __future__ import annotations

import hashlib
import json
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from itertools import combinations, product
from math import ceil
from typing import Sequence

from .core import CliqueWitness, EdgeColouring, Permutation, pair_list
from .groups import (
    ColourGroup,
    colour_orbits,
    action_properties,
    commutator_subgroup,
    cyclic,
    generate_group,
    quotient_action,
    restrict,
)
from .modsolve import decide_containment_abelian, pattern_verdicts
from .search import DEFAULT_BUDGET, BudgetExceeded, decide_containment_generic, orbit_enumerate

log = logging.getLogger(__name__)


def check_target(targets: Sequence[int], m: int | None = None) -> tuple[int, ...]:
    t = tuple(int(a) for a in targets)
    if m is not None and len(t) != m:
        raise ValueError(f"need {m} targets, got {len(t)}")
    if any(a < 2 for a in t):
        raise ValueError(f"every target must be at least 2: {t}")
    return t


# -- classical values --------------------------------------------------------

@dataclass(frozen=True)
class ClassicalEntry:
    target: tuple[int, ...]
    lo: int
    hi: int
    source: str

    def describe(self) -> str:
        val = str(self.lo) if self.lo == self.hi else f"[{self.lo},{self.hi}]"
        return f"R{self.target} = {val} ({self.source})"


@lru_cache(maxsize=None)
def classical_table() -> dict[tuple[int, ...], ClassicalEntry]:
    raw = json.loads(resources.files(__package__).joinpath("classical_values.json").read_text())
    out = {}
    for e in raw["entries"]:
        t = tuple(sorted(e["target"]))
        if e["lo"] > e["hi"]:
            raise ValueError(f"bad classical interval for {t}")
        out[t] = ClassicalEntry(t, e["lo"], e["hi"], e["source"])
    return out


def classical_lookup(targets: Sequence[int]) -> ClassicalEntry | None:
    """Classical R(targets), after deleting entries equal to 2 and sorting.

    A colour with target 2 is met by any single edge of that colour, so
    colourings avoiding it never use it.
    """
    t = tuple(targets)
    if any(a <= 1 for a in t):
        return ClassicalEntry(t, 1, 1, "convention: K_1 is monochromatic")
    reduced = tuple(sorted(a for a in t if a != 2))
    if not reduced:
        return ClassicalEntry(t, 2, 2, "convention: every edge is a K_2")
    if len(reduced) == 1:
        a = reduced[0]
        note = "single colour" if len(t) == 1 else f"deleting targets equal to 2 leaves R({a})"
        return ClassicalEntry(t, a, a, f"convention: {note}")
    hit = classical_table().get(reduced)
    if hit is None:
        return None
    source = hit.source
    if reduced != t:
        source = f"{source}; reduced from R{t} by deleting targets equal to 2"
    return ClassicalEntry(t, hit.lo, hit.hi, source)


# -- exhaustive sweeps ---------------------------------------------------------

@dataclass
class ExhaustiveResult:
    """``verified`` is True (every representative contains a witness), False
    (``counterexample`` avoids all targets) or None (budget ran out)."""

    verified: bool | None
    n: int
    stats: dict = field(default_factory=dict)
    counterexample: EdgeColouring | None = None


class _SweepBudget(Exception):
    pass


def _sweep_plan(n: int, targets: tuple[int, ...]):
    order = [(i, j) for j in range(1, n) for i in range(j)]
    pos = {e: p for p, e in enumerate(order)}
    sizes = sorted({a for a in targets if 2 <= a <= n})
    checks = []
    for p, (i, j) in enumerate(order):
        items = []
        for a in sizes:
            cols = tuple(t for t, at in enumerate(targets) if at == a)
            subs = []
            for rest in combinations(range(i), a - 2):
                s = rest + (i, j)
                subs.append(tuple(pos[(s[x], s[y])] for x, y in pair_list(a)))
            if subs:
                items.append((a, cols, subs))
        checks.append(items)
    return order, checks


def _verdict_tables(group: ColourGroup | None, m: int, targets: tuple[int, ...], budget: int):
    """Per (size, colour) lookups: pattern -> can the clique be made that colour."""
    if group is None:
        def classical(a, t):
            mono = sum(t * m ** k for k in range(a * (a - 1) // 2))
            return lambda pat: pat == mono
        return {(a, t): classical(a, t) for t, a in enumerate(targets)}
    if group.is_abelian:
        oracle = pattern_verdicts(group)

        def abelian(a, t):
            tab = oracle.table(a, t)

            def hit(pat):
                v = tab.get(pat)
                return oracle.switchable(a, t, pat) if v is None else v
            return hit
        return {(a, t): abelian(a, t) for t, a in enumerate(targets)}
    out = {}
    for t, a in enumerate(targets):
        if a < 2:
            continue
        mono = EdgeColouring.monochromatic(a, m, t)
        orb = orbit_enumerate(mono, group, budget)
        if not orb.exhaustive:
            raise BudgetExceeded(f"orbit of monochromatic K_{a} exceeded budget", orb.size)
        pats = set()
        for g in orb.graphs():
            pats.add(sum(c * m ** k for k, c in enumerate(g.colours)))
        out[(a, t)] = pats.__contains__
    return out


def _run_sweep(n, m, targets, group, apex_colour, prefix, budget):
    """Depth-first search over colourings with early pruning.

    Search vertex 0 is the homogenised apex (when ``apex_colour`` is set).
    A partial colouring is abandoned as soon as a completed subset can be
    switched to its colour target, which covers every completion.
    """
    order, checks = _sweep_plan(n, targets)
    E = len(order)
    hits = _verdict_tables(group, m, targets, budget)
    weights = {a: [m ** k for k in range(a * (a - 1) // 2)] for a in set(targets)}
    domain = []
    for i, j in order:
        if apex_colour is not None and i == 0:
            domain.append((apex_colour,))
        else:
            domain.append(tuple(range(m)))
    x = [0] * E
    nodes = 0

    def blocked(p: int) -> list[bool]:
        """For each value of x[p], whether some completed subset is switchable."""
        out = [False] * m
        for a, cols, subs in checks[p]:
            w = weights[a]
            for s in subs:
                base = 0
                wp = 0
                for q, wk in zip(s, w):
                    if q == p:
                        wp = wk
                    else:
                        base += x[q] * wk
                for val in range(m):
                    if out[val]:
                        continue
                    pat = base + val * wp
                    for t in cols:
                        if hits[(a, t)](pat):
                            out[val] = True
                            break
        return out

    found = None

    def rec(p: int) -> bool:
        nonlocal nodes, found
        if p == E:
            found = list(x)
            return True
        dead = blocked(p)
        for val in domain[p]:
            if dead[val]:
                continue
            nodes += 1
            if nodes > budget:
                raise _SweepBudget
            x[p] = val
            if rec(p + 1):
                return True
        return False

    # replay the prefix, stopping if it is already blocked
    for p, val in enumerate(prefix):
        if val not in domain[p] or blocked(p)[val]:
            return {"nodes": nodes}, None
        x[p] = val
    try:
        rec(len(prefix))
    except _SweepBudget:
        return {"nodes": nodes, "budget_exceeded": True}, None
    return {"nodes": nodes}, found


def _to_colouring(n: int, m: int, order, values, apex: bool) -> EdgeColouring:
    # search labels: with an apex, label 0 is the last graph vertex
    def real(s):
        if not apex:
            return s
        return n - 1 if s == 0 else s - 1

    mat = [[0] * n for _ in range(n)]
    for (i, j), c in zip(order, values):
        a, b = real(i), real(j)
        mat[a][b] = mat[b][a] = c
    return EdgeColouring.from_matrix(mat, m)


def _sweep_task(args):
    n, m, targets, gens, apex_colour, prefix, budget = args
    group = None if gens is None else generate_group(m, [Permutation(g) for g in gens])
    return _run_sweep(n, m, targets, group, apex_colour, prefix, budget)


def _sweep(n, m, targets, group, apex_colour, budget, jobs):
    order, _ = _sweep_plan(n, targets)
    free = [p for p, (i, j) in enumerate(order) if not (apex_colour is not None and i == 0)]
    gens = None if group is None else tuple(g.image for g in group.generators)
    # fixed apex edges come first in the colex order only for label 0 pairs,
    # so prefixes cover positions 0..depth-1 with apex positions pinned
    depth = 0
    if jobs > 1:
        want = 4 * jobs
        count = 1
        while depth < len(order) and count < want:
            if depth in free:
                count *= m
            depth += 1
    prefixes = []
    for combo in product(range(m), repeat=sum(1 for p in range(depth) if p in free)):
        it = iter(combo)
        prefixes.append(tuple(apex_colour if p not in free else next(it) for p in range(depth)))
    tasks = [(n, m, targets, gens, apex_colour, pre, budget) for pre in prefixes]
    stats = {"nodes": 0, "tasks": len(tasks)}
    found = None
    unknown = False
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_sweep_task, tasks))
    else:
        results = []
        for task in tasks:
            res = _run_sweep(n, m, targets, group, apex_colour, task[5], budget)
            results.append(res)
            if res[1] is not None:
                break
    for st, hit in results:
        stats["nodes"] += st["nodes"]
        unknown |= st.get("budget_exceeded", False)
        if hit is not None and found is None:
            found = hit
    counter = None
    if found is not None:
        counter = _to_colouring(n, m, order, found, apex_colour is not None)
    return stats, counter, unknown


def verify_value_exhaustive(
    n: int, group: ColourGroup, targets: Sequence[int], budget: int = 50_000_000,
    jobs: int = 1, colour: int = 0,
) -> ExhaustiveResult:
    """Does every m-colouring of K_n switch to one containing K_{a_i} in colour i?

    Only colourings homogenised at the last vertex in ``colour`` are swept,
    which covers every class for a transitive group.
    """
    m = group.degree
    t = check_target(targets, m)
    if not group.is_transitive:
        raise ValueError(f"group {group.label} is not transitive on colours")
    if n < 1:
        raise ValueError("n must be positive")
    stats = {"representatives": m ** ((n - 1) * (n - 2) // 2)}
    if n == 1:
        return ExhaustiveResult(False, n, stats, EdgeColouring(1, m, b""))
    st, counter, unknown = _sweep(n, m, t, group, colour, budget, jobs)
    stats.update(st)
    if counter is not None:
        return ExhaustiveResult(False, n, stats, counter)
    if unknown:
        return ExhaustiveResult(None, n, stats)
    return ExhaustiveResult(True, n, stats)


def classical_sweep(n: int, targets: Sequence[int], budget: int = 50_000_000, jobs: int = 1) -> ExhaustiveResult:
    """Classical check: does every colouring of K_n contain K_{a_i} in colour i?

    Colours with target 2 are dropped first, as a colouring avoiding them
    cannot use them at all.
    """
    t = tuple(a for a in targets if a != 2)
    if len(t) < 2:
        raise ValueError("need at least two targets other than 2 for a sweep")
    check_target(t)
    m = len(t)
    stats = {"representatives": m ** (n * (n - 1) // 2), "reduced_target": t}
    if n == 1:
        return ExhaustiveResult(False, n, stats, EdgeColouring(1, m, b""))
    st, counter, unknown = _sweep(n, m, t, None, None, budget, jobs)
    stats.update(st)
    if counter is not None:
        return ExhaustiveResult(False, n, stats, counter)
    return ExhaustiveResult(None if unknown else True, n, stats)


# -- lower-bound witnesses -----------------------------------------------------

@dataclass
class LowerBoundResult:
    """``status`` is "certified" (no class member contains any target clique,
    so R >= n + 1), "refuted" (``witness`` shows a target clique) or "unknown"."""

    status: str
    graph: EdgeColouring
    group: str
    target: tuple[int, ...]
    witness: CliqueWitness | None = None
    stats: dict = field(default_factory=dict)

    @property
    def bound(self) -> int | None:
        return self.graph.n + 1 if self.status == "certified" else None


def verify_lower_witness(
    g: EdgeColouring, group: ColourGroup, targets: Sequence[int], method: str = "auto",
    budget: int = DEFAULT_BUDGET,
) -> LowerBoundResult:
    """Check that no graph switch-equivalent to ``g`` contains a target clique.

    ``method``: "solver" (abelian groups, per-clique congruences), "orbit"
    (breadth-first over the class), "both" (run both, demand agreement) or
    "auto" (solver when abelian).
    """
    t = check_target(targets, g.m)
    if group.degree != g.m:
        raise ValueError(f"group degree {group.degree} does not match m={g.m}")
    if method == "auto":
        method = "solver" if group.is_abelian else "orbit"
    stats: dict = {}
    verdicts = {}
    if method in ("solver", "both"):
        verdicts["solver"] = decide_containment_abelian(g, group, t, stats)
    if method in ("orbit", "both"):
        try:
            verdicts["orbit"] = decide_containment_generic(g, group, t, budget, stats)
        except BudgetExceeded as exc:
            stats["orbit_explored"] = exc.explored
            if "solver" not in verdicts:
                return LowerBoundResult("unknown", g, group.label, t, None, stats)
    if not verdicts:
        raise ValueError(f"unknown method {method!r}")
    found = {k: v is not None for k, v in verdicts.items()}
    if len(set(found.values())) > 1:
        raise AssertionError(f"containment paths disagree: {found}")
    witness = next(iter(verdicts.values()))
    if witness is not None:
        if not witness.check(g):
            raise AssertionError("witness does not verify")
        return LowerBoundResult("refuted", g, group.label, t, witness, stats)
    return LowerBoundResult("certified", g, group.label, t, None, stats)


# -- bound derivation ----------------------------------------------------------

@dataclass
class Derivation:
    rule: str
    name: str
    statement: str
    group: str
    target: tuple[int, ...]
    lo: int | None = None
    hi: int | None = None
    constants: list[str] = field(default_factory=list)
    witnesses: list[str] = field(default_factory=list)
    children: list["Derivation"] = field(default_factory=list)

    def as_dict(self) -> dict:
        return {
            "rule": self.rule,
            "name": self.name,
            "statement": self.statement,
            "group": self.group,
            "target": list(self.target),
            "lo": self.lo,
            "hi": self.hi,
            "constants": self.constants,
            "witnesses": self.witnesses,
            "children": [c.as_dict() for c in self.children],
        }


@dataclass
class BoundCertificate:
    group: str
    target: tuple[int, ...]
    lo: int
    hi: int | None
    derivation: list[Derivation]

    @property
    def exact(self) -> bool:
        return self.hi is not None and self.lo == self.hi

    def as_dict(self) -> dict:
        return {
            "format": "gswitch-bound-certificate 1",
            "group": self.group,
            "target": list(self.target),
            "lo": self.lo,
            "hi": self.hi,
            "derivation": [d.as_dict() for d in self.derivation],
        }

    def to_text(self) -> str:
        return json.dumps(self.as_dict(), indent=2) + "\n"


def collapse_cyclic(targets: tuple[int, ...]) -> tuple[int, ...]:
    """Even m: (O,E,O,E,...) with O, E the minima over alternate colours.
    Odd m: every entry becomes the overall minimum."""
    m = len(targets)
    if m % 2 == 0:
        o, e = min(targets[0::2]), min(targets[1::2])
        return tuple(o if k % 2 == 0 else e for k in range(m))
    return (min(targets),) * m


def witness_reference(label: str, g: EdgeColouring) -> str:
    from .fileio import emit_colouring

    digest = hashlib.sha256(emit_colouring(g).encode()).hexdigest()[:16]
    return f"{label} (n={g.n}, sha256:{digest})"


@dataclass
class _Node:
    lo: int
    hi: int | None
    apps: list[Derivation]


class BoundEngine:
    """Closes the rule set over one (group, target) query.

    Each query builds a fresh engine, so results depend only on inputs.
    """

    def __init__(self, witnesses: Sequence[tuple[str, EdgeColouring]] = (),
                 verify_classical_limit: int = 1 << 16, budget: int = DEFAULT_BUDGET):
        self.witnesses = list(witnesses)
        self.verify_limit = verify_classical_limit
        self.budget = budget
        self._memo: dict = {}
        self._active: set = set()
        self._checked: dict = {}

    def _classical(self, targets) -> tuple[ClassicalEntry | None, list[str]]:
        e = classical_lookup(targets)
        if e is None:
            return None, []
        note = e.describe()
        if e.lo == e.hi:
            red = tuple(a for a in targets if a != 2)
            k = len(red)
            if k >= 2 and all(a >= 2 for a in red) and k ** (e.lo * (e.lo - 1) // 2) <= self.verify_limit:
                key = ("classical", red, e.lo)
                if key not in self._checked:
                    up = classical_sweep(e.lo, red)
                    down = classical_sweep(e.lo - 1, red)
                    self._checked[key] = up.verified is True and down.verified is False
                if not self._checked[key]:
                    raise AssertionError(f"classical constant {note} failed exhaustive check")
                note += f"; verified by exhaustive sweep of {k}^{e.lo * (e.lo - 1) // 2} colourings"
        return e, [note]

    def derive(self, group: ColourGroup, targets: Sequence[int]) -> BoundCertificate:
        t = check_target(targets, group.degree)
        node = self._eval(group, t)
        return BoundCertificate(group.label, t, node.lo, node.hi, node.apps)

    def _eval(self, group: ColourGroup, t: tuple[int, ...]) -> _Node:
        key = (group.signature, t)
        if key in self._memo:
            return self._memo[key]
        if key in self._active:
            return _Node(min(t), None, [])
        self._active.add(key)
        try:
            node = self._apply_rules(group, t)
        finally:
            self._active.discard(key)
        self._memo[key] = node
        return node

    def _apply_rules(self, group: ColourGroup, t: tuple[int, ...]) -> _Node:
        m = group.degree
        label = group.label
        apps: list[Derivation] = []

        def app(rule, name, statement, **kw):
            d = Derivation(rule, name, statement, label, t, **kw)
            apps.append(d)
            return d

        app("l1", "trivial lower bound", "R_G(a) >= min a_i", lo=min(t))

        if m == 1:
            app("base", "single colour", "every K_a is monochromatic", lo=t[0], hi=t[0])
            return self._close(apps, t)

        e, notes = self._classical(t)
        if e is not None:
            app("u1", "classical cap", "R_G(a) <= R(a)", hi=e.hi, constants=notes)

        if group.is_standard_cyclic:
            c = collapse_cyclic(t)
            if c != t:
                child = self._eval(group, c)
                name = "alternate-colour collapse" if m % 2 == 0 else "minimum collapse"
                app("u11", name, "R_Cm(a) = R_Cm(collapsed a)", lo=child.lo, hi=child.hi,
                    children=child.apps)

        props = action_properties(group)
        if props.transitive:
            e, notes = self._classical(tuple(a - 1 for a in t))
            if e is not None:
                app("u2", "plus-one bound for transitive groups", "R_G(a) <= R(a - 1) + 1",
                    hi=e.hi + 1, constants=notes)
        else:
            subs = []
            for orbit in colour_orbits(group):
                sub = restrict(group, orbit)
                subs.append(self._derive_child(sub, tuple(t[c] for c in orbit)))
            if all(s.hi is not None for s in subs):
                e, notes = self._classical(tuple(s.hi for s in subs))
                if e is not None:
                    app("u3", "orbit decomposition", "R_G(a) <= R(R_{G|O_1}(a|O_1), ...)",
                        hi=e.hi, constants=notes, children=subs)

        comm, _ = commutator_subgroup(group)
        comm_orbits = colour_orbits(comm)
        if len(comm_orbits) == 1:
            rule, name = "u5", "transitive commutator subgroup"
            if group.name == f"A{m}" and m >= 4:
                rule, name = "u6", "alternating group"
            elif group.name == f"D{m}" and m % 2 == 1:
                rule, name = "u8", "dihedral group, odd degree"
            app(rule, name, "R_G(a) = min a_i when [G,G] is transitive", lo=min(t), hi=min(t))
        elif comm.order > 1:
            ns = tuple(min(t[c] for c in o) for o in comm_orbits)
            e, notes = self._classical(ns)
            if e is not None:
                app("u4", "commutator-orbit collapse", "R_G(a) <= R(n_1, ..., n_k)",
                    hi=e.hi, constants=notes)
            quot = quotient_action(group)
            child = self._derive_child(quot, ns)
            if child.hi is not None:
                app("u7", "quotient by commutator subgroup",
                    "R_G(a) <= R_{G/[G,G]}(n_1, ..., n_k)", hi=child.hi, children=[child])
            q_orbits = colour_orbits(quot)
            if len(q_orbits) > 1:
                subs = [self._derive_child(restrict(quot, o), tuple(ns[k] for k in o)) for o in q_orbits]
                if all(s.hi is not None for s in subs):
                    e, notes = self._classical(tuple(s.hi for s in subs))
                    if e is not None:
                        app("u9", "quotient orbit decomposition", "R_G(a) <= R(m_1, ..., m_q)",
                            hi=e.hi, constants=notes, children=subs)
            if group.name == f"D{m}" and m % 2 == 0:
                n1, n2 = min(t[0::2]), min(t[1::2])
                child = self._derive_child(cyclic(2), (n1, n2))
                if child.hi is not None:
                    app("u8", "dihedral group, even degree", "R_Dm(a) <= R_S2(n_1, n_2)",
                        hi=child.hi, children=[child])

        if props.abelian and props.semi_regular:
            e, notes = self._classical(t)
            if e is not None:
                app("u10", "push-graph bound", "R_G(a) <= ceil(R(a) / |G|)",
                    hi=ceil(e.hi / group.order), constants=notes)

        if props.abelian and group.order > 1 and all(a % group.order == 0 for a in t):
            base = tuple(a // group.order for a in t)
            e, notes = self._classical(base)
            if e is not None:
                app("l2", "doubling lower bound", "R(a) <= R_G(|G| a)", lo=e.lo, constants=notes)

        for wlabel, g in self.witnesses:
            if g.m != m:
                continue
            res = self._check_witness(wlabel, g, group, t)
            if res.status == "certified":
                app("l3", "verified lower witness", "a class with no target clique on n vertices",
                    lo=g.n + 1, witnesses=[witness_reference(wlabel, g)])

        self._monotone(group, t, apps, app)
        return self._close(apps, t)

    def _monotone(self, group, t, apps, app) -> None:
        """R_G is nondecreasing in each target, so compare with memoised targets."""
        lo = max(d.lo for d in apps if d.lo is not None)
        his = [d.hi for d in apps if d.hi is not None]
        hi = min(his) if his else None
        for (sig, other), node in sorted(self._memo.items(), key=lambda kv: kv[0][1]):
            if sig != group.signature or other == t:
                continue
            if all(a <= b for a, b in zip(other, t)) and node.lo > lo:
                lo = node.lo
                app("mono", "monotonicity", f"R_G(a) >= R_G{other}", lo=node.lo)
            if all(a >= b for a, b in zip(other, t)) and node.hi is not None and (hi is None or node.hi < hi):
                hi = node.hi
                app("mono", "monotonicity", f"R_G(a) <= R_G{other}", hi=node.hi)

    def _derive_child(self, group: ColourGroup, t: tuple[int, ...]) -> Derivation:
        node = self._eval(group, t)
        d = Derivation("sub", "sub-certificate", "bound for a derived group",
                       group.label, t, node.lo, node.hi, children=node.apps)
        return d

    def _check_witness(self, wlabel, g, group, t) -> LowerBoundResult:
        key = (wlabel, g.key(), group.signature, t)
        if key not in self._checked:
            self._checked[key] = verify_lower_witness(g, group, t, budget=self.budget)
        return self._checked[key]

    def _close(self, apps: list[Derivation], t) -> _Node:
        lo = max(d.lo for d in apps if d.lo is not None)
        his = [d.hi for d in apps if d.hi is not None]
        hi = min(his) if his else None
        if hi is not None and lo > hi:
            raise AssertionError(f"inconsistent bounds for {t}: {lo} > {hi}")
        return _Node(lo, hi, apps)


def derive_bounds(group: ColourGroup, targets: Sequence[int],
                  witnesses: Sequence[tuple[str, EdgeColouring]] = (), **kw) -> BoundCertificate:
    return BoundEngine(witnesses, **kw).derive(group, targets)
