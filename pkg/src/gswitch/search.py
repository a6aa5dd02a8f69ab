"""Switching-class exploration for arbitrary colour groups."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations, product
from operator import itemgetter
from typing import Iterator, Sequence

from .core import (
    CliqueWitness,
    EdgeColouring,
    Permutation,
    SwitchingSequence,
    apex,
    apply_sequence,
    incident_edges,
    num_edges,
    pair_index,
)
from .groups import ColourGroup
from .modsolve import CongruenceSystem, solve_mod

DEFAULT_BUDGET = 2_000_000


class BudgetExceeded(RuntimeError):
    """The search space outgrew its budget; the answer is unknown, not negative."""

    def __init__(self, message: str, explored: int):
        super().__init__(message)
        self.explored = explored


@dataclass
class SwitchOrbit:
    base: EdgeColouring
    group: ColourGroup
    members: set[bytes]
    order: list[bytes] = field(repr=False)
    exhaustive: bool = True

    @property
    def size(self) -> int:
        return len(self.members)

    def __contains__(self, g: EdgeColouring) -> bool:
        return g.key() in self.members

    def graphs(self) -> Iterator[EdgeColouring]:
        for k in self.order:
            yield _from_key(k)


def _from_key(k: bytes) -> EdgeColouring:
    n = int.from_bytes(k[:2], "big")
    return EdgeColouring._trusted(n, k[2], k[3:])


def _moves(group: ColourGroup, n: int):
    inc = incident_edges(n)
    gens = [g for g in dict.fromkeys(group.generators) if not g.is_identity()]
    return [(v, g, inc[v], g.image) for v in range(n) for g in gens]


def _neighbours(cols: bytes, moves):
    for v, g, inc, img in moves:
        ba = bytearray(cols)
        for e in inc:
            ba[e] = img[ba[e]]
        yield v, g, bytes(ba)


def _check_shape(g: EdgeColouring, group: ColourGroup) -> None:
    if group.degree != g.m:
        raise ValueError(f"group degree {group.degree} does not match m={g.m}")


def orbit_enumerate(g: EdgeColouring, group: ColourGroup, budget: int = DEFAULT_BUDGET) -> SwitchOrbit:
    """Breadth-first closure of ``g`` under single generator switches.

    Stops at ``budget`` members and flags the result non-exhaustive.
    """
    _check_shape(g, group)
    moves = _moves(group, g.n)
    head = g.key()[:3]
    seen = {g.colours}
    order = [g.colours]
    queue = deque([g.colours])
    exhaustive = True
    while queue:
        cols = queue.popleft()
        for _, _, nxt in _neighbours(cols, moves):
            if nxt not in seen:
                if len(seen) >= budget:
                    exhaustive = False
                    queue.clear()
                    break
                seen.add(nxt)
                order.append(nxt)
                queue.append(nxt)
    keys = [head + c for c in order]
    return SwitchOrbit(g, group, set(keys), keys, exhaustive)


def _solve_transport_abelian(g: EdgeColouring, h: EdgeColouring, group: ColourGroup) -> dict[int, Permutation] | None:
    """Per-vertex elements taking g to h, for abelian groups."""
    n, m = g.n, g.m
    if group.is_standard_cyclic:
        rows = []
        for (i, j), (a, b) in zip(((i, j) for i in range(n) for j in range(i + 1, n)),
                                  zip(g.colours, h.colours)):
            coeffs = [0] * n
            coeffs[i] = coeffs[j] = 1
            rows.append((tuple(coeffs), b - a))
        sol = solve_mod(CongruenceSystem(m, rows, n))
        if sol is None:
            return None
        return {v: Permutation.rotation(m, k) for v, k in enumerate(sol)}
    els = group.elements
    chosen: list[Permutation] = []

    def extend(u: int) -> bool:
        if u == n:
            return True
        for el in els:
            if all(
                el.image[chosen[q].image[g.colour(q, u)]] == h.colour(q, u) for q in range(u)
            ):
                chosen.append(el)
                if extend(u + 1):
                    return True
                chosen.pop()
        return False

    return dict(enumerate(chosen)) if extend(0) else None


def switch_equivalent(
    g: EdgeColouring, h: EdgeColouring, group: ColourGroup, budget: int = DEFAULT_BUDGET
) -> bool:
    """Whether some switching sequence takes ``g`` to ``h``.

    Abelian groups reduce to one switch per vertex and are solved directly;
    other groups use a bidirectional breadth-first search.
    """
    if (g.n, g.m) != (h.n, h.m):
        raise ValueError(f"shape mismatch: n={g.n},m={g.m} vs n={h.n},m={h.m}")
    _check_shape(g, group)
    if g == h:
        return True
    if group.is_abelian:
        assign = _solve_transport_abelian(g, h, group)
        if assign is None:
            return False
        seq = SwitchingSequence(tuple(assign.items()))
        if apply_sequence(g, seq) != h:
            raise AssertionError("transport solution does not reproduce the target")
        return True
    moves = _moves(group, g.n)
    fwd, bwd = {g.colours}, {h.colours}
    qf, qb = [g.colours], [h.colours]
    while qf and qb:
        if len(fwd) + len(bwd) > budget:
            raise BudgetExceeded("bidirectional search exceeded budget", len(fwd) + len(bwd))
        # expand the smaller frontier one full layer
        if len(qf) > len(qb):
            fwd, bwd, qf, qb = bwd, fwd, qb, qf
        layer = []
        for cols in qf:
            for _, _, nxt in _neighbours(cols, moves):
                if nxt in bwd:
                    return True
                if nxt not in fwd:
                    fwd.add(nxt)
                    layer.append(nxt)
        qf = layer
    return False


@lru_cache(maxsize=None)
def _clique_getters(n: int, size: int):
    idx = pair_index(n)
    out = []
    for s in combinations(range(n), size):
        es = [idx[a][b] for a, b in combinations(s, 2)]
        if len(es) == 1:
            e = es[0]
            out.append((s, lambda cols, e=e: (cols[e],)))
        else:
            out.append((s, itemgetter(*es)))
    return tuple(out)


def _first_mono(cols: bytes, n: int, targets: Sequence[int]) -> tuple[int, tuple[int, ...]] | None:
    for colour, size in enumerate(targets):
        if size > n:
            continue
        if size == 1:
            return colour, (0,)
        want = (colour,) * (size * (size - 1) // 2)
        for s, get in _clique_getters(n, size):
            if get(cols) == want:
                return colour, s
    return None


def _path(parents: dict, cols: bytes) -> SwitchingSequence:
    steps = []
    while parents[cols] is not None:
        prev, v, p = parents[cols]
        steps.append((v, p))
        cols = prev
    return SwitchingSequence(tuple(reversed(steps)))


def decide_containment_generic(
    g: EdgeColouring, group: ColourGroup, targets: Sequence[int], budget: int = DEFAULT_BUDGET,
    stats: dict | None = None,
) -> CliqueWitness | None:
    """Breadth-first search of the class of ``g`` for any K_{a_i} in colour i.

    Returns a witness whose sequence is the BFS path, or None once the whole
    class has been seen; raises BudgetExceeded when it cannot tell.
    """
    _check_shape(g, group)
    targets = list(targets)
    if len(targets) != g.m:
        raise ValueError(f"expected {g.m} targets, got {len(targets)}")
    if any(a < 2 for a in targets):
        raise ValueError("every target must be at least 2")
    n = g.n
    moves = _moves(group, n)
    parents: dict[bytes, tuple | None] = {g.colours: None}
    queue = deque([g.colours])
    while queue:
        cols = queue.popleft()
        hit = _first_mono(cols, n, targets)
        if hit is not None:
            colour, verts = hit
            w = CliqueWitness(verts, colour, _path(parents, cols))
            if stats is not None:
                stats["orbit_explored"] = len(parents)
            return w
        for v, p, nxt in _neighbours(cols, moves):
            if nxt not in parents:
                if len(parents) >= budget:
                    raise BudgetExceeded("orbit exceeded budget", len(parents))
                parents[nxt] = (cols, v, p)
                queue.append(nxt)
    if stats is not None:
        stats["orbit_explored"] = len(parents)
    return None


def count_classes(n: int, m: int, group: ColourGroup, mode: str = "formula",
                  budget: int = DEFAULT_BUDGET) -> int:
    """Number of switching classes of m-colourings of K_n."""
    if group.degree != m:
        raise ValueError(f"group degree {group.degree} does not match m={m}")
    if mode == "formula":
        if not group.is_standard_cyclic:
            raise ValueError("the class-count formula holds for cyclic groups only")
        if n < 3:
            raise ValueError("the class-count formula needs n >= 3")
        free = num_edges(n) - n
        return 2 * m ** free if m % 2 == 0 else m ** free
    if mode != "brute":
        raise ValueError(f"unknown mode {mode!r}")
    total = m ** num_edges(n)
    if total > budget:
        raise BudgetExceeded(f"{total} colourings exceed budget {budget}", 0)
    moves = _moves(group, n)
    seen: set[bytes] = set()
    classes = 0
    for cols in product(range(m), repeat=num_edges(n)):
        start = bytes(cols)
        if start in seen:
            continue
        classes += 1
        seen.add(start)
        stack = [start]
        while stack:
            cur = stack.pop()
            for _, _, nxt in _neighbours(cur, moves):
                if nxt not in seen:
                    seen.add(nxt)
                    stack.append(nxt)
    return classes


def homogenised_representatives(n: int, m: int, group: ColourGroup, colour: int = 0) -> Iterator[EdgeColouring]:
    """Every colouring of K_n whose last vertex has all edges in ``colour``.

    For a transitive group every switching class contains one of these.
    """
    if group.degree != m:
        raise ValueError(f"group degree {group.degree} does not match m={m}")
    if not group.is_transitive:
        raise ValueError(f"group {group.label} is not transitive on colours")
    if n < 2:
        raise ValueError("need n >= 2")
    for cols in product(range(m), repeat=num_edges(n - 1)):
        yield apex(EdgeColouring._trusted(n - 1, m, bytes(cols)), colour)


def _isomorphism(g: EdgeColouring, h: EdgeColouring) -> tuple[int, ...] | None:
    """A vertex bijection sigma with h(sigma i, sigma j) = g(i, j), if any."""
    n, m = g.n, g.m
    if sorted(g.colours) != sorted(h.colours):
        return None

    def profile(x: EdgeColouring):
        prof = [[0] * m for _ in range(n)]
        for i, j, c in x.edges():
            prof[i][c] += 1
            prof[j][c] += 1
        return [tuple(p) for p in prof]

    pg, ph = profile(g), profile(h)
    if sorted(pg) != sorted(ph):
        return None
    sigma = [-1] * n
    used = [False] * n

    def extend(i: int) -> bool:
        if i == n:
            return True
        for t in range(n):
            if used[t] or ph[t] != pg[i]:
                continue
            if all(h.colour(sigma[q], t) == g.colour(q, i) for q in range(i)):
                sigma[i] = t
                used[t] = True
                if extend(i + 1):
                    return True
                used[t] = False
        return False

    return tuple(sigma) if extend(0) else None


def find_switch_isomorphic(
    g: EdgeColouring, group: ColourGroup, budget: int = DEFAULT_BUDGET
) -> tuple[EdgeColouring, tuple[int, ...]] | None:
    """Some H != g in the class of g with a vertex bijection onto g."""
    if g.n > 8:
        raise ValueError("vertex-bijection scan is limited to n <= 8")
    orbit = orbit_enumerate(g, group, budget)
    if not orbit.exhaustive:
        raise BudgetExceeded("orbit exceeded budget", orbit.size)
    for h in orbit.graphs():
        if h == g:
            continue
        sigma = _isomorphism(h, g)
        if sigma is not None:
            return h, sigma
    return None
