"""Linear congruences over Z_m and clique-switchability for abelian groups."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, islice
from math import comb, gcd
from typing import Sequence

import numpy as np

from .core import CliqueWitness, EdgeColouring, Permutation, SwitchingSequence, pair_list
from .groups import ColourGroup


@dataclass
class CongruenceSystem:
    """Rows (a, b) meaning a . x = b (mod modulus), over ``nvars`` unknowns."""

    modulus: int
    rows: list[tuple[tuple[int, ...], int]]
    nvars: int

    def __post_init__(self):
        if self.modulus < 2:
            raise ValueError(f"modulus must be at least 2, got {self.modulus}")
        m = self.modulus
        norm = []
        for coeffs, rhs in self.rows:
            if len(coeffs) != self.nvars:
                raise ValueError(f"row has {len(coeffs)} coefficients, expected {self.nvars}")
            norm.append((tuple(int(a) % m for a in coeffs), int(rhs) % m))
        self.rows = norm

    def satisfied_by(self, x: Sequence[int]) -> bool:
        m = self.modulus
        return all(sum(a * v for a, v in zip(coeffs, x)) % m == rhs for coeffs, rhs in self.rows)


def _egcd(a: int, b: int) -> tuple[int, int, int]:
    """(g, s, t) with s*a + t*b = g = gcd(a, b)."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    return a, s0, t0


def _echelon(system: CongruenceSystem) -> tuple[list[list[int]], dict[int, int]]:
    m, t = system.modulus, system.nvars
    rows = [list(coeffs) + [rhs] for coeffs, rhs in system.rows]
    pivot_row: dict[int, int] = {}
    r = 0
    for c in range(t):
        if r == len(rows):
            break
        for i in range(r + 1, len(rows)):
            b = rows[i][c]
            if b == 0:
                continue
            a = rows[r][c]
            g, s, u = _egcd(a, b)
            ra, rb = rows[r], rows[i]
            # unimodular 2x2 step: pivot becomes gcd, entry below becomes 0
            rows[r] = [(s * x + u * y) % m for x, y in zip(ra, rb)]
            rows[i] = [((b // g) * x - (a // g) * y) % m for x, y in zip(ra, rb)]
        p = rows[r][c]
        if p == 0:
            continue
        if gcd(p, m) == 1:
            inv = pow(p, -1, m)
            rows[r] = [(x * inv) % m for x in rows[r]]
        pivot_row[c] = r
        r += 1
    return rows, pivot_row


def solve_mod(system: CongruenceSystem) -> tuple[int, ...] | None:
    """A solution of the system over Z_m, or None when there is none.

    Gaussian elimination with extended-gcd row combination, then
    back-substitution that enumerates the residues allowed at non-unit pivots
    and at free columns that still matter.
    """
    m, t = system.modulus, system.nvars
    rows, pivot_row = _echelon(system)
    used = set(pivot_row.values())
    for i, row in enumerate(rows):
        if i not in used and row[t] != 0:
            return None
    x = [0] * t
    # free columns that appear in some pivot row need enumeration
    live_free = {
        c for c in range(t)
        if c not in pivot_row and any(rows[r][c] for r in pivot_row.values())
    }

    def assign(c: int) -> bool:
        if c < 0:
            return True
        if c in pivot_row:
            row = rows[pivot_row[c]]
            rhs = (row[t] - sum(row[k] * x[k] for k in range(c + 1, t))) % m
            p = row[c]
            if p == 1:
                choices = (rhs,)
            else:
                choices = [v for v in range(m) if (p * v) % m == rhs]
        elif c in live_free:
            choices = range(m)
        else:
            choices = (0,)
        for v in choices:
            x[c] = v
            if assign(c - 1):
                return True
        x[c] = 0
        return False

    if not assign(t - 1):
        return None
    sol = tuple(x)
    if not system.satisfied_by(sol):
        raise AssertionError(f"solver produced a non-solution {sol}")
    return sol


def clique_system(g: EdgeColouring, vertices: Sequence[int], target: int, m: int) -> CongruenceSystem:
    """One row k_u + k_v = target - c(uv) per edge inside ``vertices``."""
    vs = list(vertices)
    rows = []
    for a, b in pair_list(len(vs)):
        coeffs = [0] * len(vs)
        coeffs[a] = coeffs[b] = 1
        rows.append((tuple(coeffs), target - g.colour(vs[a], vs[b])))
    return CongruenceSystem(m, rows, len(vs))


def clique_switch_cyclic(
    g: EdgeColouring, vertices: Sequence[int], target: int, m: int | None = None
) -> dict[int, int] | None:
    """Exponents k_u with c(uv) + k_u + k_v = target (mod m) on every edge of the clique."""
    m = g.m if m is None else m
    if m != g.m:
        raise ValueError(f"modulus {m} does not match colour count {g.m}")
    vs = sorted(set(vertices))
    if len(vs) < 2:
        raise ValueError("clique needs at least two vertices")
    sol = solve_mod(clique_system(g, vs, target, m))
    if sol is None:
        return None
    return dict(zip(vs, sol))


def _require_abelian(group: ColourGroup) -> None:
    if not group.is_abelian:
        raise ValueError(f"group {group.label} is not abelian; switch order would matter")


def clique_switch_abelian(
    g: EdgeColouring, vertices: Sequence[int], target: int, group: ColourGroup
) -> dict[int, Permutation] | None:
    """Group elements per vertex taking every edge of the clique to ``target``."""
    _require_abelian(group)
    if group.degree != g.m:
        raise ValueError(f"group degree {group.degree} does not match m={g.m}")
    vs = sorted(set(vertices))
    if len(vs) < 2:
        raise ValueError("clique needs at least two vertices")
    if group.is_standard_cyclic:
        ks = clique_switch_cyclic(g, vs, target, g.m)
        if ks is None:
            return None
        return {u: Permutation.rotation(g.m, k) for u, k in ks.items()}
    els = group.elements
    chosen: list[Permutation] = []

    def extend(pos: int) -> bool:
        if pos == len(vs):
            return True
        u = vs[pos]
        for el in els:
            ok = True
            for q in range(pos):
                c = g.colour(vs[q], u)
                if el.image[chosen[q].image[c]] != target:
                    ok = False
                    break
            if ok:
                chosen.append(el)
                if extend(pos + 1):
                    return True
                chosen.pop()
        return False

    if not extend(0):
        return None
    return dict(zip(vs, chosen))


class PatternVerdicts:
    """Memoised clique verdicts keyed by the colour pattern of a small clique.

    A pattern is the clique's edge colours (lexicographic edge order) read as
    a base-m number, least significant digit first.  Switchability of a
    clique depends only on this pattern, since switches outside the clique
    never touch its edges.
    """

    def __init__(self, group: ColourGroup):
        _require_abelian(group)
        self.group = group
        self.m = group.degree
        self._memo: dict[tuple[int, int], dict[int, bool]] = {}
        self.solved = 0

    def decode(self, size: int, pattern: int) -> EdgeColouring:
        m = self.m
        digits = []
        for _ in range(size * (size - 1) // 2):
            pattern, d = divmod(pattern, m)
            digits.append(d)
        return EdgeColouring(size, m, bytes(digits))

    def table(self, size: int, target: int) -> dict[int, bool]:
        return self._memo.setdefault((size, target), {})

    def switchable(self, size: int, target: int, pattern: int) -> bool:
        tab = self.table(size, target)
        hit = tab.get(pattern)
        if hit is None:
            tiny = self.decode(size, pattern)
            hit = clique_switch_abelian(tiny, range(size), target, self.group) is not None
            tab[pattern] = hit
            self.solved += 1
        return hit


_ORACLES: dict[ColourGroup, PatternVerdicts] = {}


def pattern_verdicts(group: ColourGroup) -> PatternVerdicts:
    if group not in _ORACLES:
        _ORACLES[group] = PatternVerdicts(group)
    return _ORACLES[group]


_CHUNK = 400_000


def _subset_chunks(n: int, size: int):
    it = combinations(range(n), size)
    total = comb(n, size)
    done = 0
    while done < total:
        k = min(_CHUNK, total - done)
        arr = np.fromiter(
            (v for s in islice(it, k) for v in s), dtype=np.int64, count=k * size
        ).reshape(k, size)
        yield done, arr
        done += k


def subset_patterns(g: EdgeColouring, subsets: np.ndarray) -> np.ndarray:
    """Pattern numbers for each row of ``subsets`` (vertex indices, increasing)."""
    n, m = g.n, g.m
    mat = np.zeros((n, n), dtype=np.int64)
    for (i, j), c in zip(pair_list(n), g.colours):
        mat[i, j] = mat[j, i] = c
    size = subsets.shape[1]
    pats = np.zeros(subsets.shape[0], dtype=np.int64)
    w = 1
    for a, b in pair_list(size):
        pats += mat[subsets[:, a], subsets[:, b]] * w
        w *= m
    return pats


def decide_containment_abelian(
    g: EdgeColouring, group: ColourGroup, targets: Sequence[int], stats: dict | None = None
) -> CliqueWitness | None:
    """First (colour, subset) whose clique can be switched monochromatic, or None.

    Colours are scanned in index order and subsets lexicographically.  None
    means no graph switch-equivalent to ``g`` contains K_{a_i} in colour i.
    """
    _require_abelian(group)
    targets = list(targets)
    if len(targets) != g.m:
        raise ValueError(f"expected {g.m} targets, got {len(targets)}")
    if any(a < 2 for a in targets):
        raise ValueError("every target must be at least 2")
    if group.degree != g.m:
        raise ValueError(f"group degree {group.degree} does not match m={g.m}")
    oracle = pattern_verdicts(group)
    scanned = 0
    solved_before = oracle.solved
    witness = None
    for colour, size in enumerate(targets):
        if size > g.n:
            continue
        for offset, subsets in _subset_chunks(g.n, size):
            pats = subset_patterns(g, subsets)
            uniq, inverse = np.unique(pats, return_inverse=True)
            verdict = np.fromiter(
                (oracle.switchable(size, colour, int(p)) for p in uniq), dtype=bool, count=len(uniq)
            )
            hits = verdict[inverse]
            if hits.any():
                k = int(np.argmax(hits))
                scanned += k + 1
                witness = _witness(g, group, tuple(int(v) for v in subsets[k]), colour)
                break
            scanned += len(subsets)
        if witness is not None:
            break
    if stats is not None:
        stats["subsets_scanned"] = stats.get("subsets_scanned", 0) + scanned
        stats["patterns_solved"] = stats.get("patterns_solved", 0) + oracle.solved - solved_before
    return witness


def _witness(g: EdgeColouring, group: ColourGroup, vertices: tuple[int, ...], colour: int) -> CliqueWitness:
    assign = clique_switch_abelian(g, vertices, colour, group)
    if assign is None:
        raise AssertionError("pattern verdict disagrees with direct clique solve")
    seq = SwitchingSequence(tuple((u, assign[u]) for u in vertices))
    w = CliqueWitness(vertices, colour, seq)
    if not w.check(g):
        raise AssertionError("clique witness does not verify")
    return w
