"""The push graph P(G) of an abelian colour group, and its completion P*(G).

P(G) has one copy of G per group element.  Vertex (k, g) stands for
"vertex k switched by g", so the edge between (k, g) and (l, h), k != l,
gets colour h(g(c(kl))).  Corresponding vertices (k, g), (k, h) are not
adjacent in P(G); P*(G) joins them with a validated colouring.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from itertools import combinations

from .core import EdgeColouring, SwitchingSequence, first_clique
from .groups import ColourGroup

NO_EDGE = -1


@dataclass(frozen=True)
class PushGraph:
    base_n: int
    m: int
    group: ColourGroup
    matrix: tuple[tuple[int, ...], ...]
    star: bool = False

    @property
    def num_vertices(self) -> int:
        return len(self.matrix)

    def vertex(self, x: int) -> tuple[int, int]:
        """(base vertex, element index) of push vertex ``x``; copy-major order."""
        return x % self.base_n, x // self.base_n

    def vertex_id(self, k: int, element_index: int) -> int:
        return element_index * self.base_n + k

    def colour(self, x: int, y: int) -> int:
        return self.matrix[x][y]

    def has_edge(self, x: int, y: int) -> bool:
        return x != y and self.matrix[x][y] != NO_EDGE

    def is_star_edge(self, x: int, y: int) -> bool:
        return x != y and self.vertex(x)[0] == self.vertex(y)[0]


def _require_abelian(group: ColourGroup) -> None:
    if not group.is_abelian:
        raise ValueError(f"push graphs need an abelian group; {group.label} is not")


def build_push(g: EdgeColouring, group: ColourGroup) -> PushGraph:
    _require_abelian(group)
    if group.degree != g.m:
        raise ValueError(f"group degree {group.degree} does not match m={g.m}")
    n, els = g.n, group.elements
    size = n * len(els)
    mat = [[NO_EDGE] * size for _ in range(size)]
    for x in range(size):
        k, a = x % n, x // n
        for y in range(x + 1, size):
            l, b = y % n, y // n
            if k == l:
                continue
            c = els[b].image[els[a].image[g.colour(k, l)]]
            mat[x][y] = mat[y][x] = c
    return PushGraph(n, g.m, group, tuple(tuple(r) for r in mat))


def _star_scheme(order: int, m: int) -> dict[tuple[int, int], int]:
    scheme = {(i, j): (i + j) % m for i, j in combinations(range(order), 2)}
    if _scheme_ok(scheme, order):
        return scheme
    # greedy: smallest colour that closes no monochromatic triangle
    scheme = {}
    for i, j in combinations(range(order), 2):
        for c in range(m):
            if all(
                not (scheme.get(tuple(sorted((i, k)))) == c == scheme.get(tuple(sorted((j, k)))))
                for k in range(order) if k not in (i, j)
            ):
                scheme[(i, j)] = c
                break
        else:
            raise ValueError(
                f"no star colouring of K_{order} with {m} colours avoids a monochromatic triangle"
            )
    return scheme


def _scheme_ok(scheme: dict[tuple[int, int], int], order: int) -> bool:
    return not any(
        scheme[(a, b)] == scheme[(a, c)] == scheme[(b, c)]
        for a, b, c in combinations(range(order), 3)
    )


def build_push_star(g: EdgeColouring, group: ColourGroup) -> PushGraph:
    """P(G) plus edges between corresponding vertices.

    Copies i < j (enumeration indices) are joined in colour (i + j) mod m;
    if that scheme leaves a monochromatic triangle a greedy colouring is
    tried, and the build fails when validation still fails.
    """
    if group.order < 2:
        raise ValueError("P*(G) needs a group of order at least 2")
    base = build_push(g, group)
    scheme = _star_scheme(group.order, g.m)
    if not _scheme_ok(scheme, group.order):
        raise ValueError("star colouring validation failed")
    n = g.n
    mat = [list(r) for r in base.matrix]
    for k in range(n):
        for (i, j), c in scheme.items():
            x, y = i * n + k, j * n + k
            mat[x][y] = mat[y][x] = c
    return PushGraph(n, g.m, group, tuple(tuple(r) for r in mat), star=True)


def push_mono_clique(p: PushGraph, size: int) -> tuple[tuple[int, ...], int] | None:
    """A set of ``size`` pairwise adjacent push vertices whose edges share one colour."""
    if size < 1:
        raise ValueError("clique size must be at least 1")
    N = p.num_vertices
    if size > N:
        return None
    if size == 1:
        return (0,), 0
    for colour in range(p.m):
        nbr = [0] * N
        for x in range(N):
            row = p.matrix[x]
            mask = 0
            for y in range(N):
                if row[y] == colour and x != y:
                    mask |= 1 << y
            nbr[x] = mask
        found = first_clique(nbr, size, (1 << N) - 1)
        if found is not None:
            return found, colour
    return None


def clique_to_switches(p: PushGraph, vertices) -> SwitchingSequence:
    """Switches of G realising a P(G) clique: switch base vertex k by its copy's element."""
    steps = []
    seen = set()
    for x in vertices:
        k, a = p.vertex(x)
        if k in seen:
            raise ValueError("clique uses two copies of one base vertex")
        seen.add(k)
        steps.append((k, p.group.elements[a]))
    return SwitchingSequence(tuple(steps))


def extract_copy_clique(p: PushGraph, vertices) -> tuple[int, tuple[int, ...]]:
    """Pigeonhole step: the copy holding the most clique vertices, and their base vertices.

    A clique of size |G| * a always leaves at least a vertices in one copy.
    """
    by_copy = Counter(p.vertex(x)[1] for x in vertices)
    best = min(by_copy, key=lambda a: (-by_copy[a], a))
    base = tuple(sorted(p.vertex(x)[0] for x in vertices if p.vertex(x)[1] == best))
    return best, base
