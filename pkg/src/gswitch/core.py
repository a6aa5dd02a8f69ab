"""Edge-coloured complete graphs and the switching operation.

Colours are 0-based internally.  A colouring of K_n stores one byte per edge,
edges in row-major lexicographic order: (0,1), (0,2), ..., (0,n-1), (1,2), ...
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Sequence


@dataclass(frozen=True, slots=True)
class Permutation:
    """A bijection on colour indices; ``image[c]`` is the image of ``c``."""

    image: tuple[int, ...]

    def __post_init__(self):
        img = tuple(int(c) for c in self.image)
        if sorted(img) != list(range(len(img))):
            raise ValueError(f"not a permutation of 0..{len(img) - 1}: {img}")
        object.__setattr__(self, "image", img)

    @classmethod
    def identity(cls, m: int) -> Permutation:
        return cls(tuple(range(m)))

    @classmethod
    def from_cycles(cls, cycles: Iterable[Sequence[int]], m: int) -> Permutation:
        """Build from 0-based disjoint cycles."""
        img = list(range(m))
        seen: set[int] = set()
        for cyc in cycles:
            for c in cyc:
                if not 0 <= c < m:
                    raise ValueError(f"colour {c} out of range for degree {m}")
                if c in seen:
                    raise ValueError(f"colour {c} appears twice in cycle notation")
                seen.add(c)
            for a, b in zip(cyc, tuple(cyc[1:]) + tuple(cyc[:1])):
                img[a] = b
        return cls(tuple(img))

    @classmethod
    def rotation(cls, m: int, k: int = 1) -> Permutation:
        """The k-th power of the standard m-cycle, c -> c + k mod m."""
        return cls(tuple((c + k) % m for c in range(m)))

    @property
    def degree(self) -> int:
        return len(self.image)

    def __call__(self, c: int) -> int:
        return self.image[c]

    def __mul__(self, other: Permutation) -> Permutation:
        # (p * q)(c) = p(q(c)): q acts first
        if other.degree != self.degree:
            raise ValueError("cannot compose permutations of different degree")
        img = self.image
        return Permutation(tuple(img[c] for c in other.image))

    def inverse(self) -> Permutation:
        inv = [0] * len(self.image)
        for c, d in enumerate(self.image):
            inv[d] = c
        return Permutation(tuple(inv))

    def is_identity(self) -> bool:
        return all(c == d for c, d in enumerate(self.image))

    def cycles(self) -> list[tuple[int, ...]]:
        """Non-trivial cycles, each starting at its least element."""
        seen = set()
        out = []
        for start in range(len(self.image)):
            if start in seen:
                continue
            cyc = [start]
            seen.add(start)
            c = self.image[start]
            while c != start:
                cyc.append(c)
                seen.add(c)
                c = self.image[c]
            if len(cyc) > 1:
                out.append(tuple(cyc))
        return out

    def __str__(self) -> str:
        cyc = self.cycles()
        if not cyc:
            return "()"
        return "".join("(" + " ".join(str(c + 1) for c in cy) + ")" for cy in cyc)


@lru_cache(maxsize=None)
def pair_list(n: int) -> tuple[tuple[int, int], ...]:
    return tuple((i, j) for i in range(n) for j in range(i + 1, n))


@lru_cache(maxsize=None)
def pair_index(n: int) -> tuple[tuple[int, ...], ...]:
    """``pair_index(n)[i][j]`` is the flat index of edge ij (either order)."""
    idx = [[-1] * n for _ in range(n)]
    for e, (i, j) in enumerate(pair_list(n)):
        idx[i][j] = idx[j][i] = e
    return tuple(tuple(row) for row in idx)


@lru_cache(maxsize=None)
def incident_edges(n: int) -> tuple[tuple[int, ...], ...]:
    idx = pair_index(n)
    return tuple(tuple(idx[v][u] for u in range(n) if u != v) for v in range(n))


def num_edges(n: int) -> int:
    return n * (n - 1) // 2


@dataclass(frozen=True, slots=True)
class EdgeColouring:
    """An m-edge-colouring of the complete graph on vertices 0..n-1."""

    n: int
    m: int
    colours: bytes

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("a colouring needs at least one vertex")
        if not 2 <= self.m <= 255:
            raise ValueError(f"colour count must be in 2..255, got {self.m}")
        cols = bytes(self.colours)
        if len(cols) != num_edges(self.n):
            raise ValueError(
                f"expected {num_edges(self.n)} edge colours for n={self.n}, got {len(cols)}"
            )
        if cols and max(cols) >= self.m:
            raise ValueError(f"edge colour {max(cols)} out of range for m={self.m}")
        object.__setattr__(self, "colours", cols)

    @classmethod
    def _trusted(cls, n: int, m: int, colours: bytes) -> EdgeColouring:
        obj = object.__new__(cls)
        object.__setattr__(obj, "n", n)
        object.__setattr__(obj, "m", m)
        object.__setattr__(obj, "colours", colours)
        return obj

    @classmethod
    def monochromatic(cls, n: int, m: int, colour: int) -> EdgeColouring:
        return cls(n, m, bytes([colour]) * num_edges(n))

    @classmethod
    def from_function(cls, n: int, m: int, fn) -> EdgeColouring:
        return cls(n, m, bytes(fn(i, j) for i, j in pair_list(n)))

    @classmethod
    def from_matrix(cls, matrix: Sequence[Sequence[int]], m: int) -> EdgeColouring:
        n = len(matrix)
        return cls(n, m, bytes(matrix[i][j] for i, j in pair_list(n)))

    def colour(self, i: int, j: int) -> int:
        if i == j:
            raise ValueError("no loop edges in a complete graph")
        return self.colours[pair_index(self.n)[i][j]]

    def key(self) -> bytes:
        """Canonical byte string: n (2 bytes), m (1 byte), then the colours."""
        return self.n.to_bytes(2, "big") + bytes([self.m]) + self.colours

    def edges(self) -> Iterator[tuple[int, int, int]]:
        for (i, j), c in zip(pair_list(self.n), self.colours):
            yield i, j, c

    def induced(self, vertices: Sequence[int]) -> EdgeColouring:
        vs = list(vertices)
        idx = pair_index(self.n)
        cols = self.colours
        return EdgeColouring(
            len(vs), self.m, bytes(cols[idx[vs[a]][vs[b]]] for a, b in pair_list(len(vs)))
        )

    def delete_vertex(self, v: int) -> EdgeColouring:
        return self.induced([u for u in range(self.n) if u != v])

    def relabel(self, sigma: Sequence[int]) -> EdgeColouring:
        """Graph H with H(sigma[i], sigma[j]) = self(i, j)."""
        idx = pair_index(self.n)
        out = bytearray(len(self.colours))
        for (i, j), c in zip(pair_list(self.n), self.colours):
            out[idx[sigma[i]][sigma[j]]] = c
        return EdgeColouring(self.n, self.m, bytes(out))


@dataclass(frozen=True, slots=True)
class SwitchingSequence:
    """Ordered (vertex, permutation) switches, applied left to right."""

    steps: tuple[tuple[int, Permutation], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "steps", tuple((int(v), p) for v, p in self.steps))

    def __iter__(self):
        return iter(self.steps)

    def __len__(self):
        return len(self.steps)

    def __add__(self, other: SwitchingSequence) -> SwitchingSequence:
        return SwitchingSequence(self.steps + other.steps)

    def inverse(self) -> SwitchingSequence:
        return SwitchingSequence(tuple((v, p.inverse()) for v, p in reversed(self.steps)))

    def __str__(self) -> str:
        return ";".join(f"({v + 1},{p})" for v, p in self.steps)


@dataclass(frozen=True)
class CliqueWitness:
    """After applying ``sequence``, every edge inside ``vertices`` has ``colour``."""

    vertices: tuple[int, ...]
    colour: int
    sequence: SwitchingSequence = SwitchingSequence()

    def check(self, g: EdgeColouring) -> bool:
        h = apply_sequence(g, self.sequence)
        idx = pair_index(h.n)
        vs = self.vertices
        return all(
            h.colours[idx[vs[a]][vs[b]]] == self.colour for a, b in pair_list(len(vs))
        )


def _check_step(g: EdgeColouring, v: int, p: Permutation) -> None:
    if not 0 <= v < g.n:
        raise ValueError(f"vertex {v} out of range for n={g.n}")
    if p.degree != g.m:
        raise ValueError(f"permutation degree {p.degree} does not match m={g.m}")


def switch_at(g: EdgeColouring, v: int, p: Permutation) -> EdgeColouring:
    """Recolour every edge at ``v`` by ``p``; ``g`` is left unchanged."""
    _check_step(g, v, p)
    cols = bytearray(g.colours)
    img = p.image
    for e in incident_edges(g.n)[v]:
        cols[e] = img[cols[e]]
    return EdgeColouring._trusted(g.n, g.m, bytes(cols))


def apply_sequence(g: EdgeColouring, seq: SwitchingSequence | Iterable) -> EdgeColouring:
    steps = seq.steps if isinstance(seq, SwitchingSequence) else tuple(seq)
    for v, p in steps:
        _check_step(g, v, p)
    cols = bytearray(g.colours)
    inc = incident_edges(g.n)
    for v, p in steps:
        img = p.image
        for e in inc[v]:
            cols[e] = img[cols[e]]
    return EdgeColouring._trusted(g.n, g.m, bytes(cols))


def colour_neighbourhoods(g: EdgeColouring, colour: int) -> list[int]:
    """Bitmask of colour-``colour`` neighbours for each vertex."""
    nbr = [0] * g.n
    for (i, j), c in zip(pair_list(g.n), g.colours):
        if c == colour:
            nbr[i] |= 1 << j
            nbr[j] |= 1 << i
    return nbr


def first_clique(nbr: Sequence[int], size: int, candidates: int) -> tuple[int, ...] | None:
    """Lexicographically first clique of ``size`` inside ``candidates`` (bitmask)."""
    if size == 0:
        return ()
    while candidates:
        low = candidates & -candidates
        v = low.bit_length() - 1
        candidates ^= low
        if (candidates & nbr[v]).bit_count() < size - 1:
            continue
        rest = first_clique(nbr, size - 1, candidates & nbr[v])
        if rest is not None:
            return (v,) + rest
    return None


def find_mono_clique(g: EdgeColouring, colour: int, size: int) -> tuple[int, ...] | None:
    """Lexicographically first vertex set of ``size`` spanning only ``colour`` edges."""
    if size < 1:
        raise ValueError("clique size must be at least 1")
    if size > g.n:
        return None
    return first_clique(colour_neighbourhoods(g, colour), size, (1 << g.n) - 1)


def homogenise(g: EdgeColouring, group, v: int, colour: int) -> tuple[EdgeColouring, SwitchingSequence]:
    """Switch every vertex other than ``v`` so all edges at ``v`` get ``colour``.

    Uses the first group element (in enumeration order) that maps each edge's
    colour to the target, so an already-homogenised vertex yields identities.
    """
    if not 0 <= v < g.n:
        raise ValueError(f"vertex {v} out of range for n={g.n}")
    if not 0 <= colour < g.m:
        raise ValueError(f"colour {colour} out of range for m={g.m}")
    if group.degree != g.m:
        raise ValueError(f"group degree {group.degree} does not match m={g.m}")
    reach: dict[int, Permutation] = {}
    for el in group.elements:
        for c in range(g.m):
            if el.image[c] == colour and c not in reach:
                reach[c] = el
    missing = [c for c in range(g.m) if c not in reach]
    if missing:
        raise ValueError(
            f"group is not transitive: colour {missing[0] + 1} cannot be mapped to "
            f"colour {colour + 1}"
        )
    steps = []
    for u in range(g.n):
        if u != v:
            steps.append((u, reach[g.colour(u, v)]))
    seq = SwitchingSequence(tuple(steps))
    return apply_sequence(g, seq), seq


def apex(g: EdgeColouring, colour: int) -> EdgeColouring:
    """Add a new last vertex joined to every old vertex in ``colour``."""
    if not 0 <= colour < g.m:
        raise ValueError(f"colour {colour} out of range for m={g.m}")
    n = g.n
    idx = pair_index(n)
    cols = g.colours
    out = bytes(
        colour if j == n else cols[idx[i][j]] for i, j in pair_list(n + 1)
    )
    return EdgeColouring._trusted(n + 1, g.m, out)
