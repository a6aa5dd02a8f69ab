"""Permutation groups on the colour set.

Groups are small (degree at most 8), so every group is enumerated eagerly.
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from itertools import product
from typing import Sequence

from .core import EdgeColouring, Permutation, SwitchingSequence, apply_sequence, pair_list

MAX_DEGREE = 8


@dataclass(frozen=True, eq=False)
class ColourGroup:
    """A finite subgroup of S_m with its elements enumerated.

    ``elements[0]`` is always the identity.
    """

    degree: int
    generators: tuple[Permutation, ...]
    elements: tuple[Permutation, ...]
    name: str | None = None

    @cached_property
    def signature(self) -> tuple[int, frozenset]:
        return (self.degree, frozenset(p.image for p in self.elements))

    def __eq__(self, other):
        return isinstance(other, ColourGroup) and self.signature == other.signature

    def __hash__(self):
        return hash(self.signature)

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def identity(self) -> Permutation:
        return self.elements[0]

    @cached_property
    def index(self) -> dict[Permutation, int]:
        return {p: i for i, p in enumerate(self.elements)}

    def __contains__(self, p: Permutation) -> bool:
        return p in self.index

    @property
    def label(self) -> str:
        if self.name:
            return self.name
        gens = [str(g) for g in self.generators if not g.is_identity()]
        return f"<{','.join(gens)}>[{self.degree}]" if gens else f"1[{self.degree}]"

    @cached_property
    def is_abelian(self) -> bool:
        gens = self.generators
        return all(a * b == b * a for a in gens for b in gens)

    @cached_property
    def is_transitive(self) -> bool:
        return len(colour_orbits(self)) == 1

    @cached_property
    def is_standard_cyclic(self) -> bool:
        """True when this is exactly <(0 1 ... m-1)>, so elements act as c -> c + k."""
        m = self.degree
        return self.signature == cyclic(m).signature if m >= 2 else False

    def exponent(self, p: Permutation) -> int:
        """For the standard cyclic group, the k with p(c) = c + k mod m."""
        return p.image[0]

    def __repr__(self):
        return f"ColourGroup({self.label}, order={self.order})"


def generate_group(m: int, generators: Sequence[Permutation], name: str | None = None) -> ColourGroup:
    """Close ``generators`` under composition, breadth-first from the identity."""
    if m < 1:
        raise ValueError("degree must be positive")
    gens = tuple(g if isinstance(g, Permutation) else Permutation(tuple(g)) for g in generators)
    for g in gens:
        if g.degree != m:
            raise ValueError(f"generator {g} has degree {g.degree}, expected {m}")
    e = Permutation.identity(m)
    elements = [e]
    seen = {e}
    queue = deque([e])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = g * x
            if y not in seen:
                seen.add(y)
                elements.append(y)
                queue.append(y)
    return ColourGroup(m, gens, tuple(elements), name)


def trivial(m: int) -> ColourGroup:
    return generate_group(m, [], name=f"1_{m}" if m != 1 else "1")


def cyclic(m: int) -> ColourGroup:
    return _cyclic(m)


@lru_cache(maxsize=None)
def _cyclic(m: int) -> ColourGroup:
    return generate_group(m, [Permutation.rotation(m)], name=f"C{m}")


def symmetric(m: int) -> ColourGroup:
    gens = []
    if m >= 2:
        gens.append(Permutation.from_cycles([(0, 1)], m))
    if m >= 3:
        gens.append(Permutation.rotation(m))
    return generate_group(m, gens, name=f"S{m}")


def alternating(m: int) -> ColourGroup:
    gens = [Permutation.from_cycles([(0, 1, k)], m) for k in range(2, m)]
    return generate_group(m, gens, name=f"A{m}")


def dihedral(m: int) -> ColourGroup:
    """<rotation, reflection fixing colour 0> of order 2m (m >= 3)."""
    refl = Permutation(tuple((-c) % m for c in range(m)))
    return generate_group(m, [Permutation.rotation(m), refl], name=f"D{m}")


def klein_four() -> ColourGroup:
    return generate_group(
        4,
        [Permutation.from_cycles([(0, 1), (2, 3)], 4), Permutation.from_cycles([(0, 2), (1, 3)], 4)],
        name="V4",
    )


_NAMED = {"C": cyclic, "S": symmetric, "A": alternating, "D": dihedral}


def parse_group(text: str, degree: int | None = None) -> ColourGroup:
    """Parse a group spec: a family name ("C4", "S3", "A4", "D6", "V4") or
    ';'-separated generators in 1-based cycle notation, e.g. "(1 2 3)(4 5);(1 2)".
    """
    s = text.strip()
    mt = re.fullmatch(r"([CSAD])_?(\d+)", s, flags=re.IGNORECASE)
    if mt:
        m = int(mt.group(2))
        if degree is not None and degree != m:
            raise ValueError(f"group {s} has degree {m}, expected {degree}")
        if not 1 <= m <= MAX_DEGREE:
            raise ValueError(f"degree {m} outside supported range 1..{MAX_DEGREE}")
        return _NAMED[mt.group(1).upper()](m)
    if s.upper() in ("V4", "K4"):
        return klein_four()
    if s.startswith("<") and s.endswith(">"):
        s = s[1:-1]
    cycle_lists = []
    for part in s.split(";"):
        part = part.strip()
        if not part:
            continue
        if not re.fullmatch(r"(\(\s*[\d\s,]*\))+", part):
            raise ValueError(f"malformed generator {part!r}")
        cycles = []
        for body in re.findall(r"\(([^()]*)\)", part):
            nums = [int(x) for x in re.split(r"[\s,]+", body.strip()) if x]
            if any(x < 1 for x in nums):
                raise ValueError(f"colours are 1-based in {part!r}")
            cycles.append(tuple(x - 1 for x in nums))
        cycle_lists.append(cycles)
    if not cycle_lists:
        raise ValueError(f"empty group spec {text!r}")
    top = max((c for cl in cycle_lists for cyc in cl for c in cyc), default=-1) + 1
    m = degree if degree is not None else top
    if m < top:
        raise ValueError(f"generator moves colour {top} beyond degree {m}")
    if not 1 <= m <= MAX_DEGREE:
        raise ValueError(f"degree {m} outside supported range 1..{MAX_DEGREE}")
    gens = [Permutation.from_cycles(cl, m) for cl in cycle_lists]
    return generate_group(m, gens)


def colour_orbits(group: ColourGroup) -> list[tuple[int, ...]]:
    """Orbits of the natural action, each sorted, listed by least element."""
    m = group.degree
    parent = list(range(m))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for g in group.generators:
        for c in range(m):
            a, b = find(c), find(g.image[c])
            if a != b:
                parent[max(a, b)] = min(a, b)
    orbits: dict[int, list[int]] = {}
    for c in range(m):
        orbits.setdefault(find(c), []).append(c)
    return sorted((tuple(o) for o in orbits.values()), key=lambda o: o[0])


@dataclass(frozen=True)
class ActionProperties:
    transitive: bool
    semi_regular: bool
    abelian: bool


def action_properties(group: ColourGroup) -> ActionProperties:
    semi = all(
        all(p.image[c] != c for c in range(group.degree))
        for p in group.elements
        if not p.is_identity()
    )
    abelian = all(a * b == b * a for a in group.elements for b in group.elements)
    return ActionProperties(group.is_transitive, semi, abelian)


@dataclass(frozen=True)
class CommutatorWord:
    """A product of basic commutators b^-1 a^-1 b a, one (a, b) pair per factor.

    ``evaluate`` composes the factors as functions, first factor outermost:
    gamma_1 o gamma_2 o ... o gamma_l.
    """

    degree: int
    factors: tuple[tuple[Permutation, Permutation], ...] = field(default=())

    @staticmethod
    def basic(a: Permutation, b: Permutation) -> Permutation:
        return b.inverse() * a.inverse() * b * a

    def evaluate(self) -> Permutation:
        out = Permutation.identity(self.degree)
        for a, b in self.factors:
            out = out * self.basic(a, b)
        return out

    def __len__(self):
        return len(self.factors)


# above this many (a, b) pairs, basic commutators are drawn from conjugates
# of generator commutators only
_PAIR_LIMIT = 1_000_000


def _basic_commutators(group: ColourGroup) -> dict[Permutation, tuple[Permutation, Permutation]]:
    found: dict[Permutation, tuple[Permutation, Permutation]] = {}
    els = group.elements
    if len(els) ** 2 <= _PAIR_LIMIT:
        for a in els:
            for b in els:
                g = CommutatorWord.basic(a, b)
                if g not in found:
                    found[g] = (a, b)
        return found
    # [G,G] is the normal closure of the generator commutators, and
    # x^-1 [a,b] x = [x^-1 a x, x^-1 b x] keeps each conjugate basic.
    gens = group.generators
    for x in els:
        xi = x.inverse()
        for a in gens:
            for b in gens:
                ca, cb = xi * a * x, xi * b * x
                g = CommutatorWord.basic(ca, cb)
                if g not in found:
                    found[g] = (ca, cb)
    return found


@lru_cache(maxsize=256)
def commutator_subgroup(group: ColourGroup) -> tuple[ColourGroup, dict[Permutation, CommutatorWord]]:
    """[G,G] together with a shortest basic-commutator word for each element."""
    basics = _basic_commutators(group)
    e = group.identity
    words = {e: CommutatorWord(group.degree)}
    queue = deque([e])
    steps = [(g, pair) for g, pair in basics.items() if not g.is_identity()]
    while queue:
        x = queue.popleft()
        wx = words[x]
        for g, pair in steps:
            y = x * g
            if y not in words:
                words[y] = CommutatorWord(group.degree, wx.factors + (pair,))
                queue.append(y)
    name = f"[{group.name},{group.name}]" if group.name else None
    sub = generate_group(group.degree, [g for g, _ in steps], name=name)
    return sub, words


def restrict(group: ColourGroup, orbit: Sequence[int], name: str | None = None) -> ColourGroup:
    """The action of ``group`` on one of its orbits, colours relabelled 0..|orbit|-1."""
    orbit = sorted(orbit)
    pos = {c: i for i, c in enumerate(orbit)}
    gens = []
    for g in group.generators:
        img = []
        for c in orbit:
            d = g.image[c]
            if d not in pos:
                raise ValueError(f"{orbit} is not invariant under {g}")
            img.append(pos[d])
        gens.append(Permutation(tuple(img)))
    return generate_group(len(orbit), gens, name=name)


def quotient_action(group: ColourGroup) -> ColourGroup:
    """The image of ``group`` permuting the orbits of its commutator subgroup."""
    sub, _ = commutator_subgroup(group)
    orbits = colour_orbits(sub)
    where = {c: k for k, o in enumerate(orbits) for c in o}
    gens = [Permutation(tuple(where[g.image[o[0]]] for o in orbits)) for g in group.generators]
    name = f"{group.name}/[{group.name},{group.name}]" if group.name else None
    return generate_group(len(orbits), gens, name=name)


def _fixes_all_colourings(ks: Sequence[int], m: int, n: int) -> bool:
    # for n <= 2 the full colouring set is tiny, so check it directly
    seq = SwitchingSequence(tuple((v, Permutation.rotation(m, k)) for v, k in enumerate(ks)))
    for cols in product(range(m), repeat=len(pair_list(n))):
        g = EdgeColouring(n, m, bytes(cols))
        if apply_sequence(g, seq) != g:
            return False
    return True


def kernel_of_switch_action(m: int, n: int) -> set[tuple[int, ...]]:
    """Exponent vectors of C_m^n that fix every m-colouring of K_n.

    For n >= 3 the pairwise congruences k_i + k_j = 0 (mod m) force all k
    equal with 2k = 0; smaller n are settled by brute force.
    """
    if m < 2 or n < 1:
        raise ValueError("need m >= 2 and n >= 1")
    if n >= 3:
        out = {(0,) * n}
        if m % 2 == 0:
            out.add((m // 2,) * n)
        return out
    return {ks for ks in product(range(m), repeat=n) if _fixes_all_colourings(ks, m, n)}


def single_edge_sequence(
    group: ColourGroup, u: int, v: int, from_colour: int, to_colour: int
) -> SwitchingSequence:
    """Switches that take edge uv from ``from_colour`` to ``to_colour`` and
    leave every other edge as it was.
    """
    if u == v:
        raise ValueError("u and v must be distinct")
    sub, words = commutator_subgroup(group)
    if from_colour == to_colour:
        return SwitchingSequence()
    best = None
    for el, w in words.items():
        if el.image[from_colour] == to_colour and (best is None or len(w) < len(best)):
            best = w
    if best is None:
        parts = " ".join(
            "{" + ",".join(str(c + 1) for c in o) + "}" for o in colour_orbits(sub)
        )
        raise ValueError(
            f"colours {from_colour + 1} and {to_colour + 1} lie in different orbits of "
            f"the commutator subgroup: {parts}"
        )
    steps = []
    for a, b in reversed(best.factors):
        steps += [(u, a), (v, b), (u, a.inverse()), (v, b.inverse())]
    return SwitchingSequence(tuple(steps))
