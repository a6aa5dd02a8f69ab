"""Built-in witness colourings.

The finite-field colourings colour edge {a, b} by the multiplicative coset
of a - b.  Both built-ins are checked for monochromatic triangles every time
they are constructed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations

from .core import EdgeColouring, apex, find_mono_clique


@dataclass(frozen=True)
class CosetColouringSpec:
    """Either a prime field (``prime``) or GF(2^k) given by ``poly`` (bitmask,
    e.g. 0b10011 for x^4 + x + 1).  ``labels[r]`` is the colour of coset r,
    where coset r holds the elements whose discrete log is r mod ``index``.
    """

    index: int
    prime: int | None = None
    poly: int | None = None
    labels: tuple[int, ...] | None = field(default=None)

    @property
    def size(self) -> int:
        if self.prime is not None:
            return self.prime
        return 1 << (self.poly.bit_length() - 1)


def _gf2_mul(a: int, b: int, poly: int) -> int:
    top = 1 << (poly.bit_length() - 1)
    out = 0
    while b:
        if b & 1:
            out ^= a
        b >>= 1
        a <<= 1
        if a & top:
            a ^= poly
    return out


def _discrete_log(spec: CosetColouringSpec) -> tuple[dict[int, int], callable]:
    """Log table for a generator of the multiplicative group, and subtraction."""
    q = spec.size
    if spec.prime is not None:
        p = spec.prime
        if p < 3 or any(p % d == 0 for d in range(2, int(p ** 0.5) + 1)):
            raise ValueError(f"{p} is not an odd prime")
        mul = lambda a, b: a * b % p  # noqa: E731
        sub = lambda a, b: (a - b) % p  # noqa: E731
    else:
        poly = spec.poly
        if poly is None or poly < 0b111:
            raise ValueError("need a reduction polynomial of degree >= 2")
        mul = lambda a, b: _gf2_mul(a, b, poly)  # noqa: E731
        sub = lambda a, b: a ^ b  # noqa: E731
    for gen in range(2, q):
        log = {}
        x = 1
        for k in range(q - 1):
            if x in log:
                break
            log[x] = k
            x = mul(x, gen)
        if len(log) == q - 1:
            return log, sub
    raise ValueError("no primitive element found; is the polynomial irreducible?")


def build_coset_colouring(spec: CosetColouringSpec) -> EdgeColouring:
    q = spec.size
    d = spec.index
    if d < 2 or (q - 1) % d:
        raise ValueError(f"index {d} must be >= 2 and divide {q - 1}")
    labels = spec.labels if spec.labels is not None else tuple(range(d))
    if len(labels) != d:
        raise ValueError(f"need {d} coset labels, got {len(labels)}")
    log, sub = _discrete_log(spec)
    minus_one = sub(0, 1)
    if log[minus_one] % d:
        raise ValueError(
            f"-1 is not in the index-{d} subgroup, so the coset of a - b depends on order"
        )
    m = max(labels) + 1
    return EdgeColouring.from_function(q, max(m, 2), lambda a, b: labels[log[sub(a, b)] % d])


def mono_triangle_count(g: EdgeColouring) -> tuple[int, int]:
    """(monochromatic triangles, triangles scanned)."""
    bad = total = 0
    for a, b, c in combinations(range(g.n), 3):
        total += 1
        if g.colour(a, b) == g.colour(a, c) == g.colour(b, c):
            bad += 1
    return bad, total


def _two_pentagons() -> EdgeColouring:
    # cycle 1-2-3-4-5 in colour index 1, pentagram 1-3-5-2-4 in colour index 3
    ring = {frozenset((i, (i + 1) % 5)) for i in range(5)}
    k5 = EdgeColouring.from_function(5, 4, lambda i, j: 1 if frozenset((i, j)) in ring else 3)
    return k5


@lru_cache(maxsize=None)
def named_construction(name: str) -> EdgeColouring:
    """'paper-k6', 'gg16' or 'gg41'."""
    if name == "paper-k6":
        g = apex(_two_pentagons(), 0)
        for colour, size in ((0, 3), (2, 3), (1, 4), (3, 4)):
            if find_mono_clique(g, colour, size) is not None:
                raise RuntimeError(f"paper-k6 contains a monochromatic K_{size} in colour {colour + 1}")
        return g
    if name == "gg16":
        g = build_coset_colouring(CosetColouringSpec(index=3, poly=0b10011))
    elif name == "gg41":
        g = build_coset_colouring(CosetColouringSpec(index=4, prime=41))
    else:
        raise ValueError(f"unknown construction {name!r}; choose paper-k6, gg16 or gg41")
    bad, _ = mono_triangle_count(g)
    if bad:
        raise RuntimeError(f"{name} has {bad} monochromatic triangles")
    return g


NAMES = ("paper-k6", "gg16", "gg41")
