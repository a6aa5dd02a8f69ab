"""Line-oriented text formats for colourings, push graphs and switch sequences.

    ecg 1
    n=<n> m=<m> [partial=1]
    <i> <j> <c>        one line per pair, 1-based, '#' starts a comment

Push graphs mark non-edges with colour 0 and set ``partial=1``.
"""

from __future__ import annotations

import re

from .core import EdgeColouring, Permutation, SwitchingSequence, pair_list
from .push_graph import NO_EDGE, PushGraph


class FormatError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


_HEADER = re.compile(r"^n=(\d+)\s+m=(\d+)(?:\s+partial=([01]))?$")


def _content_lines(text: str):
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield no, line


def _parse(text: str, allow_partial: bool):
    lines = _content_lines(text)
    try:
        no, magic = next(lines)
    except StopIteration:
        raise FormatError("empty file", 1) from None
    if magic != "ecg 1":
        raise FormatError(f"expected 'ecg 1', got {magic!r}", no)
    try:
        no, head = next(lines)
    except StopIteration:
        raise FormatError("missing 'n=.. m=..' header", no + 1) from None
    mt = _HEADER.match(head)
    if not mt:
        raise FormatError(f"malformed header {head!r}", no)
    n, m = int(mt.group(1)), int(mt.group(2))
    partial = mt.group(3) == "1"
    if partial and not allow_partial:
        raise FormatError("partial=1 files describe push graphs, not colourings", no)
    if n < 1 or not 2 <= m <= 255:
        raise FormatError(f"need n >= 1 and 2 <= m <= 255, got n={n} m={m}", no)
    low = 0 if partial else 1
    line_of: dict[tuple[int, int], int] = {}
    colour_of: dict[tuple[int, int], int] = {}
    last = no
    for no, line in lines:
        last = no
        parts = line.split()
        if len(parts) != 3 or not all(p.lstrip("-").isdigit() for p in parts):
            raise FormatError(f"expected '<i> <j> <c>', got {line!r}", no)
        i, j, c = map(int, parts)
        if not (1 <= i < j <= n):
            raise FormatError(f"need 1 <= i < j <= {n}, got {i} {j}", no)
        if not low <= c <= m:
            raise FormatError(f"colour {c} out of range {low}..{m}", no)
        if (i, j) in line_of:
            raise FormatError(f"duplicate edge ({i},{j}), first given on line {line_of[(i, j)]}", no)
        line_of[(i, j)] = no
        colour_of[(i, j)] = c
    for i, j in pair_list(n):
        if (i + 1, j + 1) not in colour_of:
            raise FormatError(f"missing edge ({i + 1},{j + 1})", last)
    cols = [colour_of[(i + 1, j + 1)] for i, j in pair_list(n)]
    return n, m, partial, cols


def parse_colouring(text: str) -> EdgeColouring:
    n, m, _, cols = _parse(text, allow_partial=False)
    return EdgeColouring(n, m, bytes(c - 1 for c in cols))


def emit_colouring(g: EdgeColouring, comment: str | None = None) -> str:
    out = ["ecg 1"]
    if comment:
        out.extend(f"# {line}" for line in comment.splitlines())
    out.append(f"n={g.n} m={g.m}")
    out.extend(f"{i + 1} {j + 1} {c + 1}" for i, j, c in g.edges())
    return "\n".join(out) + "\n"


def parse_partial(text: str) -> tuple[int, int, list[list[int]]]:
    """(n, m, matrix) with NO_EDGE for non-edges and 0-based colours elsewhere."""
    n, m, _, cols = _parse(text, allow_partial=True)
    mat = [[NO_EDGE] * n for _ in range(n)]
    for (i, j), c in zip(pair_list(n), cols):
        mat[i][j] = mat[j][i] = c - 1 if c else NO_EDGE
    return n, m, mat


def emit_push(p: PushGraph) -> str:
    N = p.num_vertices
    out = ["ecg 1",
           f"# push graph of a {p.base_n}-vertex colouring under {p.group.label}"
           f"{' with star edges' if p.star else ''}; vertex x is (x mod {p.base_n}, copy x div {p.base_n})",
           f"n={N} m={p.m} partial=1"]
    for i, j in pair_list(N):
        c = p.matrix[i][j]
        out.append(f"{i + 1} {j + 1} {0 if c == NO_EDGE else c + 1}")
    return "\n".join(out) + "\n"


_STEP = re.compile(r"^\(\s*(\d+)\s*,\s*(.*)\)$")


def parse_permutation(text: str, m: int) -> Permutation:
    """Cycle notation with 1-based colours, e.g. '(1 2)(3 4)'; '()' or 'e' is the identity."""
    s = text.strip()
    if s in ("", "()", "e", "id"):
        return Permutation.identity(m)
    if not re.fullmatch(r"(\(\s*\d+(?:[\s,]+\d+)*\s*\))+", s):
        raise ValueError(f"malformed permutation {text!r}")
    cycles = []
    for body in re.findall(r"\(([^)]*)\)", s):
        cyc = [int(x) - 1 for x in re.split(r"[\s,]+", body.strip())]
        if any(not 0 <= c < m for c in cyc):
            raise ValueError(f"colour out of range 1..{m} in {text!r}")
        cycles.append(cyc)
    return Permutation.from_cycles(cycles, m)


def parse_sequence(text: str, m: int) -> SwitchingSequence:
    """'(v,perm);(v,perm);...' with 1-based vertices and colours."""
    steps = []
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        mt = _STEP.match(chunk)
        if not mt:
            raise ValueError(f"malformed step {chunk!r}; expected '(v,perm)'")
        v = int(mt.group(1)) - 1
        if v < 0:
            raise ValueError(f"vertices are 1-based: {chunk!r}")
        steps.append((v, parse_permutation(mt.group(2), m)))
    return SwitchingSequence(tuple(steps))
