"""Command-line entry point.

Exit codes: 0 verified/true, 1 refuted/false, 2 unknown (budget), 3 input error.
Results go to stdout (or --out); progress and timings go to stderr.
"""

from __future__ import annotations

import argparse
import logging
import sys
import time
from pathlib import Path

from . import core, fileio, groups, push_graph, ramsey, search
from .constructions import NAMES, named_construction
from .search import BudgetExceeded

log = logging.getLogger("gswitch")

TRUE, FALSE, UNKNOWN, INPUT_ERROR = 0, 1, 2, 3


class InputError(Exception):
    pass


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _load(path: str) -> core.EdgeColouring:
    try:
        return fileio.parse_colouring(_read(path))
    except fileio.FormatError as exc:
        raise InputError(f"{path}: {exc}") from None


def _group(spec: str, m: int | None) -> groups.ColourGroup:
    try:
        return groups.parse_group(spec, m)
    except ValueError as exc:
        raise InputError(f"group {spec!r}: {exc}") from None


def _targets(text: str, m: int) -> tuple[int, ...]:
    try:
        t = tuple(int(x) for x in text.replace(" ", "").split(","))
        return ramsey.check_target(t, m)
    except ValueError as exc:
        raise InputError(f"targets {text!r}: {exc}") from None


def _one_based(value: int, limit: int, what: str) -> int:
    if not 1 <= value <= limit:
        raise InputError(f"{what} {value} out of range 1..{limit}")
    return value - 1


def _write(args, text: str) -> None:
    if getattr(args, "out", None):
        Path(args.out).write_text(text)
        log.info("wrote %s", args.out)
    else:
        sys.stdout.write(text)


def _describe_witness(w: core.CliqueWitness) -> str:
    verts = " ".join(str(v + 1) for v in w.vertices)
    return (f"clique: {verts}\ncolour: {w.colour + 1}\n"
            f"sequence: {w.sequence if len(w.sequence) else '(empty)'}\n")


def cmd_construct(args) -> int:
    g = named_construction(args.name)
    note = args.name
    if args.apex is not None:
        g = core.apex(g, _one_based(args.apex, g.m, "colour"))
        note += f" plus an apex joined in colour {args.apex}"
    _write(args, fileio.emit_colouring(g, comment=note))
    return TRUE


def cmd_switch(args) -> int:
    g = _load(args.input)
    try:
        seq = fileio.parse_sequence(args.seq, g.m)
        h = core.apply_sequence(g, seq)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    _write(args, fileio.emit_colouring(h))
    return TRUE


def cmd_homogenise(args) -> int:
    g = _load(args.input)
    grp = _group(args.group, g.m)
    v = _one_based(args.vertex, g.n, "vertex")
    c = _one_based(args.colour, g.m, "colour")
    try:
        h, seq = core.homogenise(g, grp, v, c)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    _write(args, fileio.emit_colouring(h, comment=f"sequence: {seq}"))
    return TRUE


def cmd_decide(args) -> int:
    g = _load(args.input)
    grp = _group(args.group, g.m)
    t = _targets(args.targets, g.m)
    res = ramsey.verify_lower_witness(g, grp, t, method=args.method, budget=args.budget)
    log.info("stats: %s", res.stats)
    if res.status == "refuted":
        print(_describe_witness(res.witness), end="")
        return TRUE
    if res.status == "certified":
        print("no switch of the input contains a target clique")
        return FALSE
    print("unknown: budget exhausted")
    return UNKNOWN


def cmd_equivalent(args) -> int:
    g, h = _load(args.in1), _load(args.in2)
    if (g.n, g.m) != (h.n, h.m):
        raise InputError(f"shape mismatch: n={g.n},m={g.m} vs n={h.n},m={h.m}")
    grp = _group(args.group, g.m)
    try:
        same = search.switch_equivalent(g, h, grp, budget=args.budget)
    except BudgetExceeded as exc:
        print(f"unknown: budget exhausted after {exc.explored} states")
        return UNKNOWN
    print("equivalent" if same else "not equivalent")
    return TRUE if same else FALSE


def cmd_classes(args) -> int:
    grp = _group(args.group, args.m)
    mode = "brute" if args.brute else "formula"
    try:
        count = search.count_classes(args.n, args.m, grp, mode=mode, budget=args.budget)
    except BudgetExceeded as exc:
        print(f"unknown: {exc}")
        return UNKNOWN
    except ValueError as exc:
        raise InputError(str(exc)) from None
    print(count)
    return TRUE


def cmd_push(args) -> int:
    g = _load(args.input)
    grp = _group(args.group, g.m)
    try:
        p = push_graph.build_push_star(g, grp) if args.star else push_graph.build_push(g, grp)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    _write(args, fileio.emit_push(p))
    return TRUE


def cmd_verify_lower(args) -> int:
    g = _load(args.input)
    grp = _group(args.group, g.m)
    t = _targets(args.targets, g.m)
    try:
        res = ramsey.verify_lower_witness(g, grp, t, method=args.method, budget=args.budget)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    log.info("stats: %s", res.stats)
    if res.status == "certified":
        print(f"certified: R_{grp.label}{t} >= {res.bound}")
        return TRUE
    if res.status == "refuted":
        print("refuted: the class contains a target clique")
        print(_describe_witness(res.witness), end="")
        return FALSE
    print("unknown: budget exhausted")
    return UNKNOWN


def cmd_verify_exhaustive(args) -> int:
    grp = _group(args.group, None)
    t = _targets(args.targets, grp.degree)
    c = _one_based(args.colour, grp.degree, "colour")
    try:
        res = ramsey.verify_value_exhaustive(args.n, grp, t, budget=args.budget, jobs=args.jobs, colour=c)
    except (ValueError, BudgetExceeded) as exc:
        raise InputError(str(exc)) from None
    log.info("stats: %s", res.stats)
    if res.verified:
        print(f"verified: R_{grp.label}{t} <= {args.n}")
        return TRUE
    if res.verified is False:
        print(f"refuted: a class on {args.n} vertices avoids every target clique", file=sys.stderr)
        _write(args, fileio.emit_colouring(res.counterexample, comment="counterexample"))
        return FALSE
    print("unknown: budget exhausted")
    return UNKNOWN


def cmd_bounds(args) -> int:
    grp = _group(args.group, None)
    t = _targets(args.targets, grp.degree)
    wits = [(path, _load(path)) for path in args.witness or ()]
    cert = ramsey.derive_bounds(grp, t, witnesses=wits, budget=args.budget)
    _write(args, cert.to_text())
    return TRUE


def cmd_selfiso(args) -> int:
    g = _load(args.input)
    grp = _group(args.group, g.m)
    try:
        hit = search.find_switch_isomorphic(g, grp, budget=args.budget)
    except BudgetExceeded as exc:
        print(f"unknown: budget exhausted after {exc.explored} states")
        return UNKNOWN
    except ValueError as exc:
        raise InputError(str(exc)) from None
    if hit is None:
        print("no other member of the class is isomorphic to the input")
        return FALSE
    h, sigma = hit
    mapping = " ".join(f"{i + 1}->{s + 1}" for i, s in enumerate(sigma))
    _write(args, fileio.emit_colouring(h, comment=f"vertex bijection onto the input: {mapping}"))
    return TRUE


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="gswitch", description="Switching classes of edge-coloured complete graphs.")
    p.add_argument("-v", "--verbose", action="store_true", help="progress and statistics on stderr")
    sub = p.add_subparsers(dest="cmd", required=True)

    def long_running(sp):
        sp.add_argument("--budget", type=int, default=search.DEFAULT_BUDGET,
                        help="state/node limit before answering 'unknown' (default %(default)s)")
        sp.add_argument("--jobs", type=int, default=1, help="worker processes (default 1)")

    sp = sub.add_parser("construct", help="emit a built-in colouring")
    sp.add_argument("name", choices=NAMES)
    sp.add_argument("--apex", type=int, metavar="C", help="add a vertex joined to all others in colour C")
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_construct)

    sp = sub.add_parser("switch", help="apply a switching sequence")
    sp.add_argument("--in", dest="input", required=True)
    sp.add_argument("--seq", required=True, help="'(v,perm);...', 1-based")
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_switch)

    sp = sub.add_parser("homogenise", help="make every edge at one vertex the same colour")
    sp.add_argument("--in", dest="input", required=True)
    sp.add_argument("--group", required=True)
    sp.add_argument("--vertex", type=int, required=True)
    sp.add_argument("--colour", type=int, required=True)
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_homogenise)

    sp = sub.add_parser("decide", help="does the class contain a target clique?")
    sp.add_argument("--in", dest="input", required=True)
    sp.add_argument("--group", required=True)
    sp.add_argument("--targets", required=True)
    sp.add_argument("--method", default="auto", choices=("auto", "solver", "orbit", "both"))
    long_running(sp)
    sp.set_defaults(func=cmd_decide)

    sp = sub.add_parser("equivalent", help="are two colourings switch-equivalent?")
    sp.add_argument("--in1", required=True)
    sp.add_argument("--in2", required=True)
    sp.add_argument("--group", required=True)
    long_running(sp)
    sp.set_defaults(func=cmd_equivalent)

    sp = sub.add_parser("classes", help="count switching classes")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--group", required=True)
    sp.add_argument("--brute", action="store_true", help="partition all colourings into orbits")
    long_running(sp)
    sp.set_defaults(func=cmd_classes)

    sp = sub.add_parser("push", help="export the push graph P(G) or P*(G)")
    sp.add_argument("--in", dest="input", required=True)
    sp.add_argument("--group", required=True)
    sp.add_argument("--star", action="store_true")
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_push)

    sp = sub.add_parser("verify-lower", help="certify R_G(targets) > n from a witness colouring")
    sp.add_argument("--in", dest="input", required=True)
    sp.add_argument("--group", required=True)
    sp.add_argument("--targets", required=True)
    sp.add_argument("--method", default="auto", choices=("auto", "solver", "orbit", "both"))
    long_running(sp)
    sp.set_defaults(func=cmd_verify_lower)

    sp = sub.add_parser("verify-exhaustive", help="check R_G(targets) <= n over all classes")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--group", required=True)
    sp.add_argument("--targets", required=True)
    sp.add_argument("--colour", type=int, default=1, help="apex colour of the representatives")
    sp.add_argument("--out", help="where to write a counterexample")
    long_running(sp)
    sp.set_defaults(func=cmd_verify_exhaustive, budget=50_000_000)

    sp = sub.add_parser("bounds", help="derive a bound certificate")
    sp.add_argument("--group", required=True)
    sp.add_argument("--targets", required=True)
    sp.add_argument("--witness", action="append", metavar="F", help="lower-bound witness file (repeatable)")
    sp.add_argument("--out")
    long_running(sp)
    sp.set_defaults(func=cmd_bounds)

    sp = sub.add_parser("selfiso", help="find another class member isomorphic to the input")
    sp.add_argument("--in", dest="input", required=True)
    sp.add_argument("--group", required=True)
    sp.add_argument("--out")
    long_running(sp)
    sp.set_defaults(func=cmd_selfiso)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return INPUT_ERROR if exc.code else TRUE
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(name)s: %(message)s", stream=sys.stderr, force=True)
    if getattr(args, "jobs", 1) < 1:
        print("error: --jobs must be at least 1", file=sys.stderr)
        return INPUT_ERROR
    start = time.perf_counter()
    try:
        code = args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return INPUT_ERROR
    log.info("%s finished in %.2fs", args.cmd, time.perf_counter() - start)
    return code


if __name__ == "__main__":
    sys.exit(main())
