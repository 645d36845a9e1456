"""Command-line entry point.

Exit codes: 0 success, 1 usage or input error, 2 invariant violation
(including a coloring that fails validation).
"""

from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path

from .decompose import color_disk_approx, color_disk_log3, decompose
from .delta import DeltaRepresentation, delta_color_approx, delta_color_log
from .errors import InputError, InvariantViolation
from .generators import (
    GadgetSpec,
    gen_bc,
    gen_gadget,
    gen_interval_to_delta,
    gen_random_delta,
    gen_random_disks,
    gen_random_intervals,
    gen_random_unit,
)
from .geometry import DiskInstance, require_kind
from .graph import Coloring, IntersectionGraph, build_intersection_graph, subcoloring_violation
from .io import (
    RunReport,
    parse_coloring,
    parse_graph,
    parse_instance,
    render_svg,
    serialize_coloring,
    serialize_graph,
    serialize_instance,
    sniff,
)
from .solver import OPTIMIZATION_LIMIT, exact_subchromatic
from .unit import approx3_unit, color_unit_7

ALGORITHMS = ("isbell7", "unit3approx", "delta-log", "delta-approx", "disk-log3", "disk-approx", "exact")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise InputError(f"{self.prog}: {message}")


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8", newline="\n")


def _load(path: str) -> DiskInstance | IntersectionGraph:
    text = _read(path)
    return parse_graph(text) if sniff(text) == "graph" else parse_instance(text)


def _load_instance(path: str) -> DiskInstance:
    obj = _load(path)
    if isinstance(obj, IntersectionGraph):
        raise InputError(f"{path} holds an abstract graph; this command needs disks")
    return obj


def _graph(obj) -> IntersectionGraph:
    return obj if isinstance(obj, IntersectionGraph) else build_intersection_graph(obj)


def cmd_gen(args) -> int:
    fam = args.family
    if fam == "bc":
        _, inst = gen_bc(args.k)
        _write(args.out, serialize_instance(inst))
    elif fam == "gadget":
        _write(args.out, serialize_graph(gen_gadget(GadgetSpec(args.variant, args.k))))
    elif fam == "interval2delta":
        rep = gen_interval_to_delta(gen_random_intervals(args.n, args.seed, args.span, args.max_len))
        _write(args.out, serialize_instance(rep.to_instance()))
    elif fam == "random-unit":
        _write(args.out, serialize_instance(gen_random_unit(args.n, args.width, args.seed, args.height)))
    elif fam == "random-delta":
        rep = gen_random_delta(args.n, (args.span_lo, args.span_hi), args.seed)
        _write(args.out, serialize_instance(rep.to_instance()))
    elif fam == "random-disk":
        box = (args.width, args.width if args.height is None else args.height)
        _write(args.out, serialize_instance(gen_random_disks(args.n, (args.rmin, args.rmax), box, args.seed)))
    return 0


def run_algorithm(algo: str, obj, limit: int | None = OPTIMIZATION_LIMIT) -> tuple[Coloring, int | None]:
    """Coloring and lower bound (None when the algorithm certifies none)."""
    if isinstance(obj, IntersectionGraph):
        if algo != "exact":
            raise InputError(f"algorithm {algo} needs a disk instance, got an abstract graph")
        k, c = exact_subchromatic(obj, limit=limit)
        return c, k
    if algo == "isbell7":
        return color_unit_7(obj), None
    if algo == "unit3approx":
        res = approx3_unit(obj)
        return res.coloring, res.lower_bound
    if algo in ("delta-log", "delta-approx"):
        require_kind(obj, "delta")
        rep = DeltaRepresentation(obj)
        if algo == "delta-log":
            return delta_color_log(rep), None
        res = delta_color_approx(rep)
        return res.coloring, res.k
    if algo == "disk-log3":
        return color_disk_log3(obj), None
    if algo == "disk-approx":
        res = color_disk_approx(obj)
        return res.coloring, res.lower_bound
    if algo == "exact":
        k, c = exact_subchromatic(build_intersection_graph(obj), limit=limit)
        return c, k
    raise InputError(f"unknown algorithm {algo!r}")


def cmd_color(args) -> int:
    obj = _load(args.inp)
    g = _graph(obj)
    start = time.perf_counter()
    coloring, lower = run_algorithm(args.algo, obj, args.limit)
    elapsed = time.perf_counter() - start
    coloring = coloring.canonical()
    bad = subcoloring_violation(g, coloring)
    report = RunReport(
        algorithm=args.algo,
        n=g.n,
        m=g.m,
        kind="graph" if isinstance(obj, IntersectionGraph) else obj.kind,
        colors=coloring.num_colors,
        verdict="valid" if bad is None else "invalid",
        lower_bound=lower,
        wall_time=elapsed,
    )
    _write(args.out, serialize_coloring(coloring))
    if args.report:
        _write(args.report, report.to_text())
    elif args.out not in (None, "-"):
        sys.stdout.write(report.to_text())
    sys.stderr.write(f"wall_time {elapsed:.6f}\n")
    if bad is not None:
        sys.stderr.write(f"monochromatic induced P3 {bad[0]} {bad[1]} {bad[2]}\n")
        return 2
    return 0


def cmd_verify(args) -> int:
    obj = _load(args.inp)
    g = _graph(obj)
    coloring = parse_coloring(_read(args.coloring), g.n)
    bad = subcoloring_violation(g, coloring)
    if bad is not None:
        print(f"invalid: monochromatic induced P3 {bad[0]} {bad[1]} {bad[2]}")
        return 2
    print(f"valid colors {coloring.used_colors}")
    return 0


def cmd_oracle(args) -> int:
    g = _graph(_load(args.inp))
    k, _ = exact_subchromatic(g, limit=args.limit)
    print(k)
    return 0


def cmd_decompose(args) -> int:
    inst = _load_instance(args.inp)
    tree = decompose(inst)
    if args.tree:
        _write(args.out, "\n".join(tree.lines()) + "\n")
    else:
        chunks = []
        for d, e, tag, piece in tree.pieces():
            if tag == 5:
                continue
            chunks.append(f"# piece disk_depth={d} linear_depth={e} quadrant={tag}\n")
            chunks.append(serialize_instance(piece.to_instance()))
        _write(args.out, "".join(chunks))
    return 0


def cmd_render(args) -> int:
    inst = _load_instance(args.inp)
    coloring = None
    if args.coloring:
        coloring = parse_coloring(_read(args.coloring), len(inst.disks))
    _write(args.out, render_svg(inst, coloring))
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="subcoloring", description="Subcoloring of disk graphs.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    gen = sub.add_parser("gen", help="generate an instance")
    fams = gen.add_subparsers(dest="family", required=True, parser_class=_Parser)

    def fam(name, help):
        q = fams.add_parser(name, help=help)
        q.add_argument("--seed", type=int, default=0)
        q.add_argument("--out")
        return q

    fam("bc", "proper disk representation of BC(k)").add_argument("--k", type=int, required=True)
    q = fam("gadget", "abstract gadget graph")
    q.add_argument("--variant", choices=GadgetSpec.VARIANTS, required=True)
    q.add_argument("--k", type=int)
    q = fam("interval2delta", "random intervals embedded as delta-disks")
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--span", type=float, default=100.0)
    q.add_argument("--max-len", type=float, default=20.0)
    q = fam("random-unit", "uniform unit disks")
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--width", type=float, required=True)
    q.add_argument("--height", type=float)
    q = fam("random-delta", "random delta-disks")
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--span-lo", type=float, default=1.0)
    q.add_argument("--span-hi", type=float, default=100.0)
    q = fam("random-disk", "uniform centers, log-uniform radii")
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--rmin", type=float, required=True)
    q.add_argument("--rmax", type=float, required=True)
    q.add_argument("--width", type=float, required=True)
    q.add_argument("--height", type=float)
    gen.set_defaults(func=cmd_gen)

    col = sub.add_parser("color", help="color an instance and validate the result")
    col.add_argument("--algo", choices=ALGORITHMS, required=True)
    col.add_argument("--in", dest="inp", required=True)
    col.add_argument("--out")
    col.add_argument("--report")
    col.add_argument("--limit", type=int, default=OPTIMIZATION_LIMIT)
    col.set_defaults(func=cmd_color)

    ver = sub.add_parser("verify", help="check a coloring")
    ver.add_argument("--in", dest="inp", required=True)
    ver.add_argument("--coloring", required=True)
    ver.set_defaults(func=cmd_verify)

    ora = sub.add_parser("oracle", help="exact subchromatic number")
    ora.add_argument("--in", dest="inp", required=True)
    ora.add_argument("--limit", type=int, default=OPTIMIZATION_LIMIT)
    ora.set_defaults(func=cmd_oracle)

    dec = sub.add_parser("decompose", help="median-line decomposition")
    mode = dec.add_mutually_exclusive_group(required=True)
    mode.add_argument("--tree", action="store_true")
    mode.add_argument("--delta", action="store_true")
    dec.add_argument("--in", dest="inp", required=True)
    dec.add_argument("--out")
    dec.set_defaults(func=cmd_decompose)

    ren = sub.add_parser("render", help="draw an instance as SVG")
    ren.add_argument("--in", dest="inp", required=True)
    ren.add_argument("--coloring")
    ren.add_argument("--out", required=True)
    ren.set_defaults(func=cmd_render)
    return p


def run_cli(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except InvariantViolation as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    except InputError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1


def main() -> None:
    sys.exit(run_cli())
