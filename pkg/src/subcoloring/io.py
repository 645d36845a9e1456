"""Text formats, SVG rendering and run reports.

Instance files::

    kind general
    disk 0 1.0 1.0 1.2

Coloring files hold one ``vertex color`` pair per line. Graph files start with
``graph <n>`` followed by ``edge u v`` lines. Blank lines and lines starting
with ``#`` are ignored everywhere. Floats are written with ``repr``, which is
the shortest string that reads back to the same double.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping

from .errors import InputError, ParseError
from .geometry import KINDS, Disk, DiskInstance, Point
from .graph import Coloring, IntersectionGraph


def _lines(text: str) -> Iterator[tuple[int, list[str]]]:
    for no, raw in enumerate(text.replace("\r\n", "\n").replace("\r", "\n").split("\n"), 1):
        line = raw.strip()
        if line and not line.startswith("#"):
            yield no, line.split()


def _int(tok: str, no: int, what: str) -> int:
    try:
        return int(tok)
    except ValueError:
        raise ParseError(f"{what} {tok!r} is not an integer", no) from None


def _float(tok: str, no: int, what: str) -> float:
    try:
        val = float(tok)
    except ValueError:
        raise ParseError(f"{what} {tok!r} is not a number", no) from None
    if not math.isfinite(val):
        raise ParseError(f"{what} {tok!r} is not finite", no)
    return val


def fmt(x: float) -> str:
    return repr(float(x))


def parse_instance(text: str) -> DiskInstance:
    kind = None
    disks: list[Disk] = []
    seen: dict[int, int] = {}
    for no, toks in _lines(text):
        if kind is None:
            if toks[0] != "kind" or len(toks) != 2:
                raise ParseError("expected header 'kind {general|unit|delta}'", no)
            if toks[1] not in KINDS:
                raise ParseError(f"unknown kind {toks[1]!r}", no)
            kind = toks[1]
            continue
        if toks[0] != "disk":
            raise ParseError(f"unexpected record {toks[0]!r}", no)
        if len(toks) != 5:
            raise ParseError(f"disk record needs 4 fields, got {len(toks) - 1}", no)
        id_ = _int(toks[1], no, "id")
        if id_ in seen:
            raise ParseError(f"duplicate id {id_} (first on line {seen[id_]})", no)
        seen[id_] = no
        x, y, r = (_float(t, no, name) for t, name in zip(toks[2:], ("x", "y", "radius")))
        try:
            disks.append(Disk(id_, Point(x, y), r))
        except InputError as exc:
            raise ParseError(str(exc), no) from None
    if kind is None:
        raise ParseError("missing 'kind' header", 1)
    try:
        return DiskInstance(tuple(disks), kind)
    except InputError as exc:
        raise ParseError(str(exc)) from None


def serialize_instance(instance: DiskInstance) -> str:
    out = [f"kind {instance.kind}"]
    for d in instance.disks:
        out.append(f"disk {d.id} {fmt(d.center.x)} {fmt(d.center.y)} {fmt(d.radius)}")
    return "\n".join(out) + "\n"


def serialize_coloring(coloring: Coloring) -> str:
    c = coloring.canonical()
    return "".join(f"{v} {c.colors[v]}\n" for v in sorted(c.colors))


def parse_coloring(text: str, n: int | None = None) -> Coloring:
    colors: dict[int, int] = {}
    for no, toks in _lines(text):
        if len(toks) != 2:
            raise ParseError(f"expected 'vertex color', got {len(toks)} fields", no)
        v = _int(toks[0], no, "vertex")
        c = _int(toks[1], no, "color")
        if v in colors:
            raise ParseError(f"vertex {v} colored twice", no)
        if c < 0:
            raise ParseError(f"negative color {c}", no)
        colors[v] = c
    if n is not None:
        missing = [v for v in range(n) if v not in colors]
        if missing:
            raise InputError(f"coloring misses {len(missing)} of {n} vertices (first {missing[0]})")
        extra = sorted(v for v in colors if not 0 <= v < n)
        if extra:
            raise InputError(f"coloring names vertex {extra[0]} outside 0..{n - 1}")
    return Coloring(colors)


def serialize_graph(g: IntersectionGraph) -> str:
    return f"graph {g.n}\n" + "".join(f"edge {u} {v}\n" for u, v in g.edges())


def parse_graph(text: str) -> IntersectionGraph:
    n = None
    edges = []
    for no, toks in _lines(text):
        if n is None:
            if toks[0] != "graph" or len(toks) != 2:
                raise ParseError("expected header 'graph <n>'", no)
            n = _int(toks[1], no, "vertex count")
            if n < 0:
                raise ParseError("negative vertex count", no)
            continue
        if toks[0] != "edge" or len(toks) != 3:
            raise ParseError("expected 'edge u v'", no)
        u, v = _int(toks[1], no, "vertex"), _int(toks[2], no, "vertex")
        if not (0 <= u < n and 0 <= v < n) or u == v:
            raise ParseError(f"bad edge ({u}, {v}) for n={n}", no)
        edges.append((u, v))
    if n is None:
        raise ParseError("missing 'graph' header", 1)
    return IntersectionGraph.from_edges(n, edges)


def sniff(text: str) -> str:
    """``"graph"`` or ``"instance"`` from the first record of a file."""
    for _, toks in _lines(text):
        return "graph" if toks[0] == "graph" else "instance"
    return "instance"


PALETTE = ("#e41a1c", "#377eb8", "#4daf4a", "#984ea3", "#ff7f00", "#a6a600", "#a65628")
NEUTRAL = "#bbbbbb"


def render_svg(
    instance: DiskInstance,
    coloring: Coloring | Mapping[int, int] | None = None,
    lines: Iterable[tuple[str, float]] = (),
    size: int = 600,
) -> str:
    """SVG 1.1 drawing of the disks, y axis pointing up.

    ``lines`` holds overlays ``("h", y)`` or ``("v", x)``.
    """
    colors = coloring.colors if isinstance(coloring, Coloring) else coloring
    disks = instance.disks
    if disks:
        x0 = min(d.center.x - d.radius for d in disks)
        x1 = max(d.center.x + d.radius for d in disks)
        y0 = min(d.center.y - d.radius for d in disks)
        y1 = max(d.center.y + d.radius for d in disks)
    else:
        x0, x1, y0, y1 = 0.0, 1.0, 0.0, 1.0
    pad = 0.05 * max(x1 - x0, y1 - y0)
    x0, x1, y0, y1 = x0 - pad, x1 + pad, y0 - pad, y1 + pad
    w, h = x1 - x0, y1 - y0
    stroke = fmt(max(w, h) / 400)
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{size}" height="{size}" '
        f'viewBox="{fmt(x0)} {fmt(-y1)} {fmt(w)} {fmt(h)}">',
        f'<g transform="scale(1,-1)" stroke="#333333" stroke-width="{stroke}" fill-opacity="0.45">',
    ]
    for d in disks:
        fill = NEUTRAL if colors is None or d.id not in colors else PALETTE[colors[d.id] % len(PALETTE)]
        out.append(
            f'<circle id="d{d.id}" cx="{fmt(d.center.x)}" cy="{fmt(d.center.y)}" r="{fmt(d.radius)}" fill="{fill}"/>'
        )
    for orient, off in lines:
        if orient == "h":
            out.append(f'<line x1="{fmt(x0)}" y1="{fmt(off)}" x2="{fmt(x1)}" y2="{fmt(off)}" stroke-dasharray="{stroke}"/>')
        elif orient == "v":
            out.append(f'<line x1="{fmt(off)}" y1="{fmt(y0)}" x2="{fmt(off)}" y2="{fmt(y1)}" stroke-dasharray="{stroke}"/>')
        else:
            raise InputError(f"overlay orientation must be 'h' or 'v', got {orient!r}")
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"


@dataclass
class RunReport:
    algorithm: str
    n: int
    m: int
    kind: str
    colors: int
    verdict: str
    lower_bound: int | None = None
    wall_time: float | None = None

    def __post_init__(self):
        if self.verdict not in ("valid", "invalid"):
            raise ValueError(f"verdict must be 'valid' or 'invalid', got {self.verdict!r}")

    def to_text(self, with_time: bool = False) -> str:
        rows = [
            ("algorithm", self.algorithm),
            ("n", self.n),
            ("m", self.m),
            ("kind", self.kind),
            ("colors", self.colors),
            ("lower_bound", "-" if self.lower_bound is None else self.lower_bound),
            ("validation", self.verdict),
        ]
        if with_time and self.wall_time is not None:
            rows.append(("wall_time", f"{self.wall_time:.6f}"))
        return "".join(f"{k} {v}\n" for k, v in rows)
