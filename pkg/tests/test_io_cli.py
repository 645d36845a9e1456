from __future__ import annotations

import itertools
import xml.etree.ElementTree as ET

import pytest
from hypothesis import given
from hypothesis import strategies as st

from subcoloring.cli import run_cli
from subcoloring.errors import InputError, KindMismatchError, ParseError
from subcoloring.geometry import Disk, DiskInstance
from subcoloring.graph import Coloring, IntersectionGraph
from subcoloring.io import (
    NEUTRAL,
    PALETTE,
    RunReport,
    parse_coloring,
    parse_graph,
    parse_instance,
    render_svg,
    serialize_coloring,
    serialize_graph,
    serialize_instance,
)

SVG = "{http://www.w3.org/2000/svg}"


def test_parse_single_disk():
    inst = parse_instance("kind general\ndisk 0 1.0 1.0 1.2\n")
    assert inst.disks == (Disk.at(0, 1.0, 1.0, 1.2),)


def test_unit_header_checks_radius():
    with pytest.raises(InputError):
        parse_instance("kind unit\ndisk 0 0 0 0.7\n")


def test_header_only_is_empty():
    inst = parse_instance("kind delta\n")
    assert inst.kind == "delta" and inst.disks == ()


@pytest.mark.parametrize(
    "text, line",
    [
        ("kind general\ndisk 0 1 1\n", 2),
        ("kind general\ndisk 0 1 1 nan\n", 2),
        ("kind general\ndisk 0 1 1 1\n\ndisk 0 2 2 1\n", 4),
        ("disk 0 1 1 1\n", 1),
        ("kind general\ndisk x 1 1 1\n", 2),
        ("kind general\ndisk 0 1 1 inf\n", 2),
    ],
)
def test_parse_errors_carry_line_numbers(text, line):
    with pytest.raises(ParseError) as exc:
        parse_instance(text)
    assert exc.value.line == line


def test_delta_header_checks_representation():
    with pytest.raises(KindMismatchError):
        DiskInstance.from_tuples([(1, 1, 1.5)], "delta")
    with pytest.raises(InputError):
        parse_instance("kind delta\ndisk 0 1 1 1.5\n")


finite = st.floats(allow_nan=False, allow_infinity=False, min_value=-1e300, max_value=1e300)
positive = st.floats(min_value=1e-300, max_value=1e300, allow_nan=False, allow_infinity=False)


@given(st.lists(st.tuples(finite, finite, positive), max_size=20))
def test_instance_round_trip_is_bit_exact(rows):
    inst = DiskInstance.from_tuples(rows)
    back = parse_instance(serialize_instance(inst))
    assert back == inst
    assert serialize_instance(back) == serialize_instance(inst)


def test_crlf_is_accepted():
    assert parse_instance("kind general\r\ndisk 0 1 2 3\r\n").disks[0].radius == 3.0


def test_coloring_format():
    assert serialize_coloring(Coloring.from_list([0, 0, 1])) == "0 0\n1 0\n2 1\n"
    assert serialize_coloring(Coloring({0: 4, 1: 9, 2: 4})) == "0 0\n1 1\n2 0\n"


@given(st.lists(st.integers(0, 30), max_size=30))
def test_coloring_round_trip(colors):
    c = Coloring.from_list(colors)
    back = parse_coloring(serialize_coloring(c), len(colors))
    assert back == c.canonical()


def test_coloring_missing_vertex():
    with pytest.raises(InputError):
        parse_coloring("0 0\n2 1\n", 3)
    with pytest.raises(ParseError):
        parse_coloring("0 0\n0 1\n")


def test_graph_round_trip():
    g = IntersectionGraph.from_edges(5, [(0, 1), (1, 2), (3, 4)])
    assert parse_graph(serialize_graph(g)) == g


def test_empty_svg():
    root = ET.fromstring(render_svg(DiskInstance(())))
    assert root.tag == SVG + "svg" and not root.findall(f".//{SVG}circle")


def test_uncolored_disk_is_neutral():
    root = ET.fromstring(render_svg(DiskInstance.from_tuples([(0, 0, 1)])))
    (c,) = root.findall(f".//{SVG}circle")
    assert c.get("fill") == NEUTRAL and c.get("r") == "1.0"


def test_k3_one_color_same_fill():
    inst = DiskInstance.from_tuples([(0, 0, 1), (1, 0, 1), (0.5, 0.8, 1)])
    svg = render_svg(inst, Coloring.from_list([0, 0, 0]), lines=[("h", 0.0), ("v", 0.5)])
    root = ET.fromstring(svg)
    fills = {c.get("fill") for c in root.findall(f".//{SVG}circle")}
    assert fills == {PALETTE[0]}
    assert len(root.findall(f".//{SVG}line")) == 2
    assert svg == render_svg(inst, Coloring.from_list([0, 0, 0]), lines=[("h", 0.0), ("v", 0.5)])


def test_palette_cycles():
    inst = DiskInstance.from_tuples([(3 * i, 0, 1) for i in range(9)])
    root = ET.fromstring(render_svg(inst, Coloring.from_list(range(9))))
    fills = [c.get("fill") for c in root.findall(f".//{SVG}circle")]
    assert fills[7] == fills[0] and len(set(fills)) == 7


def test_report_text():
    r = RunReport("isbell7", 3, 2, "unit", 2, "valid", None, 0.5)
    assert r.to_text() == "algorithm isbell7\nn 3\nm 2\nkind unit\ncolors 2\nlower_bound -\nvalidation valid\n"
    assert "wall_time" in r.to_text(with_time=True)
    with pytest.raises(ValueError):
        RunReport("x", 0, 0, "unit", 0, "maybe")


def test_cli_isbell_end_to_end(tmp_path, capsys):
    inst, col, rep = tmp_path / "u.txt", tmp_path / "c.txt", tmp_path / "r.txt"
    assert run_cli(["gen", "random-unit", "--n", "80", "--width", "6", "--seed", "1", "--out", str(inst)]) == 0
    assert run_cli(["color", "--algo", "isbell7", "--in", str(inst), "--out", str(col), "--report", str(rep)]) == 0
    fields = dict(line.split(" ", 1) for line in rep.read_text().splitlines())
    assert int(fields["colors"]) <= 7 and fields["validation"] == "valid"
    assert run_cli(["verify", "--in", str(inst), "--coloring", str(col)]) == 0


def test_cli_verify_reports_witness(tmp_path, capsys):
    g = tmp_path / "p3.txt"
    g.write_text("graph 3\nedge 0 1\nedge 1 2\n")
    c = tmp_path / "c.txt"
    c.write_text("0 0\n1 0\n2 0\n")
    assert run_cli(["verify", "--in", str(g), "--coloring", str(c)]) == 2
    assert "0 1 2" in capsys.readouterr().out


def test_cli_oracle_on_k5(tmp_path, capsys):
    g = tmp_path / "k5.txt"
    g.write_text("graph 5\n" + "".join(f"edge {u} {v}\n" for u, v in itertools.combinations(range(5), 2)))
    assert run_cli(["oracle", "--in", str(g)]) == 0
    assert capsys.readouterr().out.strip() == "1"


def test_cli_usage_errors(tmp_path, capsys):
    assert run_cli(["color", "--algo", "nope", "--in", "x"]) == 1
    assert run_cli(["color", "--algo", "exact", "--in", str(tmp_path / "missing.txt")]) == 1
    bad = tmp_path / "bad.txt"
    bad.write_text("kind general\ndisk 0 1 1\n")
    assert run_cli(["color", "--algo", "disk-log3", "--in", str(bad)]) == 1
    assert "line 2" in capsys.readouterr().err


def test_cli_kind_mismatch(tmp_path):
    f = tmp_path / "g.txt"
    f.write_text("kind general\ndisk 0 0 0 1\n")
    assert run_cli(["color", "--algo", "isbell7", "--in", str(f)]) == 1


def test_cli_oracle_size_guard(tmp_path):
    g = tmp_path / "big.txt"
    g.write_text("graph 30\n")
    assert run_cli(["oracle", "--in", str(g)]) == 1
    assert run_cli(["oracle", "--in", str(g), "--limit", "40"]) == 0


@pytest.mark.parametrize(
    "gen, algo",
    [
        (["random-unit", "--n", "40", "--width", "5"], "unit3approx"),
        (["random-delta", "--n", "40"], "delta-log"),
        (["random-delta", "--n", "40"], "delta-approx"),
        (["interval2delta", "--n", "25"], "delta-approx"),
        (["random-disk", "--n", "60", "--rmin", "0.2", "--rmax", "2", "--width", "12"], "disk-log3"),
        (["random-disk", "--n", "60", "--rmin", "0.2", "--rmax", "2", "--width", "12"], "disk-approx"),
        (["random-disk", "--n", "10", "--rmin", "0.5", "--rmax", "1.5", "--width", "4"], "exact"),
        (["bc", "--k", "4"], "disk-approx"),
    ],
)
def test_cli_every_algorithm(tmp_path, gen, algo):
    inst = tmp_path / "i.txt"
    assert run_cli(["gen", *gen, "--seed", "5", "--out", str(inst)]) == 0
    out = tmp_path / "c.txt"
    assert run_cli(["color", "--algo", algo, "--in", str(inst), "--out", str(out), "--report", str(tmp_path / "r")]) == 0
    assert run_cli(["verify", "--in", str(inst), "--coloring", str(out)]) == 0


def test_cli_gadget_and_decompose(tmp_path, capsys):
    g = tmp_path / "g.txt"
    assert run_cli(["gen", "gadget", "--variant", "c5", "--out", str(g)]) == 0
    assert run_cli(["oracle", "--in", str(g)]) == 0
    assert capsys.readouterr().out.strip() == "2"
    assert run_cli(["color", "--algo", "exact", "--in", str(g), "--out", str(tmp_path / "c")]) == 0
    inst = tmp_path / "d.txt"
    run_cli(["gen", "random-disk", "--n", "30", "--rmin", "0.3", "--rmax", "3", "--width", "10", "--out", str(inst)])
    capsys.readouterr()
    assert run_cli(["decompose", "--tree", "--in", str(inst)]) == 0
    assert capsys.readouterr().out.startswith("tree n=30")
    assert run_cli(["decompose", "--delta", "--in", str(inst)]) == 0
    out = capsys.readouterr().out
    for chunk in out.split("# piece")[1:]:
        body = chunk.split("\n", 1)[1]
        assert parse_instance(body).kind == "delta"
    assert run_cli(["render", "--in", str(inst), "--out", str(tmp_path / "x.svg")]) == 0
    ET.parse(tmp_path / "x.svg")
