"""Acceptance criteria 1-11, each printing one PASS/FAIL line."""

from __future__ import annotations

import itertools
import math
import random
import time

import numpy as np
import pytest

from oracles import hex_centers, hexagon_distance
from subcoloring.cli import run_cli
from subcoloring.decompose import check_tree, color_disk_approx, color_disk_log3, decompose, group_bound, log3_bound
from subcoloring.delta import (
    cocomp_precedes,
    delta_color_approx,
    delta_color_log,
    max_consecutive_mis_neighbors,
    validate_delta,
)
from subcoloring.generators import (
    GadgetSpec,
    bc_graph,
    gen_bc,
    gen_gadget,
    gen_interval_to_delta,
    gen_random_delta,
    gen_random_disks,
    gen_random_intervals,
    gen_random_unit,
)
from subcoloring.geometry import disk_contains_disk
from subcoloring.graph import build_intersection_graph, validate_subcoloring
from subcoloring.solver import decide_k_subcoloring, exact_subchromatic, iter_subcolorings
from subcoloring.unit import HexCell, approx3_unit, color_unit_7, isbell_color


@pytest.fixture
def report(capsys):
    def emit(number: int, ok: bool, detail: str):
        with capsys.disabled():
            print(f"\nACCEPTANCE {number:2d} {'PASS' if ok else 'FAIL'}  {detail}")
        assert ok, detail

    return emit


def test_01_isbell_bound(report):
    worst = 0.0
    failures = []
    for i in range(200):
        n = 10 * (i + 1)
        inst = gen_random_unit(n, 30.0, i)
        start = time.perf_counter()
        c = color_unit_7(inst)
        worst = max(worst, time.perf_counter() - start)
        g = build_intersection_graph(inst)
        if c.used_colors > 7 or not validate_subcoloring(g, c):
            failures.append(i)
    ok = not failures and worst < 1.0
    report(1, ok, f"200 unit instances n<=2000: failures={failures} slowest={worst:.3f}s")


def test_02_same_color_cells_are_separated(report):
    start = time.perf_counter()
    centers = hex_centers(10, 10)  # 20 x 20 cells
    cells = sorted(centers)
    closest = math.inf
    checked = 0
    for a, b in itertools.combinations(cells, 2):
        if isbell_color(HexCell(*a)) != isbell_color(HexCell(*b)):
            continue
        checked += 1
        ca, cb = centers[a], centers[b]
        # two hexagons of circumradius 1/2 are at least (center distance - 1) apart
        if math.dist(ca, cb) - 1 > closest:
            continue
        closest = min(closest, hexagon_distance(ca, cb))
    elapsed = time.perf_counter() - start
    ok = closest > 1 and elapsed < 1.0
    report(2, ok, f"{len(cells)} cells, {checked} same-color pairs, min distance {closest:.4f}, {elapsed:.3f}s")


def test_03_three_approximation_certificate(report):
    start = time.perf_counter()
    rng = random.Random(2024)
    bad = []
    for i in range(300):
        n = rng.randint(1, 12)
        inst = gen_random_unit(n, rng.uniform(0.8, 4.0), i)
        chi = exact_subchromatic(build_intersection_graph(inst))[0]
        res = approx3_unit(inst)
        if res.coloring.num_colors > 3 * chi or res.lower_bound > chi:
            bad.append(i)
    elapsed = time.perf_counter() - start
    ok = not bad and elapsed < 300
    report(3, ok, f"300 unit instances n<=12: violations={bad}, {elapsed:.2f}s")


def test_04_gadget_suite(report):
    start = time.perf_counter()
    results = {}

    c5 = gen_gadget(GadgetSpec("c5"))
    sols = list(iter_subcolorings(c5, 2))
    results["a"] = bool(sols) and all(sum(s[u] == s[v] for u, v in c5.edges()) == 1 for s in sols)

    c4 = gen_gadget(GadgetSpec("c4"))
    sols = list(iter_subcolorings(c4, 2, {0: 0, 1: 0}))
    results["b"] = bool(sols) and all(s[2] == s[3] == 1 for s in sols)

    ok_c = True
    for k in (25, 27):
        f = gen_gadget(GadgetSpec("forbidding", k))
        ok_c &= decide_k_subcoloring(f, 2, {0: 0, 1: 0}) is None
        ok_c &= decide_k_subcoloring(f, 2, {0: 0, 1: 1}) is not None
    results["c"] = ok_c

    ok_d = True
    for n in (3, 4, 5):
        g = gen_gadget(GadgetSpec("matched_cliques", n))
        sols = list(iter_subcolorings(g, 2))
        ok_d &= bool(sols) and all(s[i] != s[n + i] for s in sols for i in range(n))
    results["d"] = ok_d

    k444 = gen_gadget(GadgetSpec("k444"))
    sols = list(iter_subcolorings(k444, 3))
    parts = [range(0, 4), range(4, 8), range(8, 12)]
    results["e"] = bool(sols) and all(
        all(len({s[v] for v in p}) == 1 for p in parts) and len({s[p[0]] for p in parts}) == 3 for s in sols
    )
    elapsed = time.perf_counter() - start
    ok = all(results.values()) and elapsed < 120
    report(4, ok, f"claims {results}, {elapsed:.2f}s")


def _delta_corpus():
    return [gen_random_delta(i % 60 + 1, (1.0, 10.0 ** (1 + i % 5)), 1000 + i) for i in range(100)]


def test_05_delta_geometry_lemmas(report):
    start = time.perf_counter()
    gap_bad = order_bad = mis_bad = 0
    for rep in _delta_corpus():
        ids = rep.ids
        n = len(ids)
        for u, v in itertools.combinations(ids, 2):
            if rep.adjacent(u, v):
                continue
            a, b = (u, v) if rep.d(u) < rep.d(v) else (v, u)
            da, db = rep.disk(a), rep.disk(b)
            if min(db.x, db.y) < max(da.x, da.y) + da.radius:
                gap_bad += 1
        prec = np.zeros((n, n), dtype=np.int64)
        for i, j in itertools.permutations(range(n), 2):
            prec[i, j] = cocomp_precedes(rep, ids[i], ids[j])
        adj = np.zeros((n, n), dtype=bool)
        for i, j in rep.graph.edges():
            adj[i, j] = adj[j, i] = True
        transitive = not np.any(((prec @ prec) > 0) & (prec == 0))
        antisymmetric = not np.any((prec == 1) & (prec.T == 1)) and not np.any(np.diag(prec))
        comparable = (prec + prec.T) > 0
        off = ~np.eye(n, dtype=bool)
        centers = [(d.x, d.y) for d in rep.disks]
        same = np.array([[centers[i] == centers[j] for j in range(n)] for i in range(n)])
        complement = np.array_equal(adj[off & ~same], ~comparable[off & ~same])
        if not (transitive and antisymmetric and complement):
            order_bad += 1
        res = delta_color_approx(rep)
        for layer, mis in zip(res.layers.layers, res.mis):
            if max_consecutive_mis_neighbors(rep, [ids[v] for v in layer], mis) >= 10:
                mis_bad += 1
    elapsed = time.perf_counter() - start
    ok = gap_bad == order_bad == mis_bad == 0 and elapsed < 120
    report(5, ok, f"100 delta instances: gap={gap_bad} order={order_bad} mis-run={mis_bad}, {elapsed:.2f}s")


def test_06_delta_colorings(report):
    start = time.perf_counter()
    bad_log = bad_approx = bad_k = small = 0
    for rep in _delta_corpus():
        n = len(rep)
        local = lambda c: {rep.pos[v]: col for v, col in c.colors.items()}
        c = delta_color_log(rep)
        if not validate_subcoloring(rep.graph, local(c)) or c.num_colors > 2 * math.ceil(math.log2(n)) + 1:
            bad_log += 1
        res = delta_color_approx(rep)
        if not validate_subcoloring(rep.graph, local(res.coloring)) or res.coloring.num_colors > 54 * res.k:
            bad_approx += 1
        if n <= 12:
            small += 1
            if res.k > exact_subchromatic(rep.graph)[0]:
                bad_k += 1
    elapsed = time.perf_counter() - start
    ok = bad_log == bad_approx == bad_k == 0 and elapsed < 120
    report(6, ok, f"log={bad_log} approx={bad_approx} k>chi={bad_k} (of {small} small), {elapsed:.2f}s")


def test_07_bc_family(report):
    start = time.perf_counter()
    status = {}
    for k in range(1, 7):
        g, inst = gen_bc(k)
        proper = not any(
            disk_contains_disk(a, b) or disk_contains_disk(b, a) for a, b in itertools.combinations(inst.disks, 2)
        )
        iso = build_intersection_graph(inst).adj == g.adj == bc_graph(k).adj
        status[k] = proper and iso
    chi3 = exact_subchromatic(bc_graph(3))[0]
    elapsed = time.perf_counter() - start
    ok = all(status.values()) and chi3 == 3 and elapsed < 60
    report(7, ok, f"proper+isomorphic {status}, chi_s(BC(3))={chi3}, {elapsed:.2f}s")


def test_08_interval_embedding(report):
    start = time.perf_counter()
    bad = []
    for i in range(200):
        ivs = gen_random_intervals(i % 50 + 1, 500 + i)
        rep = gen_interval_to_delta(ivs)
        if not validate_delta(rep.disks) or rep.graph.adj != ivs.graph().adj:
            bad.append(i)
    elapsed = time.perf_counter() - start
    ok = not bad and elapsed < 60
    report(8, ok, f"200 interval sets n<=50: failures={bad}, {elapsed:.2f}s")


def _disk_corpus():
    out = []
    for i in range(100):
        n = 5 * (i + 1)
        side = math.sqrt(n) * (1.5 + i % 4)
        out.append(gen_random_disks(n, (0.1, 1.0 + i % 7), (side, side), 3000 + i))
    return out


def test_09_decomposition_soundness(report):
    start = time.perf_counter()
    bad = []
    worst = 0.0
    for i, inst in enumerate(_disk_corpus()):
        n = len(inst)
        try:
            tree = decompose(inst, check=False)
            check_tree(tree)
            c = color_disk_log3(inst, tree)
            groups = {(d, e, t) for d, e, t, _ in tree.pieces()}
            if not all(validate_delta(piece.disks) for _, _, t, piece in tree.pieces() if t != 5):
                bad.append(i)
            g = build_intersection_graph(inst)
            if not validate_subcoloring(g, c) or c.num_colors > log3_bound(n) or len(groups) > group_bound(n):
                bad.append(i)
            worst = max(worst, c.num_colors / log3_bound(n))
        except AssertionError:
            bad.append(i)
    elapsed = time.perf_counter() - start
    ok = not bad and elapsed < 180
    report(9, ok, f"100 disk instances n<=500: failures={bad}, max colors/bound={worst:.3f}, {elapsed:.2f}s")


def test_10_disk_approximation(report):
    start = time.perf_counter()
    bad = []
    small = [gen_random_disks(1 + i % 12, (0.2, 2.0), (5.0, 5.0), 4000 + i) for i in range(60)]
    corpus = _disk_corpus() + small
    for i, inst in enumerate(corpus):
        n = len(inst)
        g = build_intersection_graph(inst)
        res = color_disk_approx(inst)
        if not validate_subcoloring(g, res.coloring):
            bad.append(i)
            continue
        if n <= 12:
            chi = exact_subchromatic(g)[0]
            if res.coloring.num_colors > group_bound(n) * 54 * chi or res.lower_bound > chi:
                bad.append(i)
    elapsed = time.perf_counter() - start
    ok = not bad and elapsed < 300
    report(10, ok, f"{len(corpus)} disk instances: failures={bad}, {elapsed:.2f}s")


def _pipeline(root):
    root.mkdir()
    files = {}
    steps = [
        ("unit", ["gen", "random-unit", "--n", "150", "--width", "8", "--seed", "7"], "unit3approx"),
        ("delta", ["gen", "random-delta", "--n", "80", "--seed", "7"], "delta-approx"),
        ("disk", ["gen", "random-disk", "--n", "120", "--rmin", "0.2", "--rmax", "3", "--width", "20", "--seed", "7"], "disk-approx"),
        ("bc", ["gen", "bc", "--k", "5"], "disk-log3"),
    ]
    codes = []
    for name, gen, algo in steps:
        inst, col, rep, svg = (root / f"{name}.{ext}" for ext in ("txt", "col", "report", "svg"))
        codes.append(run_cli([*gen, "--out", str(inst)]))
        codes.append(run_cli(["color", "--algo", algo, "--in", str(inst), "--out", str(col), "--report", str(rep)]))
        codes.append(run_cli(["verify", "--in", str(inst), "--coloring", str(col)]))
        codes.append(run_cli(["render", "--in", str(inst), "--coloring", str(col), "--out", str(svg)]))
    for p in sorted(root.iterdir()):
        files[p.name] = p.read_bytes()
    return codes, files


def test_11_cli_determinism(report, tmp_path, capsys):
    start = time.perf_counter()
    codes1, files1 = _pipeline(tmp_path / "first")
    codes2, files2 = _pipeline(tmp_path / "second")
    elapsed = time.perf_counter() - start
    capsys.readouterr()
    ok = set(codes1) == {0} and codes1 == codes2 and files1 == files2 and elapsed < 60
    report(11, ok, f"{len(files1)} files byte-identical={files1 == files2}, exit codes {sorted(set(codes1))}, {elapsed:.2f}s")
