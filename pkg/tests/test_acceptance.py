"""Acceptance criteria 1-8, one test each; every test prints a PASS/FAIL line.

Run on its own with ``pytest tests/test_acceptance.py -v`` (the lines are
printed with capture disabled) or as a script.
"""

import json
import math
import random
import sys
import time
from pathlib import Path

import networkx as nx
import pytest

sys.path.insert(0, str(Path(__file__).parent))

import oracles  # noqa: E402
from boxdom.cli import main  # noqa: E402
from boxdom.corpus import all_graphs, connected_graphs  # noqa: E402
from boxdom.domination import enumerate_m, gamma_bruteforce, gamma_exact, is_minimal_dominating_containing  # noqa: E402
from boxdom.graph import VertexSet, cartesian_product, parse_graph6, path_graph  # noqa: E402
from boxdom.harness import SweepConfig, dump_text, hunt_conjecture, load_dump, sweep  # noqa: E402
from boxdom.hypothesis import layer_projections, proper_two_covers  # noqa: E402

SWEEP_FACTORS = ["connected:1-4"]
PAIRS_N4 = ["all:1-4"]


def verdict(capsys, number, ok, detail):
    line = f"{'PASS' if ok else 'FAIL'} criterion {number}: {detail}"
    if capsys is None:
        print(line)
    else:
        with capsys.disabled():
            print("\n" + line)
    assert ok, line


@pytest.fixture(scope="module")
def criterion3_report():
    start = time.perf_counter()
    report = sweep(SweepConfig(factors=SWEEP_FACTORS, replay="all"))
    return report, time.perf_counter() - start


def test_criterion1_gamma_oracle(capsys):
    start = time.perf_counter()
    connected = connected_graphs(7)
    atlas_connected = [g for g in nx.graph_atlas_g()[1:] if nx.is_connected(g)]
    assert len(connected) == len(atlas_connected) == 996
    assert sum(1 for g in connected if g.n == 7) == 853
    rng = random.Random(7)
    randoms = [oracles.random_graph(rng, rng.randint(1, 10)) for _ in range(200)]
    mismatches = [g for g in connected + randoms if gamma_exact(g).gamma != gamma_bruteforce(g)]
    elapsed = time.perf_counter() - start
    ok = not mismatches and elapsed < 60
    verdict(capsys, 1, ok, f"{len(connected)} connected graphs n<=7 + 200 random n<=10, "
                           f"{len(mismatches)} mismatches, {elapsed:.1f}s (< 60s)")


def test_criterion2_path_formula(capsys):
    rows = [(n, gamma_exact(path_graph(n)).gamma, gamma_bruteforce(path_graph(n))) for n in range(1, 13)]
    bad = [r for r in rows if not (r[1] == r[2] == math.ceil(r[0] / 3))]
    verdict(capsys, 2, not bad, f"gamma(P_n) = ceil(n/3) for n=1..12 with brute-force expectations; bad={bad}")


def _rebuild_cells(g_adj, dominators):
    cells = [set() for _ in dominators]
    for v in range(len(g_adj)):
        for i, gi in enumerate(dominators):
            if v in oracles.closed_nbhd(g_adj, gi):
                cells[i].add(v)
                break
    return cells


def test_criterion3_certificate_sweep(capsys, criterion3_report):
    report, elapsed = criterion3_report
    t = report["tallies"]
    assert t["pairs"] == 100 and t["pairs_skipped"] == 0 and t["pairs_failed"] == 0
    checked = 0
    problems = []
    for rec in report["pairs"]:
        g, h = parse_graph6(rec["g6_G"]), parse_graph6(rec["g6_H"])
        ga, ha = oracles.adjacency(g), oracles.adjacency(h)
        gamma_g, gamma_h = oracles.gamma(ga), oracles.gamma(ha)
        pa = oracles.product_adjacency(g, h)
        gamma_p = oracles.gamma(pa)
        min_g = oracles.minimum_sets(ga)
        want_sets = sorted(sorted(s) for s in oracles.minimum_sets(pa))
        got_sets = sorted(sorted(a + b * g.n for a, b in s["d"]) for s in rec["sets"])
        if (rec["gamma_G"], rec["gamma_H"], rec["gamma_product"]) != (gamma_g, gamma_h, gamma_p):
            problems.append(("gamma", rec["index"]))
        if got_sets != want_sets:
            problems.append(("sets", rec["index"]))
        if not (2 * gamma_p >= gamma_g * gamma_h and gamma_p >= gamma_g * gamma_h):
            problems.append(("product bound", rec["index"]))
        for s in rec["sets"]:
            d = {a + b * g.n for a, b in s["d"]}
            if {tuple(c["dominators"]) for c in s["cs_certificate"]} != {tuple(sorted(m)) for m in min_g}:
                problems.append(("partitions", rec["index"]))
            for cert in s["cs_certificate"]:
                cells = _rebuild_cells(ga, cert["dominators"])
                und = oracles.undominated_cells(ga, ha, d, cells)
                n = [sum(1 for i, _ in und if i == c) for c in range(len(cells))]
                m = [sum(1 for _, hv in und if hv == layer) for layer in range(h.n)]
                if (n, m) != (cert["n"], cert["m"]):
                    problems.append(("counts", rec["index"]))
                for i, cell in enumerate(cells):
                    if sum(1 for v in d if v % g.n in cell) + n[i] < gamma_h:
                        problems.append(("per-i", rec["index"], i))
                for layer in range(h.n):
                    if sum(1 for v in d if v // g.n == layer) < m[layer]:
                        problems.append(("per-h", rec["index"], layer))
                checked += 1
    ok = not problems and not report["violations"] and elapsed < 600
    verdict(capsys, 3, ok, f"{t['pairs']} pairs, {t['sets']} minimum sets, {checked} certificates re-derived, "
                           f"{len(problems)} violations, sweep {elapsed:.1f}s (< 600s)")


def test_criterion4_membership(capsys):
    rng = random.Random(4)
    graphs = all_graphs(7)
    assert len(graphs) == len(nx.graph_atlas_g()) - 1
    disagreements, positives, total = 0, 0, 0
    for g in graphs:
        adj = oracles.adjacency(g)
        for trial in range(50):
            x = {v for v in range(g.n) if rng.random() < 0.3}
            if trial % 2:
                members = enumerate_m(g, VertexSet.of(g.n, x))
                d = set(rng.choice(members).members)
            else:
                d = x | {v for v in range(g.n) if rng.random() < 0.4}
            got = is_minimal_dominating_containing(g, VertexSet.of(g.n, d), VertexSet.of(g.n, x))
            want = oracles.minimal_containing(adj, d, x)
            disagreements += got != want
            positives += want
            total += 1
    verdict(capsys, 4, disagreements == 0,
            f"{len(graphs)} graphs x 50 X = {total} checks ({positives} members), {disagreements} disagreements")


def test_criterion5_replay_soundness(capsys, criterion3_report):
    report, _ = criterion3_report
    missing, failed, one_set, two_set = [], [], 0, 0
    for rec in report["pairs"]:
        g, h = parse_graph6(rec["g6_G"]), parse_graph6(rec["g6_H"])
        p = cartesian_product(g, h)
        target = rec["gamma_G"] * rec["gamma_H"]
        for s in rec["sets"]:
            d = p.set_of(tuple(pair) for pair in s["d"])
            proper = proper_two_covers(g, layer_projections(p, d))
            t1 = [r for r in s["replay"] if r["theorem"] == "theorem1"]
            t2 = [r for r in s["replay"] if r["theorem"] == "theorem_main" and not r["delegated"]]
            if s["hypothesis_flags"]["k_cover"]["1"] and not t1:
                missing.append((rec["index"], "theorem1"))
            if len(t2) != len(proper):
                missing.append((rec["index"], "theorem_main"))
            for r in s["replay"]:
                if r["final_verdict"] != "pass" or r["bound_lhs"] < r["bound_rhs"] or r["bound_rhs"] != target:
                    failed.append(rec["index"])
            one_set += len(t1)
            two_set += len(t2)
    ok = not missing and not failed and "fatal" not in report
    verdict(capsys, 5, ok, f"{one_set} one-set and {two_set} two-set replays (T1, T2 nonempty) passed, "
                           f"{len(missing)} missing, {len(failed)} failed, 0 StepFailed")


def test_criterion6_proved_hunts_empty(capsys, tmp_path):
    counts = {}
    for k in (1, 2):
        result = hunt_conjecture(SweepConfig(factors=PAIRS_N4, dump_dir=str(tmp_path)), k)
        counts[k] = (result["pairs_checked"], len(result["candidates"]))
    ok = all(c == 0 for _, c in counts.values()) and all(n == 18 * 18 for n, _ in counts.values())
    verdict(capsys, 6, ok, f"hunt over all pairs n<=4: k=1 {counts[1][1]} hits, k=2 {counts[2][1]} hits "
                           f"({counts[1][0]} pairs)")


def test_criterion7_three_set_probe(capsys, tmp_path):
    result = hunt_conjecture(SweepConfig(factors=PAIRS_N4, dump_dir=str(tmp_path)), 3)
    cands = result["candidates"]
    bad = []
    for c in cands:
        path = tmp_path / f"candidate-k3-pair{c['pair_index']}-set{c['set_index']}.json"
        text = path.read_text()
        if dump_text(load_dump(path).raw) != text or dump_text(c) != text:
            bad.append(path.name)
        if main(["classify", "--load", str(path), "--out", str(tmp_path / "c.json")]) != 0:
            bad.append(path.name)
    verdict(capsys, 7, not bad, f"k=3 hunt over {result['pairs_checked']} pairs completed, "
                                f"{len(cands)} candidate(s), {len(bad)} dump problems")


def test_criterion8_determinism(capsys, tmp_path):
    cfg = tmp_path / "sweep.cfg"
    cfg.write_text(json.dumps({"factors": SWEEP_FACTORS, "replay": "all"}))
    outs = {}
    for jobs in (1, 8):
        out = tmp_path / f"jobs{jobs}.json"
        assert main(["sweep", "--config", str(cfg), "--jobs", str(jobs), "--out", str(out)]) == 0
        outs[jobs] = out.read_bytes()
    same = outs[1] == outs[8]
    verdict(capsys, 8, same, f"--jobs 1 and --jobs 8 reports byte-identical ({len(outs[1])} bytes)")


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
