"""Acceptance criteria 1-12; each test prints one PASS/FAIL line."""
import random
import time
from collections import Counter

import networkx as nx
import pytest

from edgereg.betti import (
    dichotomy_check,
    graph_regularity,
    hochster_table,
    matching_bounds_check,
    regadd_check,
    splitting_check,
)
from edgereg.graph import Graph, complement, contract_edge, encode_graph6, induced_long_cycle, is_chordal, parse_graph6
from edgereg.homology import F0, F2, reduced_betti
from edgereg.ideal import SimplicialComplex, edge_ideal
from edgereg.surfaces import catalog
from edgereg.verify import (
    build_gadgets,
    certificate_bundle,
    corpus_run,
    corpus_upto,
    gadget_step_checks,
    is_vertex_minimal,
    load_corpus,
)


@pytest.fixture
def report(capsys):
    def emit(num, name, ok, detail=""):
        with capsys.disabled():
            print(f"\ncriterion {num:>2} {'PASS' if ok else 'FAIL'}: {name}" + (f" ({detail})" if detail else ""))
        assert ok, f"criterion {num} failed: {detail}"
    return emit


def test_c01_octahedron_anchor(report):
    t0 = time.perf_counter()
    g = Graph.matching(3)
    regs = [hochster_table(edge_ideal(g), f).regularity() for f in (F2, F0)]
    dt = time.perf_counter() - t0
    report(1, "reg(R/I(3K2)) = 3 over f2 and f0", regs == [3, 3] and dt < 1, f"regs {regs}, {dt:.3f}s")


def test_c02_froberg_reg_le_1(report, corpus7):
    t0 = time.perf_counter()
    bad = [encode_graph6(g) for g in corpus7 for f in (F0, F2)
           if (graph_regularity(g, f) <= 1) != is_chordal(complement(g))]
    dt = time.perf_counter() - t0
    report(2, "reg <= 1 iff complement chordal, n <= 7", not bad and dt < 300,
           f"{len(corpus7)} graphs, {len(bad)} exceptions, {dt:.1f}s")


def test_c03_froberg_reg_ge_2(report, corpus7):
    bad = [encode_graph6(g) for g in corpus7 for f in (F0, F2)
           if (graph_regularity(g, f) >= 2) != (induced_long_cycle(complement(g), 4) is not None)]
    report(3, "reg >= 2 iff induced C>=4 in complement, n <= 7", not bad, f"{len(bad)} exceptions")


def test_c04_main_equivalence(report, tmp_path):
    t0 = time.perf_counter()
    rep = corpus_run(corpus_upto(7))
    dt = time.perf_counter() - t0
    bad = [v for v in rep["verdicts"] if v.graph in set(rep["disagreements"])]
    for v in bad:
        (tmp_path / f"counterexample_{len(list(tmp_path.iterdir()))}.json").write_text(certificate_bundle(v))
    lit = rep["literal"]
    nondegenerate = sum(n for k, n in lit.items() if k.startswith("strict_") and k.split("_", 1)[1] in ("missed", "induced"))
    detail = (f"{rep['count']} graphs, induced reading: {len(bad)} disagreements, "
              f"{len(rep['indeterminates'])} indeterminate; literal subcomplex reading: "
              f"{lit['strict_disagreements']} disagreements = {lit.get('strict_tetrahedron', 0)} tetrahedron + "
              f"{lit.get('strict_non-induced', 0)} other non-induced, {nondegenerate} non-degenerate; {dt:.1f}s")
    ok = not bad and not rep["indeterminates"] and nondegenerate == 0 and dt < 1800
    report(4, "reg >= 3 iff surface in complement (f0 orientable, f2 any)", ok, detail)


@pytest.mark.parametrize("name, h2_f0, h2_f2, h1_f0, h1_f2", [
    ("octahedron", 1, 1, 0, 0),
    ("tetrahedron", 1, 1, 0, 0),
    ("csaszar-torus", 1, 1, 2, 2),
    ("rp2-6", 0, 1, 0, 1),
])
def test_c05_surface_homology(report, name, h2_f0, h2_f2, h1_f0, h1_f2):
    t0 = time.perf_counter()
    t = catalog()[name]
    d = SimplicialComplex(t.nverts, [sum(1 << v for v in tri) for tri in t.triangles])
    b0, b2 = reduced_betti(d, F0), reduced_betti(d, F2)
    got = (b0[3], b2[3], b0[2], b2[2])
    dt = time.perf_counter() - t0
    report(5, f"H2/H1 of {name}", got == (h2_f0, h2_f2, h1_f0, h1_f2) and dt < 1,
           f"H2 f0/f2 = {got[0]}/{got[1]}, H1 f0/f2 = {got[2]}/{got[3]}")


def test_c06_matching_sandwich(report, corpus7):
    bad = [encode_graph6(g) for g in corpus7 for f in (F0, F2) if not matching_bounds_check(g, f).ok]
    report(6, "im <= reg <= mat, n <= 7, both fields", not bad, f"{len(bad)} exceptions")


def test_c07_dichotomy(report, corpus6):
    tally, bad = Counter(), []
    for g in corpus6:
        for x in range(g.n):
            rep = dichotomy_check(edge_ideal(g), x, F0)
            tally[rep.verdict] += 1
            if rep.verdict == "neither":
                bad.append((encode_graph6(g), x))
    total = sum(tally.values())
    report(7, "reg = reg(G-x) or reg = reg(G_x)+1, n <= 6", not bad,
           f"{total} (graph, vertex) pairs, both {tally['both']} ({100 * tally['both'] / total:.1f}%), "
           f"deletion only {tally['deletion-branch']}, link only {tally['link-branch']}, neither {len(bad)}")


def test_c08_additivity(report):
    ideals = [edge_ideal(parse_graph6(s)) for s in corpus_upto(4)]
    ideals = [i for i in ideals if not i.is_zero()]
    bad = [(a, b) for a in ideals for b in ideals for f in (F0, F2) if not regadd_check(a, b, f)]
    report(8, "reg(I1 + I2) = reg I1 + reg I2 on disjoint variables", not bad,
           f"{len(ideals) ** 2} pairs, {len(bad)} exceptions")


def test_c09_betti_splitting(report, corpus6):
    checked, bad = 0, []
    for g in corpus6:
        i = edge_ideal(g)
        for x in range(g.n):
            rep = splitting_check(i, x, F0)
            if rep.degenerate or not rep.linear_iprime:
                continue
            checked += 1
            if not (rep.is_splitting and rep.reg_formula_ok and rep.pd_formula_ok):
                bad.append((encode_graph6(g), x))
    report(9, "x-partition splitting identity and reg/pd formulas", checked > 0 and not bad,
           f"{checked} (ideal, variable) cases with linear I', {len(bad)} exceptions")


def test_c10_gadgets(report):
    bases, runs, bad = [], 0, []
    for s in load_corpus(7):
        g = parse_graph6(s)
        if graph_regularity(g) == 3 and is_vertex_minimal(g):
            bases.append(s)
            for a in range(g.n):
                for b in range(a + 1, g.n):
                    if g.has_edge(a, b) or not g.adj[a] & g.adj[b]:
                        continue
                    runs += 1
                    bundle = build_gadgets(g, a, b)
                    rep = gadget_step_checks(bundle)
                    iso = nx.is_isomorphic(complement(bundle.h).to_networkx(),
                                           contract_edge(complement(g), (a, b)).to_networkx())
                    if not (rep["ok"] and iso):
                        bad.append((s, a, b))
    report(10, "gadget regularities, T1/T2 and contraction on minimal n = 7 bases", runs > 0 and not bad,
           f"bases {bases}, {runs} pairs, {len(bad)} exceptions")


def test_c11_engineering_target(report):
    rng = random.Random(2024)
    g = Graph.from_edges(14, [(u, v) for u in range(14) for v in range(u + 1, 14) if rng.random() < 0.5])
    t0 = time.perf_counter()
    t = hochster_table(edge_ideal(g), F2, workers=2)
    dt = time.perf_counter() - t0
    report(11, "full f2 Betti table, random 14-vertex graph", dt < 60,
           f"{dt:.2f}s, reg {t.regularity()}, pd {t.projective_dimension()}")


def test_c12_codec_roundtrip(report):
    lines = corpus_upto(7)
    bad = [s for s in lines if encode_graph6(parse_graph6(s)) != s]
    report(12, "graph6 round-trip on the vendored corpus", not bad, f"{len(lines)} lines, {len(bad)} mismatches")
