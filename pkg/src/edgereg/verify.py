"""Harness comparing the surface characterization of ``reg >= 3`` with Hochster's formula.

Two readings of "``G^c`` contains a triangulated closed surface" are checked:

``induced``
    some vertex set ``W`` whose clique complex in ``G^c`` *is* a closed
    surface (vertex links in ``G^c_{|W}`` are induced cycles of length >= 4);
``subcomplex``
    some set of triangles of the clique complex of ``G^c`` forms a closed
    surface, with no condition on the other faces over its vertices.

Only the induced reading can be expected to match: under the subcomplex
reading any graph whose complement contains ``K4`` (tetrahedron) or ``K5``
minus an edge (bipyramid) already qualifies, whatever its regularity.
Verdicts record both, and literal disagreements are classified by the shape
of the surface that triggered them.
"""
from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from importlib import resources
from typing import Iterable, Iterator, Optional

from .betti import graph_regularity, hochster_table
from .graph import (
    Graph,
    GraphFormatError,
    bits,
    complement,
    contract_edge,
    delete_vertex,
    encode_graph6,
    g_sub_x,
    has_anticycle,
    induced_long_cycle,
    induced_matching_number,
    is_anticycle,
    parse_graph6,
)
from .homology import F0, F2, FieldSpec
from .ideal import SquarefreeMonomialIdeal, add_variable, edge_ideal, intersect
from .surfaces import (
    SearchCapExceeded,
    SearchCaps,
    SurfaceCertificate,
    find_induced_surface,
    find_surface_subcomplex,
    theorem_host,
)


def load_corpus(n: int) -> list[str]:
    """graph6 lines of every graph on ``n`` vertices (``0 <= n <= 7``), vendored."""
    text = resources.files("edgereg").joinpath(f"corpus/graph{n}.g6").read_text()
    return [ln for ln in text.splitlines() if ln]


def corpus_upto(nmax: int) -> list[str]:
    return [s for n in range(nmax + 1) for s in load_corpus(n)]


# --- predicates ------------------------------------------------------------

def theorem_predicate(g: Graph, char_two: bool, caps: Optional[SearchCaps] = None, *,
                      mode: str = "subcomplex", exclude_tetrahedra: bool = False):
    """``(holds, certificate)``; ``holds`` is ``None`` when the search was cut off.

    ``char_two`` drops the orientability requirement.
    """
    need_orientable = not char_two
    if mode == "induced":
        cert = find_induced_surface(complement(g), need_orientable)
        return cert is not None, cert
    if mode != "subcomplex":
        raise ValueError(f"unknown predicate mode {mode!r}")
    try:
        cert = find_surface_subcomplex(theorem_host(g), need_orientable, caps,
                                       exclude_tetrahedra=exclude_tetrahedra)
    except SearchCapExceeded:
        return None, None
    return cert is not None, cert


def reg_ge3_oracle(g: Graph, field: FieldSpec = F0) -> bool:
    """``reg(R/I(G)) >= 3`` from the Hochster table."""
    from .betti import regularity_at_least

    return regularity_at_least(edge_ideal(g), 3, field)


def _agree(reg: int, pred: Optional[bool]) -> Optional[bool]:
    return None if pred is None else (reg >= 3) == pred


@dataclass
class Verdict:
    graph: str
    n: int
    reg_f0: int
    reg_f2: int
    predicate_orientable: Optional[bool]
    predicate_any_surface: Optional[bool]
    agree_f0: Optional[bool]
    agree_f2: Optional[bool]
    certificate: Optional[SurfaceCertificate]
    literal: dict = field(default_factory=dict)
    reg_f0_exact: Optional[int] = None
    timings: dict = field(default_factory=dict)

    @property
    def agrees(self) -> bool:
        return bool(self.agree_f0) and bool(self.agree_f2)

    @property
    def indeterminate(self) -> bool:
        return self.agree_f0 is None or self.agree_f2 is None

    def to_json(self, timings: bool = False) -> dict:
        out = {
            "graph": self.graph,
            "n": self.n,
            "reg_f0": self.reg_f0,
            "reg_f2": self.reg_f2,
            "field_f0": F0.label,
            "semantics": "induced",
            "predicate_orientable": self.predicate_orientable,
            "predicate_any_surface": self.predicate_any_surface,
            "agree_f0": self.agree_f0,
            "agree_f2": self.agree_f2,
            "certificate": self.certificate.to_json() if self.certificate else None,
            "literal": self.literal,
        }
        if self.reg_f0_exact is not None:
            out["reg_f0_exact"] = self.reg_f0_exact
        if timings:
            out["timings"] = self.timings
        return out


def _classify_literal(reg: int, holds: Optional[bool], cert: Optional[SurfaceCertificate],
                      host: Graph) -> Optional[str]:
    from .surfaces import is_induced_in

    if holds is None or (reg >= 3) == holds:
        return None
    if not holds:
        return "missed"
    if len(cert.triangles.vertices()) == 4:
        return "tetrahedron"
    return "non-induced" if not is_induced_in(cert, host) else "induced"


def verify_main(g: Graph, caps: Optional[SearchCaps] = None, *, exact: bool = False) -> Verdict:
    t0 = time.perf_counter()
    reg0 = graph_regularity(g, F0)
    reg2 = graph_regularity(g, F2)
    t1 = time.perf_counter()
    p_or, cert_or = theorem_predicate(g, False, caps, mode="induced")
    p_any, cert_any = theorem_predicate(g, True, caps, mode="induced")
    t2 = time.perf_counter()
    host = complement(g)
    lit = {}
    for key, char_two, reg in (("orientable", False, reg0), ("any_surface", True, reg2)):
        holds, cert = theorem_predicate(g, char_two, caps)
        holds_nt, cert_nt = theorem_predicate(g, char_two, caps, exclude_tetrahedra=True)
        lit[key] = holds
        lit[key + "_no_tetrahedron"] = holds_nt
        lit["agree_" + ("f0" if not char_two else "f2")] = _agree(reg, holds)
        lit["class_" + ("f0" if not char_two else "f2")] = _classify_literal(reg, holds, cert, host)
        lit["class_no_tetrahedron_" + ("f0" if not char_two else "f2")] = _classify_literal(reg, holds_nt, cert_nt, host)
        if holds and cert is not None:
            lit["certificate_" + key] = cert.to_json()
    t3 = time.perf_counter()
    v = Verdict(
        graph=encode_graph6(g), n=g.n, reg_f0=reg0, reg_f2=reg2,
        predicate_orientable=p_or, predicate_any_surface=p_any,
        agree_f0=_agree(reg0, p_or), agree_f2=_agree(reg2, p_any),
        certificate=cert_any, literal=lit,
        timings={"oracle": t1 - t0, "induced": t2 - t1, "literal": t3 - t2},
    )
    if exact:
        v.reg_f0_exact = hochster_table(edge_ideal(g), FieldSpec("f0exact")).regularity()
    return v


# --- corpus runs -------------------------------------------------------------

@dataclass
class CorpusFilters:
    min_n: Optional[int] = None
    max_n: Optional[int] = None
    min_reg: Optional[int] = None


def _literal_tally(verdicts: list[Verdict]) -> dict:
    tally = {"strict_disagreements": 0, "no_tetrahedron_disagreements": 0}
    for v in verdicts:
        for f in ("f0", "f2"):
            c = v.literal.get("class_" + f)
            if c:
                tally["strict_disagreements"] += 1
                tally[f"strict_{c}"] = tally.get(f"strict_{c}", 0) + 1
            c = v.literal.get("class_no_tetrahedron_" + f)
            if c:
                tally["no_tetrahedron_disagreements"] += 1
                tally[f"no_tetrahedron_{c}"] = tally.get(f"no_tetrahedron_{c}", 0) + 1
    return tally


def corpus_run(source: Iterable[str], caps: Optional[SearchCaps] = None,
               filters: Optional[CorpusFilters] = None, workers: int = 1) -> dict:
    """Verdicts for every graph6 line; parse errors are reported per line."""
    filters = filters or CorpusFilters()
    graphs, errors = [], []
    for lineno, line in enumerate(source, 1):
        line = line.strip()
        if not line:
            continue
        try:
            g = parse_graph6(line)
        except GraphFormatError as exc:
            errors.append({"line": lineno, "error": str(exc)})
            continue
        if filters.min_n is not None and g.n < filters.min_n:
            continue
        if filters.max_n is not None and g.n > filters.max_n:
            continue
        graphs.append(g)
    if workers > 1 and len(graphs) > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=workers) as pool:
            verdicts = list(pool.map(verify_main, graphs, [caps] * len(graphs), chunksize=16))
    else:
        verdicts = [verify_main(g, caps) for g in graphs]
    if filters.min_reg is not None:
        verdicts = [v for v in verdicts if v.reg_f0 >= filters.min_reg]
    minimal = []
    for v in verdicts:
        if v.reg_f0 >= 3:
            g = parse_graph6(v.graph)
            if is_vertex_minimal(g, F0):
                minimal.append({"graph": v.graph, "n": g.n, "reg": v.reg_f0, "im": induced_matching_number(g)})
    return {
        "count": len(verdicts),
        "verdicts": verdicts,
        "disagreements": [v.graph for v in verdicts if not v.indeterminate and not v.agrees],
        "indeterminates": [v.graph for v in verdicts if v.indeterminate],
        "errors": errors,
        "literal": _literal_tally(verdicts),
        "minimal_reg3": minimal,
    }


def summary_json(report: dict) -> dict:
    out = {k: v for k, v in report.items() if k != "verdicts"}
    out["reg_histogram_f0"] = {}
    for v in report["verdicts"]:
        key = str(v.reg_f0)
        out["reg_histogram_f0"][key] = out["reg_histogram_f0"].get(key, 0) + 1
    return out


def certificate_bundle(v: Verdict, caps: Optional[SearchCaps] = None) -> str:
    """JSON counterexample file: graph, both Betti tables, and the surface evidence."""
    g = parse_graph6(v.graph)
    caps = caps or SearchCaps()
    return json.dumps({
        "graph": v.graph,
        "betti_f0": hochster_table(edge_ideal(g), F0).to_json(),
        "betti_f2": hochster_table(edge_ideal(g), F2).to_json(),
        "verdict": v.to_json(),
        "surface": v.certificate.to_json() if v.certificate else {
            "absent": "exhaustive search over induced vertex sets found no flag surface",
            "caps": {"max_nodes": caps.max_nodes, "max_triangles": caps.max_triangles},
        },
    }, indent=2, sort_keys=True)


# --- proof re-enactment ------------------------------------------------------

def is_vertex_minimal(g: Graph, field: FieldSpec = F0) -> bool:
    """``reg >= 3`` but every single-vertex deletion has ``reg <= 2``."""
    if graph_regularity(g, field) < 3:
        return False
    return all(graph_regularity(delete_vertex(g, x), field) <= 2 for x in range(g.n))


def common_neighbor_pair(g: Graph) -> Optional[tuple[int, int]]:
    """Lexicographically first non-adjacent pair with a common neighbour."""
    for a in range(g.n):
        for b in range(a + 1, g.n):
            if not g.has_edge(a, b) and g.adj[a] & g.adj[b]:
                return a, b
    return None


def extend_with_dominating_vertex(g: Graph, u1: int, u2: int, skip: int = 0, label: str = "v3") -> Graph:
    """Append one vertex adjacent to every vertex except ``u1``, ``u2`` (and ``skip``)."""
    if u1 == u2:
        raise ValueError("u1 and u2 must differ")
    nb = g.vertex_mask & ~(1 << u1) & ~(1 << u2) & ~skip
    n = g.n
    adj = [a | ((nb >> v & 1) << n) for v, a in enumerate(g.adj)] + [nb]
    return Graph(n + 1, adj, list(g.labels) + [label])


def _index(g: Graph, label: str) -> int:
    return g.labels.index(label)


@dataclass
class GadgetBundle:
    base: Graph
    a: int
    b: int
    gprime: Graph
    gdoubleprime: Graph
    gtripleprime: Graph
    h: Graph
    v1: int
    v2: int


def build_gadgets(g: Graph, a: int, b: int) -> GadgetBundle:
    """``G'`` adds adjacent ``v1, v2`` joined to ``N(a) ∩ N(b)``; then delete ``b``, ``a``, ``v2``."""
    if g.has_edge(a, b) or a == b:
        raise ValueError(f"({a}, {b}) must be a non-adjacent pair")
    common = g.adj[a] & g.adj[b]
    if not common:
        raise ValueError(f"{a} and {b} have no common neighbour")
    base = Graph(g.n, g.adj, [f"x{i + 1}" for i in range(g.n)])
    n = g.n
    v1, v2 = n, n + 1
    adj = [x | ((common >> v & 1) << v1) | ((common >> v & 1) << v2) for v, x in enumerate(base.adj)]
    adj += [common | 1 << v2, common | 1 << v1]
    gp = Graph(n + 2, adj, list(base.labels) + ["v1", "v2"])
    gpp = delete_vertex(gp, b)
    gppp = delete_vertex(gpp, _index(gpp, base.labels[a]))
    h = delete_vertex(gppp, _index(gppp, "v2"))
    contracted = contract_edge(complement(base), (a, b))
    if complement(h) != contracted:
        raise AssertionError("complement of H differs from the contraction of {a, b} in G^c")
    return GadgetBundle(base, a, b, gp, gpp, gppp, h, v1, v2)


def _check(value, claimed) -> dict:
    return {"value": value, "claimed": claimed, "ok": value == claimed}


def gadget_step_checks(bundle: GadgetBundle, field: FieldSpec = F0) -> dict:
    """Recompute every regularity the reduction steps assert, on this instance."""
    base = bundle.base
    if graph_regularity(base, field) != 3 or not is_vertex_minimal(base, field):
        raise ValueError("gadget checks need a vertex-minimal graph with reg = 3")
    reg = lambda g: graph_regularity(g, field)
    a_lab, b_lab = base.labels[bundle.a], base.labels[bundle.b]
    out = {
        "pair": [bundle.a, bundle.b],
        "step2_gprime": _check(reg(bundle.gprime), 3),
        "step3_gdoubleprime": _check(reg(bundle.gdoubleprime), 3),
        "step4_gtripleprime": _check(reg(bundle.gtripleprime), 3),
        "step5_h": _check(reg(bundle.h), 3),
    }

    ga = g_sub_x(base, bundle.a)
    b_in_ga = _index(ga, b_lab)
    if has_anticycle(delete_vertex(ga, b_in_ga)):
        out["case"] = "4a"
    else:
        out["case"] = "4b"
        cyc = induced_long_cycle(complement(ga), 4)
        k = cyc.index(b_in_ga)
        u1_lab, u2_lab = ga.labels[cyc[k - 1]], ga.labels[cyc[(k + 1) % len(cyc)]]
        gpp = bundle.gdoubleprime
        out["case4b_u"] = [u1_lab, u2_lab]
        # literal: v3 sees all of V(G) but u1, u2, hence also a; variant: v3 misses a too
        for key, extra in (("case4b", ()), ("case4b_v3_misses_a", (a_lab,))):
            skip = 0
            for lab in ("v1", "v2") + extra:
                skip |= 1 << _index(gpp, lab)
            gbar = extend_with_dominating_vertex(gpp, _index(gpp, u1_lab), _index(gpp, u2_lab), skip)
            a_bar = _index(gbar, a_lab)
            out[key] = {
                "gbar": _check(reg(gbar), 3),
                "link_a_shifted": _check(reg(g_sub_x(gbar, a_bar)) + 1, 4),
                "gbar_minus_a": _check(reg(delete_vertex(gbar, a_bar)), 3),
            }
            out[key]["ok"] = all(c["ok"] for c in out[key].values())

    g3, h = bundle.gtripleprime, bundle.h
    v2 = _index(g3, "v2")
    t1 = intersect(add_variable(edge_ideal(g3), v2),
                   SquarefreeMonomialIdeal(g3.n, [(1 << v2) | (1 << w) for w in bits(g3.adj[v2])]))
    v1 = _index(h, "v1")
    t2 = intersect(add_variable(edge_ideal(h), v1),
                   SquarefreeMonomialIdeal(h.n, [(1 << v1) | (1 << w) for w in bits(h.adj[v1])]))
    r1 = hochster_table(t1, field).regularity()
    r2 = hochster_table(t2, field).regularity()
    out["step5_T"] = {"reg_T1": r1, "reg_T2": r2, "ok": r1 == r2}
    out["step7_contraction"] = {"ok": complement(h) == contract_edge(complement(base), (bundle.a, bundle.b))}
    # headline: the regularities of G', G'', G''', H and the T1/T2 equality
    out["ok"] = all(v["ok"] for k, v in out.items() if k.startswith("step"))
    return out


def anticycle_link_check(g: Graph, field: FieldSpec = F0) -> dict:
    """For each vertex ``x``: ``reg(G_x)`` and whether ``G_x`` is an anticycle."""
    if graph_regularity(g, field) != 3 or not is_vertex_minimal(g, field):
        raise ValueError("anticycle check needs a vertex-minimal graph with reg = 3")
    rows = []
    for x in range(g.n):
        gx = g_sub_x(g, x)
        rows.append({"vertex": x, "reg": graph_regularity(gx, field),
                     "anticycle": is_anticycle(gx, gx.vertex_mask)})
    return {"vertices": rows, "ok": all(r["reg"] == 2 and r["anticycle"] for r in rows)}


def minimal_reg3_graphs(nmax: int, field: FieldSpec = F0) -> Iterator[Graph]:
    for s in corpus_upto(nmax):
        g = parse_graph6(s)
        if g.n >= 6 and is_vertex_minimal(g, field):
            yield g
