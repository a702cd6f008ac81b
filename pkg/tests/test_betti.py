from collections import Counter
from itertools import combinations

import pytest
from hypothesis import given

from edgereg.betti import (
    BettiTable,
    Budget,
    BudgetExceeded,
    dichotomy_check,
    graph_regularity,
    hochster_table,
    is_linear,
    matching_bounds_check,
    reg_interval,
    regadd_check,
    regularity_at_least,
    splitting_check,
)
from edgereg.graph import Graph, induced_subgraph, popcount
from edgereg.homology import F0, F2, reduced_betti
from edgereg.ideal import SquarefreeMonomialIdeal, edge_ideal, restrict, stanley_reisner_complex
from tests.conftest import graphs


def brute_hochster(ideal, field):
    """Plain Hochster sum over every subset, generic homology, no shortcuts."""
    d = stanley_reisner_complex(ideal)
    acc = Counter()
    for w in range(1 << ideal.nvars):
        j = popcount(w)
        for k, b in enumerate(reduced_betti(restrict(d, w), field)):
            if b:
                acc[(j - k, j)] += b  # entry k is H̃_{k-1}, so i = j - k
    return dict(acc)


@pytest.mark.parametrize("g, entries", [
    (Graph.path(2), {(0, 0): 1, (1, 2): 1}),
    (Graph.cycle(4), {(0, 0): 1, (1, 2): 4, (2, 3): 4, (3, 4): 1}),
    (Graph.cycle(5), {(0, 0): 1, (1, 2): 5, (2, 3): 5, (3, 5): 1}),
    (Graph.matching(3), {(0, 0): 1, (1, 2): 3, (2, 4): 3, (3, 6): 1}),
    (Graph.empty(3), {(0, 0): 1}),
])
def test_known_tables(g, entries):
    for f in (F0, F2):
        assert hochster_table(edge_ideal(g), f).entries == entries


@given(graphs(max_n=6))
def test_engine_matches_brute_force(g):
    i = edge_ideal(g)
    assert hochster_table(i, F2).entries == brute_hochster(i, F2)


def test_engine_matches_brute_force_non_edge_ideal():
    i = SquarefreeMonomialIdeal(5, [(0, 1, 2), (2, 3), (1, 3, 4)])
    for f in (F0, F2):
        assert hochster_table(i, f).entries == brute_hochster(i, f)


@given(graphs(max_n=7))
def test_canonical_memo_same_table(g):
    i = edge_ideal(g)
    assert hochster_table(i, F2, canonical=True).entries == hochster_table(i, F2).entries


def test_parallel_matches_serial():
    g = Graph.from_edges(10, [(u, (u * 3 + 1) % 10) for u in range(10) if u != (u * 3 + 1) % 10])
    i = edge_ideal(g)
    assert hochster_table(i, F2, workers=2).entries == hochster_table(i, F2).entries


def test_budget_and_cap():
    i = edge_ideal(Graph.cycle(8))
    with pytest.raises(BudgetExceeded) as exc:
        hochster_table(i, F2, budget=Budget(max_subsets=10))
    assert exc.value.processed == 10
    assert isinstance(exc.value.partial, BettiTable)
    with pytest.raises(ValueError):
        hochster_table(edge_ideal(Graph.cycle(8)), F2, max_vars=6)


def test_table_views():
    t = hochster_table(edge_ideal(Graph.cycle(5)), F0)
    assert t.regularity() == 2 and t.projective_dimension() == 3
    assert t.ideal_entries() == {(0, 2): 5, (1, 3): 5, (2, 5): 1}
    assert t.get(3, 5) == 1 and t.get(9, 9) == 0
    assert BettiTable.from_json(t.to_json()).entries == t.entries
    assert "total:" in t.to_text()


def test_zero_ideal_table():
    t = hochster_table(SquarefreeMonomialIdeal(4), F0)
    assert t.entries == {(0, 0): 1}
    assert t.regularity() == 0 and t.projective_dimension() == 0


@given(graphs(max_n=7))
def test_regularity_at_least(g):
    r = graph_regularity(g, F0)
    assert regularity_at_least(edge_ideal(g), r, F0)
    assert not regularity_at_least(edge_ideal(g), r + 1, F0)


@given(graphs(max_n=7))
def test_matching_sandwich(g):
    assert matching_bounds_check(g, F2).ok


@given(graphs(max_n=7))
def test_reg_interval_contains_reg(g):
    iv = reg_interval(g)
    assert iv.lo <= graph_regularity(g, F0) <= iv.hi


def test_dichotomy_examples():
    rep = dichotomy_check(edge_ideal(Graph.cycle(5)), 0)
    assert rep.bound_ok and rep.verdict in ("both", "deletion-branch", "link-branch")
    z = dichotomy_check(SquarefreeMonomialIdeal(3), 0)
    assert z.degenerate and z.verdict == "deletion-branch"


def test_splitting_examples():
    rep = splitting_check(edge_ideal(Graph.cycle(4)), 0)
    assert not rep.degenerate and rep.linear_iprime
    assert rep.is_splitting and rep.reg_formula_ok and rep.pd_formula_ok
    assert splitting_check(edge_ideal(Graph.from_edges(3, [(1, 2)])), 0).degenerate


def test_is_linear():
    assert is_linear(hochster_table(edge_ideal(Graph.cycle(4)), F0))
    assert not is_linear(hochster_table(edge_ideal(Graph.cycle(5)), F0))


def test_regadd():
    a, b = edge_ideal(Graph.cycle(5)), edge_ideal(Graph.path(2))
    assert regadd_check(a, b)
    with pytest.raises(ValueError):
        regadd_check(a, SquarefreeMonomialIdeal(2))


def test_subgraph_monotone_small():
    g = Graph.cycle(6)
    r = graph_regularity(g)
    for k in range(1, g.n):
        for w in combinations(range(g.n), k):
            assert graph_regularity(induced_subgraph(g, w)) <= r
