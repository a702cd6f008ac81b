import pytest
from hypothesis import settings, strategies as st

from edgereg.graph import Graph, parse_graph6
from edgereg.verify import corpus_upto

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


@st.composite
def graphs(draw, min_n=0, max_n=8):
    n = draw(st.integers(min_n, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    keep = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph.from_edges(n, [e for e, k in zip(pairs, keep) if k])


@pytest.fixture(scope="session")
def corpus7():
    return [parse_graph6(s) for s in corpus_upto(7)]


@pytest.fixture(scope="session")
def corpus6():
    return [parse_graph6(s) for s in corpus_upto(6)]


@pytest.fixture
def three_k2():
    return Graph.matching(3)
