import numpy as np
import pytest
from hypothesis import strategies as st

from centra.graph import WeightedDigraph, WeightKind

_ACCEPTANCE = []


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(number, text): exit criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is not None and (report.when == "call" or report.outcome != "passed"):
        _ACCEPTANCE.append((marker.args[0], marker.args[1], report.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    merged = {}
    for number, text, outcome in _ACCEPTANCE:
        ok = merged.get(number, (text, True))[1] and outcome == "passed"
        merged[number] = (text, ok)
    for number, (text, ok) in sorted(merged.items()):
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] {number:>2}. {text}")


def random_small_graph(rng, n=None, directed=None, integer_weights=None, kind=WeightKind.DISSIMILARITY):
    """Random graph on at most 7 nodes; integer weights make exact ties common."""
    n = int(rng.integers(2, 8)) if n is None else n
    directed = bool(rng.integers(2)) if directed is None else directed
    integer_weights = bool(rng.integers(2)) if integer_weights is None else integer_weights
    density = rng.uniform(0.2, 0.9)

    def draw():
        return float(rng.integers(1, 4)) if integer_weights else float(rng.uniform(0.5, 1.5))

    edges = []
    for u in range(n):
        for v in range(n):
            if u == v or (not directed and v < u):
                continue
            if rng.random() < density:
                w = draw()
                edges.append((u, v, w))
                if not directed:
                    edges.append((v, u, w))
    return WeightedDigraph.from_edges(n, edges, kind)


@st.composite
def small_graphs(draw, min_n=2, max_n=7, symmetric=False, kind=WeightKind.DISSIMILARITY, integer_weights=False):
    n = draw(st.integers(min_n, max_n))
    weight = st.integers(1, 3).map(float) if integer_weights else st.floats(0.25, 4.0)
    pairs = [(u, v) for u in range(n) for v in range(n) if u != v and (not symmetric or u < v)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    edges = []
    for u, v in chosen:
        w = draw(weight)
        edges.append((u, v, w))
        if symmetric:
            edges.append((v, u, w))
    return WeightedDigraph.from_edges(n, edges, kind)


@st.composite
def graph_pairs(draw, symmetric=False, kind=WeightKind.DISSIMILARITY, min_n=2, max_n=7):
    """Two graphs with one topology and independently drawn weights."""
    g = draw(small_graphs(min_n=min_n, max_n=max_n, symmetric=symmetric, kind=kind))
    if symmetric:
        w = {}
        for u, v, _ in g.undirected_edges():
            w[(u, v)] = draw(st.floats(0.25, 4.0))
        new = [w[(min(u, v), max(u, v))] for u, v, _ in g.edges()]
    else:
        new = [draw(st.floats(0.25, 4.0)) for _ in range(g.n_edges)]
    return g, g.with_weights(new)


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)
