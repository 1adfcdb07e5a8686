import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from corewatch.graph import Graph

settings.register_profile(
    "corewatch",
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("corewatch")


def build_graph(edges, isolated=()):
    return Graph.from_label_edges(edges, isolated=isolated)


@pytest.fixture
def triangle_pendant():
    """Triangle a-b-c with pendant d on a: coreness 2,2,2,1."""
    return build_graph([("a", "b"), ("a", "c"), ("b", "c"), ("a", "d")])


@pytest.fixture
def k4_minus_edge():
    """K4 on a,b,c,d without the (c,d) edge: coreness 2 everywhere."""
    return build_graph([("a", "b"), ("a", "c"), ("a", "d"), ("b", "c"), ("b", "d")])


@pytest.fixture
def path3():
    return build_graph([("a", "b"), ("b", "c")])


@pytest.fixture
def five_cycle():
    return build_graph(
        [("a", "b"), ("b", "c"), ("c", "d"), ("d", "e"), ("e", "a")]
    )


@pytest.fixture
def two_triangles():
    return build_graph(
        [("a", "b"), ("b", "c"), ("c", "a"), ("x", "y"), ("y", "z"), ("z", "x")]
    )


@pytest.fixture
def fan5():
    """K4-minus-(c,d) plus e joined to c and d; anchoring e lifts everyone."""
    return build_graph(
        [
            ("a", "b"),
            ("a", "c"),
            ("a", "d"),
            ("b", "c"),
            ("b", "d"),
            ("e", "c"),
            ("e", "d"),
        ]
    )


@pytest.fixture
def k5_minus_with_tail():
    """K5 minus (c,d) plus outside x joined to c and d; anchoring x lifts the
    whole five-clique remnant from coreness 3 to 4."""
    return build_graph(
        [
            ("a", "b"),
            ("a", "c"),
            ("a", "d"),
            ("a", "e"),
            ("b", "c"),
            ("b", "d"),
            ("b", "e"),
            ("c", "e"),
            ("d", "e"),
            ("x", "c"),
            ("x", "d"),
        ]
    )


@st.composite
def small_graphs(draw, max_n=12, allow_isolated=True):
    """Random simple graphs with dense ids 0..n-1 as string labels."""
    n = draw(st.integers(min_value=1, max_value=max_n))
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    chosen = draw(
        st.lists(st.sampled_from(pairs), unique=True, max_size=len(pairs))
        if pairs
        else st.just([])
    )
    g = Graph()
    count = n if allow_isolated else max(n, 1)
    for i in range(count):
        g.add_vertex(str(i))
    for u, v in chosen:
        g.insert_edge(u, v)
    return g
