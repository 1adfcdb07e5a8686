import io

import pytest
from hypothesis import given
from hypothesis import strategies as st

from corewatch.graph import EdgeListParseError, Graph, load_edge_list


def test_load_collapses_duplicates_and_comments():
    g = load_edge_list("1 2\n2 3\n# c\n1 2\n")
    assert g.vertex_count == 3
    assert g.edge_count == 2


def test_load_drops_self_loop_but_declares_vertex():
    g = load_edge_list("a a\n")
    assert g.vertex_count == 1
    assert g.edge_count == 0


def test_load_malformed_line_reports_line_number():
    with pytest.raises(EdgeListParseError) as exc:
        load_edge_list("1 2\nx\n")
    assert exc.value.line_number == 2
    assert "2" in str(exc.value)


def test_load_accepts_file_objects():
    g = load_edge_list(io.StringIO("a b\nb c\n"))
    assert g.edge_count == 2


def test_insert_existing_edge_is_noop():
    g = Graph.from_label_edges([("a", "b"), ("b", "c"), ("c", "a")])
    a, b = g.label_to_id["a"], g.label_to_id["b"]
    assert g.insert_edge(a, b) is False
    assert g.edge_count == 3


def test_insert_new_edge():
    g = Graph.from_label_edges([("a", "b"), ("b", "c")])
    a, c = g.label_to_id["a"], g.label_to_id["c"]
    assert g.insert_edge(a, c) is True
    assert g.edge_count == 3


def test_insert_self_loop_rejected():
    g = Graph.from_label_edges([("a", "b")])
    a = g.label_to_id["a"]
    assert g.insert_edge(a, a) is False
    assert g.edge_count == 1


def test_remove_edge_and_absent_edge():
    g = Graph.from_label_edges([("a", "b"), ("b", "c"), ("c", "a")])
    a, b, c = (g.label_to_id[x] for x in "abc")
    assert g.remove_edge(a, b) is True
    assert g.edge_count == 2
    g2 = Graph.from_label_edges([("a", "b"), ("b", "c")])
    assert g2.remove_edge(g2.label_to_id["a"], g2.label_to_id["c"]) is False


def test_remove_then_insert_restores_graph():
    g = Graph.from_label_edges([("a", "b"), ("b", "c"), ("c", "a")])
    before = [set(s) for s in g.adjacency]
    a, b = g.label_to_id["a"], g.label_to_id["b"]
    g.remove_edge(a, b)
    g.insert_edge(a, b)
    assert [set(s) for s in g.adjacency] == before
    assert g.edge_count == 3


def test_out_of_range_ids_raise():
    g = Graph.from_label_edges([("a", "b")])
    with pytest.raises(IndexError):
        g.insert_edge(0, 5)
    with pytest.raises(IndexError):
        g.remove_edge(-1, 0)


@given(
    st.lists(
        st.tuples(st.integers(0, 7), st.integers(0, 7), st.booleans()),
        max_size=60,
    )
)
def test_mutation_sequences_keep_symmetry(ops):
    g = Graph()
    for i in range(8):
        g.add_vertex(str(i))
    for u, v, insert in ops:
        if insert:
            g.insert_edge(u, v)
        else:
            g.remove_edge(u, v)
    for u, nbrs in enumerate(g.adjacency):
        assert u not in nbrs
        for v in nbrs:
            assert u in g.adjacency[v]
    assert g.edge_count == sum(len(s) for s in g.adjacency) // 2


@given(st.permutations(["1 2", "2 3", "3 4", "4 1", "2 4", "5 5"]))
def test_line_order_does_not_change_edges(lines):
    g = load_edge_list("\n".join(lines) + "\n")
    label_edges = {
        frozenset((g.labels[u], g.labels[v])) for u, v in g.edges()
    }
    assert g.vertex_count == 5
    assert label_edges == {
        frozenset(p)
        for p in [("1", "2"), ("2", "3"), ("3", "4"), ("4", "1"), ("2", "4")]
    }
