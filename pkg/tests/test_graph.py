from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from legalnet.build import CitationRecord, DocumentRecord, build_hier_spcnet
from legalnet.graph import (
    ALLOWED_TRIPLES,
    EdgeKind,
    HeteroGraph,
    HierarchyViolation,
    IllegalEdge,
    KindConflict,
    NodeKind,
    UnknownNode,
    pcnet_view,
    read_tsv,
    stats,
    write_tsv,
)
from legalnet.statutes import StatuteTree, StatuteUnit, dump_statutes, load_statutes
from legalnet.synthetic import random_legal_graph

D, S, A = NodeKind.DOCUMENT, NodeKind.SECTION, NodeKind.ACT
CIT, HIER = EdgeKind.CITATION, EdgeKind.HIERARCHY


def test_add_node_and_kind():
    g = HeteroGraph()
    g.add_node("ipc_s302", S, "Section 302, IPC")
    assert g.kind("ipc_s302") is S
    assert g.node("ipc_s302").label == "Section 302, IPC"


def test_add_node_idempotent():
    g = HeteroGraph()
    g.add_node("ipc_s302", S, "Section 302, IPC")
    g.add_node("ipc_s302", S, "Section 302, IPC")
    assert len(g) == 1


def test_add_node_kind_conflict():
    g = HeteroGraph()
    g.add_node("ipc_s302", S)
    with pytest.raises(KindConflict):
        g.add_node("ipc_s302", A)


def test_add_node_rejects_empty_id():
    with pytest.raises(ValueError):
        HeteroGraph().add_node("", D)


def test_allowed_triples_table():
    citation = {(s, d) for s, d, e in ALLOWED_TRIPLES if e is CIT}
    hierarchy = {(s, d) for s, d, e in ALLOWED_TRIPLES if e is HIER}
    assert citation == {(D, D), (D, S), (D, A), (S, S), (S, A), (A, S), (A, A)}
    assert len(hierarchy) == 10
    assert (A, NodeKind.PART) in hierarchy and (NodeKind.TOPIC, S) in hierarchy
    assert (S, NodeKind.TOPIC) not in hierarchy


def test_add_edge_examples(fig1):
    assert fig1.has_edge("d1", "s_j", CIT)
    g = HeteroGraph()
    g.add_node("d1", D)
    g.add_node("s_j", S)
    g.add_node("s_k", S)
    g.add_node("s_n", S)
    g.add_edge("d1", "s_j", CIT)
    g.add_edge("s_k", "s_n", CIT)
    with pytest.raises(IllegalEdge):
        g.add_edge("s_j", "d1", CIT)


def test_add_edge_unknown_node():
    g = HeteroGraph()
    g.add_node("d1", D)
    with pytest.raises(UnknownNode):
        g.add_edge("d1", "nope", CIT)


def test_add_edge_duplicate_is_idempotent(fig1):
    before = fig1.num_edges
    fig1.add_edge("d1", "s_j", CIT)
    assert fig1.num_edges == before


def test_second_hierarchy_parent_rejected(fig1):
    with pytest.raises(HierarchyViolation):
        fig1.add_edge("topic_t", "s_i", HIER)


def test_hierarchy_upward_edge_rejected(fig1):
    with pytest.raises(IllegalEdge):
        fig1.add_edge("s_i", "topic_s", HIER)


def test_self_loop_rejected(fig1):
    with pytest.raises(IllegalEdge):
        fig1.add_edge("d1", "d1", CIT)


def test_neighbors_examples(fig1):
    assert fig1.neighbors("d1", "out", S, CIT) == ["s_i", "s_j"]
    assert fig1.neighbors("topic_s", "out", S, HIER) == ["s_i", "s_j"]
    g = HeteroGraph()
    g.add_node("lonely", D)
    assert g.neighbors("lonely") == []
    with pytest.raises(UnknownNode):
        g.neighbors("missing")


def test_neighbors_sorted_and_filtered(fig1):
    assert fig1.neighbors("d1", "in", edge_filter=CIT) == ["d2", "d3"]
    assert fig1.neighbors("s_n", "both") == ["part_b", "s_k"]


def test_pcnet_view_figure_one(fig1):
    view = pcnet_view(fig1)
    assert view.node_ids() == ["d1", "d2", "d3", "d4", "d5"]
    edges = {(e.src, e.dst) for e in view.edges()}
    assert edges == {("d2", "d1"), ("d3", "d1"), ("d4", "d2"), ("d4", "d3"), ("d5", "d3")}
    assert len(fig1) == 17  # source untouched


def test_pcnet_view_no_documents():
    g = HeteroGraph()
    g.add_node("act", A)
    view = pcnet_view(g)
    assert len(view) == 0 and view.num_edges == 0


def test_pcnet_view_idempotent(fig1):
    once = pcnet_view(fig1)
    twice = pcnet_view(once)
    assert list(once.edges()) == list(twice.edges())
    assert once.node_ids() == twice.node_ids()


def test_stats_figure_one(fig1):
    s = stats(fig1)
    assert s.total_nodes == 17
    assert s.nodes_by_kind == {
        D: 5, A: 2, NodeKind.PART: 2, NodeKind.CHAPTER: 1, NodeKind.TOPIC: 2, S: 5,
    }
    assert s.total_edges == sum(s.edges_by_triple.values()) == fig1.num_edges


def test_stats_empty():
    s = stats(HeteroGraph())
    assert s.total_nodes == 0 and s.total_edges == 0
    assert all(v == 0 for v in s.nodes_by_kind.values())


def test_stats_counter_increments(fig1):
    before = stats(fig1).edges_by_triple.get((D, S, CIT), 0)
    fig1.add_edge("d5", "s_n", CIT)
    assert stats(fig1).edges_by_triple[(D, S, CIT)] == before + 1


def test_hierarchy_forest_figure_one(fig1):
    assert fig1.check_hierarchy_forest() == []
    assert fig1.hierarchy_ancestors("s_k") == ["topic_t", "chapter_c", "part_p", "act1"]


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10_000))
def test_random_graphs_respect_invariants(seed):
    g = random_legal_graph(random.Random(seed), max_nodes=60)
    assert g.check_hierarchy_forest() == []
    for e in g.edges():
        assert (g.kind(e.src), g.kind(e.dst), e.kind) in ALLOWED_TRIPLES
        if e.kind is CIT and g.kind(e.dst) is D:
            assert g.kind(e.src) is D
    view = pcnet_view(g)
    for doc in g.node_ids(D):
        assert g.neighbors(doc, "in", edge_filter=CIT) == view.neighbors(doc, "in", edge_filter=CIT)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10_000), st.lists(st.tuples(st.integers(0, 59), st.integers(0, 59)), max_size=30))
def test_edge_total_monotone(seed, attempts):
    g = random_legal_graph(random.Random(seed), max_nodes=60)
    ids = g.node_ids()
    for i, j in attempts:
        src, dst = ids[i % len(ids)], ids[j % len(ids)]
        before = stats(g).total_edges
        try:
            g.add_edge(src, dst, CIT)
        except (IllegalEdge, HierarchyViolation):
            pass
        assert stats(g).total_edges - before in (0, 1)


def test_tsv_round_trip(tmp_path, fig1):
    write_tsv(fig1, tmp_path / "nodes.tsv", tmp_path / "edges.tsv")
    loaded = read_tsv(tmp_path / "nodes.tsv", tmp_path / "edges.tsv")
    write_tsv(loaded, tmp_path / "n2.tsv", tmp_path / "e2.tsv")
    assert (tmp_path / "nodes.tsv").read_bytes() == (tmp_path / "n2.tsv").read_bytes()
    assert (tmp_path / "edges.tsv").read_bytes() == (tmp_path / "e2.tsv").read_bytes()
    first = (tmp_path / "nodes.tsv").read_text().splitlines()[0]
    assert first == "act1\tact\tact1"


def test_read_tsv_reports_bad_line(tmp_path):
    (tmp_path / "n.tsv").write_text("d1\tdocument\tx\nd2\tplanet\ty\n")
    (tmp_path / "e.tsv").write_text("")
    with pytest.raises(ValueError, match="n.tsv:2"):
        read_tsv(tmp_path / "n.tsv", tmp_path / "e.tsv")


def _fig1_trees():
    act1 = StatuteTree("act1", "First Act, 2001", [
        StatuteUnit(NodeKind.PART, "part_p", ordinal="I", children=[
            StatuteUnit(NodeKind.CHAPTER, "chapter_c", ordinal="1", children=[
                StatuteUnit(NodeKind.TOPIC, "topic_s", children=[
                    StatuteUnit(S, "s_i", ordinal="1"),
                    StatuteUnit(S, "s_j", ordinal="2"),
                ]),
                StatuteUnit(NodeKind.TOPIC, "topic_t", children=[
                    StatuteUnit(S, "s_k", ordinal="3", cites=["s_n"]),
                ]),
            ]),
        ]),
    ])
    act2 = StatuteTree("act2", "Second Act, 2002", [
        StatuteUnit(NodeKind.PART, "part_b", ordinal="I", children=[
            StatuteUnit(S, "s_m", ordinal="10"),
            StatuteUnit(S, "s_n", ordinal="11"),
        ]),
    ])
    return [act1, act2]


def test_build_figure_one_counts():
    docs = [DocumentRecord(f"d{i}") for i in range(1, 6)]
    cites = [
        CitationRecord("d1", act_name="First Act, 2001", unit_number="1"),
        CitationRecord("d5", act_name="second act 2002"),
        CitationRecord("d2", target="d1"),
    ]
    graph, diagnostics = build_hier_spcnet(_fig1_trees(), docs, cites)
    s = stats(graph)
    assert diagnostics == []
    assert s.nodes_by_kind == {
        D: 5, A: 2, NodeKind.PART: 2, NodeKind.CHAPTER: 1, NodeKind.TOPIC: 2, S: 5,
    }
    assert graph.has_edge("d1", "s_i", CIT)
    assert graph.has_edge("d5", "act2", CIT)
    assert graph.has_edge("s_k", "s_n", CIT)
    assert graph.check_hierarchy_forest() == []


def test_build_empty():
    graph, diagnostics = build_hier_spcnet([], [], [])
    assert len(graph) == 0 and diagnostics == []


def test_build_unresolved_citation():
    docs = [DocumentRecord("d1")]
    rec = CitationRecord("d1", act_name="Foo Act, 1900", unit_number="3")
    graph, diagnostics = build_hier_spcnet(_fig1_trees(), docs, [rec])
    assert len(graph) == 13
    assert [d.record for d in diagnostics] == [rec]


def test_build_rejects_level_inversion():
    bad = StatuteTree("x", "X Act, 2000", [
        StatuteUnit(S, "x/s1", children=[StatuteUnit(NodeKind.TOPIC, "x/t1")]),
    ])
    with pytest.raises(ValueError):
        build_hier_spcnet([bad], [], [])


def test_statutes_json_round_trip(tmp_path):
    trees = _fig1_trees()
    dump_statutes(trees, tmp_path / "a.json")
    dump_statutes(load_statutes(tmp_path / "a.json"), tmp_path / "b.json")
    assert (tmp_path / "a.json").read_bytes() == (tmp_path / "b.json").read_bytes()
