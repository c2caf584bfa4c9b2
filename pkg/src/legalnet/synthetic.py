"""Small hand-built and randomly generated networks for tests and demos."""

from __future__ import annotations

import random

from legalnet.graph import ALLOWED_TRIPLES, STATUTE_LEVELS, EdgeKind, HeteroGraph, NodeKind

D, A, P, C, T, S = (
    NodeKind.DOCUMENT,
    NodeKind.ACT,
    NodeKind.PART,
    NodeKind.CHAPTER,
    NodeKind.TOPIC,
    NodeKind.SECTION,
)
CIT, HIER = EdgeKind.CITATION, EdgeKind.HIERARCHY

FIGURE_ONE_HIERARCHY = [
    ("act1", "part_p"),
    ("part_p", "chapter_c"),
    ("chapter_c", "topic_s"),
    ("chapter_c", "topic_t"),
    ("topic_s", "s_i"),
    ("topic_s", "s_j"),
    ("topic_t", "s_k"),
    ("act2", "part_b"),
    ("part_b", "s_m"),
    ("part_b", "s_n"),
]
FIGURE_ONE_CITATIONS = [
    ("d1", "s_i"),
    ("d1", "s_j"),
    ("d2", "s_i"),
    ("d3", "s_j"),
    ("d3", "s_k"),
    ("d4", "s_m"),
    ("d5", "act2"),
    ("s_k", "s_n"),
    ("d2", "d1"),
    ("d3", "d1"),
    ("d4", "d2"),
    ("d4", "d3"),
    ("d5", "d3"),
]
FIGURE_ONE_KINDS = {
    **{f"d{i}": D for i in range(1, 6)},
    "act1": A,
    "act2": A,
    "part_p": P,
    "part_b": P,
    "chapter_c": C,
    "topic_s": T,
    "topic_t": T,
    **{f"s_{x}": S for x in "ijkmn"},
}


def figure_one() -> HeteroGraph:
    """Toy network with two acts (one with the full hierarchy) and five documents."""
    g = HeteroGraph()
    for node_id, kind in FIGURE_ONE_KINDS.items():
        g.add_node(node_id, kind, node_id)
    for src, dst in FIGURE_ONE_HIERARCHY:
        g.add_edge(src, dst, HIER)
    for src, dst in FIGURE_ONE_CITATIONS:
        g.add_edge(src, dst, CIT)
    return g


def random_legal_graph(rng: random.Random, max_nodes: int = 200) -> HeteroGraph:
    """Random graph obeying the allowed-triple table and the statute forest rule."""
    g = HeteroGraph()
    n_total = rng.randint(4, max_nodes)
    n_docs = rng.randint(2, max(2, n_total // 2))
    n_acts = rng.randint(1, min(3, n_total - n_docs))
    budget = n_total - n_docs - n_acts
    for a in range(n_acts):
        g.add_node(f"act{a}", A)
    for i in range(max(0, budget)):
        parent = rng.choice([n for n in g.node_ids() if g.kind(n) is not S])
        rank = STATUTE_LEVELS.index(g.kind(parent))
        level = rng.choice(STATUTE_LEVELS[rank + 1 :])
        g.add_node(f"u{i}", level)
        g.add_edge(parent, f"u{i}", HIER)
    for i in range(n_docs):
        g.add_node(f"d{i}", D)

    by_kind = {k: g.node_ids(k) for k in (D, A, S)}
    citation_pairs = [(s, d) for s, d, e in ALLOWED_TRIPLES if e is CIT]
    n_cites = rng.randint(0, 3 * len(g))
    for _ in range(n_cites):
        sk, dk = rng.choice(sorted(citation_pairs))
        if not by_kind[sk] or not by_kind[dk]:
            continue
        src, dst = rng.choice(by_kind[sk]), rng.choice(by_kind[dk])
        if src != dst:
            g.add_edge(src, dst, CIT)
    return g


def random_undirected_docs(rng: random.Random, max_nodes: int = 30) -> HeteroGraph:
    """Random document citation graph, dense enough to exercise dispersion."""
    g = HeteroGraph()
    n = rng.randint(2, max_nodes)
    density = rng.uniform(0.05, 0.6)
    for i in range(n):
        g.add_node(f"n{i:02d}", D)
    for i in range(n):
        for j in range(n):
            if i != j and rng.random() < density / 2:
                g.add_edge(f"n{i:02d}", f"n{j:02d}", CIT)
    return g


def two_cliques(size: int = 10) -> HeteroGraph:
    """Two document cliques joined by a single bridge edge."""
    g = HeteroGraph()
    for side in "ab":
        for i in range(size):
            g.add_node(f"{side}{i}", D)
        for i in range(size):
            for j in range(i + 1, size):
                g.add_edge(f"{side}{i}", f"{side}{j}", CIT)
    g.add_edge("a0", "b0", CIT)
    return g


def two_act_communities(docs_per_act: int = 6, sections_per_act: int = 4) -> HeteroGraph:
    """Two acts whose sections are cited by disjoint sets of documents."""
    g = HeteroGraph()
    rng = random.Random(7)
    for act in ("x", "y"):
        g.add_node(f"act_{act}", A)
        g.add_node(f"act_{act}/chapter", C)
        g.add_edge(f"act_{act}", f"act_{act}/chapter", HIER)
        for t in range(2):
            g.add_node(f"act_{act}/topic{t}", T)
            g.add_edge(f"act_{act}/chapter", f"act_{act}/topic{t}", HIER)
        sections = []
        for s in range(sections_per_act):
            sec = f"act_{act}/s{s}"
            g.add_node(sec, S)
            g.add_edge(f"act_{act}/topic{s % 2}", sec, HIER)
            sections.append(sec)
        for d in range(docs_per_act):
            doc = f"doc_{act}{d}"
            g.add_node(doc, D)
            for sec in rng.sample(sections, 2):
                g.add_edge(doc, sec, CIT)
    return g
