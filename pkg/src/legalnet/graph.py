"""Typed heterogeneous citation network of case documents and statutes.

Nodes carry one of six kinds (a document, or one level of the statute
hierarchy). Edges are directed and carry one of two kinds: citation links
and hierarchy (containment) links. Which (source kind, target kind, edge kind)
triples may exist is fixed by :data:`ALLOWED_TRIPLES`.
"""

from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Iterator


class NodeKind(str, enum.Enum):
    DOCUMENT = "document"
    ACT = "act"
    PART = "part"
    CHAPTER = "chapter"
    TOPIC = "topic"
    SECTION = "section"

    @classmethod
    def parse(cls, value: str | NodeKind) -> NodeKind:
        if isinstance(value, NodeKind):
            return value
        try:
            return cls(value.strip().lower())
        except ValueError:
            raise ValueError(f"unknown node kind: {value!r}") from None


class EdgeKind(str, enum.Enum):
    CITATION = "citation"
    HIERARCHY = "hierarchy"

    @classmethod
    def parse(cls, value: str | EdgeKind) -> EdgeKind:
        if isinstance(value, EdgeKind):
            return value
        try:
            return cls(value.strip().lower())
        except ValueError:
            raise ValueError(f"unknown edge kind: {value!r}") from None


# Statute levels, outermost first. Hierarchy edges must strictly descend.
STATUTE_LEVELS: tuple[NodeKind, ...] = (
    NodeKind.ACT,
    NodeKind.PART,
    NodeKind.CHAPTER,
    NodeKind.TOPIC,
    NodeKind.SECTION,
)

_D, _A, _S = NodeKind.DOCUMENT, NodeKind.ACT, NodeKind.SECTION

ALLOWED_TRIPLES: frozenset[tuple[NodeKind, NodeKind, EdgeKind]] = frozenset(
    [
        (src, dst, EdgeKind.CITATION)
        for src, dst in [(_D, _D), (_D, _S), (_D, _A), (_S, _S), (_S, _A), (_A, _S), (_A, _A)]
    ]
    + [
        (STATUTE_LEVELS[i], STATUTE_LEVELS[j], EdgeKind.HIERARCHY)
        for i in range(len(STATUTE_LEVELS))
        for j in range(i + 1, len(STATUTE_LEVELS))
    ]
)


class GraphError(Exception):
    """Base class for graph construction and lookup errors."""


class UnknownNode(GraphError, KeyError):
    def __str__(self) -> str:
        return f"unknown node: {self.args[0]!r}"


class KindConflict(GraphError):
    pass


class IllegalEdge(GraphError):
    pass


class HierarchyViolation(GraphError):
    pass


@dataclass(frozen=True)
class Node:
    id: str
    kind: NodeKind
    label: str = ""


@dataclass(frozen=True, order=True)
class Edge:
    src: str
    dst: str
    kind: EdgeKind


@dataclass
class GraphStats:
    nodes_by_kind: dict[NodeKind, int] = field(default_factory=dict)
    edges_by_triple: dict[tuple[NodeKind, NodeKind, EdgeKind], int] = field(default_factory=dict)
    total_nodes: int = 0
    total_edges: int = 0

    def to_json(self) -> dict:
        return {
            "total_nodes": self.total_nodes,
            "total_edges": self.total_edges,
            "nodes_by_kind": {k.value: self.nodes_by_kind.get(k, 0) for k in NodeKind},
            "edges_by_triple": {
                f"{s.value}->{d.value}:{e.value}": n
                for (s, d, e), n in sorted(
                    self.edges_by_triple.items(), key=lambda kv: tuple(x.value for x in kv[0])
                )
            },
        }


class HeteroGraph:
    """Simple typed digraph with kind-filterable adjacency indices.

    Duplicate ``(src, dst, kind)`` insertions collapse to one edge. Build the
    graph once, then treat it as read-only.
    """

    def __init__(self) -> None:
        self._nodes: dict[str, Node] = {}
        self._out: dict[str, dict[EdgeKind, set[str]]] = {}
        self._in: dict[str, dict[EdgeKind, set[str]]] = {}
        self._parent: dict[str, str] = {}
        self._n_edges = 0
        self._undirected_cache: dict[str, tuple[str, ...]] | None = None

    # -- construction -------------------------------------------------------

    def add_node(self, id: str, kind: NodeKind | str, label: str = "") -> Node:
        if not id:
            raise ValueError("node id must be non-empty")
        kind = NodeKind.parse(kind)
        existing = self._nodes.get(id)
        if existing is not None:
            if existing.kind is not kind:
                raise KindConflict(
                    f"node {id!r} already exists with kind {existing.kind.value}, not {kind.value}"
                )
            return existing
        node = Node(id, kind, label)
        self._nodes[id] = node
        self._out[id] = {EdgeKind.CITATION: set(), EdgeKind.HIERARCHY: set()}
        self._in[id] = {EdgeKind.CITATION: set(), EdgeKind.HIERARCHY: set()}
        self._undirected_cache = None
        return node

    def add_edge(self, src: str, dst: str, kind: EdgeKind | str) -> Edge:
        kind = EdgeKind.parse(kind)
        s, d = self.node(src), self.node(dst)
        edge = Edge(src, dst, kind)
        if dst in self._out[src][kind]:
            return edge
        if src == dst:
            raise IllegalEdge(f"self-loop on {src!r}")
        if (s.kind, d.kind, kind) not in ALLOWED_TRIPLES:
            raise IllegalEdge(f"{s.kind.value} -[{kind.value}]-> {d.kind.value} is not allowed")
        if kind is EdgeKind.HIERARCHY:
            if dst in self._parent:
                raise HierarchyViolation(
                    f"{dst!r} already has hierarchy parent {self._parent[dst]!r}"
                )
            if dst in self.hierarchy_ancestors(src):
                raise HierarchyViolation(f"edge {src!r} -> {dst!r} would close a cycle")
            self._parent[dst] = src
        self._out[src][kind].add(dst)
        self._in[dst][kind].add(src)
        self._n_edges += 1
        self._undirected_cache = None
        return edge

    # -- lookup -------------------------------------------------------------

    def node(self, id: str) -> Node:
        try:
            return self._nodes[id]
        except KeyError:
            raise UnknownNode(id) from None

    def kind(self, id: str) -> NodeKind:
        return self.node(id).kind

    def __contains__(self, id: object) -> bool:
        return id in self._nodes

    def __len__(self) -> int:
        return len(self._nodes)

    @property
    def num_edges(self) -> int:
        return self._n_edges

    def nodes(self, kind: NodeKind | None = None) -> list[Node]:
        """All nodes, sorted by id, optionally restricted to one kind."""
        return [
            self._nodes[i]
            for i in sorted(self._nodes)
            if kind is None or self._nodes[i].kind is kind
        ]

    def node_ids(self, kind: NodeKind | None = None) -> list[str]:
        return [n.id for n in self.nodes(kind)]

    def edges(self) -> Iterator[Edge]:
        """All edges in (src, dst, kind) order."""
        for src in sorted(self._out):
            for kind in EdgeKind:
                for dst in sorted(self._out[src][kind]):
                    yield Edge(src, dst, kind)

    def has_edge(self, src: str, dst: str, kind: EdgeKind | None = None) -> bool:
        if src not in self._out:
            return False
        kinds = EdgeKind if kind is None else (kind,)
        return any(dst in self._out[src][k] for k in kinds)

    def neighbors(
        self,
        node: str,
        direction: str = "out",
        node_filter: NodeKind | None = None,
        edge_filter: EdgeKind | None = None,
    ) -> list[str]:
        """Adjacent node ids matching the filters, sorted by id.

        ``direction`` is ``"out"``, ``"in"`` or ``"both"`` (undirected sense).
        """
        self.node(node)
        if direction == "out":
            indices = [self._out[node]]
        elif direction == "in":
            indices = [self._in[node]]
        elif direction == "both":
            indices = [self._out[node], self._in[node]]
        else:
            raise ValueError(f"direction must be 'out', 'in' or 'both', got {direction!r}")
        kinds = EdgeKind if edge_filter is None else (edge_filter,)
        found: set[str] = set()
        for index in indices:
            for k in kinds:
                found.update(index[k])
        if node_filter is not None:
            found = {n for n in found if self._nodes[n].kind is node_filter}
        return sorted(found)

    def undirected_neighbors(self, node: str) -> tuple[str, ...]:
        """Sorted neighbors ignoring direction and edge kind (cached)."""
        if self._undirected_cache is None:
            cache = {}
            for nid in self._nodes:
                nbrs: set[str] = set()
                for index in (self._out[nid], self._in[nid]):
                    for s in index.values():
                        nbrs.update(s)
                cache[nid] = tuple(sorted(nbrs))
            self._undirected_cache = cache
        try:
            return self._undirected_cache[node]
        except KeyError:
            raise UnknownNode(node) from None

    def adjacent(self, a: str, b: str) -> bool:
        return b in self.undirected_neighbors(a)

    def hierarchy_parent(self, node: str) -> str | None:
        self.node(node)
        return self._parent.get(node)

    def hierarchy_ancestors(self, node: str) -> list[str]:
        chain = []
        cur = self._parent.get(node)
        while cur is not None:
            chain.append(cur)
            cur = self._parent.get(cur)
        return chain

    def check_hierarchy_forest(self) -> list[str]:
        """Return problems with the statute forest; empty when well formed."""
        problems = []
        for node in self.nodes():
            if node.kind is NodeKind.DOCUMENT:
                continue
            parent = self._parent.get(node.id)
            if node.kind is NodeKind.ACT:
                if parent is not None:
                    problems.append(f"act {node.id!r} has hierarchy parent {parent!r}")
            elif parent is None:
                problems.append(f"{node.kind.value} {node.id!r} has no hierarchy parent")
            else:
                chain = self.hierarchy_ancestors(node.id)
                if self._nodes[chain[-1]].kind is not NodeKind.ACT:
                    problems.append(f"{node.id!r} is not rooted at an act")
        return problems

    def copy(self) -> HeteroGraph:
        g = HeteroGraph()
        for n in self.nodes():
            g.add_node(n.id, n.kind, n.label)
        for e in self.edges():
            g.add_edge(e.src, e.dst, e.kind)
        return g

    def __repr__(self) -> str:
        return f"<HeteroGraph nodes={len(self)} edges={self.num_edges}>"


def pcnet_view(graph: HeteroGraph) -> HeteroGraph:
    """Document-only subgraph with document-to-document citation edges."""
    view = HeteroGraph()
    for n in graph.nodes(NodeKind.DOCUMENT):
        view.add_node(n.id, n.kind, n.label)
    for n in graph.nodes(NodeKind.DOCUMENT):
        for dst in graph.neighbors(n.id, "out", NodeKind.DOCUMENT, EdgeKind.CITATION):
            view.add_edge(n.id, dst, EdgeKind.CITATION)
    return view


def stats(graph: HeteroGraph) -> GraphStats:
    nodes = Counter(n.kind for n in graph.nodes())
    edges = Counter((graph.kind(e.src), graph.kind(e.dst), e.kind) for e in graph.edges())
    return GraphStats(
        nodes_by_kind={k: nodes.get(k, 0) for k in NodeKind},
        edges_by_triple=dict(edges),
        total_nodes=sum(nodes.values()),
        total_edges=sum(edges.values()),
    )


# -- TSV serialization ------------------------------------------------------


def _check_field(value: str, what: str) -> str:
    if "\t" in value or "\n" in value or "\r" in value:
        raise ValueError(f"{what} may not contain tabs or newlines: {value!r}")
    return value


def write_tsv(graph: HeteroGraph, nodes_path, edges_path) -> None:
    with open(nodes_path, "w", encoding="utf-8", newline="\n") as fh:
        for n in graph.nodes():
            fh.write(f"{_check_field(n.id, 'id')}\t{n.kind.value}\t{_check_field(n.label, 'label')}\n")
    with open(edges_path, "w", encoding="utf-8", newline="\n") as fh:
        for e in graph.edges():
            fh.write(f"{e.src}\t{e.dst}\t{e.kind.value}\n")


def read_tsv(nodes_path, edges_path) -> HeteroGraph:
    graph = HeteroGraph()
    for lineno, parts in _tsv_rows(nodes_path, 3):
        try:
            graph.add_node(parts[0], parts[1], parts[2])
        except (ValueError, GraphError) as exc:
            raise ValueError(f"{nodes_path}:{lineno}: {exc}") from exc
    for lineno, parts in _tsv_rows(edges_path, 3):
        try:
            graph.add_edge(parts[0], parts[1], parts[2])
        except (ValueError, GraphError) as exc:
            raise ValueError(f"{edges_path}:{lineno}: {exc}") from exc
    return graph


def _tsv_rows(path, width: int) -> Iterable[tuple[int, list[str]]]:
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.rstrip("\n")
            if not line:
                continue
            parts = line.split("\t")
            if len(parts) != width:
                raise ValueError(f"{path}:{lineno}: expected {width} tab-separated fields")
            yield lineno, parts
