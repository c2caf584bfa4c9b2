"""Citation-based similarity between two documents.

Coupling and co-citation compare the citation neighbourhoods of the two
documents with a Jaccard index. Dispersion follows the Backstrom-Kleinberg
definition as implemented by networkx (``normalized=True``, ``alpha=1``,
``b=c=0``) over the undirected version of the graph.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from legalnet.graph import EdgeKind, GraphError, HeteroGraph, NodeKind

BIBLIOGRAPHIC_COUPLING = "bibliographic_coupling"
CO_CITATION = "co_citation"
DISPERSION = "dispersion"
METHODS = (BIBLIOGRAPHIC_COUPLING, CO_CITATION, DISPERSION)


class NotADocument(GraphError):
    pass


@dataclass(frozen=True)
class SimilarityScore:
    value: float
    method: str
    pair: tuple[str, str]

    def __float__(self) -> float:
        return self.value


def _require_documents(graph: HeteroGraph, *ids: str) -> None:
    for i in ids:
        if graph.kind(i) is not NodeKind.DOCUMENT:
            raise NotADocument(f"{i!r} is a {graph.kind(i).value}, not a document")


def jaccard(a: set, b: set) -> float:
    union = len(a | b)
    return len(a & b) / union if union else 0.0


def bibliographic_coupling(graph: HeteroGraph, u: str, v: str) -> SimilarityScore:
    _require_documents(graph, u, v)
    out_u = set(graph.neighbors(u, "out", edge_filter=EdgeKind.CITATION))
    out_v = set(graph.neighbors(v, "out", edge_filter=EdgeKind.CITATION))
    return SimilarityScore(jaccard(out_u, out_v), BIBLIOGRAPHIC_COUPLING, (u, v))


def co_citation(graph: HeteroGraph, u: str, v: str) -> SimilarityScore:
    _require_documents(graph, u, v)
    in_u = set(graph.neighbors(u, "in", edge_filter=EdgeKind.CITATION))
    in_v = set(graph.neighbors(v, "in", edge_filter=EdgeKind.CITATION))
    return SimilarityScore(jaccard(in_u, in_v), CO_CITATION, (u, v))


def dispersion_count(graph: HeteroGraph, u: str, v: str) -> tuple[int, int]:
    """Return ``(raw dispersion, embeddedness)`` of the pair.

    Not symmetric in general: shared ties of ``s`` and ``t`` are looked up
    inside ``u``'s neighbourhood only.
    """
    _require_documents(graph, u, v)
    nbrs_u = set(graph.undirected_neighbors(u))
    common = sorted(nbrs_u.intersection(graph.undirected_neighbors(v)) - {u, v})
    total = 0
    for s, t in combinations(common, 2):
        ties_s = nbrs_u.intersection(graph.undirected_neighbors(s)) - {u, v}
        if t not in ties_s and ties_s.isdisjoint(graph.undirected_neighbors(t)):
            total += 1
    return total, len(common)


def dispersion(graph: HeteroGraph, u: str, v: str, normalized: bool = True) -> SimilarityScore:
    raw, embeddedness = dispersion_count(graph, u, v)
    value = float(raw)
    if normalized:
        value = raw / embeddedness if embeddedness else 0.0
    return SimilarityScore(value, DISPERSION, (u, v))


MEASURES = {
    BIBLIOGRAPHIC_COUPLING: bibliographic_coupling,
    CO_CITATION: co_citation,
    DISPERSION: dispersion,
}
