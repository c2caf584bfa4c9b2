"""Assemble the statute-and-precedent network from ingested records."""

from __future__ import annotations

from dataclasses import asdict, dataclass

from legalnet.extraction import resolve_act_name
from legalnet.graph import EdgeKind, GraphError, HeteroGraph, NodeKind
from legalnet.statutes import StatuteTree


@dataclass(frozen=True)
class DocumentRecord:
    doc_id: str
    title: str = ""


@dataclass(frozen=True)
class CitationRecord:
    """One citation from ``source`` (a node id).

    The target is either a node id (``target``) or an act name with an
    optional section/article number, resolved against the statute trees.
    """

    source: str
    target: str | None = None
    act_name: str | None = None
    unit_number: str | None = None
    text: str | None = None


@dataclass(frozen=True)
class UnresolvedCitation:
    record: CitationRecord
    reason: str

    def to_json(self) -> dict:
        return {"diagnostic": "UnresolvedCitation", "reason": self.reason, **asdict(self.record)}


class StatuteIndex:
    """Lookup from act names and unit numbers to statute node ids."""

    def __init__(self, trees: list[StatuteTree]) -> None:
        self.acts: dict[str, str] = {}
        self.units: dict[tuple[str, str], str] = {}
        for tree in trees:
            self.acts[resolve_act_name(tree.title, ())] = tree.act_id
            for _, unit in tree.walk():
                if unit.level is NodeKind.SECTION and unit.ordinal:
                    self.units[(tree.act_id, unit.ordinal.upper())] = unit.id

    @property
    def act_names(self) -> frozenset[str]:
        return frozenset(self.acts)

    def resolve(self, act_name: str, unit_number: str | None = None) -> str | None:
        act_id = self.acts.get(resolve_act_name(act_name, self.acts))
        if act_id is None or unit_number is None:
            return act_id
        return self.units.get((act_id, unit_number.upper()))


def build_hier_spcnet(
    statute_trees: list[StatuteTree],
    doc_records: list[DocumentRecord],
    citations: list[CitationRecord],
) -> tuple[HeteroGraph, list[UnresolvedCitation]]:
    """Build the full network; unresolvable citations become diagnostics."""
    graph = HeteroGraph()
    for tree in statute_trees:
        errors = tree.level_errors()
        if errors:
            raise ValueError(f"act {tree.act_id}: {errors[0]}")
        graph.add_node(tree.act_id, NodeKind.ACT, tree.title)
        for parent, unit in tree.walk():
            graph.add_node(unit.id, unit.level, unit.title)
            graph.add_edge(parent, unit.id, EdgeKind.HIERARCHY)
    for doc in doc_records:
        graph.add_node(doc.doc_id, NodeKind.DOCUMENT, doc.title)

    index = StatuteIndex(statute_trees)
    records = list(citations)
    for tree in statute_trees:
        records.extend(CitationRecord(tree.act_id, target=t) for t in tree.cites)
        records.extend(
            CitationRecord(unit.id, target=t) for _, unit in tree.walk() for t in unit.cites
        )

    diagnostics = []
    for rec in records:
        if rec.target is not None:
            target = rec.target if rec.target in graph else None
        elif rec.act_name:
            target = index.resolve(rec.act_name, rec.unit_number)
        else:
            target = None
        if target is None:
            reason = "precedent not in corpus" if rec.text and not rec.act_name else "target not found"
            diagnostics.append(UnresolvedCitation(rec, reason))
            continue
        if rec.source not in graph:
            diagnostics.append(UnresolvedCitation(rec, "source not found"))
            continue
        try:
            graph.add_edge(rec.source, target, EdgeKind.CITATION)
        except GraphError as exc:
            diagnostics.append(UnresolvedCitation(rec, str(exc)))
    return graph, diagnostics
