"""Statute hierarchy trees and their JSON form.

``statutes.json`` holds a list of acts::

    [{"act_id": ..., "title": ..., "children": [
        {"level": "part", "id": ..., "title": ..., "ordinal": "VI", "children": [...]},
        ...]}]

``ordinal`` (the printed number of a part, chapter or section) and ``cites``
(ids of statute nodes this unit cites) are optional.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterator

from legalnet.graph import STATUTE_LEVELS, NodeKind

UNIT_LEVELS = STATUTE_LEVELS[1:]
_RANK = {kind: i for i, kind in enumerate(STATUTE_LEVELS)}


@dataclass
class StatuteUnit:
    level: NodeKind
    id: str
    title: str = ""
    ordinal: str = ""
    children: list[StatuteUnit] = field(default_factory=list)
    cites: list[str] = field(default_factory=list)


@dataclass
class StatuteTree:
    act_id: str
    title: str
    children: list[StatuteUnit] = field(default_factory=list)
    cites: list[str] = field(default_factory=list)

    def walk(self) -> Iterator[tuple[str, StatuteUnit]]:
        """Yield ``(parent_id, unit)`` for every unit, depth first."""
        stack = [(self.act_id, c) for c in reversed(self.children)]
        while stack:
            parent, unit = stack.pop()
            yield parent, unit
            stack.extend((unit.id, c) for c in reversed(unit.children))

    def level_errors(self) -> list[str]:
        """Violations of strict level descent along root-to-leaf paths."""
        errors = []
        kinds = {self.act_id: NodeKind.ACT}
        for parent, unit in self.walk():
            kinds[unit.id] = unit.level
            if unit.level not in UNIT_LEVELS:
                errors.append(f"{unit.id}: level {unit.level.value} cannot appear below an act")
            elif _RANK[unit.level] <= _RANK[kinds[parent]]:
                errors.append(
                    f"{unit.id}: {unit.level.value} cannot sit under {kinds[parent].value} {parent}"
                )
        return errors


def _unit_from_json(obj: dict) -> StatuteUnit:
    return StatuteUnit(
        level=NodeKind.parse(obj["level"]),
        id=obj["id"],
        title=obj.get("title", ""),
        ordinal=str(obj.get("ordinal", "")),
        children=[_unit_from_json(c) for c in obj.get("children", [])],
        cites=list(obj.get("cites", [])),
    )


def _unit_to_json(unit: StatuteUnit) -> dict:
    out: dict = {"level": unit.level.value, "id": unit.id, "title": unit.title}
    if unit.ordinal:
        out["ordinal"] = unit.ordinal
    if unit.cites:
        out["cites"] = list(unit.cites)
    out["children"] = [_unit_to_json(c) for c in unit.children]
    return out


def tree_from_json(obj: dict) -> StatuteTree:
    return StatuteTree(
        act_id=obj["act_id"],
        title=obj["title"],
        children=[_unit_from_json(c) for c in obj.get("children", [])],
        cites=list(obj.get("cites", [])),
    )


def tree_to_json(tree: StatuteTree) -> dict:
    out: dict = {"act_id": tree.act_id, "title": tree.title}
    if tree.cites:
        out["cites"] = list(tree.cites)
    out["children"] = [_unit_to_json(c) for c in tree.children]
    return out


def load_statutes(path) -> list[StatuteTree]:
    with open(path, encoding="utf-8") as fh:
        data = json.load(fh)
    if isinstance(data, dict):
        data = [data]
    trees = [tree_from_json(obj) for obj in data]
    for tree in trees:
        errors = tree.level_errors()
        if errors:
            raise ValueError(f"{path}: act {tree.act_id}: {errors[0]}")
    return trees


def dump_statutes(trees: list[StatuteTree], path) -> None:
    payload = [tree_to_json(t) for t in sorted(trees, key=lambda t: t.act_id)]
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(payload, fh, indent=2, ensure_ascii=False)
        fh.write("\n")
