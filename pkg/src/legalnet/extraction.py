"""Pattern-based extraction of statute and precedent citations.

Statute citations take the form ``<Section|Article> <number> of the <Act>``,
where the act name either ends in a four-digit year, is one of the known act
names passed by the caller, or is the Constitution. Unit lists such as
``Sections 34 and 302 of the Indian Penal Code, 1860`` expand to one citation
per unit. Act names from the caller's index that occur on their own are
reported as whole-act citations.
"""

from __future__ import annotations

import re
from dataclasses import asdict, dataclass
from functools import lru_cache
from typing import Literal

from legalnet.graph import NodeKind
from legalnet.statutes import StatuteTree, StatuteUnit

UnitKind = Literal["section", "article", "none"]

_SMALL_WORDS = frozenset(
    "a an and as at by for from in of on or the to with under".split()
)
_TRAILING_PUNCT = ".,;:"
_YEAR_RE = re.compile(r"^(.*?\S)\s*,?\s*(\d{4})$")


@dataclass(frozen=True)
class StatuteCitation:
    unit_kind: UnitKind
    unit_number: str | None
    act_name_raw: str
    act_name_canonical: str
    char_span: tuple[int, int]

    def to_json(self) -> dict:
        out = asdict(self)
        out["type"] = "statute"
        out["char_span"] = list(self.char_span)
        return out


@dataclass(frozen=True)
class PrecedentCitation:
    matched_text: str
    resolved_doc_id: str | None
    char_span: tuple[int, int]

    def to_json(self) -> dict:
        out = asdict(self)
        out["type"] = "precedent"
        out["char_span"] = list(self.char_span)
        return out


class MalformedOutline(ValueError):
    def __init__(self, line: int, message: str) -> None:
        super().__init__(f"line {line}: {message}")
        self.line = line


# -- act names --------------------------------------------------------------


def _capitalize(word: str) -> str:
    for i, ch in enumerate(word):
        if ch.isalpha():
            return word[:i] + ch.upper() + word[i + 1 :].lower()
    return word


def normalize_act_name(raw: str) -> str:
    """Canonical act name: title case, single spaces, ``", YYYY"`` year suffix.

    >>> normalize_act_name("code of criminal procedure,  1973.")
    'Code of Criminal Procedure, 1973'
    """
    name = " ".join(raw.split())
    name = name.rstrip(_TRAILING_PUNCT + " ")
    while name.lower().startswith("the "):
        name = name[4:].lstrip()
    if not name:
        return ""
    year = None
    m = _YEAR_RE.match(name)
    if m and not m.group(1).isdigit():
        name, year = m.group(1).rstrip(_TRAILING_PUNCT + " "), m.group(2)
    words = name.split(" ")
    long_words = [w for w in words if sum(c.isalpha() for c in w) > 1]
    shouting = len(long_words) > 1 and all(w.upper() == w for w in long_words)
    out = []
    for i, word in enumerate(words):
        letters = [c for c in word if c.isalpha()]
        if i > 0 and word.lower() in _SMALL_WORDS:
            out.append(word.lower())
        elif not shouting and len(letters) > 1 and all(c.isupper() for c in letters):
            out.append(word)  # acronym
        else:
            out.append(_capitalize(word))
    name = " ".join(out)
    return f"{name}, {year}" if year else name


def _strip_year(canonical: str) -> str:
    m = _YEAR_RE.match(canonical)
    return m.group(1).rstrip(",") if m else canonical


def resolve_act_name(raw: str, act_index) -> str:
    """Map a raw act mention onto an index entry when one matches, else normalize it."""
    name = normalize_act_name(raw)
    if name == "Constitution":
        name = "Constitution of India"
    if name in act_index:
        return name
    base = _strip_year(name)
    candidates = sorted(a for a in act_index if _strip_year(a) == base)
    if len(candidates) == 1:
        return candidates[0]
    return name


# -- statute citations ------------------------------------------------------

_CAP_WORD = r"[A-Z][A-Za-z'’().&-]*"
_JOIN_WORD = r"(?:of|the|and|for|in|on|to|by|with|from|&)"
_GENERIC_ACT = rf"{_CAP_WORD}(?:\s+(?:{_CAP_WORD}|{_JOIN_WORD}))*?\s*,?\s+\d{{4}}(?!\d)"
_CONSTITUTION = r"Constitution(?:\s+of\s+India)?(?:\s*,?\s*1950)?"
_UNIT = r"(?i:(?P<unit>sections?|secs?\.|ss\.|articles?|arts?\.))"
_NUM = r"\d+[A-Za-z]?(?![A-Za-z0-9])(?:\s*\(\w{1,4}\))*"
_LIST_SEP = r"\s*(?:,\s*(?:and\s+|or\s+)?|\band\b|\bor\b|&|/)\s*"
_NUM_HEAD = re.compile(r"\d+[A-Za-z]?(?![A-Za-z0-9])")


def _index_alternative(name: str) -> str:
    base = _strip_year(name)
    pattern = r"\s+".join(re.escape(tok) for tok in base.split())
    if base != name:
        year = name[len(name) - 4 :]
        pattern += rf"(?:\s*,?\s*{year}(?!\d))?"
    return pattern


@lru_cache(maxsize=32)
def _compile(act_index: frozenset[str]) -> tuple[re.Pattern, re.Pattern | None]:
    names = sorted(act_index, key=lambda n: (-len(n), n))
    index_alt = "|".join(_index_alternative(n) for n in names)
    act_alts = ([rf"(?i:{index_alt})"] if index_alt else []) + [_GENERIC_ACT, _CONSTITUTION]
    unit_re = re.compile(
        rf"(?<![\w.]){_UNIT}\s*(?P<nums>{_NUM}(?:{_LIST_SEP}{_NUM})*)\s*,?\s*"
        rf"(?:(?i:of)\s+(?:(?i:the)\s+)?)?(?P<act>{'|'.join(act_alts)})"
    )
    whole_re = (
        re.compile(rf"(?<!\w)(?P<act>(?i:{index_alt}))(?!\w)") if index_alt else None
    )
    return unit_re, whole_re


def extract_statute_citations(text: str, act_index=frozenset()) -> list[StatuteCitation]:
    """All statute citations in ``text``, sorted and non-overlapping."""
    act_index = frozenset(act_index)
    unit_re, whole_re = _compile(act_index)
    found: list[StatuteCitation] = []
    taken: list[tuple[int, int]] = []
    for m in unit_re.finditer(text):
        raw = m.group("act")
        canonical = resolve_act_name(raw, act_index)
        kind: UnitKind = "article" if m.group("unit").lower().startswith("a") else "section"
        nums = [(h.group(), m.start("nums") + h.start(), m.start("nums") + h.end())
                for h in _NUM_HEAD.finditer(m.group("nums"))
                if _is_list_head(m.group("nums"), h.start())]
        for i, (num, start, end) in enumerate(nums):
            lo = m.start() if i == 0 else start
            hi = m.end() if i == len(nums) - 1 else end
            found.append(StatuteCitation(kind, num, raw, canonical, (lo, hi)))
        taken.append(m.span())
    if whole_re is not None:
        for m in whole_re.finditer(text):
            if any(m.start() < hi and lo < m.end() for lo, hi in taken):
                continue
            raw = m.group("act")
            found.append(
                StatuteCitation("none", None, raw, resolve_act_name(raw, act_index), m.span())
            )
    found.sort(key=lambda c: c.char_span)
    return found


def _is_list_head(nums: str, pos: int) -> bool:
    # Skip numbers inside sub-clause parentheses such as the 1 in "302(1)".
    return nums.count("(", 0, pos) == nums.count(")", 0, pos)


# -- precedent citations ----------------------------------------------------

_PARTY = r"[A-Z][\w.&'’()-]*(?:\s+(?:[A-Z][\w.&'’()-]*|of|and|the|for|&))*"
_VERSUS_RE = re.compile(rf"(?<!\w){_PARTY}\s+(?:v\.|vs\.?|versus)\s+{_PARTY}")


def canonical_title(title: str) -> str:
    return " ".join(title.casefold().split())


def _title_pattern(title: str) -> re.Pattern:
    body = r"\s+".join(re.escape(tok) for tok in title.split())
    return re.compile(rf"(?<!\w){body}(?!\w)", re.IGNORECASE)


def extract_precedent_citations(text: str, case_name_index: dict[str, str]) -> list[PrecedentCitation]:
    """Case-title mentions resolved against ``case_name_index``.

    Overlapping index matches resolve longest first. ``X v. Y`` mentions that
    no index title covers are returned unresolved.
    """
    candidates = []
    for title, doc_id in case_name_index.items():
        key = canonical_title(title)
        if not key:
            continue
        for m in _title_pattern(key).finditer(text):
            candidates.append((m.start(), m.end(), doc_id))
    candidates.sort(key=lambda c: (-(c[1] - c[0]), c[0], c[2]))
    chosen: list[tuple[int, int, str | None]] = []
    for start, end, doc_id in candidates:
        if all(end <= s or e <= start for s, e, _ in chosen):
            chosen.append((start, end, doc_id))
    for m in _VERSUS_RE.finditer(text):
        start, end = m.start(), m.end()
        while end > start and text[end - 1] in ".,;:":
            end -= 1
        if all(end <= s or e <= start for s, e, _ in chosen):
            chosen.append((start, end, None))
    chosen.sort()
    return [PrecedentCitation(text[s:e], d, (s, e)) for s, e, d in chosen]


# -- statute outlines -------------------------------------------------------

_HEADING_RE = re.compile(
    r"^(?P<key>ACT|PART|CHAPTER|TOPIC|SECTION|ARTICLE)\b\s*(?P<rest>.*)$"
)
_NUMBERED_RE = re.compile(r"^(?P<num>[^\s:.]+)[:.]?\s*[-–:]?\s*(?P<title>.*)$")
_LEVEL_OF = {
    "PART": NodeKind.PART,
    "CHAPTER": NodeKind.CHAPTER,
    "TOPIC": NodeKind.TOPIC,
    "SECTION": NodeKind.SECTION,
    "ARTICLE": NodeKind.SECTION,
}
_RANK = {NodeKind.ACT: 0, NodeKind.PART: 1, NodeKind.CHAPTER: 2, NodeKind.TOPIC: 3, NodeKind.SECTION: 4}


def slugify(name: str) -> str:
    return re.sub(r"[^a-z0-9]+", "-", name.lower()).strip("-")


def parse_statute_outline(text: str) -> StatuteTree:
    """Parse ``ACT``/``PART``/``CHAPTER``/``TOPIC``/``SECTION`` headings into a tree.

    Node ids follow ``<act-slug>/<level>:<ordinal>``. Chapter ordinals are
    qualified by their enclosing part (``VI.III``) because chapter numbering
    restarts per part; topics are numbered in order of appearance.
    """
    tree: StatuteTree | None = None
    stack: list[tuple[NodeKind, StatuteTree | StatuteUnit]] = []
    seen: set[str] = set()
    topics = 0
    for lineno, line in enumerate(text.splitlines(), 1):
        m = _HEADING_RE.match(line.strip())
        if not m:
            continue
        key, rest = m.group("key"), m.group("rest").strip()
        if key == "ACT":
            if tree is not None:
                raise MalformedOutline(lineno, "second ACT heading in one outline")
            if not rest:
                raise MalformedOutline(lineno, "ACT heading without a title")
            title = normalize_act_name(rest)
            tree = StatuteTree(act_id=slugify(title), title=title)
            stack = [(NodeKind.ACT, tree)]
            seen.add(tree.act_id)
            continue
        if tree is None:
            raise MalformedOutline(lineno, f"{key} heading before any ACT heading")
        level = _LEVEL_OF[key]
        while _RANK[stack[-1][0]] >= _RANK[level]:
            stack.pop()
        if level is NodeKind.TOPIC:
            topics += 1
            ordinal, title = str(topics), rest
        else:
            nm = _NUMBERED_RE.match(rest)
            if not nm:
                raise MalformedOutline(lineno, f"{key} heading without a number")
            ordinal, title = nm.group("num"), nm.group("title").strip()
            if level is NodeKind.CHAPTER:
                part = next((u for k, u in stack if k is NodeKind.PART), None)
                if part is not None:
                    ordinal = f"{part.ordinal}.{ordinal}"
        unit = StatuteUnit(level, f"{tree.act_id}/{level.value}:{ordinal}", title, ordinal)
        if unit.id in seen:
            raise MalformedOutline(lineno, f"duplicate heading {unit.id}")
        seen.add(unit.id)
        stack[-1][1].children.append(unit)
        stack.append((level, unit))
    if tree is None:
        raise MalformedOutline(0, "outline has no ACT heading")
    return tree
