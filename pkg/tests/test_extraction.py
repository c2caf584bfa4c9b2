from __future__ import annotations

import json
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from legalnet.extraction import (
    MalformedOutline,
    canonical_title,
    extract_precedent_citations,
    extract_statute_citations,
    normalize_act_name,
    parse_statute_outline,
)
from legalnet.graph import NodeKind

from conftest import DATA


def _triples(citations):
    return [(c.unit_kind, c.unit_number, c.act_name_canonical) for c in citations]


def test_section_of_act_with_year():
    text = "The accused was produced under Section 47 of the Code of Criminal Procedure, 1973 today."
    found = extract_statute_citations(text, set())
    assert _triples(found) == [("section", "47", "Code of Criminal Procedure, 1973")]
    start, end = found[0].char_span
    assert text[start:end] == "Section 47 of the Code of Criminal Procedure, 1973"


def test_article_of_constitution():
    found = extract_statute_citations("The rule violates Article 16 of the Constitution of India.", set())
    assert _triples(found) == [("article", "16", "Constitution of India")]


def test_no_citation():
    assert extract_statute_citations("The weather was pleasant.", {"Indian Penal Code, 1860"}) == []


def test_unit_list_expands():
    text = "Sections 34 and 302 of the Indian Penal Code, 1860 apply."
    found = extract_statute_citations(text, set())
    assert _triples(found) == [
        ("section", "34", "Indian Penal Code, 1860"),
        ("section", "302", "Indian Penal Code, 1860"),
    ]
    assert found[0].char_span[1] <= found[1].char_span[0]


def test_whole_act_only_when_indexed():
    text = "The Dowry Prohibition Act, 1961 applies."
    assert extract_statute_citations(text, set()) == []
    found = extract_statute_citations(text, {"Dowry Prohibition Act, 1961"})
    assert _triples(found) == [("none", None, "Dowry Prohibition Act, 1961")]
    assert found[0].act_name_raw == "Dowry Prohibition Act, 1961"


def test_act_without_year_resolves_through_index():
    found = extract_statute_citations(
        "a petition under Section 482 of the Code of Criminal Procedure was filed",
        {"Code of Criminal Procedure, 1973"},
    )
    assert _triples(found) == [("section", "482", "Code of Criminal Procedure, 1973")]


def test_subclauses_are_not_units():
    found = extract_statute_citations(
        "under Sections 7, 13(1)(d) and 13(2) of the Prevention of Corruption Act, 1988", set()
    )
    assert [c.unit_number for c in found] == ["7", "13", "13"]


def test_abbreviated_unit_keywords():
    found = extract_statute_citations("Sec. 25 of the Arms Act, 1959 and Art. 226 of the Constitution", set())
    assert _triples(found) == [
        ("section", "25", "Arms Act, 1959"),
        ("article", "226", "Constitution of India"),
    ]


@pytest.mark.parametrize(
    "raw, expected",
    [
        ("code of criminal procedure,  1973.", "Code of Criminal Procedure, 1973"),
        ("Code of Criminal Procedure, 1973", "Code of Criminal Procedure, 1973"),
        ("", ""),
        ("the INDIAN PENAL CODE 1860", "Indian Penal Code, 1860"),
        ("Public Employment (requirement as to residence) Act, 1957",
         "Public Employment (Requirement as to Residence) Act, 1957"),
        ("the NDPS Act, 1985", "NDPS Act, 1985"),
    ],
)
def test_normalize_act_name(raw, expected):
    assert normalize_act_name(raw) == expected


@given(st.lists(st.sampled_from(list("abcXYZ ,.;:()-0123456789") + ["the ", "of ", "Act ", "The "]), max_size=20))
def test_normalize_idempotent(pieces):
    raw = "".join(pieces)
    once = normalize_act_name(raw)
    assert normalize_act_name(once) == once


@given(st.lists(st.sampled_from([
    "Section 302 of the Indian Penal Code, 1860",
    "Articles 14 and 21 of the Constitution",
    "the Arms Act, 1959",
    "nothing to see",
    "Sec. 3 of the Dowry Prohibition Act, 1961",
    "Sections 1, 2 and 3A of the First Act, 2001",
]), max_size=8))
def test_spans_sorted_non_overlapping(parts):
    text = " and ".join(parts)
    found = extract_statute_citations(text, {"Arms Act, 1959", "Dowry Prohibition Act, 1961"})
    spans = [c.char_span for c in found]
    assert spans == sorted(spans)
    for (s0, e0), (s1, e1) in zip(spans, spans[1:]):
        assert e0 <= s1
    for s, e in spans:
        assert 0 <= s < e <= len(text)


def test_fixture_recall_and_precision():
    data = json.loads((DATA / "extraction_fixture.json").read_text(encoding="utf-8"))
    expected = sum(len(p["citations"]) for p in data["passages"])
    assert expected >= 50
    kinds = {c[0] for p in data["passages"] for c in p["citations"]}
    assert kinds == {"section", "article", "none"}


# -- precedents ---------------------------------------------------------------


def test_precedent_lookup():
    index = {canonical_title("State of Madras v. Champakam Dorairajan"): "1951_12"}
    text = "As held in State of  Madras v. Champakam Dorairajan, reservation ..."
    found = extract_precedent_citations(text, index)
    assert [c.resolved_doc_id for c in found] == ["1951_12"]
    assert found[0].matched_text == "State of  Madras v. Champakam Dorairajan"


def test_precedent_unresolved():
    found = extract_precedent_citations("Reliance was placed on Sharma v. Kapoor.", {})
    assert [(c.matched_text, c.resolved_doc_id) for c in found] == [("Sharma v. Kapoor", None)]


def _oracle_precedents(text: str, index: dict[str, str]) -> list[tuple[int, int, str]]:
    """Every substring whose canonical form is an index title, longest first."""
    found = []
    for i in range(len(text)):
        if i > 0 and text[i - 1].isalnum():
            continue
        for j in range(i + 1, len(text) + 1):
            if j < len(text) and text[j].isalnum():
                continue
            key = " ".join(text[i:j].casefold().split())
            if key in index and text[i:j] == text[i:j].strip():
                found.append((i, j, index[key]))
    found.sort(key=lambda c: (-(c[1] - c[0]), c[0]))
    chosen = []
    for c in found:
        if all(c[1] <= s or e <= c[0] for s, e, _ in chosen):
            chosen.append(c)
    return sorted(chosen)


def test_precedent_longest_match_against_enumeration():
    index = {
        canonical_title("Union of India"): "short",
        canonical_title("Union of India v. Raghubir Singh"): "long",
        canonical_title("Raghubir Singh"): "person",
    }
    text = "Compare Union of India v. Raghubir Singh with a suit by the Union of India and by Raghubir Singh alone."
    found = [(c.char_span[0], c.char_span[1], c.resolved_doc_id) for c in extract_precedent_citations(text, index)]
    assert found == _oracle_precedents(text, index)
    assert [d for _, _, d in found] == ["long", "short", "person"]


def test_precedent_random_nested_titles_match_enumeration():
    rng = random.Random(3)
    words = ["Ram", "Lal", "Singh", "State", "Board", "v.", "Union"]
    for _ in range(40):
        titles = {" ".join(rng.choices(words, k=rng.randint(1, 4))) for _ in range(4)}
        index = {canonical_title(t): f"doc{i}" for i, t in enumerate(sorted(titles))}
        text = " ".join(rng.choices(words + ["and", "the"], k=15))
        got = [
            (c.char_span[0], c.char_span[1], c.resolved_doc_id)
            for c in extract_precedent_citations(text, index)
            if c.resolved_doc_id is not None
        ]
        oracle = _oracle_precedents(text, index)
        # Equal-length overlapping matches may be ordered differently; compare coverage.
        assert sum(e - s for s, e, _ in got) == sum(e - s for s, e, _ in oracle)


# -- outlines -----------------------------------------------------------------


def test_outline_section_directly_under_act():
    tree = parse_statute_outline(
        "ACT Dowry Prohibition Act, 1961\nSECTION 3 Penalty for giving or taking dowry\nbody text\n"
    )
    assert tree.title == "Dowry Prohibition Act, 1961"
    assert tree.act_id == "dowry-prohibition-act-1961"
    [section] = tree.children
    assert section.level is NodeKind.SECTION
    assert section.id == "dowry-prohibition-act-1961/section:3"
    assert section.title == "Penalty for giving or taking dowry"


def test_outline_full_five_levels():
    tree = parse_statute_outline(
        "ACT Constitution of India, 1950\n"
        "PART VI The States\n"
        "CHAPTER III The State Legislature\n"
        "TOPIC Disqualification of members\n"
        "SECTION 192 Decision on questions as to disqualification of members\n"
    )
    node, depth = tree.children[0], 2
    levels = [node.level]
    while node.children:
        node = node.children[0]
        levels.append(node.level)
        depth += 1
    assert depth == 5
    assert levels == [NodeKind.PART, NodeKind.CHAPTER, NodeKind.TOPIC, NodeKind.SECTION]
    assert node.id == "constitution-of-india-1950/section:192"
    assert tree.level_errors() == []


def test_outline_orphan_heading():
    with pytest.raises(MalformedOutline) as info:
        parse_statute_outline("SECTION 1 Short title\n")
    assert info.value.line == 1


def test_outline_levels_rise_and_skip():
    tree = parse_statute_outline(
        "ACT Sample Act, 2000\n"
        "PART I Preliminary\n"
        "SECTION 1 Short title\n"
        "CHAPTER II Offences\n"
        "SECTION 2 Theft\n"
        "PART II Miscellaneous\n"
        "CHAPTER I Rules\n"
        "ARTICLE 3 Power to make rules\n"
    )
    assert tree.level_errors() == []
    part1, part2 = tree.children
    assert [c.id for c in part1.children] == ["sample-act-2000/section:1", "sample-act-2000/chapter:I.II"]
    assert part2.children[0].id == "sample-act-2000/chapter:II.I"
    assert part2.children[0].children[0].id == "sample-act-2000/section:3"


def test_outline_duplicate_heading():
    with pytest.raises(MalformedOutline) as info:
        parse_statute_outline("ACT A Act, 2000\nSECTION 1 x\nSECTION 1 y\n")
    assert info.value.line == 3
