from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from catclean.corpus import Language
from catclean.sentence import (
    AlignmentClass,
    FirstSentence,
    Terminator,
    classify_alignment,
    classify_tokens,
    extract_first_sentence,
    find_terminator,
    looks_like_signature,
    normalize_for_match,
    strip_comment_delimiters,
)

HIGH_VALUE = "/** Returns the high-value\n * for an item within a series. */"
XBLOCK = '"""\nGenerate a CSV file containing a summary of the xBlock usage\nArguments:course_data\n"""'


def test_strip_java_block_delimiters():
    raw = "/* Returns the high-value\n * for an item within a series. */"
    assert strip_comment_delimiters(raw) == ["Returns the high-value", "for an item within a series."]


def test_strip_python_hash():
    assert strip_comment_delimiters("# hello", Language.PYTHON) == ["hello"]


def test_strip_python_docstring():
    assert strip_comment_delimiters(XBLOCK, Language.PYTHON) == [
        "Generate a CSV file containing a summary of the xBlock usage",
        "Arguments:course_data",
    ]


def test_first_sentence_spans_lines():
    assert extract_first_sentence(HIGH_VALUE) == FirstSentence(
        "Returns the high-value for an item within a series.", 2, Terminator.PERIOD
    )


def test_first_sentence_single_line():
    assert extract_first_sentence("Does stuff.") == FirstSentence("Does stuff.", 1, Terminator.PERIOD)


def test_first_sentence_stops_at_section_marker():
    assert extract_first_sentence(XBLOCK, Language.PYTHON) == FirstSentence(
        "Generate a CSV file containing a summary of the xBlock usage", 1, Terminator.SECTION_MARKER
    )


def test_first_sentence_stops_at_blank_line():
    first = extract_first_sentence("/**\n * Returns a thing\n *\n * Second para.\n */")
    assert first.text == "Returns a thing"


def test_abbreviation_does_not_terminate():
    assert extract_first_sentence("/** Use e.g. foo. More text. */").text == "Use e.g. foo."


def test_end_of_comment_terminator():
    assert extract_first_sentence("// no period here").terminated_by is Terminator.END_OF_COMMENT


def test_find_terminator():
    assert find_terminator("See e.g. this. Then") == 13
    assert find_terminator("no end") is None


@pytest.mark.parametrize(
    "text, tokens",
    [
        ("Returns the high-value", ["returns", "the", "high", "value"]),
        ("", []),
        ("<p> Builds the JASPIC context.</p>", ["p", "builds", "the", "jaspic", "context", "p"]),
    ],
)
def test_normalize_for_match(text, tokens):
    assert normalize_for_match(text) == tokens


def test_partial_alignment():
    assert classify_alignment("returns the high value", extract_first_sentence(HIGH_VALUE)) is AlignmentClass.PARTIAL


def test_verbose_alignment():
    processed = "generate a csv file containing a summary of the xblock usage arguments course data"
    first = "Generate a CSV file containing a summary of the xBlock usage"
    assert classify_alignment(processed, first) is AlignmentClass.VERBOSE


def test_exact_and_unrelated():
    assert classify_alignment("a b", "a b") is AlignmentClass.EXACT
    assert classify_alignment("x y", "a b") is AlignmentClass.UNRELATED


def test_signature_heuristic():
    assert looks_like_signature("public String transformTypeID(URI typeuri){")
    assert looks_like_signature("def transform(self, uri):")
    assert not looks_like_signature("returns the value")


_words = st.lists(st.sampled_from(["a", "b", "c", "d"]), min_size=1, max_size=8)


@given(_words, _words)
def test_alignment_trichotomy(a, b):
    cls = classify_tokens(a, b)
    if a == b:
        assert cls is AlignmentClass.EXACT
    elif len(a) < len(b) and b[: len(a)] == a:
        assert cls is AlignmentClass.PARTIAL
    elif len(a) > len(b) and a[: len(b)] == b:
        assert cls is AlignmentClass.VERBOSE
    else:
        assert cls is AlignmentClass.UNRELATED


def test_leading_section_marker_gives_empty_sentence():
    first = extract_first_sentence("/**\n * @param x the x\n * Does stuff.\n */")
    assert first == FirstSentence("", 0, Terminator.SECTION_MARKER)
    assert classify_alignment("the x does stuff", first) is AlignmentClass.UNRELATED
