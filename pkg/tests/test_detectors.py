from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from catclean.corpus import CodeCommentPair, Dataset, Language, Partition
from catclean.detectors import (
    CATEGORIES,
    DetectorError,
    NoiseAction,
    NoiseCategory,
    RuleConfig,
    Thresholds,
    detect_auto_code,
    detect_block_comment_code,
    detect_commented_out_method,
    detect_content_tampering,
    detect_empty_function,
    detect_interrogation,
    detect_non_literal,
    detect_over_splitting,
    detect_partial_sentence,
    detect_under_development,
    detect_verbose_sentence,
    diagnose,
    duplicate_labels,
    find_duplicates,
)
from catclean.synthetic import fuzz_corpus

HIGH_VALUE = "/** Returns the high-value\n * for an item within a series. */"
XBLOCK = '"""\nGenerate a CSV file containing a summary of the xBlock usage\nArguments:course_data\n"""'
GET_FIX_QUALITY = (
    "public int getFixQuality() {\n"
    "    checkRefresh();\n"
    "    // TODO: Why is he using Math.round?\n"
    "    return Math.round(quality);\n"
    "}"
)
INIT = "public void init() {\n    jTextField = null;\n}"


def pair(comment, code="int f(){return 1;}", raw=None, language=Language.JAVA, pid="x", partition=Partition.TRAIN):
    return CodeCommentPair(pid, code, comment, raw, language, partition)


# partial sentence

def test_partial_with_raw_proposes_full_sentence():
    label = detect_partial_sentence(pair("returns the high value", raw=HIGH_VALUE))
    assert label.category is NoiseCategory.PARTIAL_SENTENCE
    assert label.action is NoiseAction.UPDATE
    assert label.proposed_comment == "returns the high value for an item within a series"


def test_partial_exact_first_sentence_is_clean():
    assert detect_partial_sentence(pair("Returns the high-value for an item within a series.", raw=HIGH_VALUE)) is None


def test_partial_fallback_dangling_conjunction_removes():
    label = detect_partial_sentence(pair("returns the value for the cell at code column index code and"))
    assert label.action is NoiseAction.REMOVE
    assert label.fallback
    assert label.evidence.startswith("fallback: ")


# verbose sentence

def test_verbose_with_raw_trims_to_first_sentence():
    code = "def f(course_data):\n    return 1"
    label = detect_verbose_sentence(
        pair("generate a csv file containing a summary of the xblock usage arguments course data", code, XBLOCK, Language.PYTHON)
    )
    assert label.action is NoiseAction.UPDATE
    assert label.proposed_comment == "generate a csv file containing a summary of the xblock usage"


def test_verbose_single_sentence_is_clean():
    assert detect_verbose_sentence(pair("returns the index")) is None


def test_verbose_fallback_cuts_at_interior_terminator():
    label = detect_verbose_sentence(pair("sorts the list. uses quicksort internally for speed"))
    assert label.proposed_comment == "sorts the list."
    assert label.fallback


# content tampering

def test_tampering_html_tag_in_raw():
    raw = "/** <p> Builds the JASPIC application context.</p> */"
    label = detect_content_tampering(pair("p builds the jaspic application context p", raw=raw))
    assert label.evidence == "<p>"
    assert label.action is NoiseAction.REMOVE


def test_tampering_tokenized_url_lexicon_fallback():
    label = detect_content_tampering(pair("https developers google com protocol buffers doc encoding"))
    assert label is not None and label.fallback


def test_tampering_plain_sentence_clean():
    assert detect_content_tampering(pair("returns the index")) is None


def test_tampering_ignores_generic_type_syntax():
    raw = "/** Returns a List<String> of names. */"
    assert detect_content_tampering(pair("returns a list string of names", raw=raw)) is None


# over-splitting

def test_over_splitting_rejoins_identifier():
    label = detect_over_splitting(pair("this method initializes j text field", INIT))
    assert label.proposed_comment == "this method initializes jTextField"
    assert label.action is NoiseAction.UPDATE


def test_over_splitting_already_joined_is_clean():
    assert detect_over_splitting(pair("this method initializes jTextField", INIT)) is None


def test_over_splitting_joins_ordinary_phrase():
    code = "void update(int v) {\n    maxValue = v;\n}"
    assert detect_over_splitting(pair("set max value", code)).proposed_comment == "set maxValue"


# non-literal

def test_non_literal_chinese_raw():
    raw = "将JSONArray转换为Bean的List，默认为ArrayList"
    assert detect_non_literal(pair("jsonarray bean list arraylist", raw=raw)).action is NoiseAction.REMOVE


def test_non_literal_ascii_clean():
    assert detect_non_literal(pair("returns the index")) is None


def test_non_literal_ratio_threshold():
    cfg = RuleConfig(thresholds=Thresholds(nonliteral_ratio=0.2))
    assert detect_non_literal(pair("naïve approach"), cfg) is None
    assert detect_non_literal(pair("naïve approach")) is not None


# interrogation

@pytest.mark.parametrize(
    "comment, hit",
    [
        ("do we need to show the upgrade wizard prompt ?", True),
        ("returns the index", False),
        ("is it a good idea using userid from aspnet membership table as a foreign key", True),
        ("is empty", False),
    ],
)
def test_interrogation(comment, hit):
    assert (detect_interrogation(pair(comment)) is not None) is hit


# under development

@pytest.mark.parametrize(
    "comment, hit",
    [
        ("description of the method", True),
        ("sorts the list in place", False),
        ("todo add caching here", True),
        ("a todoist client", False),
        ("work-in-progress parser", True),
    ],
)
def test_under_development(comment, hit):
    assert (detect_under_development(pair(comment)) is not None) is hit


# empty function

def test_empty_java_body():
    assert detect_empty_function(pair("ends", "protected void end(){}")) is not None


def test_empty_python_body():
    assert detect_empty_function(pair("does f", "def f():\n    pass", language=Language.PYTHON)) is not None


def test_python_docstring_only_body_is_empty():
    code = 'def f():\n    """Nothing."""'
    assert detect_empty_function(pair("does f", code, language=Language.PYTHON)) is not None


def test_non_empty_body():
    assert detect_empty_function(pair("one")) is None


def test_missing_body_raises():
    with pytest.raises(DetectorError, match="cannot locate method body"):
        detect_empty_function(pair("c", "int x = 1;"))


def test_missing_body_recorded_in_diagnosis():
    d = diagnose(pair("c", "int x = 1;"))
    assert d.labels == ()
    assert any("cannot locate method body" in e for e in d.errors)


# commented-out method

def test_commented_out_signature_in_raw():
    label = detect_commented_out_method(pair("transform", raw="// public String transformTypeID(URI typeuri){"))
    assert label is not None


def test_commented_out_prose_clean():
    assert detect_commented_out_method(pair("returns the index", raw="/** Returns the index. */")) is None


def test_commented_out_codey_lines():
    assert detect_commented_out_method(pair("x = 1; y = 2;", raw="// x = 1;\n// y = 2;")) is not None


# block-comment code

def test_block_comment_code_strips_inner_comment():
    label = detect_block_comment_code(pair("get gps quality data", GET_FIX_QUALITY))
    assert label.action is NoiseAction.UPDATE
    assert "TODO" not in label.proposed_code
    assert label.proposed_code.splitlines()[1].strip() == "checkRefresh();"


def test_block_comment_code_clean_body():
    assert detect_block_comment_code(pair("one")) is None


def test_block_comment_code_trailing_comment():
    label = detect_block_comment_code(pair("one", "int f(){return 1;/*a*/}"))
    assert "/*a*/" not in label.proposed_code


# auto code

def test_auto_code_test_method():
    code = "public void testConstructor() {\n    new Foo();\n    assertNotNull(x);\n}"
    assert detect_auto_code(pair("test the constructor", code)).action is NoiseAction.REMOVE


def test_auto_code_two_statements_dissimilar_comment():
    assert detect_auto_code(pair("get gps quality data", GET_FIX_QUALITY)) is None


def test_auto_code_name_pattern_miss():
    assert detect_auto_code(pair("compute the checksum", "int computeChecksum(){return 1;}")) is None


def test_auto_code_trivial_getter():
    assert detect_auto_code(pair("returns the name", "public String getName() {\n    return name;\n}")) is not None


# diagnose

def test_clean_pair_has_no_labels():
    assert diagnose(pair("returns the index")).labels == ()


def test_get_fix_quality_is_only_block_comment_code():
    assert diagnose(pair("get gps quality data", GET_FIX_QUALITY)).categories == {NoiseCategory.BLOCK_COMMENT_CODE}


def test_multi_label_empty_setter_question():
    d = diagnose(pair("set x ?", "public void setX(int x) {}"))
    assert d.categories == {NoiseCategory.EMPTY_FUNCTION, NoiseCategory.AUTO_CODE, NoiseCategory.INTERROGATION}


def test_unterminated_code_skips_code_rules():
    d = diagnose(pair("todo fix", "int f(){ return \"oops; }"))
    assert d.tokenize_failed
    assert d.categories == {NoiseCategory.UNDER_DEVELOPMENT}


def test_gold_corpus_one_category_each(gold_corpus, gold_labels):
    for p in gold_corpus:
        if p.id == "gold-duplicate":
            continue
        assert diagnose(p).categories == gold_labels[p.id], p.id


# duplicates

def test_duplicate_keeper_prefers_train():
    ds = Dataset(
        (
            pair("a", "int f(){return 1;}", pid="t", partition=Partition.TEST),
            pair("b", "int f() { return 1 ; }", pid="r", partition=Partition.TRAIN),
        )
    )
    groups = find_duplicates(ds)
    assert list(groups.values()) == [["r", "t"]]
    labels = duplicate_labels(groups)
    assert set(labels) == {"t"}
    assert labels["t"].category is NoiseCategory.DUPLICATED_CODE
    assert labels["t"].evidence == "duplicate of r"


def test_all_distinct_has_no_groups():
    ds = Dataset((pair("c", "int f(){}", pid="a"), pair("c", "int g(){}", pid="b")))
    assert find_duplicates(ds) == {}


def test_same_partition_tie_breaks_by_index():
    ds = Dataset(tuple(pair("c", pid=str(i)) for i in (2, 0, 1)))
    assert list(find_duplicates(ds).values()) == [["2", "0", "1"]]


# properties

_fuzz_pairs = st.integers(0, 10_000).map(lambda s: fuzz_corpus(s, n=6).pairs)


@settings(max_examples=40, deadline=None)
@given(_fuzz_pairs)
def test_diagnose_is_pure(pairs):
    for p in pairs:
        assert diagnose(p) == diagnose(p)


@settings(max_examples=40, deadline=None)
@given(_fuzz_pairs, st.sampled_from([c for c in CATEGORIES if c is not NoiseCategory.DUPLICATED_CODE]))
def test_disabling_a_rule_removes_only_that_category(pairs, category):
    cfg = RuleConfig(enabled={category: False})
    for p in pairs:
        full = diagnose(p).categories
        assert diagnose(p, cfg).categories == full - {category}


@settings(max_examples=40, deadline=None)
@given(_fuzz_pairs)
def test_labels_have_one_entry_per_category_and_valid_proposals(pairs):
    for p in pairs:
        d = diagnose(p)
        cats = [label.category for label in d.labels]
        assert len(cats) == len(set(cats))
        for label in d.labels:
            if label.action is NoiseAction.UPDATE:
                assert label.proposed_comment is not None or label.proposed_code is not None


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10_000))
def test_duplicate_groups_partition_their_members(seed):
    ds = fuzz_corpus(seed, n=20)
    groups = find_duplicates(ds)
    members = [pid for ids in groups.values() for pid in ids]
    assert len(members) == len(set(members))
    assert all(len(ids) >= 2 for ids in groups.values())
    assert set(duplicate_labels(groups)) == {pid for ids in groups.values() for pid in ids[1:]}
