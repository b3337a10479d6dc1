from __future__ import annotations

import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from catclean.detectors import Diagnosis, NoiseAction, NoiseCategory, NoiseLabel
from catclean.metrics import (
    PRF,
    BleuMode,
    MeteorParams,
    bleu,
    cider,
    evaluate_detectors,
    meteor,
    rouge_l,
    score_corpus,
    sentence_bleu,
)
from oracles import bleu_corpus_oracle, bleu_sentence_oracle, cider_oracle, meteor_oracle, rouge_l_oracle

A, B, C, D, E = "abcde"
_tokens = st.lists(st.sampled_from("abc"), min_size=1, max_size=6)


def test_bleu_identity():
    assert sentence_bleu(list("abcdef"), list("abcdef")) == [1.0, 1.0, 1.0, 1.0]


def test_corpus_bleu_brevity_penalty():
    score = bleu([[A, B, C, D]], [[A, B, C, D, E]], 4, BleuMode.CORPUS)
    assert score[0] == pytest.approx(math.exp(1 - 5 / 4))
    assert round(score[0], 4) == 0.7788


def test_bleu_disjoint():
    assert bleu([["x", "y"]], [[A, B]])[0] == 0.0


def test_bleu_empty_hypothesis_scores_zero():
    assert sentence_bleu([], [A, B]) == [0.0, 0.0, 0.0, 0.0]


def test_bleu_length_mismatch():
    with pytest.raises(ValueError):
        bleu([[A]], [[A], [B]])


def test_rouge_l_examples():
    assert rouge_l([A, B, C], [A, B, C]) == 1.0
    assert rouge_l([A, B, C], [A, C, B]) == pytest.approx(2 / 3)
    assert rouge_l([A, B], ["x", "y"]) == 0.0


def test_meteor_identical_four_tokens():
    assert meteor([A, B, C, D], [A, B, C, D]) == pytest.approx(0.9921875, abs=1e-12)


def test_meteor_swapped_pair():
    assert meteor([A, B], [B, A]) == pytest.approx(0.5, abs=1e-12)


def test_meteor_disjoint():
    assert meteor([A], [B]) == 0.0


def test_meteor_prefers_contiguous_alignment():
    # [a, b, a] vs [a, b]: pick the first a so there is one chunk
    assert meteor([A, B, A], [A, B]) == pytest.approx(meteor_oracle([A, B, A], [A, B]))


@settings(max_examples=150, deadline=None)
@given(st.lists(st.sampled_from("abc"), min_size=1, max_size=4), st.lists(st.sampled_from("abc"), min_size=1, max_size=4))
def test_meteor_matches_enumeration(h, r):
    assert meteor(h, r) == pytest.approx(meteor_oracle(h, r), abs=1e-12)


@given(_tokens, _tokens)
def test_meteor_bounded_by_fmean(h, r):
    p = MeteorParams()
    score = meteor(h, r, p)
    m = sum(min(h.count(t), r.count(t)) for t in set(h))
    fmean = 0.0 if m == 0 else (m / len(h)) * (m / len(r)) / (p.alpha * m / len(h) + (1 - p.alpha) * m / len(r))
    assert 0.0 <= score <= fmean + 1e-12


def test_cider_shared_unigram_example():
    hyps = [[A, B], [A, C]]
    refs = [[A, B], [A, C]]
    scores, mean = cider(hyps, refs)
    assert scores == pytest.approx(cider_oracle(hyps, refs), abs=1e-12)
    # a carries zero weight; b alone drives the unigram cosine to 1
    assert scores[0] == pytest.approx(10.0 * (1 + 1 + 0 + 0) / 4)
    assert mean == pytest.approx(sum(scores) / 2)


def test_cider_identical_distinct_references():
    sents = [list("abcd"), list("efgh"), list("ijkl")]
    scores, mean = cider(sents, sents)
    assert scores == pytest.approx([10.0] * 3)


def test_cider_disjoint():
    scores, _ = cider([[A, B], [C, D]], [["x", "y"], ["z", "w"]])
    assert scores == [0.0, 0.0]


@settings(max_examples=100, deadline=None)
@given(st.lists(st.tuples(_tokens, _tokens), min_size=2, max_size=4))
def test_cider_matches_oracle_on_random_corpora(rows):
    hyps, refs = [h for h, _ in rows], [r for _, r in rows]
    scores, _ = cider(hyps, refs)
    assert scores == pytest.approx(cider_oracle(hyps, refs), abs=1e-9)


@settings(max_examples=100)
@given(st.lists(st.tuples(_tokens, _tokens), min_size=1, max_size=4))
def test_corpus_bleu_matches_oracle_on_random_corpora(rows):
    hyps, refs = [h for h, _ in rows], [r for _, r in rows]
    got = bleu(hyps, refs, 4, BleuMode.CORPUS)
    assert got == pytest.approx([bleu_corpus_oracle(hyps, refs, k) for k in range(1, 5)], abs=1e-9)


@settings(max_examples=100)
@given(st.lists(st.tuples(_tokens, _tokens), min_size=1, max_size=4))
def test_sentence_bleu_mode_averages_sentences(rows):
    hyps, refs = [h for h, _ in rows], [r for _, r in rows]
    got = bleu(hyps, refs, 4, BleuMode.SENTENCE)
    want = [sum(bleu_sentence_oracle(h, r, k) for h, r in rows) / len(rows) for k in range(1, 5)]
    assert got == pytest.approx(want, abs=1e-9)


@given(_tokens, _tokens)
def test_rouge_l_matches_oracle(h, r):
    assert rouge_l(h, r) == pytest.approx(rouge_l_oracle(h, r), abs=1e-12)


def test_score_corpus_case_one_endpoint():
    before = "returns the value for the cell at code column index code and".split()
    after = "returns the value for the cell at code column index code".split()
    report = score_corpus([after], [after])
    assert report.bleu[3] == 1.0
    assert score_corpus([before], [after]).bleu[3] < 1.0
    assert report.cider is None


def test_score_corpus_to_dict_keys():
    sents = [list("abcd"), list("efgh")]
    data = score_corpus(sents, sents).to_dict()
    assert data["cider"] == pytest.approx(10.0)
    assert data["rouge_l"] == 1.0


def _diag(pid, *cats):
    return Diagnosis(pid, tuple(NoiseLabel(c, NoiseAction.REMOVE, "") for c in cats))


def test_evaluate_identical_predictions(gold_labels):
    predicted = [_diag(pid, *cats) for pid, cats in gold_labels.items()]
    result = evaluate_detectors(predicted, gold_labels)
    assert result.micro.f1 == 1.0
    assert result.macro_f1 == 1.0
    assert all(prf.f1 == 1.0 for prf in result.per_category.values())


def test_evaluate_half_right():
    q = NoiseCategory.INTERROGATION
    gold = {"a": {q}, "b": {q}, "c": set()}
    predicted = [_diag("a", q), _diag("b"), _diag("c", q)]
    prf = evaluate_detectors(predicted, gold).per_category[q]
    assert (prf.precision, prf.recall, prf.f1) == (0.5, 0.5, 0.5)


def test_evaluate_missing_gold_id():
    with pytest.raises(ValueError, match="zz"):
        evaluate_detectors([_diag("zz")], {"a": set()})


def test_prf_from_counts_empty_sides():
    assert PRF.from_counts(0, 0, 0).f1 == 1.0
    assert PRF.from_counts(0, 3, 0).precision == 0.0
