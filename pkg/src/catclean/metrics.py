"""Summary scoring (BLEU, ROUGE-L, METEOR, CIDEr) and detector evaluation."""
from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from typing import Mapping, Sequence

from . import kernels
from .detectors import CATEGORIES, Diagnosis, NoiseCategory

Tokens = Sequence[str]


class BleuMode(str, Enum):
    CORPUS = "corpus"
    SENTENCE = "sentence"


def ngrams(tokens: Tokens, n: int) -> Counter:
    return Counter(tuple(tokens[i:i + n]) for i in range(len(tokens) - n + 1))


def _clipped(hyp: Tokens, ref: Tokens, n: int) -> tuple[int, int]:
    h = ngrams(hyp, n)
    if not h:
        return 0, 0
    r = ngrams(ref, n)
    return sum(min(c, r[g]) for g, c in h.items()), max(len(hyp) - n + 1, 0)


def _brevity(ref_len: int, hyp_len: int) -> float:
    if hyp_len == 0:
        return 0.0
    return min(1.0, math.exp(1.0 - ref_len / hyp_len))


def _cumulative(precisions: Sequence[float], bp: float, max_n: int) -> list[float]:
    out = []
    log_sum = 0.0
    dead = False
    for n in range(max_n):
        p = precisions[n]
        if p <= 0.0:
            dead = True
        if dead:
            out.append(0.0)
            continue
        log_sum += math.log(p)
        out.append(bp * math.exp(log_sum / (n + 1)))
    return out


def bleu(
    hypotheses: Sequence[Tokens],
    references: Sequence[Tokens],
    max_n: int = 4,
    mode: BleuMode | str = BleuMode.SENTENCE,
) -> list[float]:
    """Cumulative BLEU-1..max_n.

    Corpus mode pools clipped n-gram counts and lengths over the corpus.
    Sentence mode scores each pair with add-one smoothing for n >= 2 and
    averages the sentence scores.
    """
    if len(hypotheses) != len(references):
        raise ValueError(f"length mismatch: {len(hypotheses)} hypotheses, {len(references)} references")
    if not hypotheses:
        raise ValueError("no sentences to score")
    mode = BleuMode(mode)
    if mode is BleuMode.CORPUS:
        matched = [0] * max_n
        total = [0] * max_n
        hyp_len = ref_len = 0
        for hyp, ref in zip(hypotheses, references):
            hyp_len += len(hyp)
            ref_len += len(ref)
            for n in range(max_n):
                m, t = _clipped(hyp, ref, n + 1)
                matched[n] += m
                total[n] += t
        precisions = [m / t if t else 0.0 for m, t in zip(matched, total)]
        return _cumulative(precisions, _brevity(ref_len, hyp_len), max_n)
    sums = [0.0] * max_n
    for hyp, ref in zip(hypotheses, references):
        for n, score in enumerate(sentence_bleu(hyp, ref, max_n)):
            sums[n] += score
    return [s / len(hypotheses) for s in sums]


def sentence_bleu(hyp: Tokens, ref: Tokens, max_n: int = 4) -> list[float]:
    if not hyp:
        return [0.0] * max_n
    precisions = []
    for n in range(1, max_n + 1):
        m, t = _clipped(hyp, ref, n)
        if n == 1:
            precisions.append(m / t)
        else:
            precisions.append((m + 1) / (t + 1))
    return _cumulative(precisions, _brevity(len(ref), len(hyp)), max_n)


def rouge_l(hypothesis: Tokens, reference: Tokens, beta: float = 1.2) -> float:
    if beta <= 0:
        raise ValueError("beta must be positive")
    if not hypothesis or not reference:
        return 0.0
    lcs = kernels.lcs_length(list(hypothesis), list(reference))
    if lcs == 0:
        return 0.0
    p = lcs / len(hypothesis)
    r = lcs / len(reference)
    b2 = beta * beta
    return (1 + b2) * p * r / (r + b2 * p)


@dataclass(frozen=True)
class MeteorParams:
    alpha: float = 0.9
    beta: float = 3.0
    gamma: float = 0.5

    def validate(self) -> "MeteorParams":
        if not 0.0 < self.alpha < 1.0 or self.beta <= 0.0 or not 0.0 <= self.gamma <= 1.0:
            raise ValueError(f"invalid METEOR parameters: {self}")
        return self


#: Above this many candidate alignments METEOR falls back to greedy chunking.
EXACT_ALIGNMENT_LIMIT = 50_000


def _alignment_count(hyp: Tokens, ref: Tokens) -> int:
    h, r = Counter(hyp), Counter(ref)
    total = 1
    for w in h.keys() & r.keys():
        k = min(h[w], r[w])
        total *= math.comb(h[w], k) * math.perm(r[w], k)
        if total > EXACT_ALIGNMENT_LIMIT:
            break
    return total


def _min_chunks_exact(hyp: Tokens, ref: Tokens, matches: int) -> int:
    """Fewest chunks over all alignments with ``matches`` matched pairs."""
    positions = {}
    for j, w in enumerate(ref):
        positions.setdefault(w, []).append(j)
    n = len(hyp)

    @lru_cache(maxsize=None)
    def best(i: int, used: int, prev: int, count: int) -> int:
        # max number of adjacent links, or -1 if ``matches`` is unreachable
        if count == matches:
            return 0
        if i == n or matches - count > n - i:
            return -1
        result = best(i + 1, used, -2, count)
        for j in positions.get(hyp[i], ()):
            if used >> j & 1:
                continue
            sub = best(i + 1, used | (1 << j), j, count + 1)
            if sub >= 0:
                sub += 1 if j == prev + 1 else 0
                if sub > result:
                    result = sub
        return result

    links = best(0, 0, -2, 0)
    return matches - links


def _min_chunks_greedy(hyp: Tokens, ref: Tokens) -> int:
    remaining = {}
    for j, w in enumerate(ref):
        remaining.setdefault(w, []).append(j)
    chunks = 0
    prev = -2
    for w in hyp:
        slots = remaining.get(w)
        if not slots:
            prev = -2
            continue
        j = prev + 1 if prev + 1 in slots else slots[0]
        slots.remove(j)
        if j != prev + 1:
            chunks += 1
        prev = j
    return chunks


def meteor(hypothesis: Tokens, reference: Tokens, params: MeteorParams | None = None) -> float:
    """Exact-match METEOR with recall-weighted harmonic mean and fragmentation penalty."""
    params = (params or MeteorParams()).validate()
    h, r = Counter(hypothesis), Counter(reference)
    m = sum((h & r).values())
    if m == 0:
        return 0.0
    if _alignment_count(hypothesis, reference) <= EXACT_ALIGNMENT_LIMIT:
        chunks = _min_chunks_exact(tuple(hypothesis), tuple(reference), m)
    else:
        chunks = _min_chunks_greedy(hypothesis, reference)
    p = m / len(hypothesis)
    rec = m / len(reference)
    fmean = p * rec / (params.alpha * p + (1 - params.alpha) * rec)
    penalty = params.gamma * (chunks / m) ** params.beta
    return fmean * (1 - penalty)


def _tfidf(tokens: Tokens, n: int, idf: Mapping) -> dict:
    return {g: c * idf.get(g, 0.0) for g, c in ngrams(tokens, n).items()}


def _cosine(a: Mapping, b: Mapping) -> float:
    na = math.sqrt(sum(v * v for v in a.values()))
    nb = math.sqrt(sum(v * v for v in b.values()))
    if na == 0.0 or nb == 0.0:
        return 0.0
    return sum(v * b.get(g, 0.0) for g, v in a.items()) / (na * nb)


def cider(hypotheses: Sequence[Tokens], references: Sequence[Tokens], max_n: int = 4) -> tuple[list[float], float]:
    """Per-sentence CIDEr (x10 scale, uniform n weights) and their mean."""
    if len(hypotheses) != len(references):
        raise ValueError(f"length mismatch: {len(hypotheses)} hypotheses, {len(references)} references")
    if len(references) < 2:
        raise ValueError("CIDEr needs at least two sentences")
    size = len(references)
    scores = [0.0] * size
    for n in range(1, max_n + 1):
        df = Counter()
        for ref in references:
            df.update(set(ngrams(ref, n)))
        idf = {g: math.log(size / max(1, c)) for g, c in df.items()}
        default = math.log(size)
        for i, (hyp, ref) in enumerate(zip(hypotheses, references)):
            hv = {g: c * idf.get(g, default) for g, c in ngrams(hyp, n).items()}
            rv = _tfidf(ref, n, idf)
            scores[i] += _cosine(hv, rv)
    scores = [10.0 * s / max_n for s in scores]
    return scores, sum(scores) / size


@dataclass(frozen=True)
class ScoreReport:
    bleu: tuple[float, float, float, float]
    rouge_l: float
    meteor: float
    cider: float | None
    bleu_mode: str = BleuMode.SENTENCE.value
    sentences: int = 0

    def to_dict(self) -> dict:
        return {
            "bleu": list(self.bleu),
            "rouge_l": self.rouge_l,
            "meteor": self.meteor,
            "cider": self.cider,
            "bleu_mode": self.bleu_mode,
            "sentences": self.sentences,
        }


def score_corpus(
    hypotheses: Sequence[Tokens],
    references: Sequence[Tokens],
    bleu_mode: BleuMode | str = BleuMode.SENTENCE,
) -> ScoreReport:
    """All four metrics; CIDEr is None for a single-sentence corpus."""
    b = bleu(hypotheses, references, 4, bleu_mode)
    count = len(hypotheses)
    rl = sum(rouge_l(h, r) for h, r in zip(hypotheses, references)) / count
    mt = sum(meteor(h, r) for h, r in zip(hypotheses, references)) / count
    cd = cider(hypotheses, references)[1] if count >= 2 else None
    return ScoreReport(tuple(b), rl, mt, cd, BleuMode(bleu_mode).value, count)


# ---------------------------------------------------------------------------
# detector evaluation


@dataclass(frozen=True)
class PRF:
    precision: float
    recall: float
    f1: float
    tp: int = 0
    fp: int = 0
    fn: int = 0

    @classmethod
    def from_counts(cls, tp: int, fp: int, fn: int) -> "PRF":
        # an empty prediction (or gold) side is perfect only if the other is empty too
        p = tp / (tp + fp) if tp + fp else (1.0 if fn == 0 else 0.0)
        r = tp / (tp + fn) if tp + fn else (1.0 if fp == 0 else 0.0)
        f1 = 2 * p * r / (p + r) if p + r else 0.0
        return cls(p, r, f1, tp, fp, fn)

    def to_dict(self) -> dict:
        return {"precision": self.precision, "recall": self.recall, "f1": self.f1, "tp": self.tp, "fp": self.fp, "fn": self.fn}


@dataclass(frozen=True)
class EvalResult:
    per_category: dict = field(default_factory=dict)
    macro_f1: float = 0.0
    micro: PRF = PRF(1.0, 1.0, 1.0)

    def to_dict(self) -> dict:
        return {
            "per_category": {c.value: prf.to_dict() for c, prf in self.per_category.items()},
            "macro_f1": self.macro_f1,
            "micro": self.micro.to_dict(),
        }


def evaluate_detectors(
    predicted: Sequence[Diagnosis],
    gold: Mapping[str, frozenset | set],
) -> EvalResult:
    """Per-category, micro and macro P/R/F1 of diagnoses against gold labels."""
    missing = [d.pair_id for d in predicted if d.pair_id not in gold]
    if missing:
        raise ValueError("predicted ids missing from gold: " + ", ".join(missing))
    counts = {c: [0, 0, 0] for c in CATEGORIES}
    for diagnosis in predicted:
        pred = diagnosis.categories
        truth = {NoiseCategory(c) for c in gold[diagnosis.pair_id]}
        for c in CATEGORIES:
            if c in pred and c in truth:
                counts[c][0] += 1
            elif c in pred:
                counts[c][1] += 1
            elif c in truth:
                counts[c][2] += 1
    per = {c: PRF.from_counts(*counts[c]) for c in CATEGORIES}
    with_gold = [per[c].f1 for c in CATEGORIES if counts[c][0] + counts[c][2] > 0]
    macro = sum(with_gold) / len(with_gold) if with_gold else 0.0
    micro = PRF.from_counts(*(sum(v[i] for v in counts.values()) for i in range(3)))
    return EvalResult(per, macro, micro)
