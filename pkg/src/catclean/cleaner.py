"""Dataset cleaning: remove or repair noisy pairs, then drop duplicates.

Each pair is diagnosed and, if any label asks for removal, dropped. Otherwise
its update proposals are applied and the repaired pair is diagnosed again,
until nothing more changes (a repair can expose a new problem, such as a
trimmed comment that now ends on a dangling word). Exact-duplicate grouping
then runs on the survivors' repaired code.
"""
from __future__ import annotations

from concurrent.futures import Executor
from dataclasses import dataclass, replace
from enum import Enum
from functools import partial
from typing import Iterable, Sequence

from .corpus import CodeCommentPair, Dataset, dumps_record
from .detectors import (
    Diagnosis,
    NoiseAction,
    NoiseCategory,
    NoiseLabel,
    RuleConfig,
    code_key,
    diagnose_with_context,
    duplicate_labels,
    group_duplicates,
    _run_rule,
)
from .report import QualityReport, build_report

DEFAULT_MAX_ROUNDS = 8


class Verdict(str, Enum):
    KEPT = "Kept"
    UPDATED = "Updated"
    REMOVED = "Removed"


@dataclass(frozen=True)
class CleanOutcome:
    pair_id: str
    verdict: Verdict
    labels: tuple[NoiseLabel, ...] = ()
    final_pair: CodeCommentPair | None = None
    errors: tuple[str, ...] = ()

    @property
    def categories(self) -> list[NoiseCategory]:
        return [label.category for label in self.labels]

    def to_record(self) -> dict:
        record = {
            "id": self.pair_id,
            "verdict": self.verdict.value,
            "categories": [c.value for c in self.categories],
            "evidence": [label.evidence for label in self.labels],
        }
        if self.errors:
            record["warnings"] = list(self.errors)
        return record


@dataclass(frozen=True)
class DistillResult:
    distilled: Dataset
    outcomes: tuple[CleanOutcome, ...]
    report: QualityReport

    def counts(self) -> dict[Verdict, int]:
        out = {v: 0 for v in Verdict}
        for outcome in self.outcomes:
            out[outcome.verdict] += 1
        return out


_WHOLE_COMMENT = (NoiseCategory.PARTIAL_SENTENCE, NoiseCategory.VERBOSE_SENTENCE)


def apply_updates(
    pair: CodeCommentPair,
    labels: Iterable[NoiseLabel],
    cfg: RuleConfig | None = None,
) -> CodeCommentPair:
    """Apply update proposals in a fixed order.

    A whole-comment replacement (partial or verbose sentence) goes first,
    then tag/URL stripping, then identifier rejoining. When an earlier step
    changed the comment, later proposals are recomputed on the new text.
    """
    by_cat = {label.category: label for label in labels}
    for label in by_cat.values():
        if label.action is not NoiseAction.UPDATE:
            raise ValueError(f"{label.category.value} label is not an update")
    whole = [by_cat[c] for c in _WHOLE_COMMENT if c in by_cat]
    assert len(whole) <= 1, "partial and verbose proposals are mutually exclusive"
    comment = pair.comment
    changed = False
    if whole:
        comment = whole[0].proposed_comment
        changed = True
    for category in (NoiseCategory.CONTENT_TAMPERING, NoiseCategory.OVER_SPLITTING):
        label = by_cat.get(category)
        if label is None:
            continue
        if changed:
            try:
                label = _run_rule(category, pair.replace(comment=comment), _update_cfg(cfg, category))
            except Exception:
                label = None
            if label is None or label.proposed_comment is None:
                continue
        comment = label.proposed_comment
        changed = True
    code = pair.code
    block = by_cat.get(NoiseCategory.BLOCK_COMMENT_CODE)
    if block is not None and block.proposed_code is not None:
        code = block.proposed_code
    if comment == pair.comment and code == pair.code:
        return pair
    return pair.replace(comment=comment, code=code)


def _update_cfg(cfg: RuleConfig | None, category: NoiseCategory) -> RuleConfig:
    cfg = cfg or RuleConfig()
    if cfg.action_for(category) is NoiseAction.UPDATE and cfg.is_enabled(category):
        return cfg
    overrides = dict(cfg.action_override)
    overrides[category] = NoiseAction.UPDATE
    enabled = dict(cfg.enabled)
    enabled[category] = True
    return replace(cfg, action_override=overrides, enabled=enabled)


def _merge(labels: list[NoiseLabel], new: Iterable[NoiseLabel]) -> None:
    for label in new:
        for i, old in enumerate(labels):
            if old.category is label.category:
                if old.action is NoiseAction.UPDATE and label.action is NoiseAction.REMOVE:
                    labels[i] = label
                break
        else:
            labels.append(label)


@dataclass(frozen=True)
class _Settled:
    verdict: Verdict
    labels: tuple[NoiseLabel, ...]
    final_pair: CodeCommentPair | None
    errors: tuple[str, ...]
    key: str | None


def settle_pair(pair: CodeCommentPair, cfg: RuleConfig, max_rounds: int = DEFAULT_MAX_ROUNDS) -> _Settled:
    """Diagnose and repair one pair until it is clean, removed, or out of rounds."""
    labels: list[NoiseLabel] = []
    errors: list[str] = []
    current = pair
    updated = False
    for _ in range(max_rounds):
        diagnosis, ctx = diagnose_with_context(current, cfg)
        for e in diagnosis.errors:
            if e not in errors:
                errors.append(e)
        _merge(labels, diagnosis.labels)
        if any(l.action is NoiseAction.REMOVE for l in diagnosis.labels):
            labels.sort(key=lambda l: l.category.order)
            return _Settled(Verdict.REMOVED, tuple(labels), None, tuple(errors), None)
        if not diagnosis.labels:
            break
        repaired = apply_updates(current, diagnosis.labels, cfg)
        updated = True
        if repaired == current:
            break
        current = repaired
    else:
        ctx = None
    if ctx is None or ctx.pair is not current:
        ctx = diagnose_with_context(current, cfg)[1]
    labels.sort(key=lambda l: l.category.order)
    verdict = Verdict.UPDATED if updated else Verdict.KEPT
    return _Settled(verdict, tuple(labels), current, tuple(errors), code_key(ctx))


def _settle_task(pair: CodeCommentPair, cfg: RuleConfig, max_rounds: int) -> _Settled:
    return settle_pair(pair, cfg, max_rounds)


def map_pairs(fn, pairs: Sequence, executor: Executor | None, chunksize: int = 256) -> list:
    """Order-preserving map, serial when no executor is given."""
    if executor is None:
        return [fn(p) for p in pairs]
    return list(executor.map(fn, pairs, chunksize=chunksize))


def clean_dataset(
    dataset: Dataset,
    cfg: RuleConfig | None = None,
    executor: Executor | None = None,
    max_rounds: int = DEFAULT_MAX_ROUNDS,
) -> DistillResult:
    """Clean ``dataset``; outcomes and distilled pairs keep input order.

    ``max_rounds=1`` gives a single diagnose-then-apply pass without
    re-checking repaired pairs.
    """
    cfg = cfg or RuleConfig()
    settled = map_pairs(partial(_settle_task, cfg=cfg, max_rounds=max_rounds), dataset.pairs, executor)
    survivors = [i for i, s in enumerate(settled) if s.verdict is not Verdict.REMOVED]
    groups = group_duplicates(
        [settled[i].final_pair for i in survivors],
        [settled[i].key for i in survivors],
        cfg.keep_precedence,
    )
    dups = duplicate_labels(groups, cfg)
    outcomes = []
    distilled = []
    for pair, s in zip(dataset.pairs, settled):
        labels, verdict, final = s.labels, s.verdict, s.final_pair
        dup = dups.get(pair.id)
        if dup is not None:
            labels = tuple(sorted((*labels, dup), key=lambda l: l.category.order))
            verdict, final = Verdict.REMOVED, None
        outcomes.append(CleanOutcome(pair.id, verdict, labels, final, s.errors))
        if final is not None:
            distilled.append(final)
    report = build_report(
        dataset.source_name,
        len(dataset),
        [o.labels for o in outcomes],
        warnings=sum(1 for o in outcomes if any(e.startswith("tokenize:") for e in o.errors)),
        cfg=cfg,
    )
    return DistillResult(Dataset(tuple(distilled), dataset.source_name), tuple(outcomes), report)


def fixpoint_violations(
    result: DistillResult,
    cfg: RuleConfig | None = None,
    executor: Executor | None = None,
) -> list[str]:
    """Ids of distilled pairs that another cleaning pass would change."""
    again = clean_dataset(result.distilled, cfg, executor)
    return [o.pair_id for o in again.outcomes if o.verdict is not Verdict.KEPT]


def verify_fixpoint(result: DistillResult, cfg: RuleConfig | None = None, executor: Executor | None = None) -> bool:
    return not fixpoint_violations(result, cfg, executor)


def write_outcomes(outcomes: Iterable[CleanOutcome], output) -> None:
    for outcome in outcomes:
        output.write(dumps_record(outcome.to_record()))


def diagnoses_of(result: DistillResult) -> list[Diagnosis]:
    return [Diagnosis(o.pair_id, o.labels, o.errors) for o in result.outcomes]


__all__ = [
    "Verdict",
    "CleanOutcome",
    "DistillResult",
    "apply_updates",
    "settle_pair",
    "clean_dataset",
    "verify_fixpoint",
    "fixpoint_violations",
    "write_outcomes",
]
