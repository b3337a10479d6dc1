"""Dataset quality reports: per-category noise counts and rollups."""
from __future__ import annotations

import csv
import io
import json
from concurrent.futures import Executor
from dataclasses import dataclass, field
from functools import partial
from typing import Iterable, Sequence

from .corpus import Dataset
from .detectors import (
    CATEGORIES,
    NoiseAction,
    NoiseCategory,
    NoiseLabel,
    RuleConfig,
    code_key,
    diagnose_with_context,
    duplicate_labels,
    group_duplicates,
)

FORMATS = ("text", "json", "csv")
CSV_HEADER = ("category", "side", "count", "pct", "action")


@dataclass(frozen=True)
class CategoryStat:
    category: str
    count: int
    pct: float


@dataclass(frozen=True)
class QualityReport:
    dataset_name: str
    size: int
    per_category: tuple[CategoryStat, ...]
    comment_side_total: CategoryStat
    code_side_total: CategoryStat
    noisy_total: CategoryStat
    removed: CategoryStat
    updated: CategoryStat
    fallback_counts: dict = field(default_factory=dict)
    warnings: int = 0
    actions: dict = field(default_factory=dict)

    @property
    def removed_pct(self) -> float:
        return self.removed.pct

    @property
    def updated_pct(self) -> float:
        return self.updated.pct

    def stat(self, category: NoiseCategory | str) -> CategoryStat:
        name = category.value if isinstance(category, NoiseCategory) else category
        for s in self.per_category:
            if s.category == name:
                return s
        raise KeyError(name)

    def to_dict(self) -> dict:
        def pack(s: CategoryStat) -> dict:
            return {"count": s.count, "pct": s.pct}

        return {
            "dataset": self.dataset_name,
            "size": self.size,
            "categories": {
                s.category: {**pack(s), "side": NoiseCategory(s.category).side, "action": self.actions.get(s.category, "")}
                for s in self.per_category
            },
            "comment_side_total": pack(self.comment_side_total),
            "code_side_total": pack(self.code_side_total),
            "noisy_total": pack(self.noisy_total),
            "removed": pack(self.removed),
            "updated": pack(self.updated),
            "removed_pct": self.removed_pct,
            "updated_pct": self.updated_pct,
            "fallback_counts": dict(self.fallback_counts),
            "warnings": self.warnings,
        }


def _stat(name: str, count: int, size: int) -> CategoryStat:
    return CategoryStat(name, count, count / size if size else 0.0)


def build_report(
    name: str,
    size: int,
    label_sets: Iterable[Sequence[NoiseLabel]],
    warnings: int = 0,
    cfg: RuleConfig | None = None,
) -> QualityReport:
    """Aggregate per-pair labels into a report.

    A pair counts once in each rollup however many labels it has. A pair
    with any remove label counts as removed, otherwise as updated.
    """
    cfg = cfg or RuleConfig()
    counts = {c: 0 for c in CATEGORIES}
    fallback = {c.value: 0 for c in CATEGORIES}
    comment_side = code_side = noisy = removed = updated = 0
    for labels in label_sets:
        if not labels:
            continue
        noisy += 1
        cats = {label.category for label in labels}
        for c in cats:
            counts[c] += 1
        for label in labels:
            if label.fallback:
                fallback[label.category.value] += 1
        if any(c.comment_side for c in cats):
            comment_side += 1
        if any(not c.comment_side for c in cats):
            code_side += 1
        if any(label.action is NoiseAction.REMOVE for label in labels):
            removed += 1
        else:
            updated += 1
    return QualityReport(
        dataset_name=name,
        size=size,
        per_category=tuple(_stat(c.value, counts[c], size) for c in CATEGORIES),
        comment_side_total=_stat("comment_related", comment_side, size),
        code_side_total=_stat("code_related", code_side, size),
        noisy_total=_stat("noisy_total", noisy, size),
        removed=_stat("removed", removed, size),
        updated=_stat("updated", updated, size),
        fallback_counts=fallback,
        warnings=warnings,
        actions={c.value: cfg.action_for(c).value for c in CATEGORIES},
    )


def _assess_task(pair, cfg):
    diagnosis, ctx = diagnose_with_context(pair, cfg)
    return diagnosis, code_key(ctx)


def assess(dataset: Dataset, cfg: RuleConfig | None = None, executor: Executor | None = None) -> QualityReport:
    """Diagnose every pair and group duplicates without changing anything."""
    if len(dataset) == 0:
        raise ValueError("empty dataset")
    cfg = cfg or RuleConfig()
    fn = partial(_assess_task, cfg=cfg)
    if executor is None:
        results = [fn(p) for p in dataset.pairs]
    else:
        results = list(executor.map(fn, dataset.pairs, chunksize=256))
    groups = group_duplicates(dataset.pairs, [key for _, key in results], cfg.keep_precedence)
    dups = duplicate_labels(groups, cfg)
    label_sets = []
    for pair, (diagnosis, _) in zip(dataset.pairs, results):
        labels = list(diagnosis.labels)
        if pair.id in dups:
            labels.append(dups[pair.id])
        label_sets.append(labels)
    warnings = sum(1 for d, _ in results if d.tokenize_failed)
    return build_report(dataset.source_name, len(dataset), label_sets, warnings, cfg)


def _rows(report: QualityReport) -> list[tuple[str, str, int, float, str]]:
    rows = []
    for s in report.per_category:
        rows.append((s.category, NoiseCategory(s.category).side, s.count, s.pct, report.actions.get(s.category, "")))
    rows.append((report.comment_side_total.category, "comment", report.comment_side_total.count, report.comment_side_total.pct, ""))
    rows.append((report.code_side_total.category, "code", report.code_side_total.count, report.code_side_total.pct, ""))
    rows.append(("removed", "all", report.removed.count, report.removed.pct, "remove"))
    rows.append(("updated", "all", report.updated.count, report.updated.pct, "update"))
    return rows


def _render_text(report: QualityReport) -> str:
    lines = [f"Dataset: {report.dataset_name or '-'}  ({report.size} pairs)", ""]
    head = f"{'Category':<24}{'Count':>8}{'Pct':>9}  Action"
    for side, title in (("comment", "Comment-related"), ("code", "Code-related")):
        lines.append(title)
        lines.append(head)
        for s in report.per_category:
            cat = NoiseCategory(s.category)
            if cat.side != side:
                continue
            lines.append(f"  {cat.title:<22}{s.count:>8}{s.pct:>9.2%}  {report.actions.get(s.category, '')}")
        total = report.comment_side_total if side == "comment" else report.code_side_total
        lines.append(f"  {'Total':<22}{total.count:>8}{total.pct:>9.2%}")
        lines.append("")
    for label, s in (("Noisy pairs", report.noisy_total), ("Removed", report.removed), ("Updated", report.updated)):
        lines.append(f"{label:<24}{s.count:>8}{s.pct:>9.2%}")
    fallback = sum(report.fallback_counts.values())
    if fallback:
        lines.append(f"{'Fallback labels':<24}{fallback:>8}")
    if report.warnings:
        lines.append(f"{'Tokenize warnings':<24}{report.warnings:>8}")
    return "\n".join(lines) + "\n"


def render_report(report: QualityReport, fmt: str = "text") -> str:
    fmt = fmt.lower()
    if fmt == "json":
        return json.dumps(report.to_dict(), indent=2, sort_keys=True) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(CSV_HEADER)
        for name, side, count, pct, action in _rows(report):
            writer.writerow((name, side, count, f"{pct:.6f}", action))
        return buf.getvalue()
    if fmt == "text":
        return _render_text(report)
    raise ValueError(f"unknown report format: {fmt}")


@dataclass(frozen=True)
class CategoryDelta:
    category: str
    count_before: int
    count_after: int
    count_delta: int
    pct_delta: float


def compare_reports(before: QualityReport, after: QualityReport) -> list[CategoryDelta]:
    """Per-category drop from ``before`` to ``after`` (positive = fewer after)."""
    names = [s.category for s in before.per_category]
    if names != [s.category for s in after.per_category]:
        raise ValueError("reports cover different categories")
    out = []
    for b in (*before.per_category, before.noisy_total):
        a = after.noisy_total if b is before.noisy_total else after.stat(b.category)
        out.append(CategoryDelta(b.category, b.count, a.count, b.count - a.count, b.pct - a.pct))
    return out


def render_comparison(deltas: Sequence[CategoryDelta]) -> str:
    lines = [f"{'category':<24}{'before':>8}{'after':>8}{'delta':>8}{'pct_delta':>11}"]
    for d in deltas:
        lines.append(f"{d.category:<24}{d.count_before:>8}{d.count_after:>8}{d.count_delta:>8}{d.pct_delta:>11.4f}")
    return "\n".join(lines) + "\n"
