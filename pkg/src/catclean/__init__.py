"""Detect, repair and report noise in code-comment datasets."""
from __future__ import annotations

__version__ = "0.1.0"

from .cleaner import CleanOutcome, DistillResult, Verdict, apply_updates, clean_dataset, verify_fixpoint
from .corpus import CodeCommentPair, CorpusError, Dataset, Language, Partition, load_dataset, read_jsonl, save_dataset
from .detectors import (
    Diagnosis,
    NoiseAction,
    NoiseCategory,
    NoiseLabel,
    RuleConfig,
    Thresholds,
    diagnose,
    find_duplicates,
)
from .kernels import BACKEND
from .metrics import bleu, cider, evaluate_detectors, meteor, rouge_l, score_corpus
from .report import QualityReport, assess, compare_reports, render_report

__all__ = [
    "BACKEND",
    "CleanOutcome",
    "CodeCommentPair",
    "CorpusError",
    "Dataset",
    "Diagnosis",
    "DistillResult",
    "Language",
    "NoiseAction",
    "NoiseCategory",
    "NoiseLabel",
    "Partition",
    "QualityReport",
    "RuleConfig",
    "Thresholds",
    "Verdict",
    "apply_updates",
    "assess",
    "bleu",
    "cider",
    "clean_dataset",
    "compare_reports",
    "diagnose",
    "evaluate_detectors",
    "find_duplicates",
    "load_dataset",
    "meteor",
    "read_jsonl",
    "render_report",
    "rouge_l",
    "save_dataset",
    "score_corpus",
    "verify_fixpoint",
]
