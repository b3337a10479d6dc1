"""The bundled gold corpus: one hand-labelled pair per noise category."""
from __future__ import annotations

import json
from importlib import resources

from .corpus import Dataset, read_jsonl
from .detectors import NoiseCategory


def _data(name: str):
    return resources.files("catclean").joinpath("data", name)


def gold_corpus_path():
    return _data("gold.jsonl")


def gold_labels_path():
    return _data("gold_labels.jsonl")


def load_gold_corpus() -> Dataset:
    with gold_corpus_path().open("rb") as fh:
        return read_jsonl(fh, source_name="gold")


def load_gold_records() -> list[dict]:
    """Expected labels, actions and proposals, one record per pair."""
    with gold_labels_path().open("r", encoding="utf-8") as fh:
        return [json.loads(line) for line in fh if line.strip()]


def load_gold_labels() -> dict[str, frozenset[NoiseCategory]]:
    return {r["id"]: frozenset(NoiseCategory(c) for c in r["categories"]) for r in load_gold_records()}
