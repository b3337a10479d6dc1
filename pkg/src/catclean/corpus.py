"""Code-comment pair records and their JSONL persistence."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import BinaryIO, Iterable, Iterator, Mapping


class CorpusError(ValueError):
    """Invalid record or file content."""


class Language(str, Enum):
    JAVA = "java"
    PYTHON = "python"

    @classmethod
    def parse(cls, value: "str | Language") -> "Language":
        if isinstance(value, Language):
            return value
        try:
            return cls(str(value).lower())
        except ValueError:
            raise CorpusError(f"unsupported language: {value}") from None


class Partition(str, Enum):
    TRAIN = "train"
    VALID = "valid"
    TEST = "test"

    @classmethod
    def parse(cls, value: "str | Partition") -> "Partition":
        if isinstance(value, Partition):
            return value
        try:
            return cls(str(value).lower())
        except ValueError:
            raise CorpusError(f"unsupported partition: {value}") from None


#: Default keeper precedence for duplicate groups.
PARTITION_ORDER = (Partition.TRAIN, Partition.VALID, Partition.TEST)

FIELDS = ("id", "code", "comment", "raw_comment", "language", "partition")


@dataclass(frozen=True)
class CodeCommentPair:
    id: str
    code: str
    comment: str
    raw_comment: str | None = None
    language: Language = Language.JAVA
    partition: Partition = Partition.TRAIN

    def replace(self, **changes) -> "CodeCommentPair":
        data = {name: getattr(self, name) for name in FIELDS}
        data.update(changes)
        return CodeCommentPair(**data)

    def to_record(self) -> dict:
        record = {"id": self.id, "code": self.code, "comment": self.comment}
        if self.raw_comment is not None:
            record["raw_comment"] = self.raw_comment
        record["language"] = self.language.value
        record["partition"] = self.partition.value
        return record


@dataclass(frozen=True)
class Dataset:
    pairs: tuple[CodeCommentPair, ...] = ()
    source_name: str = ""
    _index: dict = field(default=None, init=False, repr=False, compare=False)

    def __post_init__(self):
        pairs = tuple(self.pairs)
        object.__setattr__(self, "pairs", pairs)
        index = {}
        for i, pair in enumerate(pairs):
            if pair.id in index:
                raise CorpusError(f"duplicate id: {pair.id}")
            index[pair.id] = i
        object.__setattr__(self, "_index", index)

    def __len__(self) -> int:
        return len(self.pairs)

    def __iter__(self) -> Iterator[CodeCommentPair]:
        return iter(self.pairs)

    def __getitem__(self, i: int) -> CodeCommentPair:
        return self.pairs[i]

    def index_of(self, pair_id: str) -> int:
        return self._index[pair_id]

    @property
    def ids(self) -> list[str]:
        return [p.id for p in self.pairs]


def validate_pair(
    record: Mapping,
    default_language: Language = Language.JAVA,
    default_partition: Partition = Partition.TRAIN,
    default_id: str | None = None,
) -> CodeCommentPair:
    """Check a raw field map and build a pair from it."""
    for name in ("code", "comment"):
        if name not in record:
            raise CorpusError(f"missing field: {name}")
        if not isinstance(record[name], str):
            raise CorpusError(f"field {name} must be a string")
    code = record["code"]
    if not code.strip():
        raise CorpusError("empty code")

    pair_id = record.get("id", default_id)
    if pair_id is None:
        raise CorpusError("missing field: id")
    if not isinstance(pair_id, str) or not pair_id:
        raise CorpusError("id must be a non-empty string")

    raw = record.get("raw_comment")
    if raw is not None and not isinstance(raw, str):
        raise CorpusError("field raw_comment must be a string")

    language = record.get("language")
    partition = record.get("partition")
    return CodeCommentPair(
        id=pair_id,
        code=code,
        comment=record["comment"],
        raw_comment=raw,
        language=Language.parse(language) if language is not None else default_language,
        partition=Partition.parse(partition) if partition is not None else default_partition,
    )


def iter_records(stream: BinaryIO | Iterable[bytes]) -> Iterator[tuple[int, dict]]:
    """Yield ``(line_index, record)`` for each non-blank line of a JSONL stream."""
    for index, raw_line in enumerate(stream):
        line = raw_line.decode("utf-8") if isinstance(raw_line, bytes) else raw_line
        if not line.strip():
            continue
        try:
            record = json.loads(line)
        except json.JSONDecodeError:
            raise CorpusError(f"line {index + 1}: malformed JSON") from None
        if not isinstance(record, dict):
            raise CorpusError(f"line {index + 1}: expected a JSON object")
        yield index, record


def read_jsonl(
    stream: BinaryIO | Iterable[bytes],
    default_language: Language = Language.JAVA,
    default_partition: Partition = Partition.TRAIN,
    source_name: str = "",
) -> Dataset:
    """Parse a JSONL stream into a Dataset, preserving line order.

    Records without an ``id`` get their zero-based line index, zero-padded
    to ten digits.
    """
    pairs = []
    seen = set()
    for index, record in iter_records(stream):
        try:
            pair = validate_pair(record, default_language, default_partition, default_id=f"{index:010d}")
        except CorpusError as exc:
            raise CorpusError(f"line {index + 1}: {exc}") from None
        if pair.id in seen:
            raise CorpusError(f"duplicate id: {pair.id}")
        seen.add(pair.id)
        pairs.append(pair)
    return Dataset(tuple(pairs), source_name)


def write_jsonl(dataset: Iterable[CodeCommentPair], output: BinaryIO) -> None:
    for pair in dataset:
        output.write(dumps_record(pair.to_record()))


def dumps_record(record: Mapping) -> bytes:
    return (json.dumps(record, ensure_ascii=False) + "\n").encode("utf-8")


def load_dataset(path: str | Path, **kwargs) -> Dataset:
    path = Path(path)
    kwargs.setdefault("source_name", path.stem)
    with path.open("rb") as fh:
        return read_jsonl(fh, **kwargs)


def save_dataset(dataset: Iterable[CodeCommentPair], path: str | Path) -> None:
    with Path(path).open("wb") as fh:
        write_jsonl(dataset, fh)
