from __future__ import annotations

import io
import json

import pytest

from catclean.corpus import (
    CodeCommentPair,
    CorpusError,
    Dataset,
    Language,
    Partition,
    read_jsonl,
    validate_pair,
    write_jsonl,
)


def _read(text: str, **kw) -> Dataset:
    return read_jsonl(io.BytesIO(text.encode("utf-8")), **kw)


def _roundtrip(dataset: Dataset) -> tuple[bytes, Dataset]:
    buf = io.BytesIO()
    write_jsonl(dataset, buf)
    data = buf.getvalue()
    return data, read_jsonl(io.BytesIO(data))


def test_minimal_record_gets_defaults():
    ds = _read('{"code":"int f(){}","comment":"f"}\n')
    assert len(ds) == 1
    pair = ds.pairs[0]
    assert pair.id == "0000000000"
    assert pair.language is Language.JAVA
    assert pair.partition is Partition.TRAIN


def test_malformed_line_reports_line_number():
    with pytest.raises(CorpusError, match="line 1: malformed JSON"):
        _read("{\n")


def test_missing_field_reports_line_and_field():
    with pytest.raises(CorpusError) as exc:
        _read('{"code":"int f(){}","comment":"f"}\n{"code":"x"}\n')
    assert "line 2" in str(exc.value)
    assert "comment" in str(exc.value)


def test_duplicate_ids_rejected():
    text = '{"id":"a","code":"x","comment":"c"}\n{"id":"a","code":"y","comment":"d"}\n'
    with pytest.raises(CorpusError, match="duplicate id: a"):
        _read(text)


def test_blank_lines_are_skipped():
    ds = _read('\n{"code":"x","comment":"c"}\n\n')
    assert len(ds) == 1


def test_defaults_apply_only_when_absent():
    ds = _read(
        '{"code":"x","comment":"c","language":"python","partition":"test"}\n{"code":"y","comment":"d"}\n',
        default_language=Language.PYTHON,
        default_partition=Partition.VALID,
    )
    assert ds.pairs[0].partition is Partition.TEST
    assert ds.pairs[1].language is Language.PYTHON
    assert ds.pairs[1].partition is Partition.VALID


def test_write_empty_dataset():
    buf = io.BytesIO()
    write_jsonl(Dataset(), buf)
    assert buf.getvalue() == b""


def test_single_pair_roundtrip():
    ds = Dataset((CodeCommentPair("p", "int f(){}", "f", raw_comment="/** f */"),))
    data, back = _roundtrip(ds)
    assert data.count(b"\n") == 1
    assert back.pairs == ds.pairs


def test_unicode_roundtrip_is_byte_exact():
    ds = Dataset(
        (
            CodeCommentPair("a", "int f(){}", "将JSONArray转换为Bean的List"),
            CodeCommentPair("b", "def g():\n    pass", "naïve", language=Language.PYTHON),
            CodeCommentPair("c", "int h(){}", "plain", partition=Partition.TEST),
        )
    )
    data, back = _roundtrip(ds)
    data.decode("utf-8")
    assert back.pairs == ds.pairs
    again, _ = _roundtrip(back)
    assert again == data
    assert json.loads(data.splitlines()[0])["comment"] == "将JSONArray转换为Bean的List"


def test_validate_pair_language():
    pair = validate_pair({"code": "x", "comment": "c", "language": "java"}, default_id="1")
    assert pair.language is Language.JAVA


def test_validate_pair_rejects_empty_code():
    with pytest.raises(CorpusError, match="empty code"):
        validate_pair({"code": "", "comment": "c"}, default_id="1")


def test_validate_pair_rejects_unknown_language():
    with pytest.raises(CorpusError, match="unsupported language: go"):
        validate_pair({"code": "x", "comment": "c", "language": "go"}, default_id="1")
