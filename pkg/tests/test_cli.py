from __future__ import annotations

import csv
import io
import json

import pytest

from catclean import __version__
from catclean.cli import main
from catclean.corpus import read_jsonl
from catclean.detectors import NoiseCategory
from catclean.gold import gold_corpus_path, gold_labels_path


@pytest.fixture
def gold_path():
    return str(gold_corpus_path())


def _run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def _pairs(path):
    with open(path, "rb") as fh:
        return read_jsonl(fh).pairs


def test_version(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["--version"])
    assert exc.value.code == 0
    assert __version__ in capsys.readouterr().out


def test_clean_gold(tmp_path, capsys, gold_path):
    out, report = tmp_path / "out.jsonl", tmp_path / "r.json"
    code, _, _ = _run(capsys, "clean", "-i", gold_path, "-o", str(out), "--report", str(report))
    assert code == 0
    assert len(_pairs(out)) == 4
    data = json.loads(report.read_text())
    assert data["noisy_total"]["count"] == 12
    assert data["size"] == 12


def test_clean_writes_outcomes(tmp_path, capsys, gold_path):
    out, outcomes = tmp_path / "out.jsonl", tmp_path / "o.jsonl"
    code, stdout, _ = _run(capsys, "clean", "-i", gold_path, "-o", str(out), "--outcomes", str(outcomes))
    assert code == 0
    assert "Noisy pairs" in stdout
    rows = [json.loads(line) for line in outcomes.read_text().splitlines()]
    assert sum(r["verdict"] == "Removed" for r in rows) == 8


def test_clean_empty_input(tmp_path, capsys):
    empty = tmp_path / "empty.jsonl"
    empty.write_text("")
    code, _, err = _run(capsys, "clean", "-i", str(empty), "-o", str(tmp_path / "o.jsonl"))
    assert code == 2
    assert "empty dataset" in err


def test_clean_missing_input(tmp_path, capsys):
    code, _, err = _run(capsys, "clean", "-i", str(tmp_path / "nope.jsonl"), "-o", str(tmp_path / "o.jsonl"))
    assert code == 2
    assert "cannot read" in err


def test_clean_unwritable_output(tmp_path, capsys, gold_path):
    code, _, err = _run(capsys, "clean", "-i", gold_path, "-o", str(tmp_path / "missing" / "o.jsonl"))
    assert code == 2
    assert "cannot write" in err


def test_clean_malformed_input(tmp_path, capsys):
    bad = tmp_path / "bad.jsonl"
    bad.write_text("{\n")
    code, _, err = _run(capsys, "clean", "-i", str(bad), "-o", str(tmp_path / "o.jsonl"))
    assert code == 2
    assert "line 1: malformed JSON" in err


def test_clean_with_all_rules_disabled_is_identity(tmp_path, capsys, gold_path):
    cfg = tmp_path / "strict.toml"
    cfg.write_text("".join(f"rules.{c.value}.enabled = false\n" for c in NoiseCategory))
    out = tmp_path / "out.jsonl"
    code, _, _ = _run(capsys, "clean", "-i", gold_path, "-o", str(out), "--config", str(cfg))
    assert code == 0
    assert _pairs(out) == _pairs(gold_path)


def test_bad_config_exits_2(tmp_path, capsys, gold_path):
    cfg = tmp_path / "bad.toml"
    cfg.write_text("colour = blue\n")
    code, _, err = _run(capsys, "assess", "-i", gold_path, "--config", str(cfg))
    assert code == 2
    assert "unknown config key" in err


def test_assess_distilled_output_is_clean(tmp_path, capsys, gold_path):
    out = tmp_path / "out.jsonl"
    _run(capsys, "clean", "-i", gold_path, "-o", str(out))
    code, stdout, _ = _run(capsys, "assess", "-i", str(out), "--format", "json")
    assert code == 0
    assert json.loads(stdout)["noisy_total"]["count"] == 0


def test_assess_fail_over(capsys, gold_path):
    code, _, err = _run(capsys, "assess", "-i", gold_path, "--fail-over", "0.10")
    assert code == 1
    assert "exceeds" in err


def test_assess_csv(capsys, gold_path):
    code, stdout, _ = _run(capsys, "assess", "-i", gold_path, "--format", "csv")
    assert code == 0
    rows = list(csv.reader(io.StringIO(stdout)))
    assert len(rows) == 17


def test_assess_format_from_suffix(tmp_path, capsys, gold_path):
    report = tmp_path / "r.csv"
    _run(capsys, "assess", "-i", gold_path, "--report", str(report))
    assert report.read_text().startswith("category,side,count,pct,action")


def test_eval_gold_labels(tmp_path, capsys, gold_path):
    code, stdout, _ = _run(capsys, "eval", "-i", gold_path, "--gold", str(gold_labels_path()))
    assert code == 0
    assert json.loads(stdout)["micro"]["f1"] == 1.0


def test_eval_empty_gold(tmp_path, capsys, gold_path):
    gold = tmp_path / "g.jsonl"
    gold.write_text("")
    code, _, _ = _run(capsys, "eval", "-i", gold_path, "--gold", str(gold))
    assert code == 2


def test_eval_id_mismatch(tmp_path, capsys, gold_path):
    gold = tmp_path / "g.jsonl"
    gold.write_text('{"id": "other", "categories": []}\n')
    code, _, err = _run(capsys, "eval", "-i", gold_path, "--gold", str(gold))
    assert code == 2
    assert "gold ids" in err


def test_eval_all_clean_gold_renders_zero_precision(tmp_path, capsys, gold_path):
    ids = [p.id for p in _pairs(gold_path)]
    gold = tmp_path / "g.jsonl"
    gold.write_text("".join(json.dumps({"id": i, "categories": []}) + "\n" for i in ids))
    code, stdout, _ = _run(capsys, "eval", "-i", gold_path, "--gold", str(gold))
    assert code == 0
    data = json.loads(stdout)
    assert data["micro"]["precision"] == 0.0
    assert data["per_category"]["interrogation"]["precision"] == 0.0


def test_score_identical_files(tmp_path, capsys):
    text = "returns the value of x\nsorts the list in place\n"
    hyp, ref = tmp_path / "h.txt", tmp_path / "r.txt"
    hyp.write_text(text)
    ref.write_text(text)
    code, stdout, _ = _run(capsys, "score", "--hyp", str(hyp), "--ref", str(ref))
    assert code == 0
    data = json.loads(stdout)
    assert data["bleu"] == [1.0, 1.0, 1.0, 1.0]
    assert data["rouge_l"] == 1.0
    assert data["cider"] == pytest.approx(10.0)


def test_score_jsonl_ids(tmp_path, capsys):
    hyp, ref = tmp_path / "h.jsonl", tmp_path / "r.jsonl"
    hyp.write_text('{"id": "b", "tokens": ["x"]}\n{"id": "a", "tokens": ["a", "b"]}\n')
    ref.write_text('{"id": "a", "tokens": ["a", "b"]}\n{"id": "b", "tokens": ["x"]}\n')
    code, stdout, _ = _run(capsys, "score", "--hyp", str(hyp), "--ref", str(ref), "--bleu-mode", "corpus")
    assert code == 0
    assert json.loads(stdout)["bleu"][0] == 1.0


def test_score_mismatched_ids(tmp_path, capsys):
    hyp, ref = tmp_path / "h.jsonl", tmp_path / "r.jsonl"
    hyp.write_text('{"id": "a", "tokens": ["x"]}\n')
    ref.write_text('{"id": "b", "tokens": ["x"]}\n')
    code, _, _ = _run(capsys, "score", "--hyp", str(hyp), "--ref", str(ref))
    assert code == 2


def test_missing_subcommand_is_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        main([])
    assert exc.value.code == 2
