"""Command-line interface: ``catclean {clean,assess,eval,score}``.

Exit codes: 0 success, 1 when ``--fail-over`` trips, 2 for usage or input
errors.
"""
from __future__ import annotations

import argparse
import contextlib
import json
import logging
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Iterator, Sequence

from . import __version__
from .cleaner import clean_dataset, write_outcomes
from .config import FORMATS, ConfigError, LoadedConfig, load_config
from .corpus import CorpusError, Dataset, Language, Partition, iter_records, read_jsonl, write_jsonl
from .detectors import NoiseCategory, diagnose, duplicate_labels, find_duplicates, with_label
from .metrics import BleuMode, evaluate_detectors, score_corpus
from .report import assess, render_report

log = logging.getLogger("catclean")

EXIT_OK = 0
EXIT_POLICY = 1
EXIT_INPUT = 2


class InputError(Exception):
    pass


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("-i", "--input", required=True, help="input JSONL corpus ('-' for stdin)")
    p.add_argument("--config", help="config file (default: $CAT_CONFIG)")
    p.add_argument("--jobs", type=int, help="worker processes (default 1)")
    p.add_argument("--language", choices=[l.value for l in Language], help="language for records without one")
    p.add_argument("--partition", choices=[p.value for p in Partition], help="partition for records without one")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="catclean", description="Detect and clean noisy code-comment pairs.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("clean", help="remove or repair noisy pairs and drop duplicates")
    _add_common(p)
    p.add_argument("-o", "--output", required=True, help="distilled JSONL output")
    p.add_argument("--outcomes", help="per-pair outcome JSONL")
    p.add_argument("--report", help="write the quality report here (default: stdout)")
    p.add_argument("--format", choices=FORMATS, help="report format (default: from --report suffix, else text)")

    p = sub.add_parser("assess", help="report noise statistics without changing data")
    _add_common(p)
    p.add_argument("--report", "-o", "--output", dest="report", help="write the report here (default: stdout)")
    p.add_argument("--format", choices=FORMATS, help="report format")
    p.add_argument("--fail-over", type=float, metavar="FRACTION", help="exit 1 when the noisy fraction exceeds this")

    p = sub.add_parser("eval", help="compare detector output with gold labels")
    _add_common(p)
    p.add_argument("--gold", required=True, help="gold labels JSONL: {id, categories: [...]}")
    p.add_argument("--report", "-o", "--output", dest="report", help="write the result JSON here")

    p = sub.add_parser("score", help="score generated summaries against references")
    p.add_argument("--hyp", required=True, help="hypotheses: JSONL {id, tokens} or plain text")
    p.add_argument("--ref", required=True, help="references: JSONL {id, tokens} or plain text")
    p.add_argument("--bleu-mode", choices=[m.value for m in BleuMode], default=BleuMode.SENTENCE.value)
    p.add_argument("--report", "-o", "--output", dest="report", help="write the score JSON here")
    return parser


@contextlib.contextmanager
def _open_in(path: str):
    if path == "-":
        yield sys.stdin.buffer
        return
    try:
        fh = open(path, "rb")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror or exc}") from None
    with fh:
        yield fh


def _write_text(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    try:
        Path(path).write_text(text, encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot write {path}: {exc.strerror or exc}") from None


def _open_out(path: str):
    try:
        return open(path, "wb")
    except OSError as exc:
        raise InputError(f"cannot write {path}: {exc.strerror or exc}") from None


def _settings(args) -> tuple[LoadedConfig, int]:
    loaded = load_config(args.config)
    jobs = args.jobs if args.jobs is not None else (loaded.cli.jobs or 1)
    if jobs < 1:
        raise InputError("--jobs must be >= 1")
    return loaded, jobs


def _load(args, loaded: LoadedConfig) -> Dataset:
    language = Language.parse(args.language) if args.language else (loaded.cli.language or Language.JAVA)
    partition = Partition.parse(args.partition) if args.partition else (loaded.cli.partition or Partition.TRAIN)
    name = "stdin" if args.input == "-" else Path(args.input).stem
    with _open_in(args.input) as fh:
        dataset = read_jsonl(fh, language, partition, name)
    if len(dataset) == 0:
        raise InputError("empty dataset")
    log.info("loaded %d pairs from %s", len(dataset), args.input)
    return dataset


@contextlib.contextmanager
def _executor(jobs: int) -> Iterator:
    if jobs <= 1:
        yield None
        return
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        yield pool


def _report_format(args, loaded: LoadedConfig) -> str:
    if args.format:
        return args.format
    if loaded.cli.format:
        return loaded.cli.format
    suffix = Path(args.report).suffix.lower() if args.report else ""
    return {".json": "json", ".csv": "csv"}.get(suffix, "text")


def cmd_clean(args) -> int:
    loaded, jobs = _settings(args)
    dataset = _load(args, loaded)
    with _executor(jobs) as pool:
        result = clean_dataset(dataset, loaded.rules, pool)
    with _open_out(args.output) as fh:
        write_jsonl(result.distilled, fh)
    if args.outcomes:
        with _open_out(args.outcomes) as fh:
            write_outcomes(result.outcomes, fh)
    _write_text(args.report, render_report(result.report, _report_format(args, loaded)))
    counts = result.counts()
    log.info("kept %d, updated %d, removed %d", *(counts[v] for v in counts))
    return EXIT_OK


def cmd_assess(args) -> int:
    loaded, jobs = _settings(args)
    dataset = _load(args, loaded)
    with _executor(jobs) as pool:
        report = assess(dataset, loaded.rules, pool)
    _write_text(args.report, render_report(report, _report_format(args, loaded)))
    if args.fail_over is not None and report.noisy_total.pct > args.fail_over:
        print(
            f"catclean: noisy fraction {report.noisy_total.pct:.4f} exceeds {args.fail_over}",
            file=sys.stderr,
        )
        return EXIT_POLICY
    return EXIT_OK


def _read_gold(path: str) -> dict[str, frozenset]:
    gold = {}
    with _open_in(path) as fh:
        for index, record in iter_records(fh):
            pair_id = record.get("id")
            cats = record.get("categories", [])
            if not isinstance(pair_id, str) or not isinstance(cats, list):
                raise InputError(f"{path} line {index + 1}: expected {{id, categories: [...]}}")
            try:
                gold[pair_id] = frozenset(NoiseCategory(c) for c in cats)
            except ValueError as exc:
                raise InputError(f"{path} line {index + 1}: {exc}") from None
    if not gold:
        raise InputError("empty gold labels")
    return gold


def cmd_eval(args) -> int:
    loaded, _ = _settings(args)
    dataset = _load(args, loaded)
    gold = _read_gold(args.gold)
    if set(gold) != set(dataset.ids):
        missing = sorted(set(dataset.ids) - set(gold))
        extra = sorted(set(gold) - set(dataset.ids))
        raise InputError(f"gold ids do not match input: missing {missing[:5]}, unknown {extra[:5]}")
    result = evaluate_detectors(dataset_diagnoses(dataset, loaded), gold)
    _write_text(args.report, json.dumps(result.to_dict(), indent=2, sort_keys=True) + "\n")
    return EXIT_OK


def dataset_diagnoses(dataset: Dataset, loaded: LoadedConfig):
    """Diagnoses including dataset-level duplicate labels."""
    dups = duplicate_labels(find_duplicates(dataset, loaded.rules), loaded.rules)
    out = []
    for pair in dataset:
        d = diagnose(pair, loaded.rules)
        if pair.id in dups:
            d = with_label(d, dups[pair.id])
        out.append(d)
    return out


def _read_sentences(path: str) -> list[tuple[str, list[str]]]:
    with _open_in(path) as fh:
        data = fh.read().decode("utf-8")
    lines = data.splitlines()
    rows = []
    as_jsonl = any(line.strip() for line in lines) and all(
        line.lstrip().startswith("{") for line in lines if line.strip()
    )
    for index, line in enumerate(lines):
        if as_jsonl:
            if not line.strip():
                continue
            try:
                record = json.loads(line)
            except json.JSONDecodeError:
                raise InputError(f"{path} line {index + 1}: malformed JSON") from None
            tokens = record.get("tokens")
            if isinstance(tokens, str):
                tokens = tokens.split()
            if not isinstance(record.get("id"), (str, int)) or not isinstance(tokens, list):
                raise InputError(f"{path} line {index + 1}: expected {{id, tokens: [...]}}")
            rows.append((str(record["id"]), [str(t) for t in tokens]))
        else:
            rows.append((str(index), line.split()))
    if not rows:
        raise InputError(f"{path}: no sentences")
    return rows


def cmd_score(args) -> int:
    hyp = _read_sentences(args.hyp)
    ref = _read_sentences(args.ref)
    hyp_map, ref_map = dict(hyp), dict(ref)
    if len(hyp_map) != len(hyp) or len(ref_map) != len(ref):
        raise InputError("duplicate sentence ids")
    if set(hyp_map) != set(ref_map):
        raise InputError("hypothesis and reference ids differ")
    ids = [i for i, _ in ref]
    report = score_corpus([hyp_map[i] for i in ids], [ref_map[i] for i in ids], args.bleu_mode)
    _write_text(args.report, json.dumps(report.to_dict(), indent=2, sort_keys=True) + "\n")
    return EXIT_OK


COMMANDS = {"clean": cmd_clean, "assess": cmd_assess, "eval": cmd_eval, "score": cmd_score}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(name)s: %(message)s")
    try:
        return COMMANDS[args.command](args)
    except (InputError, CorpusError, ConfigError, ValueError) as exc:
        print(f"catclean: error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
