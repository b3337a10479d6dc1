"""Seeded synthetic corpora with planted noise of known category.

Clean pairs come from Java and Python templates whose comment vocabulary is
disjoint from the code's multi-word identifiers, so a clean pair triggers no
rule. Each noisy pair is a clean pair rewritten to exhibit exactly one
category. :func:`fuzz_corpus` additionally mutates pairs at random to
produce messy, multi-label data for robustness checks.
"""
from __future__ import annotations

import random
from dataclasses import dataclass

from .corpus import CodeCommentPair, Dataset, Language, Partition
from .detectors import NoiseCategory

VERBS = [
    ("computes", "compute"), ("builds", "build"), ("updates", "update"), ("loads", "load"),
    ("stores", "store"), ("parses", "parse"), ("renders", "render"), ("validates", "validate"),
    ("merges", "merge"), ("sorts", "sort"), ("filters", "filter"), ("formats", "format"),
    ("resolves", "resolve"), ("registers", "register"), ("encodes", "encode"), ("decodes", "decode"),
    ("collects", "collect"), ("publishes", "publish"), ("normalizes", "normalize"), ("schedules", "schedule"),
]
NOUNS = [
    "total", "record", "header", "payload", "session", "cache", "layout", "buffer", "token", "request",
    "response", "report", "message", "profile", "snapshot", "channel", "ledger", "segment", "invoice", "quota",
]
PREPS = ["for", "from", "into", "within", "using", "across"]
ADJS = ["current", "pending", "active", "shared", "remote", "local", "default", "primary"]
PLACES = ["batch", "window", "store", "queue", "cluster", "archive", "catalog", "pipeline", "registry", "workspace"]
ARGS = [("value", "input value"), ("count", "number of entries"), ("limit", "upper bound"), ("offset", "start position")]

CODE_VERBS = ["proc", "calc", "emit", "pack", "flush", "scan", "tally", "fold"]
CODE_NOUNS = ["blob", "node", "slot", "cell", "frame", "chunk", "entry", "item"]
CAMEL_PARTS = [("max", "retry"), ("row", "width"), ("page", "size"), ("user", "name"), ("file", "path"), ("time", "out")]
FOREIGN = ["计算", "构建", "更新", "加载", "保存", "解析", "默认值", "转换为"]
UNDERDEV = ["TODO:", "FIXME", "TODO", "XXX:"]
QUESTIONS = [("Should we", "should we"), ("Do we", "do we"), ("Can we", "can we")]


def _cap(word: str) -> str:
    return word[:1].upper() + word[1:]


@dataclass
class _Base:
    idx: int
    lang: Language
    verb: tuple[str, str]
    noun: str
    prep: str
    adj: str
    place: str
    arg: tuple[str, str]
    arg2: str
    cverb: str
    cnoun: str
    k: int

    @property
    def tail(self) -> str:
        return f"the {self.noun} {self.prep} the {self.adj} {self.place}"

    @property
    def sentence(self) -> str:
        return f"{_cap(self.verb[0])} {self.tail}."

    @property
    def comment(self) -> str:
        return f"{self.verb[0]} {self.tail}"

    @property
    def name(self) -> str:
        if self.lang is Language.PYTHON:
            return f"{self.cverb}_{self.cnoun}_{self.idx}"
        return f"{self.cverb}{_cap(self.cnoun)}{self.idx}"


def _base(rng: random.Random, idx: int, lang: Language) -> _Base:
    a1, a2 = rng.sample(ARGS, 2)
    return _Base(
        idx, lang, rng.choice(VERBS), rng.choice(NOUNS), rng.choice(PREPS), rng.choice(ADJS),
        rng.choice(PLACES), a1, a2[0], rng.choice(CODE_VERBS), rng.choice(CODE_NOUNS), rng.randint(2, 9),
    )


def _java_raw(b: _Base, first_lines: list[str], code_lines: list[str] = ()) -> str:
    lines = ["/**"] + [f" * {l}" for l in first_lines]
    lines += [" *", f" * @param {b.arg[0]} the {b.arg[1]}", f" * @return the {b.noun}", " */"]
    return "\n".join(lines + list(code_lines))


def _python_raw(b: _Base, first_lines: list[str]) -> str:
    lines = ['"""' + first_lines[0]] + list(first_lines[1:])
    lines += ["", "Args:", f"    {b.arg[0]}: the {b.arg[1]}.", "", "Returns:", f"    the {b.noun}.", '"""']
    return "\n".join(lines)


def _raw(b: _Base, first_lines: list[str]) -> str:
    return _python_raw(b, first_lines) if b.lang is Language.PYTHON else _java_raw(b, first_lines)


def _body_lines(b: _Base, extra_var: str | None = None) -> list[str]:
    a, c = b.arg[0], b.arg2
    if b.lang is Language.PYTHON:
        acc = extra_var or "acc"
        return [
            f"    {acc} = {a} * {b.k}",
            f"    if {c} > {acc}:",
            f"        {acc} += {c}",
            f"    return {acc} + {b.idx}",
        ]
    acc = extra_var or "acc"
    return [
        f"    int {acc} = {a} * {b.k};",
        f"    if ({c} > {acc}) {{",
        f"        {acc} += {c};",
        "    }",
        f"    return {acc} + {b.idx};",
    ]


def _code(b: _Base, body: list[str] | None = None, name: str | None = None) -> str:
    body = _body_lines(b) if body is None else body
    name = name or b.name
    a, c = b.arg[0], b.arg2
    if b.lang is Language.PYTHON:
        return "\n".join([f"def {name}({a}, {c}):"] + body) + "\n"
    return "\n".join([f"public int {name}(int {a}, int {c}) {{"] + body + ["}"])


def _lower_tokens(text: str) -> str:
    return " ".join(text.lower().replace(".", " ").replace(",", " ").replace(":", " ").split())


# ---------------------------------------------------------------------------
# per-category planting; each returns (code, comment, raw)


def _clean(b, rng):
    return _code(b), b.comment, _raw(b, [b.sentence])


def _partial(b, rng):
    head = f"{_cap(b.verb[0])} the {b.noun} {b.prep}"
    tail = f"the {b.adj} {b.place}."
    return _code(b), _lower_tokens(head), _raw(b, [head, tail])


def _verbose(b, rng):
    if b.lang is Language.PYTHON:
        extra = f"args {b.arg[0]} the {b.arg[1]}"
    else:
        extra = f"param {b.arg[0]} the {b.arg[1]}"
    return _code(b), f"{b.comment} {extra}", _raw(b, [b.sentence])


def _tampering(b, rng):
    kind = rng.randrange(4) if b.lang is Language.JAVA else rng.choice([2, 3])
    if kind == 0:
        first = f"<p> {b.sentence}</p>"
        comment = f"p {b.comment} p"
    elif kind == 1:
        first = f"{_cap(b.verb[0])} the {{@link {_cap(b.noun)}}} {b.prep} the {b.adj} {b.place}."
        comment = f"{b.verb[0]} the link {b.noun} {b.prep} the {b.adj} {b.place}"
    elif kind == 2:
        url = f"https://docs.example.org/{b.noun}/{b.place}.html"
        first = f"{_cap(b.verb[0])} {b.tail}, see {url} for details."
        comment = f"{b.comment} see https docs example org {b.noun} {b.place} html for details"
    else:
        path = f"/var/lib/app/{b.noun}.db"
        first = f"{_cap(b.verb[0])} the {b.noun} from {path}."
        comment = f"{b.verb[0]} the {b.noun} from var lib app {b.noun} db"
    return _code(b), comment, _raw(b, [first])


def _oversplit(b, rng):
    w1, w2 = rng.choice(CAMEL_PARTS)
    if b.lang is Language.PYTHON and rng.random() < 0.5:
        ident = f"{w1}_{w2}"
    else:
        ident = f"{w1}{_cap(w2)}"
    first = f"{_cap(b.verb[0])} the {b.noun} using {ident}."
    comment = f"{b.verb[0]} the {b.noun} using {w1} {w2}"
    return _code(b, _body_lines(b, ident)), comment, _raw(b, [first])


def _nonliteral(b, rng):
    word = rng.choice(FOREIGN)
    first = f"{word} {b.tail}."
    return _code(b), b.tail, _raw(b, [first])


def _interrogation(b, rng):
    raw_q, low_q = rng.choice(QUESTIONS)
    first = f"{raw_q} {b.verb[1]} {b.tail}?"
    comment = f"{low_q} {b.verb[1]} {b.tail}"
    if rng.random() < 0.5:
        comment += " ?"
    return _code(b), comment, _raw(b, [first])


def _underdev(b, rng):
    kind = rng.randrange(3)
    if kind == 0:
        marker = rng.choice(UNDERDEV)
        first = f"{marker} {b.verb[1]} {b.tail}."
        comment = _lower_tokens(f"{marker} {b.verb[1]} {b.tail}")
    elif kind == 1:
        first, comment = "Description of the Method", "description of the method"
    else:
        first, comment = "Auto-generated method stub", "auto generated method stub"
    return _code(b), comment, _raw(b, [first])


def _empty(b, rng):
    if b.lang is Language.PYTHON:
        body = [rng.choice(["    pass", "    ..."])]
    else:
        body = [] if rng.random() < 0.5 else ["    ;"]
    return _code(b, body), b.comment, _raw(b, [b.sentence])


def _commented_out(b, rng):
    old = f"legacy{_cap(b.cnoun)}{b.idx}"
    if b.lang is Language.PYTHON:
        raw = f"# {b.sentence}\n# def legacy_{b.cnoun}_{b.idx}({b.arg[0]}):\n#     return {b.arg[0]} * 2"
    else:
        raw = _java_raw(b, [b.sentence], [
            f"// public int {old}(int {b.arg[0]}) {{",
            f"//     return {b.arg[0]} * 2;",
            "// }",
        ])
    return _code(b), b.comment, raw


def _block_comment(b, rng):
    body = _body_lines(b)
    if b.lang is Language.PYTHON:
        note = rng.choice([f"    # TODO: {b.verb[1]} the {b.noun} later", "    # acc = 0"])
    else:
        note = rng.choice([f"    // TODO: {b.verb[1]} the {b.noun} later", "    /* acc = 0; */"])
    body.insert(1, note)
    return _code(b, body), b.comment, _raw(b, [b.sentence])


def _autocode(b, rng):
    field = f"{b.cnoun}{b.idx}"
    kind = rng.randrange(3)
    if b.lang is Language.PYTHON:
        if kind == 0:
            code = f"def get_{b.cnoun}_{b.idx}(self):\n    return self._{field}\n"
        elif kind == 1:
            code = f"def set_{b.cnoun}_{b.idx}(self, {b.arg[0]}):\n    self._{field} = {b.arg[0]}\n"
        else:
            code = f"def test_{b.cnoun}_{b.idx}(self):\n    obj = make()\n    check(obj)\n"
            return code, f"test the {b.cnoun} {b.idx}", _raw(b, [f"Test the {b.cnoun} {b.idx}."])
    else:
        cap = _cap(b.cnoun)
        if kind == 0:
            code = f"public int get{cap}{b.idx}() {{\n    return this.{field};\n}}"
        elif kind == 1:
            code = f"public void set{cap}{b.idx}(int {b.arg[0]}) {{\n    this.{field} = {b.arg[0]};\n}}"
        else:
            code = f"public void test{cap}{b.idx}() {{\n    Object obj = make();\n    check(obj);\n}}"
            return code, f"test the {b.cnoun} {b.idx}", _raw(b, [f"Test the {b.cnoun} {b.idx}."])
    return code, b.comment, _raw(b, [b.sentence])


PLANTERS = {
    NoiseCategory.PARTIAL_SENTENCE: _partial,
    NoiseCategory.VERBOSE_SENTENCE: _verbose,
    NoiseCategory.CONTENT_TAMPERING: _tampering,
    NoiseCategory.OVER_SPLITTING: _oversplit,
    NoiseCategory.NON_LITERAL: _nonliteral,
    NoiseCategory.INTERROGATION: _interrogation,
    NoiseCategory.UNDER_DEVELOPMENT: _underdev,
    NoiseCategory.EMPTY_FUNCTION: _empty,
    NoiseCategory.COMMENTED_OUT_METHOD: _commented_out,
    NoiseCategory.BLOCK_COMMENT_CODE: _block_comment,
    NoiseCategory.AUTO_CODE: _autocode,
}


def _whitespace_variant(code: str) -> str:
    return "\n".join("  " + line.strip() if line.strip() else line for line in code.splitlines()) + "\n"


@dataclass(frozen=True)
class PlantedCorpus:
    dataset: Dataset
    gold: dict  # pair id -> frozenset of planted categories

    def planted_count(self, category: NoiseCategory) -> int:
        return sum(1 for cats in self.gold.values() if category in cats)


def generate_planted(
    n: int = 1000,
    rate: float = 0.05,
    seed: int = 0,
    python_share: float = 0.5,
    rates: dict | None = None,
) -> PlantedCorpus:
    """``n`` pairs, each category planted into ``round(rate * n)`` of them.

    Planted sets are disjoint. Duplicates are Test-partition copies of
    clean Train pairs; the copy carries the label, the original stays clean.
    """
    rng = random.Random(seed)
    rates = rates or {c: rate for c in NoiseCategory}
    quotas = {c: int(round(rates.get(c, 0.0) * n)) for c in NoiseCategory}
    n_dup = quotas.pop(NoiseCategory.DUPLICATED_CODE, 0)
    slots = [c for c, q in quotas.items() for _ in range(q)]
    n_clean = n - len(slots) - n_dup
    if n_clean < n_dup:
        raise ValueError("planted rates leave too few clean pairs to duplicate")
    slots += [None] * n_clean
    rng.shuffle(slots)
    pairs: list[CodeCommentPair] = []
    gold: dict = {}
    clean_train: list[int] = []
    for idx, category in enumerate(slots):
        lang = Language.PYTHON if rng.random() < python_share else Language.JAVA
        b = _base(rng, idx, lang)
        planter = PLANTERS[category] if category is not None else _clean
        code, comment, raw = planter(b, rng)
        if category is None:
            partition = Partition.TRAIN if len(clean_train) < n_dup or rng.random() < 0.8 else rng.choice(
                [Partition.VALID, Partition.TEST]
            )
        else:
            partition = rng.choice([Partition.TRAIN] * 8 + [Partition.VALID, Partition.TEST])
        pair_id = f"syn-{idx:07d}"
        pairs.append(CodeCommentPair(pair_id, code, comment, raw, lang, partition))
        gold[pair_id] = frozenset() if category is None else frozenset({category})
        if category is None and partition is Partition.TRAIN:
            clean_train.append(len(pairs) - 1)
    after: dict[int, list[CodeCommentPair]] = {}
    for j, src in enumerate(rng.sample(clean_train, n_dup)):
        original = pairs[src]
        pair_id = f"syn-dup-{j:06d}"
        copy = original.replace(id=pair_id, code=_whitespace_variant(original.code), partition=Partition.TEST)
        after.setdefault(rng.randint(src, len(pairs) - 1), []).append(copy)
        gold[pair_id] = frozenset({NoiseCategory.DUPLICATED_CODE})
    if after:
        merged = []
        for i, pair in enumerate(pairs):
            merged.append(pair)
            merged.extend(after.get(i, ()))
        pairs = merged
    return PlantedCorpus(Dataset(tuple(pairs), f"planted-{seed}"), gold)


def generate_clean(n: int, seed: int = 0, python_share: float = 0.5) -> Dataset:
    return generate_planted(n, 0.0, seed, python_share).dataset


# ---------------------------------------------------------------------------
# fuzzing

_NOISE_WORDS = ["and", "of", "the", "?", "<p>", "{@code x}", "todo", "https://x.org/a.html", "e.g.", "args:"]


def _mutate(pair: CodeCommentPair, rng: random.Random, pool: list[CodeCommentPair]) -> CodeCommentPair:
    choice = rng.randrange(12)
    words = pair.comment.split()
    if choice == 0:
        return pair.replace(raw_comment=None)
    if choice == 1 and words:
        return pair.replace(comment=" ".join(words[: rng.randint(1, len(words))]))
    if choice == 2:
        return pair.replace(comment=f"{pair.comment} {rng.choice(_NOISE_WORDS)}")
    if choice == 3:
        return pair.replace(comment=f"{rng.choice(_NOISE_WORDS)} {pair.comment}")
    if choice == 4:
        return pair.replace(comment=pair.comment.upper() if rng.random() < 0.5 else pair.comment.title())
    if choice == 5:
        return pair.replace(code=pair.code + ('\n"unterminated' if rng.random() < 0.5 else "\n/* open"))
    if choice == 6 and pool:
        other = rng.choice(pool)
        return pair.replace(code=other.code, language=other.language)
    if choice == 7 and pool:
        other = rng.choice(pool)
        return pair.replace(raw_comment=other.raw_comment)
    if choice == 8:
        return pair.replace(comment=f"{pair.comment}. {rng.choice(VERBS)[0]} the {rng.choice(NOUNS)} now")
    if choice == 9:
        return pair.replace(partition=rng.choice(list(Partition)))
    if choice == 10 and pair.raw_comment:
        return pair.replace(comment=_lower_tokens(pair.raw_comment.replace("*", " ").replace('"', " ")))
    if choice == 11:
        return pair.replace(comment="")
    return pair


def fuzz_corpus(seed: int, n: int = 60) -> Dataset:
    """A small messy corpus: planted noise plus random mutations."""
    rng = random.Random(seed)
    rates = {c: rng.choice([0.0, 0.05, 0.1]) for c in NoiseCategory}
    # rounding inflates quotas on tiny corpora; keep at least a third clean
    budget = int(n * 0.6)
    while sum(int(round(r * n)) for r in rates.values()) > budget:
        worst = max(rates, key=lambda c: (rates[c], c.order))
        rates[worst] = 0.0
    base = generate_planted(n, seed=seed, rates=rates).dataset.pairs
    pool = list(base)
    out = []
    for i, pair in enumerate(base):
        for _ in range(rng.choice([0, 0, 1, 1, 2, 3])):
            pair = _mutate(pair, rng, pool)
        out.append(pair.replace(id=f"fz-{seed}-{i:04d}"))
    return Dataset(tuple(out), f"fuzz-{seed}")
