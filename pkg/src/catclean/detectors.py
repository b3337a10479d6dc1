"""Noise detectors for code-comment pairs.

Eleven rules look at a single pair; duplicated code needs the whole corpus
and is handled by :func:`find_duplicates`. Every rule emits at most one
:class:`NoiseLabel` of its own category, carrying the action (remove or
update) and, for updates, the proposed replacement text.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from typing import Callable, Iterable, Sequence

from ._errors import LexError
from .corpus import PARTITION_ORDER, CodeCommentPair, Dataset, Language, Partition
from .lexing import (
    COMMENT_KINDS,
    JAVA_KEYWORDS,
    PYTHON_KEYWORDS,
    Token,
    TokenKind,
    extract_identifiers,
    normalize_code,
    split_identifier,
    strip_block_comments,
    tokenize_code,
)
from .sentence import (
    DEFAULT_ABBREVIATIONS,
    DEFAULT_SECTION_MARKERS,
    AlignmentClass,
    FirstSentence,
    classify_tokens,
    find_terminator,
    first_sentence_of_lines,
    looks_like_signature,
    normalize_for_match,
    strip_comment_delimiters,
)


class NoiseCategory(str, Enum):
    PARTIAL_SENTENCE = "partial_sentence"
    VERBOSE_SENTENCE = "verbose_sentence"
    CONTENT_TAMPERING = "content_tampering"
    OVER_SPLITTING = "over_splitting"
    NON_LITERAL = "non_literal"
    INTERROGATION = "interrogation"
    UNDER_DEVELOPMENT = "under_development"
    EMPTY_FUNCTION = "empty_function"
    COMMENTED_OUT_METHOD = "commented_out_method"
    BLOCK_COMMENT_CODE = "block_comment_code"
    AUTO_CODE = "auto_code"
    DUPLICATED_CODE = "duplicated_code"

    @property
    def comment_side(self) -> bool:
        return _ORDER[self] < 7

    @property
    def side(self) -> str:
        return "comment" if self.comment_side else "code"

    @property
    def title(self) -> str:
        return _TITLES[self]

    @property
    def default_action(self) -> "NoiseAction":
        return NoiseAction.UPDATE if self in _UPDATE_BY_DEFAULT else NoiseAction.REMOVE

    @property
    def order(self) -> int:
        return _ORDER[self]


class NoiseAction(str, Enum):
    REMOVE = "remove"
    UPDATE = "update"


CATEGORIES = tuple(NoiseCategory)
_ORDER = {c: i for i, c in enumerate(CATEGORIES)}
_TITLES = {
    NoiseCategory.PARTIAL_SENTENCE: "Partial Sentence",
    NoiseCategory.VERBOSE_SENTENCE: "Verbose Sentence",
    NoiseCategory.CONTENT_TAMPERING: "Content Tampering",
    NoiseCategory.OVER_SPLITTING: "Over-Splitting",
    NoiseCategory.NON_LITERAL: "Non-Literal",
    NoiseCategory.INTERROGATION: "Interrogation",
    NoiseCategory.UNDER_DEVELOPMENT: "Under-Development",
    NoiseCategory.EMPTY_FUNCTION: "Empty Function",
    NoiseCategory.COMMENTED_OUT_METHOD: "Commented-Out Method",
    NoiseCategory.BLOCK_COMMENT_CODE: "Block-Comment Code",
    NoiseCategory.AUTO_CODE: "Auto Code",
    NoiseCategory.DUPLICATED_CODE: "Duplicated Code",
}
_UPDATE_BY_DEFAULT = frozenset(
    {
        NoiseCategory.PARTIAL_SENTENCE,
        NoiseCategory.VERBOSE_SENTENCE,
        NoiseCategory.OVER_SPLITTING,
        NoiseCategory.BLOCK_COMMENT_CODE,
    }
)
#: Categories for which an update (rewrite) is implemented.
UPDATABLE = _UPDATE_BY_DEFAULT | {NoiseCategory.CONTENT_TAMPERING}


class DetectorError(ValueError):
    pass


@dataclass(frozen=True)
class NoiseLabel:
    category: NoiseCategory
    action: NoiseAction
    evidence: str
    proposed_comment: str | None = None
    proposed_code: str | None = None
    fallback: bool = False


@dataclass(frozen=True)
class Diagnosis:
    pair_id: str
    labels: tuple[NoiseLabel, ...] = ()
    errors: tuple[str, ...] = ()

    @property
    def categories(self) -> frozenset[NoiseCategory]:
        return frozenset(label.category for label in self.labels)

    def get(self, category: NoiseCategory) -> NoiseLabel | None:
        for label in self.labels:
            if label.category is category:
                return label
        return None

    @property
    def tokenize_failed(self) -> bool:
        return any(e.startswith("tokenize:") for e in self.errors)


DEFAULT_UNDERDEV_KEYWORDS = (
    "todo",
    "fixme",
    "xxx",
    "hack",
    "wip",
    "not implemented",
    "work in progress",
    "under construction",
    "description of the method",
    "auto-generated method stub",
    "deprecated",
)


@dataclass
class Thresholds:
    min_split_subtokens: int = 2
    max_auto_stmts: int = 2
    underdev_keywords: tuple[str, ...] = DEFAULT_UNDERDEV_KEYWORDS
    nonliteral_ratio: float = 0.0
    codey_line_min: int = 1


@dataclass
class RuleConfig:
    """Which rules run, what they do, and their tunables."""

    enabled: dict = field(default_factory=lambda: {c: True for c in NoiseCategory})
    action_override: dict = field(default_factory=dict)
    thresholds: Thresholds = field(default_factory=Thresholds)
    keep_precedence: tuple[Partition, ...] = PARTITION_ORDER
    abbreviations: tuple[str, ...] = DEFAULT_ABBREVIATIONS
    section_markers: tuple[str, ...] = DEFAULT_SECTION_MARKERS
    java_keywords: frozenset[str] = JAVA_KEYWORDS
    python_keywords: frozenset[str] = PYTHON_KEYWORDS

    def is_enabled(self, category: NoiseCategory) -> bool:
        return self.enabled.get(category, True)

    def action_for(self, category: NoiseCategory) -> NoiseAction:
        return self.action_override.get(category) or category.default_action

    def keywords_for(self, language: Language) -> frozenset[str]:
        return self.python_keywords if language is Language.PYTHON else self.java_keywords

    def validate(self) -> "RuleConfig":
        t = self.thresholds
        for name in ("min_split_subtokens", "max_auto_stmts", "codey_line_min"):
            value = getattr(t, name)
            if not isinstance(value, int) or value < 1:
                raise ValueError(f"thresholds.{name} must be an integer >= 1, got {value!r}")
        if not 0.0 <= t.nonliteral_ratio <= 1.0:
            raise ValueError(f"thresholds.nonliteral_ratio must be in [0, 1], got {t.nonliteral_ratio!r}")
        for category, action in self.action_override.items():
            if action is NoiseAction.UPDATE and category not in UPDATABLE:
                raise ValueError(f"{category.value} has no update action")
        if sorted(p.value for p in self.keep_precedence) != sorted(p.value for p in Partition):
            raise ValueError("keep_precedence must order every partition exactly once")
        return self


# ---------------------------------------------------------------------------
# per-pair analysis cache


_WORD_SPANS = re.compile(r"\w+")
_ALNUM_SPANS = re.compile(r"[^\W_]+")


class PairContext:
    """Lazily computed views of one pair shared by all detectors."""

    def __init__(self, pair: CodeCommentPair, cfg: RuleConfig):
        self.pair = pair
        self.cfg = cfg
        self._tokens = None
        self._lex_error = None
        self._first = None
        self._raw_lines = None
        self._words = None
        self._body = None
        self._body_done = False

    @property
    def tokens(self) -> list[Token]:
        if self._tokens is None:
            if self._lex_error is not None:
                raise self._lex_error
            try:
                self._tokens = tokenize_code(
                    self.pair.code, self.pair.language, self.cfg.keywords_for(self.pair.language)
                )
            except LexError as exc:
                self._lex_error = exc
                raise
        return self._tokens

    @property
    def raw_lines(self) -> list[str] | None:
        if self.pair.raw_comment is None:
            return None
        if self._raw_lines is None:
            self._raw_lines = strip_comment_delimiters(self.pair.raw_comment, self.pair.language)
        return self._raw_lines

    @property
    def first_sentence(self) -> FirstSentence | None:
        if self.pair.raw_comment is None:
            return None
        if self._first is None:
            self._first = first_sentence_of_lines(self.raw_lines, self.cfg.abbreviations, self.cfg.section_markers)
        return self._first

    @property
    def words(self) -> list[str]:
        if self._words is None:
            self._words = normalize_for_match(self.pair.comment)
        return self._words

    def alignment(self) -> AlignmentClass | None:
        first = self.first_sentence
        if first is None:
            return None
        return classify_tokens(self.words, normalize_for_match(first.text))

    def body(self) -> tuple[int, int, str | None]:
        """``(start, end, method_name)`` token range of the method body."""
        if not self._body_done:
            tokens = self.tokens
            if self.pair.language is Language.PYTHON:
                self._body = _python_body(tokens)
            else:
                self._body = _java_body(tokens)
            self._body_done = True
        if self._body is None:
            raise DetectorError("cannot locate method body")
        return self._body


def _java_body(tokens: Sequence[Token]):
    open_idx = None
    for i, tok in enumerate(tokens):
        if tok.kind is TokenKind.PUNCT and tok.text == "{":
            open_idx = i
            break
    if open_idx is None:
        return None
    depth = 0
    close_idx = None
    for i in range(open_idx, len(tokens)):
        tok = tokens[i]
        if tok.kind is TokenKind.PUNCT:
            if tok.text == "{":
                depth += 1
            elif tok.text == "}":
                depth -= 1
                if depth == 0:
                    close_idx = i
                    break
    if close_idx is None:
        return None
    return open_idx + 1, close_idx, _java_method_name(tokens, open_idx)


def _java_method_name(tokens: Sequence[Token], open_idx: int) -> str | None:
    j = open_idx - 1
    while j >= 0 and not (tokens[j].kind is TokenKind.PUNCT and tokens[j].text == ")"):
        if tokens[j].kind is TokenKind.PUNCT and tokens[j].text in ";}":
            return None
        j -= 1
    depth = 0
    while j >= 0:
        tok = tokens[j]
        if tok.kind is TokenKind.PUNCT:
            if tok.text == ")":
                depth += 1
            elif tok.text == "(":
                depth -= 1
                if depth == 0:
                    break
        j -= 1
    if j >= 1 and tokens[j - 1].kind is TokenKind.IDENTIFIER:
        return tokens[j - 1].text
    return None


def _python_body(tokens: Sequence[Token]):
    n = len(tokens)
    i = 0
    while i < n and not (tokens[i].kind is TokenKind.KEYWORD and tokens[i].text == "def"):
        i += 1
    if i + 1 >= n:
        return None
    name = tokens[i + 1].text if tokens[i + 1].kind is TokenKind.IDENTIFIER else None
    depth = 0
    for j in range(i + 1, n):
        tok = tokens[j]
        if tok.kind is not TokenKind.PUNCT:
            continue
        if tok.text in "([{":
            depth += 1
        elif tok.text in ")]}":
            depth -= 1
        elif tok.text == ":" and depth == 0:
            return j + 1, n, name
    return None


def statement_count(ctx: PairContext) -> int:
    start, end, _ = ctx.body()
    body = [t for t in ctx.tokens[start:end] if not t.kind in COMMENT_KINDS]
    if ctx.pair.language is Language.PYTHON:
        return _python_statements(body)
    return _java_statements(body)


_AFTER_BLOCK = frozenset({";", ")", ",", "else", "catch", "finally"})


def _java_statements(body: Sequence[Token]) -> int:
    count = 0
    braces = parens = 0
    for i, tok in enumerate(body):
        if tok.kind is not TokenKind.PUNCT:
            continue
        text = tok.text
        if text == "(":
            parens += 1
        elif text == ")":
            parens -= 1
        elif text == "{":
            braces += 1
        elif text == "}":
            braces -= 1
            if braces == 0:
                nxt = body[i + 1].text if i + 1 < len(body) else ""
                if nxt not in _AFTER_BLOCK:
                    count += 1
        elif text == ";" and braces == 0 and parens == 0:
            count += 1
    return count


def _python_statements(body: Sequence[Token]) -> int:
    count = 0
    depth = 0
    last_line = -1
    continued = False
    first_line_docstring = None
    for tok in body:
        new_line = tok.line != last_line and depth == 0 and not continued
        if new_line:
            count += 1
            if first_line_docstring is None:
                first_line_docstring = tok.kind is TokenKind.STRING_LIT
        elif count == 1 and first_line_docstring and tok.line == last_line:
            first_line_docstring = False
        if tok.kind is TokenKind.PUNCT:
            if tok.text in "([{":
                depth += 1
            elif tok.text in ")]}":
                depth -= 1
            elif tok.text == ";" and depth == 0:
                count += 1
        continued = tok.kind is TokenKind.PUNCT and tok.text == "\\"
        last_line = tok.line + tok.text.count("\n")
    if first_line_docstring:
        count -= 1
    return count


# ---------------------------------------------------------------------------
# label construction


def _make_label(
    ctx: PairContext,
    category: NoiseCategory,
    evidence: str,
    proposed_comment: str | None = None,
    proposed_code: str | None = None,
    fallback: bool = False,
    force_remove: bool = False,
) -> NoiseLabel:
    action = NoiseAction.REMOVE if force_remove else ctx.cfg.action_for(category)
    if action is NoiseAction.UPDATE and proposed_comment is None and proposed_code is None:
        action = NoiseAction.REMOVE
    if action is NoiseAction.REMOVE:
        proposed_comment = proposed_code = None
    if fallback:
        evidence = "fallback: " + evidence
    return NoiseLabel(category, action, evidence, proposed_comment, proposed_code, fallback)


def _styled(ctx: PairContext, text: str) -> str:
    """Render a sentence in the casing style of the pair's comment."""
    comment = ctx.pair.comment
    if comment == comment.lower():
        return " ".join(normalize_for_match(text))
    return text


# ---------------------------------------------------------------------------
# comment-side rules

DANGLING_WORDS = frozenset("and or the a an of to with for at in on by".split())


def _partial_sentence(ctx: PairContext) -> NoiseLabel | None:
    cat = NoiseCategory.PARTIAL_SENTENCE
    first = ctx.first_sentence
    if first is not None:
        if ctx.alignment() is AlignmentClass.PARTIAL:
            return _make_label(ctx, cat, first.text, proposed_comment=_styled(ctx, first.text))
        return None
    comment = ctx.pair.comment.rstrip()
    parts = comment.split()
    if parts and comment[-1] not in ".!?" and parts[-1].lower() in DANGLING_WORDS:
        return _make_label(ctx, cat, f"dangling '{parts[-1]}'", fallback=True, force_remove=True)
    return None


_VERBOSE_MARKERS = ("arguments", "args", "params", "returns", "raises")
_MARKER_AFTER_COLON = re.compile(r"(?<!\w)(?:%s)\s*:" % "|".join(_VERBOSE_MARKERS), re.IGNORECASE)
_MARKER_AFTER_STOP = re.compile(r"[.!?]\s+((?:%s)\b)" % "|".join(_VERBOSE_MARKERS), re.IGNORECASE)


def _verbose_fallback(comment: str, abbreviations: Sequence[str]) -> tuple[str, str] | None:
    """``(evidence, proposal)`` for a comment running past its first sentence."""
    cut = None
    evidence = None
    idx = find_terminator(comment, abbreviations)
    if idx is not None and len(_WORD_SPANS.findall(comment[idx + 1:])) >= 3:
        cut, evidence = idx + 1, comment[idx:].strip()
    for pattern in (_MARKER_AFTER_COLON, _MARKER_AFTER_STOP):
        m = pattern.search(comment)
        if m:
            start = m.start(1) if pattern is _MARKER_AFTER_STOP else m.start()
            if _WORD_SPANS.search(comment[:start]) and (cut is None or start < cut):
                cut, evidence = start, comment[start:].strip()
    if cut is None:
        return None
    proposal = comment[:cut].strip()
    if not proposal:
        return None
    return evidence, proposal


def _verbose_sentence(ctx: PairContext) -> NoiseLabel | None:
    cat = NoiseCategory.VERBOSE_SENTENCE
    first = ctx.first_sentence
    if first is not None:
        if ctx.alignment() is AlignmentClass.VERBOSE:
            return _make_label(ctx, cat, first.text, proposed_comment=_styled(ctx, first.text))
        return None
    found = _verbose_fallback(ctx.pair.comment, ctx.cfg.abbreviations)
    if found is None:
        return None
    evidence, proposal = found
    return _make_label(ctx, cat, evidence, proposed_comment=proposal, fallback=True)


HTML_TAGS = frozenset(
    """a abbr b big blockquote br caption center cite code dd del div dl dt em font
    h1 h2 h3 h4 h5 h6 hr i img ins kbd li ol p pre q s samp small span strike strong
    sub sup table tbody td tfoot th thead tr tt u ul var""".split()
)

_TAMPER = re.compile(
    r"""
     (?P<tag><!--.*?-->|</?(?P<tagname>[a-zA-Z][a-zA-Z0-9]*)(?:\s[^<>]*)?/?>)
    |(?P<inline>\{@\w+[^}]*\})
    |(?P<javadoc>(?<!\w)@(?:param|return|throws|see|link)\b)
    |(?P<url>https?://[^\s<>"]+|(?<![\w.])www\.[\w-]+(?:\.[\w-]+)+)
    |(?P<path>(?<![\w/.])/?[\w-]+(?:/[\w-]+)*/[\w-]+\.[A-Za-z][A-Za-z0-9]{0,5}\b)
    """,
    re.VERBOSE | re.DOTALL,
)

URL_LEXICON = frozenset("http https www ftp com org net html htm io edu gov php jsp xml".split())
URL_SCHEMES = frozenset({"http", "https", "www", "ftp"})
URL_TLDS = frozenset("com org net io edu gov html htm cn uk de".split())


def tamper_matches(text: str) -> list[re.Match]:
    out = []
    for m in _TAMPER.finditer(text):
        name = m.group("tagname")
        if name is not None and name.lower() not in HTML_TAGS:
            continue
        out.append(m)
    return out


def _find_run(words: Sequence[str], needle: Sequence[str]) -> int:
    k = len(needle)
    if not k:
        return -1
    first = needle[0]
    for i in range(len(words) - k + 1):
        if words[i] == first and list(words[i:i + k]) == list(needle):
            return i
    return -1


def _lexicon_run(words: Sequence[str]) -> tuple[int, int] | None:
    run = 0
    for i, w in enumerate(words):
        run = run + 1 if w in URL_LEXICON else 0
        if run >= 3:
            j = i + 1
            while j < len(words) and words[j] in URL_LEXICON:
                j += 1
            return i - run + 1, j
    for i, w in enumerate(words):
        if w in URL_SCHEMES:
            for j in range(i + 1, min(i + 5, len(words))):
                if words[j] in URL_TLDS:
                    return i, j + 1
    return None


def _delete_word_runs(text: str, runs: Iterable[Sequence[str]]) -> str:
    spans = [(m.start(), m.end(), m.group().lower()) for m in _ALNUM_SPANS.finditer(text)]
    words = [s[2] for s in spans]
    dead = [False] * len(words)
    for needle in runs:
        k = len(needle)
        if not k:
            continue
        for i in range(len(words) - k + 1):
            if words[i:i + k] == list(needle):
                for j in range(i, i + k):
                    dead[j] = True
    out = []
    pos = 0
    for (start, end, _), kill in zip(spans, dead):
        if kill:
            out.append(text[pos:start])
            pos = end
    out.append(text[pos:])
    return " ".join("".join(out).split())


def _content_tampering(ctx: PairContext) -> NoiseLabel | None:
    cat = NoiseCategory.CONTENT_TAMPERING
    comment = ctx.pair.comment
    words = ctx.words
    first = ctx.first_sentence
    evidence = None
    residues: list[list[str]] = []
    fallback = False
    if first is not None and first.text:
        for m in tamper_matches(first.text):
            tokens = normalize_for_match(m.group())
            if not tokens:
                continue
            head = tokens[:2]
            if _find_run(words, head) >= 0:
                evidence = evidence or m.group()
                residues.append(tokens if _find_run(words, tokens) >= 0 else head)
    direct = tamper_matches(comment)
    if direct and evidence is None:
        evidence = direct[0].group()
    if evidence is None and first is None:
        run = _lexicon_run(words)
        if run is not None:
            evidence = " ".join(words[run[0]:run[1]])
            residues.append(words[run[0]:run[1]])
            fallback = True
    if evidence is None:
        return None
    proposal = None
    if ctx.cfg.action_for(cat) is NoiseAction.UPDATE:
        text = comment
        for m in reversed(direct):
            text = text[: m.start()] + " " + text[m.end():]
        text = _delete_word_runs(text, residues)
        proposal = text if _ALNUM_SPANS.search(text) else None
    return _make_label(ctx, cat, evidence, proposed_comment=proposal, fallback=fallback)


def rejoin_split_identifiers(
    comment: str,
    identifiers: Sequence,
    min_subtokens: int,
    raw: str | None = None,
) -> tuple[str, list[tuple[str, str]]]:
    """Rejoin identifier subtoken runs in ``comment`` into the identifier.

    Returns the new comment and ``(span_text, identifier)`` replacements made.
    Longer identifiers win overlaps; among equals, one spelled verbatim in
    the raw comment, then a lower-initial (variable-like) name, then the
    first seen.
    """
    spans = [(m.start(), m.end(), m.group().lower()) for m in _WORD_SPANS.finditer(comment)]
    words = [s[2] for s in spans]
    word_set = set(words)
    matches = []
    for order, ident in enumerate(identifiers):
        name, subtokens = ident
        k = len(subtokens)
        if k < min_subtokens or "$" in name:
            continue
        if subtokens[0] not in word_set or name.lower() in word_set:
            continue
        if not all(s in word_set for s in subtokens):
            continue
        hits = [i for i in range(len(words) - k + 1) if words[i:i + k] == list(subtokens)]
        if not hits:
            continue
        in_raw = raw is not None and re.search(r"(?<!\w)%s(?!\w)" % re.escape(name), raw) is not None
        key = (-k, not in_raw, not name[:1].islower(), order)
        matches.append((key, name, k, hits))
    if not matches:
        return comment, []
    matches.sort(key=lambda m: m[0])
    claimed = [False] * len(words)
    edits = []
    for _, name, k, hits in matches:
        for i in hits:
            if any(claimed[i:i + k]):
                continue
            for j in range(i, i + k):
                claimed[j] = True
            edits.append((spans[i][0], spans[i + k - 1][1], name))
    edits.sort()
    out = []
    pos = 0
    replaced = []
    for start, end, name in edits:
        out.append(comment[pos:start])
        out.append(name)
        replaced.append((comment[start:end], name))
        pos = end
    out.append(comment[pos:])
    return "".join(out), replaced


def _over_splitting(ctx: PairContext) -> NoiseLabel | None:
    identifiers = extract_identifiers(ctx.tokens)
    try:
        method = ctx.body()[2]
    except DetectorError:
        method = None
    # a comment restating the method's own name is an auto-code matter
    identifiers = [i for i in identifiers if i.name != method]
    proposal, replaced = rejoin_split_identifiers(
        ctx.pair.comment, identifiers, ctx.cfg.thresholds.min_split_subtokens, ctx.pair.raw_comment
    )
    if not replaced:
        return None
    evidence = "; ".join(f"{span} -> {name}" for span, name in replaced)
    return _make_label(ctx, NoiseCategory.OVER_SPLITTING, evidence, proposed_comment=proposal)


def _non_literal(ctx: PairContext) -> NoiseLabel | None:
    lines = ctx.raw_lines
    text = "\n".join(lines) if lines is not None else ctx.pair.comment
    if text.isascii():
        return None
    letters = foreign = 0
    first = None
    for i, ch in enumerate(text):
        if ch.isalpha():
            letters += 1
            if ord(ch) > 127:
                foreign += 1
                if first is None:
                    first = i
    if not foreign or foreign / letters <= ctx.cfg.thresholds.nonliteral_ratio:
        return None
    end = first
    while end < len(text) and ord(text[end]) > 127:
        end += 1
    return _make_label(ctx, NoiseCategory.NON_LITERAL, text[first:end])


QUESTION_STARTERS = frozenset(
    "do does did is are was were can could should would will what why how where when who which".split()
)
QUESTION_SUBJECTS = frozenset("we i you it this that the a an".split())


def _interrogation(ctx: PairContext) -> NoiseLabel | None:
    comment = ctx.pair.comment.strip()
    if comment.endswith("?"):
        return _make_label(ctx, NoiseCategory.INTERROGATION, "?")
    words = ctx.words
    if len(words) >= 2 and words[0] in QUESTION_STARTERS and words[1] in QUESTION_SUBJECTS:
        return _make_label(ctx, NoiseCategory.INTERROGATION, f"{words[0]} {words[1]}")
    return None


@lru_cache(maxsize=32)
def _keyword_pattern(keywords: tuple[str, ...]) -> re.Pattern:
    parts = []
    for kw in keywords:
        pieces = [re.escape(p) for p in re.split(r"[\s\-]+", kw.strip()) if p]
        if pieces:
            parts.append(r"[\s\-]+".join(pieces))
    if not parts:
        return re.compile(r"(?!)")
    return re.compile(r"(?<!\w)(?:%s)(?!\w)" % "|".join(parts), re.IGNORECASE)


def _under_development(ctx: PairContext) -> NoiseLabel | None:
    m = _keyword_pattern(tuple(ctx.cfg.thresholds.underdev_keywords)).search(ctx.pair.comment)
    if m is None:
        return None
    return _make_label(ctx, NoiseCategory.UNDER_DEVELOPMENT, m.group())


# ---------------------------------------------------------------------------
# code-side rules


def _empty_function(ctx: PairContext) -> NoiseLabel | None:
    start, end, _ = ctx.body()
    body = [t for t in ctx.tokens[start:end] if not t.kind in COMMENT_KINDS]
    if ctx.pair.language is Language.PYTHON:
        empty = all(
            (t.kind is TokenKind.KEYWORD and t.text == "pass")
            or (t.kind is TokenKind.PUNCT and t.text in ("...", ";"))
            or t.kind is TokenKind.STRING_LIT
            for t in body
        )
    else:
        empty = all(t.kind is TokenKind.PUNCT and t.text == ";" for t in body)
    if not empty:
        return None
    return _make_label(ctx, NoiseCategory.EMPTY_FUNCTION, "empty body")


def _codey(line: str) -> bool:
    s = line.rstrip()
    return s.endswith((";", "{", "}")) and "{@" not in s and not s.startswith("@")


def _commented_out_method(ctx: PairContext) -> NoiseLabel | None:
    lines = ctx.raw_lines
    if lines is None:
        lines = [line.strip() for line in ctx.pair.comment.splitlines()]
    codey = []
    for line in lines:
        if looks_like_signature(line):
            return _make_label(ctx, NoiseCategory.COMMENTED_OUT_METHOD, line)
        if _codey(line):
            codey.append(line)
    if len(codey) >= ctx.cfg.thresholds.codey_line_min + 1:
        return _make_label(ctx, NoiseCategory.COMMENTED_OUT_METHOD, " | ".join(codey))
    return None


def _block_comment_code(ctx: PairContext) -> NoiseLabel | None:
    tokens = ctx.tokens
    try:
        start, end, _ = ctx.body()
    except DetectorError:
        start, end = 0, len(tokens)
    inside = [t for t in tokens[start:end] if t.kind in COMMENT_KINDS]
    if not inside:
        return None
    stripped, _ = strip_block_comments(ctx.pair.code, ctx.pair.language, tokens)
    return _make_label(ctx, NoiseCategory.BLOCK_COMMENT_CODE, inside[0].text, proposed_code=stripped)


_AUTO_NAME = re.compile(r"^(?:(?:get|set|is|test)(?:[A-Z0-9_]|$)|toString$|to_string$|__str__$|__repr__$)")
AUTO_STOPWORDS = frozenset({"the", "a", "an", "this", "method"})


def _auto_code(ctx: PairContext) -> NoiseLabel | None:
    try:
        start, end, name = ctx.body()
        if not name or not _AUTO_NAME.match(name):
            return None
        stmts = statement_count(ctx)
    except DetectorError:
        return None
    limit = ctx.cfg.thresholds.max_auto_stmts
    if stmts <= max(1, limit - 1):
        return _make_label(ctx, NoiseCategory.AUTO_CODE, f"{name}: {stmts} statement(s)")
    if stmts <= limit:
        content = [w for w in ctx.words if w not in AUTO_STOPWORDS]
        if content == split_identifier(name):
            return _make_label(ctx, NoiseCategory.AUTO_CODE, f"{name}: comment restates name")
    return None


# ---------------------------------------------------------------------------
# public entry points

_RULES: dict[NoiseCategory, tuple[Callable[[PairContext], NoiseLabel | None], bool]] = {
    NoiseCategory.PARTIAL_SENTENCE: (_partial_sentence, False),
    NoiseCategory.VERBOSE_SENTENCE: (_verbose_sentence, False),
    NoiseCategory.CONTENT_TAMPERING: (_content_tampering, False),
    NoiseCategory.OVER_SPLITTING: (_over_splitting, True),
    NoiseCategory.NON_LITERAL: (_non_literal, False),
    NoiseCategory.INTERROGATION: (_interrogation, False),
    NoiseCategory.UNDER_DEVELOPMENT: (_under_development, False),
    NoiseCategory.EMPTY_FUNCTION: (_empty_function, True),
    NoiseCategory.COMMENTED_OUT_METHOD: (_commented_out_method, False),
    NoiseCategory.BLOCK_COMMENT_CODE: (_block_comment_code, True),
    NoiseCategory.AUTO_CODE: (_auto_code, True),
}

PER_PAIR_CATEGORIES = tuple(_RULES)


def _run_rule(category: NoiseCategory, pair: CodeCommentPair, cfg: RuleConfig | None) -> NoiseLabel | None:
    cfg = cfg or RuleConfig()
    if not cfg.is_enabled(category):
        return None
    rule, _ = _RULES[category]
    return rule(PairContext(pair, cfg))


def detect_partial_sentence(pair: CodeCommentPair, cfg: RuleConfig | None = None) -> NoiseLabel | None:
    return _run_rule(NoiseCategory.PARTIAL_SENTENCE, pair, cfg)


def detect_verbose_sentence(pair: CodeCommentPair, cfg: RuleConfig | None = None) -> NoiseLabel | None:
    return _run_rule(NoiseCategory.VERBOSE_SENTENCE, pair, cfg)


def detect_content_tampering(pair: CodeCommentPair, cfg: RuleConfig | None = None) -> NoiseLabel | None:
    return _run_rule(NoiseCategory.CONTENT_TAMPERING, pair, cfg)


def detect_over_splitting(pair: CodeCommentPair, cfg: RuleConfig | None = None) -> NoiseLabel | None:
    return _run_rule(NoiseCategory.OVER_SPLITTING, pair, cfg)


def detect_non_literal(pair: CodeCommentPair, cfg: RuleConfig | None = None) -> NoiseLabel | None:
    return _run_rule(NoiseCategory.NON_LITERAL, pair, cfg)


def detect_interrogation(pair: CodeCommentPair, cfg: RuleConfig | None = None) -> NoiseLabel | None:
    return _run_rule(NoiseCategory.INTERROGATION, pair, cfg)


def detect_under_development(pair: CodeCommentPair, cfg: RuleConfig | None = None) -> NoiseLabel | None:
    return _run_rule(NoiseCategory.UNDER_DEVELOPMENT, pair, cfg)


def detect_empty_function(pair: CodeCommentPair, cfg: RuleConfig | None = None) -> NoiseLabel | None:
    """Raises DetectorError when the method body cannot be located."""
    return _run_rule(NoiseCategory.EMPTY_FUNCTION, pair, cfg)


def detect_commented_out_method(pair: CodeCommentPair, cfg: RuleConfig | None = None) -> NoiseLabel | None:
    return _run_rule(NoiseCategory.COMMENTED_OUT_METHOD, pair, cfg)


def detect_block_comment_code(pair: CodeCommentPair, cfg: RuleConfig | None = None) -> NoiseLabel | None:
    return _run_rule(NoiseCategory.BLOCK_COMMENT_CODE, pair, cfg)


def detect_auto_code(pair: CodeCommentPair, cfg: RuleConfig | None = None) -> NoiseLabel | None:
    return _run_rule(NoiseCategory.AUTO_CODE, pair, cfg)


def diagnose_with_context(pair: CodeCommentPair, cfg: RuleConfig) -> tuple[Diagnosis, PairContext]:
    ctx = PairContext(pair, cfg)
    labels = []
    errors = []
    try:
        ctx.tokens
        tokens_ok = True
    except LexError as exc:
        errors.append(f"tokenize: {exc}")
        tokens_ok = False
    for category, (rule, needs_code) in _RULES.items():
        if not cfg.is_enabled(category) or (needs_code and not tokens_ok):
            continue
        try:
            label = rule(ctx)
        except DetectorError as exc:
            errors.append(f"{category.value}: {exc}")
            continue
        if label is not None:
            labels.append(label)
    return Diagnosis(pair.id, tuple(labels), tuple(errors)), ctx


def diagnose(pair: CodeCommentPair, cfg: RuleConfig | None = None) -> Diagnosis:
    """Run every enabled per-pair rule; rule failures are recorded, not raised."""
    return diagnose_with_context(pair, cfg or RuleConfig())[0]


def code_key(ctx: PairContext) -> str | None:
    """Dedup key for the pair behind ``ctx``; None if its code does not lex."""
    try:
        return normalize_code(ctx.pair.code, ctx.pair.language, ctx.tokens)
    except LexError:
        return None


def group_duplicates(
    pairs: Sequence[CodeCommentPair],
    keys: Sequence[str | None],
    precedence: Sequence[Partition] = PARTITION_ORDER,
) -> dict[str, list[str]]:
    """Group pair ids by key; the first id of each group is the keeper."""
    rank = {p: i for i, p in enumerate(precedence)}
    groups: dict[str, list[int]] = {}
    for i, key in enumerate(keys):
        if key is not None:
            groups.setdefault(key, []).append(i)
    out = {}
    for key, members in groups.items():
        if len(members) < 2:
            continue
        members.sort(key=lambda i: (rank[pairs[i].partition], i))
        out[key] = [pairs[i].id for i in members]
    return out


def duplicate_labels(groups: dict[str, list[str]], cfg: RuleConfig | None = None) -> dict[str, NoiseLabel]:
    """DuplicatedCode labels for every non-keeper, keyed by pair id."""
    cfg = cfg or RuleConfig()
    if not cfg.is_enabled(NoiseCategory.DUPLICATED_CODE):
        return {}
    out = {}
    for ids in groups.values():
        keeper = ids[0]
        for pair_id in ids[1:]:
            out[pair_id] = NoiseLabel(NoiseCategory.DUPLICATED_CODE, NoiseAction.REMOVE, f"duplicate of {keeper}")
    return out


def find_duplicates(dataset: Dataset, cfg: RuleConfig | None = None) -> dict[str, list[str]]:
    cfg = cfg or RuleConfig()
    keys = []
    for pair in dataset:
        try:
            keys.append(normalize_code(pair.code, pair.language))
        except LexError:
            keys.append(None)
    return group_duplicates(dataset.pairs, keys, cfg.keep_precedence)


def with_label(diagnosis: Diagnosis, label: NoiseLabel) -> Diagnosis:
    labels = sorted((*diagnosis.labels, label), key=lambda l: l.category.order)
    return Diagnosis(diagnosis.pair_id, tuple(labels), diagnosis.errors)
