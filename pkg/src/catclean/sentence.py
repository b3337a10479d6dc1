"""First-sentence extraction from raw comments and alignment classification.

The extractor walks the comment line by line: a line containing a sentence
terminator completes the sentence, a section-marker line (``@param``,
``Args:``...) ends it before that line, and any other line is accumulated.
Comparing the result with a dataset's processed comment tells whether the
dataset kept only part of the first sentence, or more than it.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from typing import Sequence

from .corpus import Language

DEFAULT_ABBREVIATIONS = ("e.g.", "i.e.", "etc.", "vs.", "cf.")
DEFAULT_SECTION_MARKERS = ("arguments", "args", "returns", "params", "raises", "see", "parameters", "yields")


class Terminator(str, Enum):
    PERIOD = "Period"
    SECTION_MARKER = "SectionMarker"
    END_OF_COMMENT = "EndOfComment"


class AlignmentClass(str, Enum):
    EXACT = "Exact"
    PARTIAL = "Partial"
    VERBOSE = "Verbose"
    UNRELATED = "Unrelated"


@dataclass(frozen=True)
class FirstSentence:
    text: str
    consumed_lines: int
    terminated_by: Terminator


JAVA_SIGNATURE = re.compile(
    r"""^\s*(?:@\w+(?:\([^)]*\))?\s+)*
    (?:(?:public|private|protected|static|final|abstract|synchronized|native|default)\s+)*
    (?:<[^>]*>\s+)?
    [\w$][\w$<>\[\],.?]*\s+[\w$]+\s*\([^)]*\)\s*(?:throws\s+[\w$.,\s]+?)?\s*[{;]\s*$""",
    re.VERBOSE,
)
PYTHON_SIGNATURE = re.compile(r"^\s*(?:async\s+)?def\s+\w+\s*\(")

_INLINE_CODE = re.compile(r"`[^`]*`|\{@[^}]*\}|<code>.*?</code>", re.IGNORECASE)
_TERMINATOR = re.compile(r"[.!?](?=\s|$)")
_WORDS = re.compile(r"[^\W_]+")


_STRONG = re.compile(r"\b(?:public|private|protected|static|final|abstract|synchronized|native|void)\b")


def looks_like_signature(line: str) -> bool:
    if PYTHON_SIGNATURE.match(line):
        return True
    # bare "type name(...);" is too close to prose; demand a modifier or a brace
    return bool(JAVA_SIGNATURE.match(line)) and (line.rstrip().endswith("{") or bool(_STRONG.search(line)))


def looks_like_code(line: str) -> bool:
    """A line that reads as source rather than prose (commented-out code)."""
    s = line.rstrip()
    if s.endswith(("{", "}")) and "{@" not in s:
        return True
    return looks_like_signature(s)


def _strip_java_line(line: str) -> str:
    s = line.strip()
    if s.endswith("*/"):
        s = s[:-2].rstrip()
    if s.startswith("/**"):
        s = s[3:]
    elif s.startswith("/*"):
        s = s[2:]
    s = s.strip()
    if s.startswith("//"):
        s = s.lstrip("/")
    elif s.startswith("*"):
        s = s.lstrip("*")
    return s.strip()


_PY_QUOTE = re.compile(r"""^(?:[rRuUbBfF]{0,2})(\"\"\"|''')""")


def _strip_python_line(line: str) -> str:
    s = line.strip()
    m = _PY_QUOTE.match(s)
    if m:
        s = s[m.end():]
    if s.endswith('"""') or s.endswith("'''"):
        s = s[:-3]
    s = s.strip()
    if s.startswith("#"):
        s = s.lstrip("#")
    return s.strip()


def strip_comment_delimiters(raw: str, language: Language = Language.JAVA) -> list[str]:
    """Comment text lines with delimiters removed and outer blank lines dropped."""
    strip = _strip_python_line if Language.parse(language) is Language.PYTHON else _strip_java_line
    lines = [strip(line) for line in raw.splitlines()]
    start, end = 0, len(lines)
    while start < end and not lines[start]:
        start += 1
    while end > start and not lines[end - 1]:
        end -= 1
    return lines[start:end]


def _section_pattern(markers: Sequence[str]) -> re.Pattern:
    names = "|".join(re.escape(m) for m in markers)
    return re.compile(rf"^(?:@\w|(?:{names})\s*:)", re.IGNORECASE)


_SECTION_CACHE: dict = {}


def _is_section_marker(line: str, markers: Sequence[str]) -> bool:
    key = tuple(markers)
    pattern = _SECTION_CACHE.get(key)
    if pattern is None:
        pattern = _SECTION_CACHE[key] = _section_pattern(key)
    return bool(pattern.match(line))


def find_terminator(line: str, abbreviations: Sequence[str] = DEFAULT_ABBREVIATIONS) -> int | None:
    """Index of the first sentence-ending ``.``/``!``/``?`` in ``line``, if any."""
    masked = _INLINE_CODE.sub(lambda m: "x" * len(m.group()), line) if ("`" in line or "{@" in line or "<" in line) else line
    for m in _TERMINATOR.finditer(masked):
        idx = m.start()
        if masked[idx] == ".":
            word_start = masked.rfind(" ", 0, idx) + 1
            word = line[word_start: idx + 1].lstrip("([{\"'").lower()
            if word in abbreviations:
                continue
        return idx
    return None


def extract_first_sentence(
    raw: str,
    language: Language = Language.JAVA,
    abbreviations: Sequence[str] = DEFAULT_ABBREVIATIONS,
    section_markers: Sequence[str] = DEFAULT_SECTION_MARKERS,
) -> FirstSentence:
    return first_sentence_of_lines(strip_comment_delimiters(raw, language), abbreviations, section_markers)


def first_sentence_of_lines(
    lines: Sequence[str],
    abbreviations: Sequence[str] = DEFAULT_ABBREVIATIONS,
    section_markers: Sequence[str] = DEFAULT_SECTION_MARKERS,
) -> FirstSentence:
    """First sentence of comment text already stripped of delimiters."""
    acc: list[str] = []
    for line in lines:
        if not line or _is_section_marker(line, section_markers) or looks_like_code(line):
            # blank line = paragraph break; code lines are never part of prose
            return FirstSentence(" ".join(acc), len(acc), Terminator.SECTION_MARKER)
        idx = find_terminator(line, abbreviations)
        if idx is not None:
            acc.append(line[: idx + 1])
            return FirstSentence(" ".join(acc), len(acc), Terminator.PERIOD)
        acc.append(line)
    return FirstSentence(" ".join(acc), len(acc), Terminator.END_OF_COMMENT)


def normalize_for_match(text: str) -> list[str]:
    """Lowercased alphanumeric word tokens."""
    return _WORDS.findall(text.lower())


def classify_tokens(processed: Sequence[str], first: Sequence[str]) -> AlignmentClass:
    p, f = list(processed), list(first)
    if p == f:
        return AlignmentClass.EXACT
    if p and len(p) < len(f) and f[: len(p)] == p:
        return AlignmentClass.PARTIAL
    if f and len(f) < len(p) and p[: len(f)] == f:
        return AlignmentClass.VERBOSE
    return AlignmentClass.UNRELATED


def classify_alignment(processed: str, first: FirstSentence | str) -> AlignmentClass:
    text = first.text if isinstance(first, FirstSentence) else first
    return classify_tokens(normalize_for_match(processed), normalize_for_match(text))
