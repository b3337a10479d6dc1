"""Lexical analysis of method source for Java and Python.

This is a lexer, not a parser: every rule built on top of it only needs to
know where identifiers, comments and string literals are.
"""
from __future__ import annotations

import keyword as _pykeyword
from enum import Enum
from functools import lru_cache
from typing import Iterable, NamedTuple, Sequence

from . import kernels
from ._errors import LexError
from ._kernels_py import BLOCK_COMMENT, IDENT, LINE_COMMENT, NUMBER, PUNCT, STRING
from .corpus import Language


class TokenKind(str, Enum):
    IDENTIFIER = "Identifier"
    KEYWORD = "Keyword"
    LINE_COMMENT = "LineComment"
    BLOCK_COMMENT = "BlockComment"
    STRING_LIT = "StringLit"
    NUMBER = "Number"
    PUNCT = "Punct"

    @property
    def is_comment(self) -> bool:
        return self is TokenKind.LINE_COMMENT or self is TokenKind.BLOCK_COMMENT


COMMENT_KINDS = frozenset({TokenKind.LINE_COMMENT, TokenKind.BLOCK_COMMENT})

_KINDS = {
    LINE_COMMENT: TokenKind.LINE_COMMENT,
    BLOCK_COMMENT: TokenKind.BLOCK_COMMENT,
    STRING: TokenKind.STRING_LIT,
    NUMBER: TokenKind.NUMBER,
    PUNCT: TokenKind.PUNCT,
}


class Token(NamedTuple):
    kind: TokenKind
    text: str
    line: int
    col: int
    offset: int


class Identifier(NamedTuple):
    name: str
    subtokens: tuple[str, ...]


JAVA_KEYWORDS = frozenset(
    """
    abstract assert boolean break byte case catch char class const continue
    default do double else enum extends final finally float for goto if
    implements import instanceof int interface long native new package
    private protected public return short static strictfp super switch
    synchronized this throw throws transient try void volatile while
    true false null var record yield sealed permits
    """.split()
)

PYTHON_KEYWORDS = frozenset(_pykeyword.kwlist)


def default_keywords(language: Language) -> frozenset[str]:
    return PYTHON_KEYWORDS if language is Language.PYTHON else JAVA_KEYWORDS


def tokenize_code(
    source: str,
    language: Language = Language.JAVA,
    keywords: Iterable[str] | None = None,
) -> list[Token]:
    """Tokenize ``source``; raises LexError on unterminated constructs."""
    language = Language.parse(language)
    kw = default_keywords(language) if keywords is None else keywords
    ident = TokenKind.IDENTIFIER
    keyword = TokenKind.KEYWORD
    kinds = _KINDS
    tokens = []
    append = tokens.append
    for kind, start, end, line, col in kernels.scan(source, language is Language.PYTHON):
        text = source[start:end]
        if kind == IDENT:
            append(Token(keyword if text in kw else ident, text, line, col, start))
        else:
            append(Token(kinds[kind], text, line, col, start))
    return tokens


@lru_cache(maxsize=65536)
def _split_cached(name: str) -> tuple[str, ...]:
    return tuple(kernels.split_identifier(name))


def split_identifier(name: str) -> list[str]:
    """Split an identifier at snake_case, camelCase, acronym and digit boundaries.

    >>> split_identifier("parseHTTP2Frame")
    ['parse', 'http', '2', 'frame']
    """
    return list(_split_cached(name))


def _lower(text: str) -> str:
    # per-character lowering keeps split/join consistent (no context-dependent sigma)
    return "".join(c.lower() for c in text)


def identifier_key(name: str) -> str:
    """The split-join invariant key: lowercased, separators dropped."""
    return _lower("".join(c for c in name if c.isalnum()))


def extract_identifiers(tokens: Sequence[Token]) -> list[Identifier]:
    """Distinct identifier tokens in first-seen order, with their subtokens."""
    seen = set()
    out = []
    for tok in tokens:
        if tok.kind is TokenKind.IDENTIFIER and tok.text not in seen:
            seen.add(tok.text)
            subtokens = _split_cached(tok.text)
            if subtokens:
                out.append(Identifier(tok.text, subtokens))
    return out


def strip_block_comments(
    source: str,
    language: Language = Language.JAVA,
    tokens: Sequence[Token] | None = None,
) -> tuple[str, list[str]]:
    """Remove every comment from ``source``.

    Lines left blank by a removal are dropped and lines that lost a trailing
    comment are right-trimmed; other lines are untouched. A comment wedged
    between two non-blank characters becomes one space so tokens never fuse.
    """
    if tokens is None:
        tokens = tokenize_code(source, language)
    comments = [t for t in tokens if t.kind in COMMENT_KINDS]
    if not comments:
        return source, []
    pieces = []
    touched = set()
    out_line = 0
    pos = 0
    for tok in comments:
        start, end = tok.offset, tok.offset + len(tok.text)
        chunk = source[pos:start]
        out_line += chunk.count("\n")
        pieces.append(chunk)
        before = source[start - 1] if start > 0 else " "
        after = source[end] if end < len(source) else " "
        if not before.isspace() and not after.isspace():
            pieces.append(" ")
        touched.add(out_line)
        pos = end
    pieces.append(source[pos:])
    kept = []
    for i, line in enumerate("".join(pieces).split("\n")):
        if i in touched:
            line = line.rstrip()
            if not line.strip():
                continue
        kept.append(line)
    text = "\n".join(kept)
    return (text if text.strip() else ""), [t.text for t in comments]


def normalize_code(source: str, language: Language = Language.JAVA, tokens: Sequence[Token] | None = None) -> str:
    """Whitespace- and comment-insensitive equality key for exact dedup."""
    if tokens is None:
        tokens = tokenize_code(source, language)
    return " ".join(t.text for t in tokens if not t.kind in COMMENT_KINDS)


__all__ = [
    "LexError",
    "Token",
    "TokenKind",
    "Identifier",
    "JAVA_KEYWORDS",
    "PYTHON_KEYWORDS",
    "tokenize_code",
    "split_identifier",
    "extract_identifiers",
    "strip_block_comments",
    "normalize_code",
]
