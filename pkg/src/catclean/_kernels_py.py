"""Pure-Python kernels.

``scan`` and ``lcs_length`` here define the reference behaviour; the Cython
module ``_kernels.pyx`` must produce identical results.

Kind codes returned by ``scan``:
    0 identifier-or-keyword, 1 line comment, 2 block comment,
    3 string literal, 4 number, 5 punctuation
"""
from __future__ import annotations

import re

from ._errors import LexError

IDENT, LINE_COMMENT, BLOCK_COMMENT, STRING, NUMBER, PUNCT = range(6)

_NUMBER = r"\.?\d(?:[eEpP][+-]|[\w.])*"

_JAVA = re.compile(
    r"""
     (?P<ws>\s+)
    |(?P<bc>/\*.*?\*/)
    |(?P<ubc>/\*)
    |(?P<lc>//[^\r\n]*)
    |(?P<str>"(?:[^"\\\r\n]|\\.)*"|'(?:[^'\\\r\n]|\\.)*')
    |(?P<ustr>["'])
    |(?P<ell>\.\.\.)
    |(?P<num>"""
    + _NUMBER
    + r""")
    |(?P<id>(?:[^\W\d]|\$)[\w$]*)
    |(?P<punct>.)
    """,
    re.VERBOSE | re.DOTALL,
)

_PREFIX = r"(?:[rR][bBfF]?|[bBfF][rR]?|[uU])?"

_PYTHON = re.compile(
    r"""
     (?P<ws>\s+)
    |(?P<lc>\#[^\r\n]*)
    |(?P<str>"""
    + _PREFIX
    + r"""(?:\"\"\"(?:[^\\]|\\.)*?\"\"\"|'''(?:[^\\]|\\.)*?'''|"(?!"")(?:[^"\\\r\n]|\\.)*"|'(?!'')(?:[^'\\\r\n]|\\.)*'))
    |(?P<ustr>"""
    + _PREFIX
    + r"""(?:\"\"\"|'''|"|'))
    |(?P<ell>\.\.\.)
    |(?P<num>"""
    + _NUMBER
    + r""")
    |(?P<id>[^\W\d]\w*)
    |(?P<punct>.)
    """,
    re.VERBOSE | re.DOTALL,
)

_KIND = {
    "lc": LINE_COMMENT,
    "bc": BLOCK_COMMENT,
    "str": STRING,
    "ell": PUNCT,
    "num": NUMBER,
    "id": IDENT,
    "punct": PUNCT,
}


def _position(source: str, offset: int) -> tuple[int, int]:
    line = source.count("\n", 0, offset) + 1
    col = offset - (source.rfind("\n", 0, offset) + 1) + 1
    return line, col


def scan(source: str, python: bool) -> list[tuple[int, int, int, int, int]]:
    """Split ``source`` into ``(kind, start, end, line, col)`` tuples.

    Whitespace is skipped. Raises LexError on an unterminated block comment
    or string literal, reporting where the construct starts.
    """
    pattern = _PYTHON if python else _JAVA
    out = []
    append = out.append
    line = 1
    line_start = 0
    pos = 0
    n = len(source)
    match = pattern.match
    while pos < n:
        m = match(source, pos)
        group = m.lastgroup
        end = m.end()
        if group == "ws":
            nl = source.count("\n", pos, end)
            if nl:
                line += nl
                line_start = source.rfind("\n", pos, end) + 1
            pos = end
            continue
        if group == "ubc":
            raise LexError("block comment", line, pos - line_start + 1)
        if group == "ustr":
            raise LexError("string", line, pos - line_start + 1)
        append((_KIND[group], pos, end, line, pos - line_start + 1))
        if group == "bc" or group == "str":
            nl = source.count("\n", pos, end)
            if nl:
                line += nl
                line_start = source.rfind("\n", pos, end) + 1
        pos = end
    return out


def lcs_length(a, b) -> int:
    """Length of the longest common subsequence of two sequences."""
    if len(a) < len(b):
        a, b = b, a
    if not b:
        return 0
    prev = [0] * (len(b) + 1)
    for x in a:
        cur = [0]
        for j, y in enumerate(b):
            if x == y:
                cur.append(prev[j] + 1)
            else:
                cur.append(cur[j] if cur[j] > prev[j + 1] else prev[j + 1])
        prev = cur
    return prev[-1]


__all__ = ["scan", "lcs_length", "IDENT", "LINE_COMMENT", "BLOCK_COMMENT", "STRING", "NUMBER", "PUNCT"]


def _lower_part(part: str) -> str:
    return part.lower() if part.isascii() else "".join(c.lower() for c in part)


def split_identifier(name: str) -> list[str]:
    """Split an identifier into lowercased subtokens."""
    parts: list[str] = []
    current: list[str] = []
    prev = ""  # class of previous char: U, L, D
    for ch in name:
        if ch == "_" or ch == "$" or not ch.isalnum():
            if current:
                parts.append("".join(current))
                current = []
            prev = ""
            continue
        if ch.isdecimal() or ch.isdigit():
            cls = "D"
        elif ch.isupper():
            cls = "U"
        else:
            cls = "L"
        if current:
            if (cls == "D") != (prev == "D"):
                parts.append("".join(current))
                current = []
            elif cls == "U" and prev == "L":
                parts.append("".join(current))
                current = []
            elif cls == "L" and prev == "U" and len(current) >= 2 and current[-2].isupper():
                # acronym run followed by a word: XMLParser -> XML | Parser
                parts.append("".join(current[:-1]))
                current = current[-1:]
        current.append(ch)
        prev = cls
    if current:
        parts.append("".join(current))
    return [_lower_part(p) for p in parts]
