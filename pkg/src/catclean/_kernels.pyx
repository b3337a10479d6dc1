# cython: language_level=3
"""Compiled kernels: character-level lexer state machine and LCS.

Behaviour mirrors ``catclean._kernels_py`` exactly; the test suite checks
both against each other on random inputs.
"""
from cpython.mem cimport PyMem_Malloc, PyMem_Free

from catclean._errors import LexError

DEF IDENT = 0
DEF LINE_COMMENT = 1
DEF BLOCK_COMMENT = 2
DEF STRING = 3
DEF NUMBER = 4
DEF PUNCT = 5


cdef inline bint is_word(Py_UCS4 c):
    return c == u'_' or c.isalnum()


cdef inline bint is_prefix(unicode word):
    cdef Py_ssize_t n = len(word)
    cdef Py_UCS4 a, b
    if n == 1:
        a = word[0]
        return a in u'rRbBfFuU'
    if n == 2:
        a = word[0]
        b = word[1]
        if a in u'rR':
            return b in u'bBfF'
        if a in u'bBfF':
            return b in u'rR'
    return False


def scan(unicode source, bint python):
    cdef Py_ssize_t n = len(source)
    cdef Py_ssize_t pos = 0, start, j
    cdef Py_ssize_t line = 1, line_start = 0
    cdef Py_ssize_t tok_line, tok_col
    cdef Py_UCS4 c, d, q
    cdef int kind
    cdef bint triple
    cdef list out = []

    while pos < n:
        c = source[pos]
        if c.isspace():
            if c == u'\n':
                line += 1
                line_start = pos + 1
            pos += 1
            continue

        start = pos
        tok_line = line
        tok_col = pos - line_start + 1

        # comments
        if not python and c == u'/' and pos + 1 < n and source[pos + 1] == u'*':
            j = pos + 2
            while True:
                if j + 1 >= n:
                    raise LexError("block comment", tok_line, tok_col)
                if source[j] == u'*' and source[j + 1] == u'/':
                    break
                j += 1
            pos = j + 2
            for j in range(start, pos):
                if source[j] == u'\n':
                    line += 1
                    line_start = j + 1
            out.append((BLOCK_COMMENT, start, pos, tok_line, tok_col))
            continue
        if (not python and c == u'/' and pos + 1 < n and source[pos + 1] == u'/') or (python and c == u'#'):
            j = pos + 1
            while j < n:
                d = source[j]
                if d == u'\n' or d == u'\r':
                    break
                j += 1
            pos = j
            out.append((LINE_COMMENT, start, pos, tok_line, tok_col))
            continue

        # identifiers (and Python string prefixes)
        if (is_word(c) and not c.isdecimal()) or (not python and c == u'$'):
            j = pos + 1
            while j < n:
                d = source[j]
                if is_word(d) or (not python and d == u'$'):
                    j += 1
                else:
                    break
            if python and j < n and (source[j] == u'"' or source[j] == u"'") and is_prefix(source[pos:j]):
                pos = j
                c = source[pos]
            else:
                pos = j
                out.append((IDENT, start, pos, tok_line, tok_col))
                continue

        # string literals
        if c == u'"' or c == u"'":
            q = c
            triple = python and pos + 2 < n and source[pos + 1] == q and source[pos + 2] == q
            if triple:
                j = pos + 3
                while True:
                    if j >= n:
                        raise LexError("string", tok_line, tok_col)
                    d = source[j]
                    if d == u'\\':
                        if j + 1 >= n:
                            raise LexError("string", tok_line, tok_col)
                        j += 2
                        continue
                    if d == q and j + 2 < n and source[j + 1] == q and source[j + 2] == q:
                        j += 3
                        break
                    j += 1
            else:
                j = pos + 1
                while True:
                    if j >= n:
                        raise LexError("string", tok_line, tok_col)
                    d = source[j]
                    if d == u'\\':
                        if j + 1 >= n:
                            raise LexError("string", tok_line, tok_col)
                        j += 2
                        continue
                    if d == u'\n' or d == u'\r':
                        raise LexError("string", tok_line, tok_col)
                    if d == q:
                        j += 1
                        break
                    j += 1
            pos = j
            for j in range(start, pos):
                if source[j] == u'\n':
                    line += 1
                    line_start = j + 1
            out.append((STRING, start, pos, tok_line, tok_col))
            continue

        # ellipsis and numbers
        if c == u'.' and pos + 2 < n and source[pos + 1] == u'.' and source[pos + 2] == u'.':
            pos += 3
            out.append((PUNCT, start, pos, tok_line, tok_col))
            continue
        if c.isdecimal() or (c == u'.' and pos + 1 < n and source[pos + 1].isdecimal()):
            j = pos + 1 if c != u'.' else pos + 2
            while j < n:
                d = source[j]
                if d in u'eEpP' and j + 1 < n and source[j + 1] in u'+-':
                    j += 2
                elif is_word(d) or d == u'.':
                    j += 1
                else:
                    break
            pos = j
            out.append((NUMBER, start, pos, tok_line, tok_col))
            continue

        pos += 1
        out.append((PUNCT, start, pos, tok_line, tok_col))
    return out


def lcs_length(a, b):
    """Length of the longest common subsequence of two sequences."""
    cdef Py_ssize_t n, m, i, j
    cdef int *prev
    cdef int *cur
    cdef int *tmp
    cdef int result
    if len(a) < len(b):
        a, b = b, a
    n = len(a)
    m = len(b)
    if m == 0:
        return 0
    a = list(a)
    b = list(b)
    prev = <int *> PyMem_Malloc((m + 1) * sizeof(int))
    cur = <int *> PyMem_Malloc((m + 1) * sizeof(int))
    if prev == NULL or cur == NULL:
        PyMem_Free(prev)
        PyMem_Free(cur)
        raise MemoryError()
    try:
        for j in range(m + 1):
            prev[j] = 0
        cur[0] = 0
        for i in range(n):
            x = a[i]
            for j in range(m):
                if x == b[j]:
                    cur[j + 1] = prev[j] + 1
                elif cur[j] > prev[j + 1]:
                    cur[j + 1] = cur[j]
                else:
                    cur[j + 1] = prev[j + 1]
            tmp = prev
            prev = cur
            cur = tmp
        result = prev[m]
    finally:
        PyMem_Free(prev)
        PyMem_Free(cur)
    return result


cdef inline unicode _lower_part(unicode part):
    if part.isascii():
        return part.lower()
    return u"".join([c.lower() for c in part])


def split_identifier(unicode name):
    """Split an identifier into lowercased subtokens."""
    cdef list parts = []
    cdef Py_ssize_t n = len(name)
    cdef Py_ssize_t i, start = 0, length = 0
    cdef Py_UCS4 ch, prev_ch = 0
    cdef int cls, prev = 0  # 0 none, 1 upper, 2 lower, 3 digit
    for i in range(n):
        ch = name[i]
        if ch == u'_' or ch == u'$' or not ch.isalnum():
            if length:
                parts.append(_lower_part(name[start:i]))
            length = 0
            prev = 0
            continue
        if ch.isdecimal() or ch.isdigit():
            cls = 3
        elif ch.isupper():
            cls = 1
        else:
            cls = 2
        if length:
            if (cls == 3) != (prev == 3):
                parts.append(_lower_part(name[start:i]))
                length = 0
            elif cls == 1 and prev == 2:
                parts.append(_lower_part(name[start:i]))
                length = 0
            elif cls == 2 and prev == 1 and length >= 2 and prev_ch.isupper() and name[i - 2].isupper():
                parts.append(_lower_part(name[start:i - 1]))
                start = i - 1
                length = 1
        if not length:
            start = i
        length += 1
        prev = cls
        prev_ch = ch
    if length:
        parts.append(_lower_part(name[start:n]))
    return parts
