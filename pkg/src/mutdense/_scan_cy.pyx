# cython: language_level=3
# cython: boundscheck=False
"""Compiled scanner kernel.

Character-identical mirror of ``_scan_py.scan``; the parity test suite
compares the two on fixtures and fuzz corpora.  Keep every rule change in
both files.
"""

from mutdense import errors
from mutdense._token_defs import (
    CHAR,
    IDENTIFIER,
    KEYWORD,
    KEYWORDS,
    NUMBER,
    OPERATOR,
    PUNCTUATION,
    STRING,
)

cdef int K_IDENTIFIER = IDENTIFIER
cdef int K_KEYWORD = KEYWORD
cdef int K_OPERATOR = OPERATOR
cdef int K_PUNCTUATION = PUNCTUATION
cdef int K_NUMBER = NUMBER
cdef int K_STRING = STRING
cdef int K_CHAR = CHAR

cdef frozenset _KEYWORDS = KEYWORDS


def scan(text: str):
    cdef Py_ssize_t n = len(text)
    cdef Py_ssize_t i = 0
    cdef Py_ssize_t line = 1
    cdef Py_ssize_t line_start = 0
    cdef Py_ssize_t start, col, start_line, start_col, length
    cdef Py_UCS4 c, c2, c3, ch, prev
    cdef int kind
    cdef bint closed, is_hex
    cdef list out = []
    cdef str s = text

    while i < n:
        c = s[i]

        if c == u'\n':
            i += 1
            line += 1
            line_start = i
            continue
        if c == u' ' or c == u'\t' or c == u'\r' or c == u'\f' or c == u'\x0b':
            i += 1
            continue

        start = i
        col = i - line_start + 1

        if c == u'/':
            c2 = s[i + 1] if i + 1 < n else 0
            if c2 == u'/':
                i += 2
                while i < n and s[i] != u'\n':
                    i += 1
                continue
            if c2 == u'*':
                start_line = line
                start_col = col
                i += 2
                closed = False
                while i < n:
                    ch = s[i]
                    if ch == u'*' and i + 1 < n and s[i + 1] == u'/':
                        i += 2
                        closed = True
                        break
                    if ch == u'\n':
                        line += 1
                        line_start = i + 1
                    i += 1
                if not closed:
                    raise errors.UnterminatedComment(
                        "unterminated block comment", start_line, start_col
                    )
                continue
            if c2 == u'=':
                out.append((K_OPERATOR, start, start + 2, line, col))
                i += 2
            else:
                out.append((K_OPERATOR, start, start + 1, line, col))
                i += 1
            continue

        if c == u'"':
            if i + 2 < n and s[i + 1] == u'"' and s[i + 2] == u'"':
                start_line = line
                start_col = col
                i += 3
                closed = False
                while i < n:
                    ch = s[i]
                    if ch == u'\\':
                        if i + 1 < n and s[i + 1] == u'\n':
                            line += 1
                            line_start = i + 2
                        i += 2
                        continue
                    if ch == u'"' and i + 2 < n and s[i + 1] == u'"' and s[i + 2] == u'"':
                        i += 3
                        closed = True
                        break
                    if ch == u'\n':
                        line += 1
                        line_start = i + 1
                    i += 1
                if not closed:
                    raise errors.UnterminatedLiteral(
                        "unterminated text block", start_line, start_col
                    )
                out.append((K_STRING, start, i, start_line, start_col))
                continue
            i += 1
            while True:
                if i >= n or s[i] == u'\n':
                    raise errors.UnterminatedLiteral(
                        "unterminated string literal", line, col
                    )
                ch = s[i]
                if ch == u'\\':
                    if i + 1 < n and s[i + 1] != u'\n':
                        i += 2
                        continue
                    raise errors.UnterminatedLiteral(
                        "unterminated string literal", line, col
                    )
                i += 1
                if ch == u'"':
                    break
            out.append((K_STRING, start, i, line, col))
            continue

        if c == u"'":
            i += 1
            while True:
                if i >= n or s[i] == u'\n':
                    raise errors.UnterminatedLiteral(
                        "unterminated character literal", line, col
                    )
                ch = s[i]
                if ch == u'\\':
                    if i + 1 < n and s[i + 1] != u'\n':
                        i += 2
                        continue
                    raise errors.UnterminatedLiteral(
                        "unterminated character literal", line, col
                    )
                i += 1
                if ch == u"'":
                    break
            out.append((K_CHAR, start, i, line, col))
            continue

        if c.isalpha() or c == u'_' or c == u'$':
            i += 1
            while i < n:
                ch = s[i]
                if ch.isalnum() or ch == u'_' or ch == u'$':
                    i += 1
                else:
                    break
            word = s[start:i]
            kind = K_KEYWORD if word in _KEYWORDS else K_IDENTIFIER
            out.append((kind, start, i, line, col))
            continue

        if c.isdigit() or (c == u'.' and i + 1 < n and s[i + 1].isdigit()):
            is_hex = c == u'0' and i + 1 < n and (s[i + 1] == u'x' or s[i + 1] == u'X')
            i += 1
            while i < n:
                ch = s[i]
                if ch.isalnum() or ch == u'_' or ch == u'.':
                    i += 1
                    continue
                if (ch == u'+' or ch == u'-') and i > start:
                    prev = s[i - 1]
                    if (not is_hex and (prev == u'e' or prev == u'E')) or (
                        is_hex and (prev == u'p' or prev == u'P')
                    ):
                        i += 1
                        continue
                break
            out.append((K_NUMBER, start, i, line, col))
            continue

        c2 = s[i + 1] if i + 1 < n else 0
        c3 = s[i + 2] if i + 2 < n else 0
        kind = K_OPERATOR
        if c == u'>':
            if c2 == u'>' and c3 == u'>' and i + 3 < n and s[i + 3] == u'=':
                length = 4
            elif (c2 == u'>' and c3 == u'>') or (c2 == u'>' and c3 == u'='):
                length = 3
            elif c2 == u'>' or c2 == u'=':
                length = 2
            else:
                length = 1
        elif c == u'<':
            if c2 == u'<' and c3 == u'=':
                length = 3
            elif c2 == u'<' or c2 == u'=':
                length = 2
            else:
                length = 1
        elif c == u'+' or c == u'-':
            if c2 == c or c2 == u'=' or (c == u'-' and c2 == u'>'):
                length = 2
            else:
                length = 1
        elif c == u'&' or c == u'|':
            length = 2 if (c2 == c or c2 == u'=') else 1
        elif c == u'*' or c == u'%' or c == u'^' or c == u'=' or c == u'!':
            length = 2 if c2 == u'=' else 1
        elif c == u':':
            if c2 == u':':
                length = 2
                kind = K_PUNCTUATION
            else:
                length = 1
        elif c == u'.':
            if c2 == u'.' and c3 == u'.':
                length = 3
            else:
                length = 1
            kind = K_PUNCTUATION
        elif (c == u'(' or c == u')' or c == u'{' or c == u'}' or c == u'['
              or c == u']' or c == u';' or c == u',' or c == u'@'):
            length = 1
            kind = K_PUNCTUATION
        elif c == u'~' or c == u'?':
            length = 1
        else:
            length = 1
            kind = K_PUNCTUATION
        out.append((kind, start, start + length, line, col))
        i = start + length

    return out
