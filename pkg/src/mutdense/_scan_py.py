"""Pure-Python scanner kernel for Java-style source text.

Produces raw token tuples ``(kind, start, end, line, column)`` with
half-open character offsets and 1-based line/column of the token start.
Comments and whitespace are consumed silently; literals keep their
delimiters; multi-character operators are maximal-munch.

The compiled kernel in ``_scan_cy.pyx`` mirrors this module and must stay
behaviorally identical; the parity test suite enforces that.
"""

from __future__ import annotations

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

RawToken = tuple[int, int, int, int, int]


def scan(text: str) -> list[RawToken]:
    n = len(text)
    i = 0
    line = 1
    line_start = 0  # offset of the first character of the current line
    out: list[RawToken] = []
    append = out.append

    while i < n:
        c = text[i]

        if c == "\n":
            i += 1
            line += 1
            line_start = i
            continue
        if c == " " or c == "\t" or c == "\r" or c == "\f" or c == "\x0b":
            i += 1
            continue

        start = i
        col = i - line_start + 1

        if c == "/":
            c2 = text[i + 1] if i + 1 < n else ""
            if c2 == "/":
                i += 2
                while i < n and text[i] != "\n":
                    i += 1
                continue
            if c2 == "*":
                start_line, start_col = line, col
                i += 2
                closed = False
                while i < n:
                    ch = text[i]
                    if ch == "*" and i + 1 < n and text[i + 1] == "/":
                        i += 2
                        closed = True
                        break
                    if ch == "\n":
                        line += 1
                        line_start = i + 1
                    i += 1
                if not closed:
                    raise errors.UnterminatedComment(
                        "unterminated block comment", start_line, start_col
                    )
                continue
            if c2 == "=":
                append((OPERATOR, start, start + 2, line, col))
                i += 2
            else:
                append((OPERATOR, start, start + 1, line, col))
                i += 1
            continue

        if c == '"':
            if i + 2 < n and text[i + 1] == '"' and text[i + 2] == '"':
                # text block: """ ... """, backslash escapes apply
                start_line, start_col = line, col
                i += 3
                closed = False
                while i < n:
                    ch = text[i]
                    if ch == "\\":
                        if i + 1 < n and text[i + 1] == "\n":
                            line += 1
                            line_start = i + 2
                        i += 2
                        continue
                    if ch == '"' and i + 2 < n and text[i + 1] == '"' and text[i + 2] == '"':
                        i += 3
                        closed = True
                        break
                    if ch == "\n":
                        line += 1
                        line_start = i + 1
                    i += 1
                if not closed:
                    raise errors.UnterminatedLiteral(
                        "unterminated text block", start_line, start_col
                    )
                append((STRING, start, i, start_line, start_col))
                continue
            i += 1
            while True:
                if i >= n or text[i] == "\n":
                    raise errors.UnterminatedLiteral(
                        "unterminated string literal", line, col
                    )
                ch = text[i]
                if ch == "\\":
                    if i + 1 < n and text[i + 1] != "\n":
                        i += 2
                        continue
                    raise errors.UnterminatedLiteral(
                        "unterminated string literal", line, col
                    )
                i += 1
                if ch == '"':
                    break
            append((STRING, start, i, line, col))
            continue

        if c == "'":
            i += 1
            while True:
                if i >= n or text[i] == "\n":
                    raise errors.UnterminatedLiteral(
                        "unterminated character literal", line, col
                    )
                ch = text[i]
                if ch == "\\":
                    if i + 1 < n and text[i + 1] != "\n":
                        i += 2
                        continue
                    raise errors.UnterminatedLiteral(
                        "unterminated character literal", line, col
                    )
                i += 1
                if ch == "'":
                    break
            append((CHAR, start, i, line, col))
            continue

        if c.isalpha() or c == "_" or c == "$":
            i += 1
            while i < n:
                ch = text[i]
                if ch.isalnum() or ch == "_" or ch == "$":
                    i += 1
                else:
                    break
            word = text[start:i]
            append(
                (KEYWORD if word in KEYWORDS else IDENTIFIER, start, i, line, col)
            )
            continue

        if c.isdigit() or (c == "." and i + 1 < n and text[i + 1].isdigit()):
            is_hex = c == "0" and i + 1 < n and (text[i + 1] == "x" or text[i + 1] == "X")
            i += 1
            while i < n:
                ch = text[i]
                if ch.isalnum() or ch == "_" or ch == ".":
                    i += 1
                    continue
                # exponent sign: 1e+5 / 0x1.8p-3
                if (ch == "+" or ch == "-") and i > start:
                    prev = text[i - 1]
                    if (not is_hex and (prev == "e" or prev == "E")) or (
                        is_hex and (prev == "p" or prev == "P")
                    ):
                        i += 1
                        continue
                break
            append((NUMBER, start, i, line, col))
            continue

        # operators and punctuation, longest match first
        c2 = text[i + 1] if i + 1 < n else ""
        kind = OPERATOR
        if c == ">":
            if text[i : i + 4] == ">>>=":
                length = 4
            elif text[i : i + 3] == ">>>" or text[i : i + 3] == ">>=":
                length = 3
            elif c2 == ">" or c2 == "=":
                length = 2
            else:
                length = 1
        elif c == "<":
            if text[i : i + 3] == "<<=":
                length = 3
            elif c2 == "<" or c2 == "=":
                length = 2
            else:
                length = 1
        elif c == "+" or c == "-":
            if c2 == c or c2 == "=" or (c == "-" and c2 == ">"):
                length = 2
            else:
                length = 1
        elif c == "&" or c == "|":
            length = 2 if (c2 == c or c2 == "=") else 1
        elif c == "*" or c == "%" or c == "^" or c == "=" or c == "!":
            length = 2 if c2 == "=" else 1
        elif c == ":":
            if c2 == ":":
                length = 2
                kind = PUNCTUATION
            else:
                length = 1
        elif c == ".":
            if text[i : i + 3] == "...":
                length = 3
            else:
                length = 1
            kind = PUNCTUATION
        elif c in "(){}[];,@":
            length = 1
            kind = PUNCTUATION
        elif c == "~" or c == "?":
            length = 1
        else:
            # outside the subset: emit a one-character token, never crash
            length = 1
            kind = PUNCTUATION
        append((kind, start, start + length, line, col))
        i = start + length

    return out
