"""Pure-Python scanner kernel.

Fallback used when the compiled extension is unavailable.  This module is
the normative description of the token grammar; ``_scanner.pyx`` is a
typed translation of the same algorithm and the test suite cross-checks
the two lanes token-for-token.

Grammar notes (shared by both lanes):
  * whitespace runs (including newlines) form one token;
  * ``//`` comments stop before the newline, ``/* */`` may span lines;
  * a ``#`` that is the first non-blank character of a line opens a
    preprocessor directive token that swallows backslash continuations;
  * string/char literals honor backslash escapes and stop at an
    unescaped newline, so a stray quote never derails the rest of a file;
  * numbers follow the preprocessing-number rule (hex floats, exponent
    signs, digit separators, literal suffixes all stay in one token);
  * multi-character operators are matched longest-first;
  * any unrecognized byte becomes a single-character punctuation token,
    so scanning is total and lossless.
"""

from gitrank.lexer.tokens import (
    KEYWORDS,
    OPS1,
    OPS2,
    OPS3,
    Token,
    TokenKind,
)

_IDENTIFIER = TokenKind.IDENTIFIER
_KEYWORD = TokenKind.KEYWORD
_OPERATOR = TokenKind.OPERATOR
_PUNCTUATION = TokenKind.PUNCTUATION
_NUMBER = TokenKind.NUMBER
_STRING = TokenKind.STRING
_CHAR = TokenKind.CHAR
_COMMENT = TokenKind.COMMENT
_WHITESPACE = TokenKind.WHITESPACE
_PREPROCESSOR = TokenKind.PREPROCESSOR

_WS = " \t\r\n\v\f"
_BLANK = " \t\v\f\r"  # line-start detection looks through these


def _is_digit(c: str) -> bool:
    return "0" <= c <= "9"


def _is_ident_start(c: str) -> bool:
    return "a" <= c <= "z" or "A" <= c <= "Z" or c == "_"


def _is_ident_char(c: str) -> bool:
    return _is_ident_start(c) or _is_digit(c)


def _at_line_start(text: str, pos: int) -> bool:
    j = pos - 1
    while j >= 0 and text[j] in _BLANK:
        j -= 1
    return j < 0 or text[j] == "\n"


def _scan_quoted(text: str, i: int, n: int, quote: str) -> int:
    i += 1
    while i < n:
        c = text[i]
        if c == "\\" and i + 1 < n:
            i += 2
        elif c == quote:
            return i + 1
        elif c == "\n":
            return i  # unterminated literal ends at the line break
        else:
            i += 1
    return n


def _scan_number(text: str, i: int, n: int) -> int:
    i += 1
    while i < n:
        c = text[i]
        if (c == "+" or c == "-") and text[i - 1] in "eEpP":
            i += 1
        elif _is_ident_char(c) or c == ".":
            i += 1
        elif c == "'" and i + 1 < n and _is_ident_char(text[i + 1]):
            i += 2  # C++14 digit separator
        else:
            break
    return i


def _scan_directive(text: str, i: int, n: int) -> int:
    i += 1
    while i < n:
        if text[i] != "\n":
            i += 1
            continue
        j = i - 1
        if j >= 0 and text[j] == "\r":
            j -= 1
        if j >= 0 and text[j] == "\\":
            i += 1  # continuation: the newline stays inside the directive
        else:
            break
    return i


def scan(text):
    """Tokenize ``text`` into a list of Token; lossless and total."""
    tokens = []
    append = tokens.append
    i = 0
    n = len(text)
    line = 1
    while i < n:
        c = text[i]
        start = i
        if c in _WS:
            i += 1
            while i < n and text[i] in _WS:
                i += 1
            kind = _WHITESPACE
        elif c == "/" and i + 1 < n and text[i + 1] == "/":
            i = text.find("\n", i)
            if i < 0:
                i = n
            kind = _COMMENT
        elif c == "/" and i + 1 < n and text[i + 1] == "*":
            end = text.find("*/", i + 2)
            i = n if end < 0 else end + 2
            kind = _COMMENT
        elif c == "#" and _at_line_start(text, i):
            i = _scan_directive(text, i, n)
            kind = _PREPROCESSOR
        elif c == '"':
            i = _scan_quoted(text, i, n, '"')
            kind = _STRING
        elif c == "'":
            i = _scan_quoted(text, i, n, "'")
            kind = _CHAR
        elif _is_digit(c) or (c == "." and i + 1 < n and _is_digit(text[i + 1])):
            i = _scan_number(text, i, n)
            kind = _NUMBER
        elif _is_ident_start(c):
            i += 1
            while i < n and _is_ident_char(text[i]):
                i += 1
            kind = _KEYWORD if text[start:i] in KEYWORDS else _IDENTIFIER
        else:
            three = text[start : start + 3]
            if three in OPS3:
                i = start + 3
                kind = _OPERATOR
            elif three == "...":
                i = start + 3
                kind = _PUNCTUATION
            else:
                two = text[start : start + 2]
                if two in OPS2:
                    i = start + 2
                    kind = _OPERATOR
                else:
                    i = start + 1
                    kind = _OPERATOR if c in OPS1 else _PUNCTUATION
        lexeme = text[start:i]
        append(Token(kind, lexeme, line))
        line += lexeme.count("\n")
    return tokens
