# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled scanner kernel.

Typed translation of ``_scanner_py.scan``; the two lanes must emit
identical token streams and the test suite enforces that.
"""

from gitrank.lexer.tokens import KEYWORDS, OPS2, OPS3, Token

cdef frozenset _KEYWORDS = KEYWORDS
cdef frozenset _OPS2 = OPS2
cdef frozenset _OPS3 = OPS3

cdef int K_IDENTIFIER = 1
cdef int K_KEYWORD = 2
cdef int K_OPERATOR = 3
cdef int K_PUNCTUATION = 4
cdef int K_NUMBER = 5
cdef int K_STRING = 6
cdef int K_CHAR = 7
cdef int K_COMMENT = 8
cdef int K_WHITESPACE = 9
cdef int K_PREPROCESSOR = 10


cdef inline bint _is_ws(Py_UCS4 c):
    return c == u' ' or c == u'\t' or c == u'\r' or c == u'\n' or c == u'\v' or c == u'\f'


cdef inline bint _is_blank(Py_UCS4 c):
    # line-start detection looks through these
    return c == u' ' or c == u'\t' or c == u'\v' or c == u'\f' or c == u'\r'


cdef inline bint _is_digit(Py_UCS4 c):
    return u'0' <= c <= u'9'


cdef inline bint _is_ident_start(Py_UCS4 c):
    return (u'a' <= c <= u'z') or (u'A' <= c <= u'Z') or c == u'_'


cdef inline bint _is_ident_char(Py_UCS4 c):
    return _is_ident_start(c) or _is_digit(c)


cdef inline bint _is_op1(Py_UCS4 c):
    return (c == u'+' or c == u'-' or c == u'*' or c == u'/' or c == u'%'
            or c == u'!' or c == u'~' or c == u'^' or c == u'&' or c == u'|'
            or c == u'<' or c == u'>' or c == u'=' or c == u'?' or c == u':'
            or c == u'.')


cdef inline bint _is_exp(Py_UCS4 c):
    return c == u'e' or c == u'E' or c == u'p' or c == u'P'


cdef bint _at_line_start(unicode text, Py_ssize_t pos):
    cdef Py_ssize_t j = pos - 1
    while j >= 0 and _is_blank(text[j]):
        j -= 1
    return j < 0 or text[j] == u'\n'


cdef Py_ssize_t _scan_quoted(unicode text, Py_ssize_t i, Py_ssize_t n, Py_UCS4 quote):
    cdef Py_UCS4 c
    i += 1
    while i < n:
        c = text[i]
        if c == u'\\' and i + 1 < n:
            i += 2
        elif c == quote:
            return i + 1
        elif c == u'\n':
            return i  # unterminated literal ends at the line break
        else:
            i += 1
    return n


cdef Py_ssize_t _scan_number(unicode text, Py_ssize_t i, Py_ssize_t n):
    cdef Py_UCS4 c
    i += 1
    while i < n:
        c = text[i]
        if (c == u'+' or c == u'-') and _is_exp(text[i - 1]):
            i += 1
        elif _is_ident_char(c) or c == u'.':
            i += 1
        elif c == u"'" and i + 1 < n and _is_ident_char(text[i + 1]):
            i += 2  # C++14 digit separator
        else:
            break
    return i


cdef Py_ssize_t _scan_directive(unicode text, Py_ssize_t i, Py_ssize_t n):
    cdef Py_ssize_t j
    i += 1
    while i < n:
        if text[i] != u'\n':
            i += 1
            continue
        j = i - 1
        if j >= 0 and text[j] == u'\r':
            j -= 1
        if j >= 0 and text[j] == u'\\':
            i += 1  # continuation: the newline stays inside the directive
        else:
            break
    return i


def scan(unicode text):
    """Tokenize ``text`` into a list of Token; lossless and total."""
    cdef list tokens = []
    cdef Py_ssize_t i = 0, start, end, j
    cdef Py_ssize_t n = len(text)
    cdef long line = 1
    cdef Py_UCS4 c
    cdef int kind
    cdef unicode lexeme
    while i < n:
        c = text[i]
        start = i
        if _is_ws(c):
            i += 1
            while i < n and _is_ws(text[i]):
                i += 1
            kind = K_WHITESPACE
        elif c == u'/' and i + 1 < n and text[i + 1] == u'/':
            end = text.find(u'\n', i)
            i = n if end < 0 else end
            kind = K_COMMENT
        elif c == u'/' and i + 1 < n and text[i + 1] == u'*':
            end = text.find(u'*/', i + 2)
            i = n if end < 0 else end + 2
            kind = K_COMMENT
        elif c == u'#' and _at_line_start(text, i):
            i = _scan_directive(text, i, n)
            kind = K_PREPROCESSOR
        elif c == u'"':
            i = _scan_quoted(text, i, n, u'"')
            kind = K_STRING
        elif c == u"'":
            i = _scan_quoted(text, i, n, u"'")
            kind = K_CHAR
        elif _is_digit(c) or (c == u'.' and i + 1 < n and _is_digit(text[i + 1])):
            i = _scan_number(text, i, n)
            kind = K_NUMBER
        elif _is_ident_start(c):
            i += 1
            while i < n and _is_ident_char(text[i]):
                i += 1
            kind = K_KEYWORD if text[start:i] in _KEYWORDS else K_IDENTIFIER
        else:
            if text[start:start + 3] in _OPS3:
                i = start + 3
                kind = K_OPERATOR
            elif text[start:start + 3] == u'...':
                i = start + 3
                kind = K_PUNCTUATION
            elif text[start:start + 2] in _OPS2:
                i = start + 2
                kind = K_OPERATOR
            else:
                i = start + 1
                kind = K_OPERATOR if _is_op1(c) else K_PUNCTUATION
        lexeme = text[start:i]
        tokens.append(Token(kind, lexeme, line))
        # only these kinds can contain a newline
        if (kind == K_WHITESPACE or kind == K_COMMENT or kind == K_PREPROCESSOR
                or kind == K_STRING or kind == K_CHAR):
            for j in range(start, i):
                if text[j] == u'\n':
                    line += 1
    return tokens
