"""Heuristic function-definition extractor.

Finds ``name ( ... ) qualifiers { body }`` shapes in the token stream
without a full C++ grammar.  The recognizer here is the normative
definition of "function" for every downstream metric:

  * a definition is an identifier directly followed by a balanced
    parameter list and, after optional qualifiers (cv, noexcept, ref
    qualifiers, attributes, trailing return, constructor initializers), a
    braced body;
  * qualified names are joined with ``::``, destructors keep their ``~``;
  * nested lambdas and local blocks stay inside the enclosing span;
  * declarations, ``= default/delete``, and anything the automaton cannot
    follow yield no span (best effort, never an error).

Operator overloads and template specializations (``operator+``,
``f<int>``) are not recognized; their bodies are simply never counted.
"""

from typing import NamedTuple, Optional

from gitrank.lexer.tokens import Token, TokenKind, is_significant

_IDENT = TokenKind.IDENTIFIER

# Tokens allowed between the parameter list and the body.
_PLAIN_QUALIFIERS = frozenset(
    {"const", "volatile", "mutable", "override", "final", "&", "&&", "try"}
)
_PAREN_QUALIFIERS = frozenset({"noexcept", "throw"})


class FunctionSpan(NamedTuple):
    name: str
    start_line: int
    end_line: int
    body_tokens: list


def extract_functions(tokens: list[Token]) -> list[FunctionSpan]:
    """Best-effort function spans from a tokenize() stream."""
    sig = [i for i, t in enumerate(tokens) if t.kind != TokenKind.PREPROCESSOR and is_significant(t.kind)]
    spans: list[FunctionSpan] = []
    k = 0
    m = len(sig)
    while k < m:
        tok = tokens[sig[k]]
        if tok.kind == _IDENT and k + 1 < m and tokens[sig[k + 1]].text == "(":
            matched = _match_candidate(tokens, sig, k)
            if matched is not None:
                spans.append(matched[0])
                k = matched[1]
                continue
        k += 1
    return spans


def _match_candidate(tokens, sig, k) -> Optional[tuple[FunctionSpan, int]]:
    close = _skip_balanced(tokens, sig, k + 1, "(", ")")
    if close is None:
        return None
    body_open = _after_qualifiers(tokens, sig, close + 1)
    if body_open is None:
        return None
    body_close = _skip_balanced(tokens, sig, body_open, "{", "}")
    if body_close is None:
        return None

    name, first = _qualified_name(tokens, sig, k)
    open_raw = sig[body_open]
    close_raw = sig[body_close]
    span = FunctionSpan(
        name=name,
        start_line=tokens[sig[first]].line,
        end_line=tokens[close_raw].line,
        body_tokens=tokens[open_raw + 1 : close_raw],
    )
    return span, body_close + 1


def _skip_balanced(tokens, sig, open_idx, open_text, close_text):
    """sig index of the token closing the group opened at ``open_idx``."""
    depth = 0
    q = open_idx
    m = len(sig)
    while q < m:
        x = tokens[sig[q]].text
        if x == open_text:
            depth += 1
        elif x == close_text:
            depth -= 1
            if depth == 0:
                return q
        q += 1
    return None


def _after_qualifiers(tokens, sig, q):
    """sig index of the body ``{``, or None if this is not a definition."""
    m = len(sig)
    while q < m:
        t = tokens[sig[q]]
        x = t.text
        if x == "{":
            return q
        if x in _PLAIN_QUALIFIERS:
            q += 1
        elif x in _PAREN_QUALIFIERS:
            q += 1
            if q < m and tokens[sig[q]].text == "(":
                q = _skip_balanced(tokens, sig, q, "(", ")")
                if q is None:
                    return None
                q += 1
        elif x == "[" and q + 1 < m and tokens[sig[q + 1]].text == "[":
            q = _skip_balanced(tokens, sig, q, "[", "]")
            if q is None:
                return None
            q += 1
        elif x == "->":
            return _trailing_return(tokens, sig, q + 1)
        elif x == ":":
            return _initializer_list(tokens, sig, q + 1)
        else:
            return None
    return None


def _trailing_return(tokens, sig, q):
    """Consume a trailing return type; angle depth only counts outside parens."""
    paren = bracket = angle = 0
    m = len(sig)
    while q < m:
        x = tokens[sig[q]].text
        if paren == 0 and bracket == 0 and angle == 0:
            if x == "{":
                return q
            if x == ";" or x == "=":
                return None
        if x == "(":
            paren += 1
        elif x == ")":
            paren -= 1
        elif x == "[":
            bracket += 1
        elif x == "]":
            bracket -= 1
        elif paren == 0:
            if x == "<":
                angle += 1
            elif x == ">":
                angle = max(0, angle - 1)
            elif x == ">>":
                angle = max(0, angle - 2)
        if paren < 0 or bracket < 0:
            return None
        q += 1
    return None


def _initializer_list(tokens, sig, q):
    """Consume a constructor initializer list up to the body brace.

    A ``{`` at top level opens a member brace-initializer when it directly
    follows an identifier or template close, and the body otherwise.
    """
    paren = bracket = angle = 0
    prev = tokens[sig[q - 1]]
    m = len(sig)
    while q < m:
        t = tokens[sig[q]]
        x = t.text
        if paren == 0 and bracket == 0 and angle == 0:
            if x == "{":
                if prev.kind == _IDENT or prev.text == ">":
                    q = _skip_balanced(tokens, sig, q, "{", "}")
                    if q is None:
                        return None
                    prev = tokens[sig[q]]
                    q += 1
                    continue
                return q
            if x == ";" or x == "}" or x == "=":
                return None
        if x == "(":
            paren += 1
        elif x == ")":
            paren -= 1
        elif x == "[":
            bracket += 1
        elif x == "]":
            bracket -= 1
        elif paren == 0:
            if x == "<":
                angle += 1
            elif x == ">":
                angle = max(0, angle - 1)
            elif x == ">>":
                angle = max(0, angle - 2)
        if paren < 0 or bracket < 0:
            return None
        prev = t
        q += 1
    return None


def _qualified_name(tokens, sig, name_idx):
    """Walk ``A::B::~name`` backwards; returns (name, sig index of first part)."""
    parts = [tokens[sig[name_idx]].text]
    first = name_idx
    j = name_idx - 1
    if j >= 0 and tokens[sig[j]].text == "~":
        parts[0] = "~" + parts[0]
        first = j
        j -= 1
    while j - 1 >= 0 and tokens[sig[j]].text == "::" and tokens[sig[j - 1]].kind == _IDENT:
        parts.insert(0, tokens[sig[j - 1]].text)
        first = j - 1
        j -= 2
    return "::".join(parts), first
