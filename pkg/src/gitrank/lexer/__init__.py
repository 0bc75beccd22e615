"""Tokenizer and function extractor for C/C++ source.

The scanner is the hot kernel of phase 1: it runs once per byte of every
analyzed file.  A compiled extension is used when present; otherwise the
pure-Python fallback takes over transparently.  Set GITRANK_PURE_LEXER=1
to force the fallback (used by the benchmark and for debugging).
"""

import os

from gitrank.lexer import _scanner_py
from gitrank.lexer.functions import FunctionSpan, extract_functions
from gitrank.lexer.tokens import (
    KEYWORDS,
    Token,
    TokenKind,
    is_halstead_counted,
    is_operand,
    is_significant,
)

try:
    from gitrank.lexer import _scanner  # type: ignore[attr-defined]
except ImportError:
    _scanner = None

if _scanner is not None and os.environ.get("GITRANK_PURE_LEXER") != "1":
    _impl = _scanner
    USING_COMPILED_SCANNER = True
else:
    _impl = _scanner_py
    USING_COMPILED_SCANNER = False


def tokenize(text: str) -> list[Token]:
    """Lossless, total tokenization; concatenating texts rebuilds the input."""
    return _impl.scan(text)


def available_scanners():
    """(name, scan callable) pairs for every importable kernel."""
    lanes = [("python", _scanner_py.scan)]
    if _scanner is not None:
        lanes.append(("compiled", _scanner.scan))
    return lanes


__all__ = [
    "FunctionSpan",
    "KEYWORDS",
    "Token",
    "TokenKind",
    "USING_COMPILED_SCANNER",
    "available_scanners",
    "extract_functions",
    "is_halstead_counted",
    "is_operand",
    "is_significant",
    "tokenize",
]
