"""Token definitions and fixed lexical tables for C-family source.

Both scanner implementations (compiled and pure Python) consume these
tables, so the token stream is identical regardless of which kernel is
active.
"""

import enum
from typing import NamedTuple


class TokenKind(enum.IntEnum):
    IDENTIFIER = 1
    KEYWORD = 2
    OPERATOR = 3
    PUNCTUATION = 4
    NUMBER = 5
    STRING = 6
    CHAR = 7
    COMMENT = 8
    WHITESPACE = 9
    PREPROCESSOR = 10


class Token(NamedTuple):
    kind: int
    text: str
    line: int


# C11 plus C++17 reserved words, one fixed table for both languages.
KEYWORDS = frozenset(
    """
    alignas alignof and and_eq asm auto bitand bitor bool break case catch
    char char16_t char32_t class compl const const_cast constexpr continue
    decltype default delete do double dynamic_cast else enum explicit export
    extern false float for friend goto if inline int long mutable namespace
    new noexcept not not_eq nullptr operator or or_eq private protected
    public register reinterpret_cast restrict return short signed sizeof
    static static_assert static_cast struct switch template this thread_local
    throw true try typedef typeid typename union unsigned using virtual void
    volatile wchar_t while xor xor_eq
    _Alignas _Alignof _Atomic _Bool _Complex _Generic _Imaginary _Noreturn
    _Static_assert _Thread_local
    """.split()
)

# Multi-character sequences, matched longest-first (maximal munch).
OPS3 = frozenset({"<<=", ">>=", "->*"})
OPS2 = frozenset(
    {
        "::", "->", "++", "--", "<<", ">>", "<=", ">=", "==", "!=",
        "&&", "||", "+=", "-=", "*=", "/=", "%=", "&=", "^=", "|=", ".*",
    }
)
OPS1 = frozenset("+-*/%!~^&|<>=?:.")
# Structural single characters; "..." is the only multi-char punctuator.
PUNCT1 = frozenset("()[]{};,")

_NONCODE_KINDS = frozenset({TokenKind.COMMENT, TokenKind.WHITESPACE})
_HALSTEAD_EXCLUDED = frozenset(
    {TokenKind.COMMENT, TokenKind.WHITESPACE, TokenKind.PREPROCESSOR}
)
_OPERAND_KINDS = frozenset(
    {TokenKind.IDENTIFIER, TokenKind.NUMBER, TokenKind.STRING, TokenKind.CHAR}
)


def is_significant(kind: int) -> bool:
    """True for tokens that carry code (not comments or whitespace)."""
    return kind not in _NONCODE_KINDS


def is_halstead_counted(kind: int) -> bool:
    """True for tokens that enter operator/operand counting."""
    return kind not in _HALSTEAD_EXCLUDED


def is_operand(kind: int) -> bool:
    return kind in _OPERAND_KINDS
