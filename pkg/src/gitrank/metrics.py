"""Cyclomatic complexity, Halstead volume, and maintainability index."""

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from gitrank.errors import DomainError, NoAnalyzableCode
from gitrank.lexer import FunctionSpan, Token, TokenKind, is_halstead_counted, is_operand
from gitrank.sources import LineCounts

# Tokens that open a branch; `else`, `default`, and `do` do not add paths.
DECISION_KEYWORDS = frozenset({"if", "for", "while", "case", "catch"})
DECISION_OPERATORS = frozenset({"&&", "||", "?"})

# Welker's modified MI, rescaled to [0, 100].
_MI_SCALE = 100.0 / 171.0


@dataclass(frozen=True)
class HalsteadCounts:
    n1: int  # distinct operators
    n2: int  # distinct operands
    N1: int  # total operators
    N2: int  # total operands
    volume: float  # bits


@dataclass(frozen=True)
class FunctionMetrics:
    name: str
    cc: int
    sloc: int
    halstead: HalsteadCounts
    mi: float


@dataclass(frozen=True)
class RepoCodeMetrics:
    avg_cc: float
    avg_mi: float
    function_count: int
    file_count: int  # files contributing at least one function


def cyclomatic_complexity(fn: FunctionSpan) -> int:
    """1 + decision points in the body."""
    count = 1
    for tok in fn.body_tokens:
        if tok.kind == TokenKind.KEYWORD:
            if tok.text in DECISION_KEYWORDS:
                count += 1
        elif tok.kind == TokenKind.OPERATOR:
            if tok.text in DECISION_OPERATORS:
                count += 1
    return count


def halstead_volume(tokens: Iterable[Token]) -> HalsteadCounts:
    """Operator/operand counts and volume over code tokens.

    Operands are identifiers and literals; operators are keywords,
    operators, and punctuation.  Comments, whitespace, and preprocessor
    directives are excluded.
    """
    operators: set[str] = set()
    operands: set[str] = set()
    total_operators = 0
    total_operands = 0
    for tok in tokens:
        if not is_halstead_counted(tok.kind):
            continue
        if is_operand(tok.kind):
            operands.add(tok.text)
            total_operands += 1
        else:
            operators.add(tok.text)
            total_operators += 1
    n1, n2 = len(operators), len(operands)
    vocabulary = n1 + n2
    if vocabulary >= 2:
        volume = (total_operators + total_operands) * math.log2(vocabulary)
    else:
        volume = 0.0
    return HalsteadCounts(n1, n2, total_operators, total_operands, volume)


def maintainability_index(volume: float, cc: float, sloc: int) -> float:
    """Modified MI rescaled to [0, 100]."""
    if sloc < 1:
        raise DomainError(f"sloc must be >= 1, got {sloc}")
    if cc < 1:
        raise DomainError(f"cyclomatic complexity must be >= 1, got {cc}")
    raw = (
        171.0
        - 5.2 * math.log(max(volume, 1.0))
        - 0.23 * cc
        - 16.2 * math.log(max(sloc, 1))
    )
    return min(max(raw * _MI_SCALE, 0.0), 100.0)


def function_metrics(fn: FunctionSpan, line_classes: Sequence[int]) -> FunctionMetrics:
    """Per-function metrics; ``line_classes`` comes from classify_lines."""
    cc = cyclomatic_complexity(fn)
    counts = halstead_volume(fn.body_tokens)
    sloc = sum(
        1
        for ln in range(fn.start_line, min(fn.end_line, len(line_classes) - 1) + 1)
        if line_classes[ln] == 2
    )
    sloc = max(sloc, 1)  # the braces themselves are code
    return FunctionMetrics(
        name=fn.name,
        cc=cc,
        sloc=sloc,
        halstead=counts,
        mi=maintainability_index(counts.volume, cc, sloc),
    )


def repo_code_metrics(
    per_file: Sequence[tuple[str, Sequence[FunctionMetrics], LineCounts]],
) -> RepoCodeMetrics:
    """Aggregate per-file metrics to the repository level.

    avg_cc is the unweighted mean over every function.  Each file's MI is
    computed from the file's summed volume, mean cc, and source-line
    count; avg_mi is the unweighted mean over files with functions.
    """
    all_cc: list[int] = []
    file_mis: list[float] = []
    for _path, functions, line_counts in per_file:
        if not functions:
            continue
        all_cc.extend(f.cc for f in functions)
        file_volume = sum(f.halstead.volume for f in functions)
        file_cc = sum(f.cc for f in functions) / len(functions)
        file_sloc = max(line_counts.source, 1)
        file_mis.append(maintainability_index(file_volume, file_cc, file_sloc))
    if not all_cc:
        raise NoAnalyzableCode("no function parsed in any analyzable file")
    return RepoCodeMetrics(
        avg_cc=sum(all_cc) / len(all_cc),
        avg_mi=sum(file_mis) / len(file_mis),
        function_count=len(all_cc),
        file_count=len(file_mis),
    )
