"""Bundled style rules and error-density computation.

The default set stands in for an external style checker at its highest
severity: a small deterministic rule list whose findings feed the
errors-per-SLoC measure.  Rules can be toggled and the line-length limit
changed through the run configuration.
"""

from dataclasses import dataclass, field, replace
from typing import Optional

from gitrank.errors import DomainError
from gitrank.lexer import Token, TokenKind, tokenize

DEFAULT_LINE_LENGTH_LIMIT = 120

RULE_LINE_LENGTH = "line-length"
RULE_TAB_INDENT = "tab-indent"
RULE_TRAILING_WS = "trailing-whitespace"
RULE_FINAL_NEWLINE = "missing-final-newline"
RULE_MULTI_STATEMENT = "multiple-statements"


@dataclass(frozen=True)
class StyleRule:
    id: str
    description: str
    enabled: bool = True


@dataclass(frozen=True)
class StyleFinding:
    rule_id: str
    path: str
    line: int


def default_ruleset(disabled: Optional[set[str]] = None) -> list[StyleRule]:
    rules = [
        StyleRule(RULE_LINE_LENGTH, "line longer than the configured limit"),
        StyleRule(RULE_TAB_INDENT, "tab character used for indentation"),
        StyleRule(RULE_TRAILING_WS, "trailing whitespace"),
        StyleRule(RULE_FINAL_NEWLINE, "missing newline at end of file"),
        StyleRule(RULE_MULTI_STATEMENT, "more than one statement per line"),
    ]
    if disabled:
        rules = [replace(r, enabled=r.id not in disabled) for r in rules]
    return rules


def _statement_semicolon_lines(tokens: list[Token]) -> dict[int, int]:
    """Line -> count of `;` tokens, ignoring those inside `for (...)` headers."""
    counts: dict[int, int] = {}
    sig = [t for t in tokens if t.kind not in (TokenKind.WHITESPACE, TokenKind.COMMENT)]
    in_for_header = False
    depth = 0
    for i, tok in enumerate(sig):
        if in_for_header:
            if tok.text == "(":
                depth += 1
            elif tok.text == ")":
                depth -= 1
                if depth == 0:
                    in_for_header = False
            continue
        if tok.kind == TokenKind.KEYWORD and tok.text == "for":
            if i + 1 < len(sig) and sig[i + 1].text == "(":
                in_for_header = True
                depth = 0
            continue
        if tok.kind == TokenKind.PUNCTUATION and tok.text == ";":
            counts[tok.line] = counts.get(tok.line, 0) + 1
    return counts


def lint_file(
    text: str,
    ruleset: Optional[list[StyleRule]] = None,
    path: str = "<memory>",
    line_length_limit: int = DEFAULT_LINE_LENGTH_LIMIT,
    tokens: Optional[list[Token]] = None,
) -> list[StyleFinding]:
    """One finding per (rule, line) violation, in line order."""
    if ruleset is None:
        ruleset = default_ruleset()
    enabled = {r.id for r in ruleset if r.enabled}
    if not enabled or not text:
        return []

    findings: list[StyleFinding] = []
    lines = text.split("\n")
    if text.endswith("\n"):
        lines.pop()

    semis: dict[int, int] = {}
    if RULE_MULTI_STATEMENT in enabled:
        semis = _statement_semicolon_lines(tokens if tokens is not None else tokenize(text))

    for no, line in enumerate(lines, start=1):
        line = line.rstrip("\r")
        if RULE_LINE_LENGTH in enabled and len(line) > line_length_limit:
            findings.append(StyleFinding(RULE_LINE_LENGTH, path, no))
        if RULE_TAB_INDENT in enabled:
            indent = line[: len(line) - len(line.lstrip(" \t"))]
            if "\t" in indent:
                findings.append(StyleFinding(RULE_TAB_INDENT, path, no))
        if RULE_TRAILING_WS in enabled and line and line[-1] in " \t":
            findings.append(StyleFinding(RULE_TRAILING_WS, path, no))
        if RULE_MULTI_STATEMENT in enabled and semis.get(no, 0) > 1:
            findings.append(StyleFinding(RULE_MULTI_STATEMENT, path, no))
    if RULE_FINAL_NEWLINE in enabled and not text.endswith("\n"):
        findings.append(StyleFinding(RULE_FINAL_NEWLINE, path, len(lines)))
    return findings


def style_density(finding_count: int, sloc: int) -> float:
    """Findings per source line; densities above 1 are possible."""
    if sloc < 1:
        raise DomainError(f"sloc must be >= 1, got {sloc}")
    return finding_count / sloc
