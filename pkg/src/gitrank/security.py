"""Call-site scanner for known-dangerous C/C++ APIs.

The bundled table buckets risky functions into three severities.  A
finding requires an identifier token equal to a rule name directly
followed (ignoring whitespace and comments) by ``(`` — names inside
strings or comments never match because they are not identifier tokens.
"""

import enum
from dataclasses import dataclass
from typing import Optional

from gitrank.errors import DomainError
from gitrank.lexer import Token, TokenKind


class Severity(str, enum.Enum):
    LOW = "low"
    MEDIUM = "medium"
    HIGH = "high"


@dataclass(frozen=True)
class SecurityRule:
    function_name: str
    severity: Severity
    rationale: str = ""


@dataclass(frozen=True)
class SecurityFinding:
    rule: SecurityRule
    path: str
    line: int


_DEFAULT_TABLE = {
    Severity.HIGH: [
        "gets", "strcpy", "strcat", "sprintf", "vsprintf",
        "system", "popen", "execl", "execlp", "execv", "execvp",
    ],
    Severity.MEDIUM: [
        "scanf", "sscanf", "fscanf", "realpath", "getwd",
        "alloca", "mktemp", "tmpnam",
    ],
    Severity.LOW: [
        "strlen", "memcpy", "memmove", "getenv", "rand", "atoi", "atol",
    ],
}


def default_ruleset(overrides: Optional[dict[str, list[str]]] = None) -> list[SecurityRule]:
    """Bundled rules; ``overrides`` replaces whole severity buckets."""
    table = {sev: list(names) for sev, names in _DEFAULT_TABLE.items()}
    if overrides:
        for key, names in overrides.items():
            table[Severity(key)] = list(names)
    rules = []
    for sev in (Severity.HIGH, Severity.MEDIUM, Severity.LOW):
        for name in table[sev]:
            rules.append(SecurityRule(name, sev, f"{sev.value}-risk call"))
    return rules


def scan_file(
    tokens: list[Token],
    ruleset: Optional[list[SecurityRule]] = None,
    path: str = "<memory>",
) -> list[SecurityFinding]:
    if ruleset is None:
        ruleset = default_ruleset()
    by_name = {r.function_name: r for r in ruleset}
    findings: list[SecurityFinding] = []
    pending: Optional[Token] = None
    pending_rule: Optional[SecurityRule] = None
    for tok in tokens:
        if tok.kind in (TokenKind.WHITESPACE, TokenKind.COMMENT):
            continue
        if pending is not None:
            if tok.text == "(":
                findings.append(SecurityFinding(pending_rule, path, pending.line))
            pending = pending_rule = None
        if tok.kind == TokenKind.IDENTIFIER:
            rule = by_name.get(tok.text)
            if rule is not None:
                pending = tok
                pending_rule = rule
    return findings


def security_densities(findings: list[SecurityFinding], repo_sloc: int) -> dict[str, float]:
    """Finding count per severity divided by repository SLoC."""
    if repo_sloc < 1:
        raise DomainError(f"repo_sloc must be >= 1, got {repo_sloc}")
    counts = {Severity.LOW: 0, Severity.MEDIUM: 0, Severity.HIGH: 0}
    for finding in findings:
        counts[finding.rule.severity] += 1
    return {
        "low": counts[Severity.LOW] / repo_sloc,
        "medium": counts[Severity.MEDIUM] / repo_sloc,
        "high": counts[Severity.HIGH] / repo_sloc,
    }
