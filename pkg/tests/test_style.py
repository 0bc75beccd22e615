import pytest

from gitrank.errors import DomainError
from gitrank.style import (
    RULE_FINAL_NEWLINE,
    RULE_LINE_LENGTH,
    RULE_MULTI_STATEMENT,
    RULE_TAB_INDENT,
    RULE_TRAILING_WS,
    default_ruleset,
    lint_file,
    style_density,
)


def rule_ids(findings):
    return [f.rule_id for f in findings]


class TestLintFile:
    def test_long_line(self):
        text = "int " + "x" * 200 + ";\n"
        assert rule_ids(lint_file(text)) == [RULE_LINE_LENGTH]

    def test_empty_input(self):
        assert lint_file("") == []

    def test_tab_indentation(self):
        assert rule_ids(lint_file("\tint x;\n")) == [RULE_TAB_INDENT]

    def test_space_indent_with_inner_tab_ok(self):
        assert lint_file("int a;\nint\tb;\n") == []

    def test_trailing_whitespace(self):
        findings = lint_file("int x; \n")
        assert rule_ids(findings) == [RULE_TRAILING_WS]
        assert findings[0].line == 1

    def test_whitespace_only_line_is_trailing(self):
        assert rule_ids(lint_file("int a;\n   \nint b;\n")) == [RULE_TRAILING_WS]

    def test_missing_final_newline(self):
        findings = lint_file("int x;")
        assert rule_ids(findings) == [RULE_FINAL_NEWLINE]
        assert findings[0].line == 1

    def test_multiple_statements(self):
        findings = lint_file("a(); b();\n")
        assert rule_ids(findings) == [RULE_MULTI_STATEMENT]

    def test_for_header_semicolons_exempt(self):
        assert lint_file("for (i = 0; i < n; i++)\n    work(i);\n") == []

    def test_for_header_plus_extra_statement_counts(self):
        text = "for (i = 0; i < n; i++) { a(); b(); }\n"
        assert rule_ids(lint_file(text)) == [RULE_MULTI_STATEMENT]

    def test_semicolons_in_strings_and_comments_ignored(self):
        assert lint_file('s = "a; b; c;"; // x; y;\n') == []

    def test_one_finding_per_rule_and_line(self):
        text = "\tint x = 1; int y = 2; \n"
        assert sorted(rule_ids(lint_file(text))) == sorted(
            [RULE_TAB_INDENT, RULE_TRAILING_WS, RULE_MULTI_STATEMENT]
        )

    def test_deterministic(self):
        text = "\ta();  \nint " + "y" * 150 + ";\nb(); c();"
        assert lint_file(text) == lint_file(text)

    def test_disabling_all_rules(self):
        text = "\tint x = 1; int y = 2; "
        ruleset = default_ruleset(disabled={r.id for r in default_ruleset()})
        assert lint_file(text, ruleset) == []

    def test_custom_line_length(self):
        text = "int abcdefghij;\n"
        findings = lint_file(text, line_length_limit=10)
        assert rule_ids(findings) == [RULE_LINE_LENGTH]

    def test_crlf_not_trailing_whitespace(self):
        assert lint_file("int x;\r\n") == []


class TestStyleDensity:
    def test_zero(self):
        assert style_density(0, 100) == 0.0

    def test_simple_division(self):
        assert style_density(5, 100) == 0.05

    def test_density_may_exceed_one(self):
        assert style_density(7, 3) == pytest.approx(7 / 3)

    def test_domain_error(self):
        with pytest.raises(DomainError):
            style_density(1, 0)

    def test_additive(self):
        assert style_density(3, 50) + style_density(4, 50) == pytest.approx(
            style_density(7, 50)
        )
