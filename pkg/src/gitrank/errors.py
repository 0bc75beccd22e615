"""Exception hierarchy shared across the pipeline."""


class GitRankError(Exception):
    """Base class for all gitrank errors."""


class FatalConfig(GitRankError):
    """Bad paths, shard spec, or override values; aborts the run (exit 1)."""


class CloneFailed(GitRankError):
    """Repository could not be materialized; the repo is dropped, not fatal."""


class NoAnalyzableCode(GitRankError):
    """No function parsed anywhere in the repository; the repo is dropped."""


class DomainError(GitRankError, ValueError):
    """An argument is outside the operation's stated domain."""


class ApiUnavailable(GitRankError):
    """Hosting API still failing after retries; the repo is dropped."""


class FixtureMalformed(GitRankError):
    """Offline metadata snapshot does not match the expected schema."""


class MissingMeasure(GitRankError):
    """A category score was requested without all of its measures present."""


class NoMeasuredRepos(GitRankError):
    """Phase 2 found no measured records to rank (exit 2)."""
