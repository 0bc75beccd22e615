"""gitrank: rank Git repositories by quality, maintainability, and popularity.

Phase 1 measures every repository on its own (clone, lex, metrics,
hosting-site activity) and persists one JSON record per repository.
Phase 2 normalizes the measures across the whole set, scores, ranks, and
writes CSV/HTML reports.  See the ``gitrank`` CLI.
"""

__version__ = "0.1.0"
