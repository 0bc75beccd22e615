"""Repository materialization, source discovery, and line classification."""

import logging
import re
import subprocess
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Optional

from gitrank.errors import CloneFailed
from gitrank.lexer import Token, TokenKind, tokenize

log = logging.getLogger(__name__)

MAX_FILE_BYTES = 1024 * 1024  # bigger files are skipped with a warning


class Language(str, Enum):
    C = "C"
    CPP = "CPP"


# .h leans C by default; discover_files flips it to CPP when the tree also
# contains C++ sources (the common mixed-repo layout).
DEFAULT_EXTENSIONS = {
    ".c": Language.C,
    ".h": Language.C,
    ".cc": Language.CPP,
    ".cpp": Language.CPP,
    ".cxx": Language.CPP,
    ".hpp": Language.CPP,
    ".hh": Language.CPP,
    ".hxx": Language.CPP,
}


@dataclass(frozen=True)
class LineCounts:
    total: int
    source: int
    comment_only: int
    blank: int


@dataclass
class SourceFile:
    path: Path  # repo-relative
    language: Language
    line_counts: Optional[LineCounts] = None


@dataclass(frozen=True)
class RepoSource:
    url: str
    name: str  # "owner/repo"
    local_path: Path
    head_commit: str


_SSH_URL = re.compile(r"^[\w.-]+@[\w.-]+:(?P<path>.+)$")


def repo_name_from_url(url: str) -> str:
    """Derive the "owner/repo" slug from an HTTP, SSH, file, or local URL."""
    path = url
    m = _SSH_URL.match(url)
    if m:
        path = m.group("path")
    elif "://" in url:
        path = url.split("://", 1)[1]
        path = path.split("/", 1)[1] if "/" in path else ""
    path = path.rstrip("/")
    if path.endswith(".git"):
        path = path[: -len(".git")]
    parts = [p for p in path.split("/") if p]
    if len(parts) >= 2:
        return f"{parts[-2]}/{parts[-1]}"
    if len(parts) == 1:
        return parts[0]
    raise CloneFailed(f"cannot derive repository name from url: {url!r}")


def _git(args: list[str], cwd: Optional[Path] = None) -> str:
    proc = subprocess.run(
        ["git", *args],
        cwd=cwd,
        capture_output=True,
        text=True,
        timeout=600,
    )
    if proc.returncode != 0:
        raise CloneFailed(f"git {args[0]} failed: {proc.stderr.strip()[:300]}")
    return proc.stdout.strip()


def clone_or_open(url: str, workdir: Path) -> RepoSource:
    """Clone ``url`` under ``workdir`` or reuse an existing working copy.

    The working copy lives at ``<workdir>/<owner>__<repo>``.  A second call
    with the same arguments reuses the checkout without touching the
    network, so the analyzed snapshot stays fixed for the whole run.
    """
    workdir = Path(workdir)
    name = repo_name_from_url(url)
    local = workdir / name.replace("/", "__")
    if not (local / ".git").exists():
        workdir.mkdir(parents=True, exist_ok=True)
        _git(["clone", "--quiet", url, str(local)])
    head = _git(["rev-parse", "HEAD"], cwd=local)
    return RepoSource(url=url, name=name, local_path=local, head_commit=head)


def discover_files(root: Path, extension_map=None) -> list[SourceFile]:
    """Every matching source file under ``root``, lexicographic by path.

    ``.git`` is excluded.  When the tree contains any C++-mapped file,
    ``.h`` headers are retagged as CPP.
    """
    root = Path(root)
    ext_map = dict(DEFAULT_EXTENSIONS if extension_map is None else extension_map)
    found: list[SourceFile] = []
    for path in sorted(root.rglob("*")):
        rel = path.relative_to(root)
        if ".git" in rel.parts:
            continue
        if not path.is_file() or path.is_symlink():
            continue
        lang = ext_map.get(path.suffix)
        if lang is None:
            continue
        found.append(SourceFile(path=rel, language=Language(lang)))
    found.sort(key=lambda f: f.path.as_posix())
    if any(f.language is Language.CPP for f in found):
        for f in found:
            if f.path.suffix == ".h":
                f.language = Language.CPP
    return found


def read_source_text(path: Path) -> Optional[str]:
    """File contents as text, or None when the file should be skipped."""
    try:
        if path.stat().st_size > MAX_FILE_BYTES:
            log.warning("skipping %s: larger than %d bytes", path, MAX_FILE_BYTES)
            return None
        data = path.read_bytes()
    except OSError as exc:
        log.warning("skipping %s: %s", path, exc)
        return None
    try:
        return data.decode("utf-8")
    except UnicodeDecodeError:
        try:
            return data.decode("latin-1")
        except UnicodeDecodeError:
            log.warning("skipping %s: undecodable", path)
            return None


_BLANK_LINE = 0
_COMMENT_LINE = 1
_SOURCE_LINE = 2


def total_lines(text: str) -> int:
    """Physical lines; a final line without a trailing newline still counts."""
    if not text:
        return 0
    return text.count("\n") + (0 if text.endswith("\n") else 1)


def classify_lines(text: str, tokens: Optional[list[Token]] = None) -> list[int]:
    """Per-line classification, index 1..total (index 0 unused).

    A line is source if any code token touches it, comment-only if only
    comment tokens touch it, and blank otherwise.  Preprocessor directives
    count as code.
    """
    if tokens is None:
        tokens = tokenize(text)
    classes = [_BLANK_LINE] * (total_lines(text) + 1)
    for tok in tokens:
        if tok.kind == TokenKind.WHITESPACE:
            continue
        first = tok.line
        # a token ending in an escaped newline touches no content on the
        # next physical line, hence the clamp
        last = min(tok.line + tok.text.count("\n"), len(classes) - 1)
        mark = _COMMENT_LINE if tok.kind == TokenKind.COMMENT else _SOURCE_LINE
        for ln in range(first, last + 1):
            if classes[ln] < mark:
                classes[ln] = mark
    return classes


def count_lines(text: str, tokens: Optional[list[Token]] = None) -> LineCounts:
    """Classify every physical line as source, comment-only, or blank."""
    classes = classify_lines(text, tokens)
    source = classes.count(_SOURCE_LINE)
    comment = classes.count(_COMMENT_LINE)
    total = len(classes) - 1
    return LineCounts(
        total=total,
        source=source,
        comment_only=comment,
        blank=total - source - comment,
    )
