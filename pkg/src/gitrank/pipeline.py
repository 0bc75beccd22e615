"""Two-phase orchestration.

Phase 1 measures each repository independently (clone, analyze, fetch
metadata) and persists one JSON record per repository with atomic writes,
so shards can run on separate machines and be merged by directory
contents.  Phase 2 loads every record, drops the failures, and runs the
serial scoring pass.
"""

import json
import logging
import os
import re
import tempfile
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from datetime import datetime, timedelta, timezone
from pathlib import Path
from typing import Optional

from gitrank.config import RunConfig
from gitrank.errors import (
    ApiUnavailable,
    CloneFailed,
    FatalConfig,
    FixtureMalformed,
    NoAnalyzableCode,
    NoMeasuredRepos,
)
from gitrank.lexer import extract_functions, tokenize
from gitrank.metadata import (
    Fixture,
    LiveApi,
    RateLimitGovernor,
    build_snapshot,
    fetch_repo_info,
)
from gitrank.metrics import function_metrics, repo_code_metrics
from gitrank.scoring import (
    MeasureVector,
    ScoreCard,
    default_specs,
    rank,
    score_repos,
)
from gitrank.security import default_ruleset as security_ruleset
from gitrank.security import scan_file, security_densities
from gitrank.sources import (
    classify_lines,
    clone_or_open,
    count_lines,
    discover_files,
    read_source_text,
    repo_name_from_url,
)
from gitrank.style import default_ruleset as style_ruleset
from gitrank.style import lint_file, style_density

log = logging.getLogger(__name__)

SCHEMA_VERSION = 1

STATUS_MEASURED = "measured"
STATUS_DROPPED = "dropped"

TOKEN_ENV_VAR = "GITRANK_TOKEN"


@dataclass
class RepoRecord:
    name: str
    url: str
    head_commit: Optional[str]
    evaluated_at: str  # ISO-8601, captured once per run
    status: str
    measures: Optional[MeasureVector] = None
    reason: Optional[str] = None

    def to_json(self) -> str:
        doc = {
            "schema_version": SCHEMA_VERSION,
            "name": self.name,
            "url": self.url,
            "head_commit": self.head_commit,
            "evaluated_at": self.evaluated_at,
            "status": self.status,
        }
        if self.status == STATUS_MEASURED:
            doc["measures"] = self.measures.as_dict()
        else:
            doc["reason"] = self.reason
        return json.dumps(doc, indent=2, sort_keys=True) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "RepoRecord":
        doc = json.loads(text)
        measures = doc.get("measures")
        return cls(
            name=doc["name"],
            url=doc.get("url", ""),
            head_commit=doc.get("head_commit"),
            evaluated_at=doc.get("evaluated_at", ""),
            status=doc["status"],
            measures=MeasureVector.from_dict(measures) if measures else None,
            reason=doc.get("reason"),
        )


def read_input_list(path: Path) -> list[str]:
    """Repository URLs, one per line; blank lines and # comments skipped."""
    try:
        lines = Path(path).read_text().splitlines()
    except OSError as exc:
        raise FatalConfig(f"cannot read input list {path}: {exc}")
    urls = []
    for line in lines:
        line = line.strip()
        if line and not line.startswith("#"):
            urls.append(line)
    return urls


def select_shard(items: list, index: int, total: int) -> list:
    """Items whose list position is congruent to ``index`` modulo ``total``."""
    return [item for pos, item in enumerate(items) if pos % total == index]


def record_filename(url: str) -> str:
    try:
        name = repo_name_from_url(url)
    except CloneFailed:
        name = url
    return re.sub(r"[^A-Za-z0-9._-]+", "_", name.replace("/", "__")) + ".json"


@dataclass
class TreeAnalysis:
    avg_cc: float
    avg_mi: float
    repo_sloc: int
    style_findings: int
    sec_densities: dict[str, float]
    function_count: int
    file_count: int


def analyze_source_tree(root: Path, config: RunConfig) -> TreeAnalysis:
    """Lex every discovered file once and derive all code measures from it."""
    files = discover_files(root, config.extensions)
    styles = style_ruleset(disabled=config.style_disabled)
    security = security_ruleset(config.security_overrides)

    per_file = []
    repo_sloc = 0
    style_findings = 0
    sec_findings = []
    for source in files:
        text = read_source_text(root / source.path)
        if text is None:
            continue
        tokens = tokenize(text)
        counts = count_lines(text, tokens)
        source.line_counts = counts
        repo_sloc += counts.source
        classes = classify_lines(text, tokens)
        spans = extract_functions(tokens)
        metrics = [function_metrics(span, classes) for span in spans]
        per_file.append((source.path.as_posix(), metrics, counts))
        style_findings += len(
            lint_file(
                text,
                styles,
                path=source.path.as_posix(),
                line_length_limit=config.line_length_limit,
                tokens=tokens,
            )
        )
        sec_findings.extend(scan_file(tokens, security, path=source.path.as_posix()))

    code = repo_code_metrics(per_file)  # raises NoAnalyzableCode
    densities = security_densities(sec_findings, max(repo_sloc, 1))
    return TreeAnalysis(
        avg_cc=code.avg_cc,
        avg_mi=code.avg_mi,
        repo_sloc=repo_sloc,
        style_findings=style_findings,
        sec_densities=densities,
        function_count=code.function_count,
        file_count=code.file_count,
    )


def _metadata_source(config: RunConfig, governor: Optional[RateLimitGovernor]):
    if config.fixtures is not None:
        return Fixture(Path(config.fixtures))
    return LiveApi(token=os.environ.get(TOKEN_ENV_VAR), governor=governor)


def measure_repository(
    url: str,
    config: RunConfig,
    governor: Optional[RateLimitGovernor] = None,
    evaluated_at: Optional[datetime] = None,
) -> RepoRecord:
    """One repository end to end; failures become Dropped records."""
    when = evaluated_at or config.evaluated_at or datetime.now(timezone.utc)
    when_text = when.isoformat()

    def dropped(name, head, reason):
        log.warning("dropping %s: %s", name, reason)
        return RepoRecord(name, url, head, when_text, STATUS_DROPPED, reason=reason)

    try:
        fallback_name = repo_name_from_url(url)
    except CloneFailed as exc:
        return dropped(url, None, f"clone failed: {exc}")

    try:
        repo = clone_or_open(url, config.workdir)
    except CloneFailed as exc:
        return dropped(fallback_name, None, f"clone failed: {exc}")

    try:
        analysis = analyze_source_tree(repo.local_path, config)
    except NoAnalyzableCode:
        return dropped(repo.name, repo.head_commit, "no analyzable source")

    try:
        raw = fetch_repo_info(
            repo.name,
            _metadata_source(config, governor),
            since=when - timedelta(days=731),
        )
    except (ApiUnavailable, FixtureMalformed) as exc:
        return dropped(repo.name, repo.head_commit, f"metadata unavailable: {exc}")

    snapshot = build_snapshot(raw, when)
    measures = MeasureVector(
        avg_cc=analysis.avg_cc,
        style_density=style_density(analysis.style_findings, max(analysis.repo_sloc, 1)),
        sec_low_density=analysis.sec_densities["low"],
        sec_med_density=analysis.sec_densities["medium"],
        sec_high_density=analysis.sec_densities["high"],
        avg_mi=analysis.avg_mi,
        closed_2y=snapshot.closed_2y,
        closed_1y=snapshot.closed_1y,
        closed_6m=snapshot.closed_6m,
        closed_1m=snapshot.closed_1m,
        commits_per_day=snapshot.commits_per_day,
        subscribers_per_day=snapshot.subscribers_per_day,
        stargazers_per_day=snapshot.stargazers_per_day,
        forks_per_day=snapshot.forks_per_day,
    )
    return RepoRecord(
        repo.name, url, repo.head_commit, when_text, STATUS_MEASURED, measures=measures
    )


def write_record_atomic(record: RepoRecord, out_path: Path) -> None:
    out_path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp_name = tempfile.mkstemp(dir=out_path.parent, suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as handle:
            handle.write(record.to_json())
        os.replace(tmp_name, out_path)
    except BaseException:
        try:
            os.unlink(tmp_name)
        except OSError:
            pass
        raise


def phase1(config: RunConfig) -> list[Path]:
    """Measure this shard's repositories; one JSON record each."""
    if config.input is None:
        raise FatalConfig("no input list configured")
    urls = read_input_list(config.input)
    mine = select_shard(urls, config.shard_index, config.shard_total)
    metrics_dir = Path(config.metrics_dir)
    metrics_dir.mkdir(parents=True, exist_ok=True)
    evaluated_at = config.evaluated_at or datetime.now(timezone.utc)
    governor = RateLimitGovernor()

    def work(url: str) -> Path:
        out_path = metrics_dir / record_filename(url)
        if out_path.exists() and not config.force:
            log.info("record exists, skipping %s", url)
            return out_path
        try:
            record = measure_repository(url, config, governor, evaluated_at)
        except Exception as exc:  # never abort the whole run on one repo
            log.exception("unexpected failure measuring %s", url)
            record = RepoRecord(
                name=record_filename(url)[: -len(".json")].replace("__", "/"),
                url=url,
                head_commit=None,
                evaluated_at=evaluated_at.isoformat(),
                status=STATUS_DROPPED,
                reason=f"internal error: {exc}",
            )
        write_record_atomic(record, out_path)
        return out_path

    with ThreadPoolExecutor(max_workers=config.jobs) as pool:
        return list(pool.map(work, mine))


def load_records(metrics_dir: Path) -> list[RepoRecord]:
    metrics_dir = Path(metrics_dir)
    if not metrics_dir.is_dir():
        raise NoMeasuredRepos(f"metrics directory {metrics_dir} does not exist")
    records = []
    seen = set()
    for path in sorted(metrics_dir.glob("*.json")):
        try:
            record = RepoRecord.from_json(path.read_text())
        except (OSError, KeyError, ValueError) as exc:
            log.warning("skipping unreadable record %s: %s", path, exc)
            continue
        if record.name in seen:
            log.warning("duplicate record for %s (%s), keeping the first", record.name, path)
            continue
        seen.add(record.name)
        records.append(record)
    return records


def phase2(
    metrics_dir: Path, config: RunConfig
) -> tuple[list[tuple[ScoreCard, MeasureVector]], list[RepoRecord]]:
    """Load all shards' records, score, and rank; returns (ranked, dropped)."""
    records = load_records(metrics_dir)
    measured = [r for r in records if r.status == STATUS_MEASURED and r.measures]
    dropped = [r for r in records if r.status == STATUS_DROPPED]
    if not measured:
        raise NoMeasuredRepos(f"no measured records under {metrics_dir}")
    specs = default_specs(config.weight_overrides, config.polarity_overrides)
    cards = score_repos(
        [(r.name, r.measures) for r in measured], specs, config.degenerate
    )
    by_name = {r.name: r.measures for r in measured}
    ranked = [(card, by_name[card.name]) for card in rank(cards)]
    return ranked, dropped
