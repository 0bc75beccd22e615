"""Hosting-site metadata: closed issues/PRs, commit and popularity rates.

Two interchangeable sources feed ``fetch_repo_info``:

  * ``LiveApi`` talks to the hosting REST v3 endpoints, paginates the
    closed-issues listing (100 per page), derives the commit total from
    the commits listing's pagination, and backs off on rate limiting;
  * ``Fixture`` reads one JSON snapshot per repository, byte-deterministic
    and fully offline.

All window and per-day arithmetic on the fetched data is pure.
"""

import json
import logging
import re
import threading
import time
from dataclasses import dataclass
from datetime import datetime, timedelta, timezone
from pathlib import Path
from typing import Callable, Optional, Union

import requests

from gitrank.errors import ApiUnavailable, FixtureMalformed

log = logging.getLogger(__name__)

SECONDS_PER_DAY = 86400
# Fixed window lengths in days: 2 years, 1 year, 6 months, 1 month.
WINDOWS = {"closed_2y": 730, "closed_1y": 365, "closed_6m": 182, "closed_1m": 30}

KIND_ISSUE = "issue"
KIND_PULL_REQUEST = "pull_request"


@dataclass(frozen=True)
class ClosedItem:
    closed_at: datetime
    kind: str  # KIND_ISSUE or KIND_PULL_REQUEST


@dataclass
class RawMetadata:
    created_at: datetime
    default_branch: str
    subscribers: int
    stargazers: int
    forks: int
    total_commits: int
    closed_items: list[ClosedItem]


@dataclass(frozen=True)
class ActivitySnapshot:
    evaluated_at: datetime
    closed_2y: int
    closed_1y: int
    closed_6m: int
    closed_1m: int
    commits_per_day: float
    subscribers_per_day: float
    stargazers_per_day: float
    forks_per_day: float


@dataclass(frozen=True)
class Fixture:
    path: Path  # directory of <owner>__<repo>.json snapshots


@dataclass(frozen=True)
class LiveApi:
    token: Optional[str] = None
    base_url: str = "https://api.github.com"
    max_retries: int = 5
    sleep: Callable[[float], None] = time.sleep
    governor: Optional["RateLimitGovernor"] = None


MetadataSource = Union[Fixture, LiveApi]


def parse_timestamp(value: str) -> datetime:
    """ISO-8601 with or without a trailing Z; naive values become UTC."""
    if value.endswith("Z"):
        value = value[:-1] + "+00:00"
    dt = datetime.fromisoformat(value)
    if dt.tzinfo is None:
        dt = dt.replace(tzinfo=timezone.utc)
    return dt


class RateLimitGovernor:
    """Shared across phase-1 workers: one throttle delays everyone."""

    def __init__(self):
        self._lock = threading.Lock()
        self._resume_at = 0.0

    def wait(self, sleep: Callable[[float], None]) -> None:
        with self._lock:
            delay = self._resume_at - time.monotonic()
        if delay > 0:
            sleep(delay)

    def throttle(self, seconds: float) -> None:
        with self._lock:
            self._resume_at = max(self._resume_at, time.monotonic() + seconds)


def closed_items_in_window(
    items: list[ClosedItem], window_days: int, evaluated_at: datetime
) -> int:
    """Items closed within the trailing window ending at ``evaluated_at``."""
    cutoff = evaluated_at - timedelta(days=window_days)
    return sum(1 for item in items if cutoff <= item.closed_at <= evaluated_at)


def per_day_rate(count: int, created_at: datetime, evaluated_at: datetime) -> float:
    """``count`` divided by the repository age in whole days, floored at 1."""
    age_days = int((evaluated_at - created_at).total_seconds() // SECONDS_PER_DAY)
    return count / max(1, age_days)


def build_snapshot(raw: RawMetadata, evaluated_at: datetime) -> ActivitySnapshot:
    windows = {
        name: closed_items_in_window(raw.closed_items, days, evaluated_at)
        for name, days in WINDOWS.items()
    }
    return ActivitySnapshot(
        evaluated_at=evaluated_at,
        closed_2y=windows["closed_2y"],
        closed_1y=windows["closed_1y"],
        closed_6m=windows["closed_6m"],
        closed_1m=windows["closed_1m"],
        commits_per_day=per_day_rate(raw.total_commits, raw.created_at, evaluated_at),
        subscribers_per_day=per_day_rate(raw.subscribers, raw.created_at, evaluated_at),
        stargazers_per_day=per_day_rate(raw.stargazers, raw.created_at, evaluated_at),
        forks_per_day=per_day_rate(raw.forks, raw.created_at, evaluated_at),
    )


def fetch_repo_info(
    name: str, source: MetadataSource, since: Optional[datetime] = None
) -> RawMetadata:
    """Fully populated RawMetadata for ``name`` ("owner/repo")."""
    if isinstance(source, Fixture):
        return _load_fixture(name, source)
    return _fetch_live(name, source, since)


# --- offline snapshots ------------------------------------------------------

_REQUIRED_FIXTURE_KEYS = (
    "created_at",
    "default_branch",
    "subscribers",
    "stargazers",
    "forks",
    "total_commits",
    "closed_items",
)


def _load_fixture(name: str, source: Fixture) -> RawMetadata:
    path = Path(source.path) / (name.replace("/", "__") + ".json")
    try:
        doc = json.loads(path.read_text())
    except FileNotFoundError:
        raise FixtureMalformed(f"no metadata snapshot for {name} at {path}")
    except (OSError, json.JSONDecodeError) as exc:
        raise FixtureMalformed(f"unreadable snapshot {path}: {exc}")
    for key in _REQUIRED_FIXTURE_KEYS:
        if key not in doc:
            raise FixtureMalformed(f"snapshot {path} missing key {key!r}")
    try:
        items = [
            ClosedItem(parse_timestamp(entry["closed_at"]), entry["kind"])
            for entry in doc["closed_items"]
        ]
        for item in items:
            if item.kind not in (KIND_ISSUE, KIND_PULL_REQUEST):
                raise FixtureMalformed(f"snapshot {path}: bad item kind {item.kind!r}")
        return RawMetadata(
            created_at=parse_timestamp(doc["created_at"]),
            default_branch=str(doc["default_branch"]),
            subscribers=int(doc["subscribers"]),
            stargazers=int(doc["stargazers"]),
            forks=int(doc["forks"]),
            total_commits=int(doc["total_commits"]),
            closed_items=items,
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise FixtureMalformed(f"snapshot {path}: {exc}")


# --- live REST client -------------------------------------------------------

_LAST_PAGE = re.compile(r'[?&]page=(\d+)[^>]*>;\s*rel="last"')


def _request(source: LiveApi, session: requests.Session, url: str, params=None):
    """GET with bounded exponential backoff; honors rate-limit headers."""
    governor = source.governor
    headers = {"Accept": "application/vnd.github+json"}
    if source.token:
        headers["Authorization"] = f"Bearer {source.token}"
    delay = 1.0
    for attempt in range(source.max_retries + 1):
        if governor is not None:
            governor.wait(source.sleep)
        try:
            resp = session.get(url, params=params, headers=headers, timeout=30)
        except requests.RequestException as exc:
            if attempt == source.max_retries:
                raise ApiUnavailable(f"{url}: {exc}")
            source.sleep(delay)
            delay = min(delay * 2, 60.0)
            continue
        if resp.status_code == 200:
            return resp
        if resp.status_code in (403, 429):
            wait = _throttle_seconds(resp) or delay
            if governor is not None:
                governor.throttle(wait)
            else:
                source.sleep(wait)
            delay = min(delay * 2, 60.0)
            continue
        if resp.status_code >= 500:
            source.sleep(delay)
            delay = min(delay * 2, 60.0)
            continue
        raise ApiUnavailable(f"{url}: HTTP {resp.status_code}")
    raise ApiUnavailable(f"{url}: still failing after {source.max_retries} retries")


def _throttle_seconds(resp) -> float:
    retry_after = resp.headers.get("Retry-After")
    if retry_after:
        try:
            return max(0.0, float(retry_after))
        except ValueError:
            pass
    if resp.headers.get("X-RateLimit-Remaining") == "0":
        reset = resp.headers.get("X-RateLimit-Reset")
        if reset:
            try:
                return max(0.0, float(reset) - time.time())
            except ValueError:
                pass
    return 0.0


def _fetch_live(name: str, source: LiveApi, since: Optional[datetime]) -> RawMetadata:
    base = source.base_url.rstrip("/")
    with requests.Session() as session:
        info = _request(source, session, f"{base}/repos/{name}").json()
        total_commits = _commit_count(source, session, base, name)
        closed = _closed_items(source, session, base, name, since)
    try:
        return RawMetadata(
            created_at=parse_timestamp(info["created_at"]),
            default_branch=info.get("default_branch", "main"),
            subscribers=int(info.get("subscribers_count", 0)),
            stargazers=int(info.get("stargazers_count", 0)),
            forks=int(info.get("forks_count", 0)),
            total_commits=total_commits,
            closed_items=closed,
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise ApiUnavailable(f"unexpected repo payload for {name}: {exc}")


def _commit_count(source, session, base, name) -> int:
    """Total commits on the default branch via the listing's last-page number."""
    resp = _request(source, session, f"{base}/repos/{name}/commits", {"per_page": 1})
    link = resp.headers.get("Link", "")
    m = _LAST_PAGE.search(link)
    if m:
        return int(m.group(1))
    return len(resp.json())


def _closed_items(source, session, base, name, since) -> list[ClosedItem]:
    items: list[ClosedItem] = []
    page = 1
    params = {"state": "closed", "per_page": 100}
    if since is not None:
        params["since"] = since.astimezone(timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")
    while True:
        page_params = dict(params, page=page)
        batch = _request(
            source, session, f"{base}/repos/{name}/issues", page_params
        ).json()
        for entry in batch:
            closed_at = entry.get("closed_at")
            if not closed_at:
                continue
            kind = KIND_PULL_REQUEST if "pull_request" in entry else KIND_ISSUE
            items.append(ClosedItem(parse_timestamp(closed_at), kind))
        if len(batch) < 100:
            return items
        page += 1
