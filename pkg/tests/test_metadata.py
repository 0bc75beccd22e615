import json
import threading
from datetime import datetime, timedelta, timezone
from http.server import BaseHTTPRequestHandler, HTTPServer
from urllib.parse import parse_qs, urlparse

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gitrank.errors import ApiUnavailable, FixtureMalformed
from gitrank.metadata import (
    ClosedItem,
    Fixture,
    LiveApi,
    RateLimitGovernor,
    RawMetadata,
    build_snapshot,
    closed_items_in_window,
    fetch_repo_info,
    parse_timestamp,
    per_day_rate,
)

EVAL = datetime(2024, 6, 1, tzinfo=timezone.utc)


def days_ago(n):
    return EVAL - timedelta(days=n)


def fixture_doc(**overrides):
    doc = {
        "created_at": "2020-01-01T00:00:00Z",
        "default_branch": "main",
        "subscribers": 10,
        "stargazers": 100,
        "forks": 5,
        "total_commits": 400,
        "closed_items": [
            {"closed_at": "2024-05-20T12:00:00Z", "kind": "issue"},
            {"closed_at": "2024-01-02T00:00:00Z", "kind": "pull_request"},
            {"closed_at": "2021-01-01T00:00:00Z", "kind": "issue"},
        ],
    }
    doc.update(overrides)
    return doc


def write_fixture(tmp_path, name="o/r", **overrides):
    path = tmp_path / (name.replace("/", "__") + ".json")
    path.write_text(json.dumps(fixture_doc(**overrides)))
    return Fixture(tmp_path)


class TestFixtureSource:
    def test_passthrough(self, tmp_path):
        source = write_fixture(tmp_path)
        raw = fetch_repo_info("o/r", source)
        assert len(raw.closed_items) == 3
        assert raw.subscribers == 10
        assert raw.created_at == datetime(2020, 1, 1, tzinfo=timezone.utc)

    def test_deterministic(self, tmp_path):
        source = write_fixture(tmp_path)
        assert fetch_repo_info("o/r", source) == fetch_repo_info("o/r", source)

    def test_missing_created_at(self, tmp_path):
        doc = fixture_doc()
        del doc["created_at"]
        (tmp_path / "o__r.json").write_text(json.dumps(doc))
        with pytest.raises(FixtureMalformed):
            fetch_repo_info("o/r", Fixture(tmp_path))

    def test_missing_file(self, tmp_path):
        with pytest.raises(FixtureMalformed):
            fetch_repo_info("o/r", Fixture(tmp_path))

    def test_bad_kind(self, tmp_path):
        write_fixture(
            tmp_path,
            closed_items=[{"closed_at": "2024-01-01T00:00:00Z", "kind": "wat"}],
        )
        with pytest.raises(FixtureMalformed):
            fetch_repo_info("o/r", Fixture(tmp_path))


class TestWindowArithmetic:
    def test_inside_window(self):
        items = [ClosedItem(days_ago(10), "issue")]
        assert closed_items_in_window(items, 30, EVAL) == 1

    def test_outside_window(self):
        items = [ClosedItem(days_ago(3 * 365), "issue")]
        assert closed_items_in_window(items, 730, EVAL) == 0

    def test_empty(self):
        assert closed_items_in_window([], 730, EVAL) == 0

    def test_issues_and_prs_counted_together(self):
        items = [
            ClosedItem(days_ago(5), "issue"),
            ClosedItem(days_ago(6), "pull_request"),
        ]
        assert closed_items_in_window(items, 30, EVAL) == 2

    def test_boundary_inclusive(self):
        assert closed_items_in_window([ClosedItem(days_ago(30), "issue")], 30, EVAL) == 1


class TestPerDayRate:
    def test_simple(self):
        assert per_day_rate(100, days_ago(100), EVAL) == 1.0

    def test_zero_count(self):
        assert per_day_rate(0, days_ago(1234), EVAL) == 0.0

    def test_age_floor_one_day(self):
        assert per_day_rate(5, EVAL, EVAL) == 5.0
        assert per_day_rate(5, EVAL - timedelta(hours=3), EVAL) == 5.0

    def test_partial_day_floors(self):
        # 10.5 days of age floors to 10 whole days
        assert per_day_rate(20, EVAL - timedelta(days=10, hours=12), EVAL) == 2.0

    def test_linear_in_count(self):
        t0 = days_ago(50)
        assert per_day_rate(30, t0, EVAL) == pytest.approx(3 * per_day_rate(10, t0, EVAL))


class TestBuildSnapshot:
    def test_all_zero(self):
        raw = RawMetadata(days_ago(100), "main", 0, 0, 0, 0, [])
        snap = build_snapshot(raw, EVAL)
        assert (snap.closed_2y, snap.closed_1y, snap.closed_6m, snap.closed_1m) == (0, 0, 0, 0)
        assert snap.commits_per_day == 0.0
        assert snap.stargazers_per_day == 0.0

    def test_commit_rate(self):
        raw = RawMetadata(days_ago(730), "main", 0, 0, 0, 730, [])
        assert build_snapshot(raw, EVAL).commits_per_day == 1.0

    def test_window_counts(self):
        items = [
            ClosedItem(days_ago(20), "issue"),
            ClosedItem(days_ago(100), "issue"),
            ClosedItem(days_ago(300), "pull_request"),
            ClosedItem(days_ago(800), "issue"),
        ]
        raw = RawMetadata(days_ago(1000), "main", 0, 0, 0, 0, items)
        snap = build_snapshot(raw, EVAL)
        assert snap.closed_1m == 1
        assert snap.closed_6m == 2
        assert snap.closed_1y == 3
        assert snap.closed_2y == 3  # 800 days is outside the 2-year window

    @settings(max_examples=200, deadline=None)
    @given(st.lists(st.integers(min_value=0, max_value=2000), max_size=50))
    def test_windows_nest(self, offsets):
        items = [ClosedItem(days_ago(d), "issue") for d in offsets]
        raw = RawMetadata(days_ago(2500), "main", 0, 0, 0, 0, items)
        snap = build_snapshot(raw, EVAL)
        assert snap.closed_1m <= snap.closed_6m <= snap.closed_1y <= snap.closed_2y


def test_parse_timestamp_variants():
    assert parse_timestamp("2024-06-01T00:00:00Z") == EVAL
    assert parse_timestamp("2024-06-01T00:00:00+00:00") == EVAL
    assert parse_timestamp("2024-06-01T00:00:00") == EVAL


# --- live API against an in-process stub ------------------------------------


class StubApi:
    """Minimal hosting-API stand-in; scripted to rate-limit once."""

    def __init__(self, commits=250, issues=None, limit_first_call=False):
        self.commits = commits
        self.issues = issues if issues is not None else []
        self.remaining_403 = 1 if limit_first_call else 0
        self.requests_seen = []
        handler = self._make_handler()
        self.server = HTTPServer(("127.0.0.1", 0), handler)
        self.thread = threading.Thread(target=self.server.serve_forever, daemon=True)
        self.thread.start()

    @property
    def base_url(self):
        host, port = self.server.server_address
        return f"http://{host}:{port}"

    def close(self):
        self.server.shutdown()
        self.server.server_close()

    def _make_handler(stub):
        class Handler(BaseHTTPRequestHandler):
            def log_message(self, *args):
                pass

            def do_GET(self):
                stub.requests_seen.append(self.path)
                if stub.remaining_403 > 0:
                    stub.remaining_403 -= 1
                    self.send_response(403)
                    self.send_header("X-RateLimit-Remaining", "0")
                    self.send_header("X-RateLimit-Reset", "0")
                    self.end_headers()
                    return
                parsed = urlparse(self.path)
                query = parse_qs(parsed.query)
                if parsed.path == "/repos/o/r":
                    body = {
                        "created_at": "2020-01-01T00:00:00Z",
                        "default_branch": "main",
                        "subscribers_count": 7,
                        "stargazers_count": 70,
                        "forks_count": 3,
                    }
                    self._json(body)
                elif parsed.path == "/repos/o/r/commits":
                    link = f'<{stub.base_url}/repos/o/r/commits?per_page=1&page={stub.commits}>; rel="last"'
                    self._json([{"sha": "x"}], headers={"Link": link})
                elif parsed.path == "/repos/o/r/issues":
                    page = int(query.get("page", ["1"])[0])
                    start, end = (page - 1) * 100, page * 100
                    self._json(stub.issues[start:end])
                else:
                    self.send_response(404)
                    self.end_headers()

            def _json(self, obj, headers=None):
                payload = json.dumps(obj).encode()
                self.send_response(200)
                self.send_header("Content-Type", "application/json")
                for key, value in (headers or {}).items():
                    self.send_header(key, value)
                self.send_header("Content-Length", str(len(payload)))
                self.end_headers()
                self.wfile.write(payload)

        return Handler


@pytest.fixture
def stub_issues():
    issues = [
        {"closed_at": "2024-05-01T00:00:00Z"},
        {"closed_at": "2024-04-01T00:00:00Z", "pull_request": {"url": "x"}},
        {"closed_at": None},
        {"state": "closed"},  # no closed_at at all
    ]
    # pad across a page boundary to exercise pagination
    issues += [{"closed_at": "2023-01-01T00:00:00Z"} for _ in range(130)]
    return issues


class TestLiveApi:
    def test_full_fetch_with_pagination(self, stub_issues):
        stub = StubApi(commits=250, issues=stub_issues)
        try:
            source = LiveApi(token="t", base_url=stub.base_url, sleep=lambda s: None)
            raw = fetch_repo_info("o/r", source)
        finally:
            stub.close()
        assert raw.total_commits == 250
        assert raw.subscribers == 7
        # the two entries without closed_at are skipped
        assert len(raw.closed_items) == 132
        kinds = {i.kind for i in raw.closed_items}
        assert kinds == {"issue", "pull_request"}

    def test_rate_limited_then_success_same_result(self, stub_issues):
        baseline_stub = StubApi(issues=stub_issues)
        throttled_stub = StubApi(issues=stub_issues, limit_first_call=True)
        try:
            baseline = fetch_repo_info(
                "o/r", LiveApi(base_url=baseline_stub.base_url, sleep=lambda s: None)
            )
            governor = RateLimitGovernor()
            throttled = fetch_repo_info(
                "o/r",
                LiveApi(
                    base_url=throttled_stub.base_url,
                    sleep=lambda s: None,
                    governor=governor,
                ),
            )
        finally:
            baseline_stub.close()
            throttled_stub.close()
        assert throttled == baseline

    def test_unreachable_api_raises(self):
        source = LiveApi(
            base_url="http://127.0.0.1:9", max_retries=1, sleep=lambda s: None
        )
        with pytest.raises(ApiUnavailable):
            fetch_repo_info("o/r", source)

    def test_since_parameter_forwarded(self, stub_issues):
        stub = StubApi(issues=stub_issues)
        try:
            source = LiveApi(base_url=stub.base_url, sleep=lambda s: None)
            fetch_repo_info("o/r", source, since=EVAL - timedelta(days=730))
        finally:
            stub.close()
        issue_paths = [p for p in stub.requests_seen if "/issues" in p]
        assert issue_paths and all("since=2022-06-02T00" in p for p in issue_paths)
