"""Shared builders for offline end-to-end fixtures: tiny git repositories
plus matching metadata snapshots."""

import json
import subprocess
from pathlib import Path

GIT_IDENTITY = ["-c", "user.name=fixture", "-c", "user.email=fixture@example.com"]
GIT_ENV_DATES = {
    "GIT_AUTHOR_DATE": "2024-01-01T00:00:00 +0000",
    "GIT_COMMITTER_DATE": "2024-01-01T00:00:00 +0000",
}


def make_git_repo(path: Path, files: dict[str, str]) -> Path:
    """A one-commit git repository containing ``files``."""
    path.mkdir(parents=True, exist_ok=True)
    for rel, content in files.items():
        target = path / rel
        target.parent.mkdir(parents=True, exist_ok=True)
        target.write_text(content)
    subprocess.run(["git", "init", "--quiet", str(path)], check=True)
    subprocess.run(["git", "-C", str(path), "add", "-A"], check=True)
    import os

    env = dict(os.environ, **GIT_ENV_DATES)
    subprocess.run(
        ["git", "-C", str(path), *GIT_IDENTITY, "commit", "--quiet", "-m", "init"],
        check=True,
        env=env,
    )
    return path


def write_metadata_fixture(fixtures_dir: Path, name: str, doc: dict) -> Path:
    fixtures_dir.mkdir(parents=True, exist_ok=True)
    path = fixtures_dir / (name.replace("/", "__") + ".json")
    path.write_text(json.dumps(doc, indent=2, sort_keys=True))
    return path


def metadata_doc(
    created_at="2020-01-01T00:00:00Z",
    subscribers=0,
    stargazers=0,
    forks=0,
    total_commits=0,
    closed_items=(),
):
    return {
        "created_at": created_at,
        "default_branch": "main",
        "subscribers": subscribers,
        "stargazers": stargazers,
        "forks": forks,
        "total_commits": total_commits,
        "closed_items": list(closed_items),
    }
