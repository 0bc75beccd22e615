"""Run configuration: TOML file plus CLI overrides.

One document configures both phases.  Recognized sections: [run] for
paths and execution knobs, [weights.<category>] and [polarity] for
scoring overrides, [scoring] for the degenerate-range value, [style] /
[style.rules] for lint tuning, [security.rules] for severity buckets,
[extensions] for the extension-to-language map.  CLI flags win over file
values.
"""

import sys
from dataclasses import dataclass, field
from datetime import datetime
from pathlib import Path
from typing import Optional

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from gitrank.errors import FatalConfig
from gitrank.metadata import parse_timestamp
from gitrank.sources import Language


@dataclass
class RunConfig:
    input: Optional[Path] = None
    workdir: Path = Path("gitrank-work")
    metrics_dir: Path = Path("gitrank-metrics")
    shard_index: int = 0
    shard_total: int = 1
    jobs: int = 4
    verbosity: int = 0
    fixtures: Optional[Path] = None
    evaluated_at: Optional[datetime] = None
    force: bool = False
    weight_overrides: dict = field(default_factory=dict)
    polarity_overrides: dict = field(default_factory=dict)
    degenerate: float = 50.0
    style_disabled: set = field(default_factory=set)
    line_length_limit: int = 120
    security_overrides: dict = field(default_factory=dict)
    extensions: Optional[dict] = None

    def validate(self) -> "RunConfig":
        if self.shard_total < 1 or not (0 <= self.shard_index < self.shard_total):
            raise FatalConfig(
                f"shard index must satisfy 0 <= {self.shard_index} < {self.shard_total}"
            )
        if self.jobs < 1:
            raise FatalConfig(f"jobs must be >= 1, got {self.jobs}")
        if self.verbosity not in (0, 1, 2):
            raise FatalConfig(f"verbosity must be 0, 1, or 2, got {self.verbosity}")
        return self


def parse_shard(spec: str) -> tuple[int, int]:
    """"i/N" -> (index, total)."""
    try:
        index_text, total_text = spec.split("/", 1)
        index, total = int(index_text), int(total_text)
    except ValueError:
        raise FatalConfig(f"bad shard spec {spec!r}, expected i/N")
    if total < 1 or not (0 <= index < total):
        raise FatalConfig(f"bad shard spec {spec!r}: need 0 <= i < N")
    return index, total


def load_config(path: Optional[Path] = None, **cli_overrides) -> RunConfig:
    """RunConfig from an optional TOML file, then CLI overrides on top."""
    config = RunConfig()
    if path is not None:
        _apply_file(config, Path(path))
    for key, value in cli_overrides.items():
        if value is None:
            continue
        if key == "shard":
            config.shard_index, config.shard_total = parse_shard(value)
        elif key == "evaluated_at":
            config.evaluated_at = _parse_when(value)
        elif key in ("input", "workdir", "metrics_dir", "fixtures"):
            setattr(config, key, Path(value))
        else:
            setattr(config, key, value)
    return config.validate()


def _parse_when(value) -> datetime:
    if isinstance(value, datetime):
        return parse_timestamp(value.isoformat())
    try:
        return parse_timestamp(str(value))
    except ValueError as exc:
        raise FatalConfig(f"bad evaluated_at timestamp {value!r}: {exc}")


def _apply_file(config: RunConfig, path: Path) -> None:
    try:
        doc = tomllib.loads(path.read_text())
    except FileNotFoundError:
        raise FatalConfig(f"config file not found: {path}")
    except (OSError, tomllib.TOMLDecodeError) as exc:
        raise FatalConfig(f"cannot parse config {path}: {exc}")

    run = doc.get("run", {})
    for key in ("input", "workdir", "fixtures"):
        if key in run:
            setattr(config, key, Path(run[key]))
    if "metrics" in run:
        config.metrics_dir = Path(run["metrics"])
    if "shard" in run:
        config.shard_index, config.shard_total = parse_shard(str(run["shard"]))
    for key in ("jobs", "verbosity"):
        if key in run:
            setattr(config, key, int(run[key]))
    if "force" in run:
        config.force = bool(run["force"])
    if "evaluated_at" in run:
        config.evaluated_at = _parse_when(run["evaluated_at"])

    weights = doc.get("weights", {})
    if not isinstance(weights, dict):
        raise FatalConfig("[weights] must contain per-category tables")
    config.weight_overrides = {
        category: dict(table) for category, table in weights.items()
    }
    config.polarity_overrides = dict(doc.get("polarity", {}))

    scoring = doc.get("scoring", {})
    if "degenerate" in scoring:
        config.degenerate = float(scoring["degenerate"])

    style = doc.get("style", {})
    if "line_length_limit" in style:
        config.line_length_limit = int(style["line_length_limit"])
    for rule_id, value in style.get("rules", {}).items():
        if rule_id == "line_length_limit":
            config.line_length_limit = int(value)
        elif value is False:
            config.style_disabled.add(rule_id)

    security = doc.get("security", {})
    rules = security.get("rules", {})
    for severity, names in rules.items():
        if severity not in ("low", "medium", "high"):
            raise FatalConfig(f"unknown security severity {severity!r}")
        config.security_overrides[severity] = [str(n) for n in names]

    extensions = doc.get("extensions", {})
    if extensions:
        try:
            config.extensions = {
                ext: Language(lang) for ext, lang in extensions.items()
            }
        except ValueError as exc:
            raise FatalConfig(f"bad [extensions] entry: {exc}")
