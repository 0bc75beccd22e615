"""Cross-repository normalization, weighted category scores, and ranking.

Every measure is min-max normalized to 0..100 across the repository set
(cost measures inverted so that "more errors" scores lower), category
scores are weighted averages, and the overall score is the plain mean of
the three categories.  All of this is deliberately serial and pure.
"""

import enum
import math
from dataclasses import dataclass
from typing import Iterable, Mapping, Optional, Sequence

from gitrank.errors import FatalConfig, MissingMeasure

DEGENERATE_NORMALIZED = 50.0  # when max == min there is no information

QUALITY = "quality"
MAINTAINABILITY = "maintainability"
POPULARITY = "popularity"
CATEGORIES = (QUALITY, MAINTAINABILITY, POPULARITY)


class Polarity(enum.Enum):
    BENEFIT = "benefit"  # higher raw value is better
    COST = "cost"  # lower raw value is better


@dataclass(frozen=True)
class MeasureSpec:
    id: str
    category: str
    polarity: Polarity
    weight: float


@dataclass(frozen=True)
class MeasureVector:
    """The 14 raw per-repository measures."""

    avg_cc: float
    style_density: float
    sec_low_density: float
    sec_med_density: float
    sec_high_density: float
    avg_mi: float
    closed_2y: int
    closed_1y: int
    closed_6m: int
    closed_1m: int
    commits_per_day: float
    subscribers_per_day: float
    stargazers_per_day: float
    forks_per_day: float

    def as_dict(self) -> dict[str, float]:
        return {name: getattr(self, name) for name in MEASURE_ORDER}

    @classmethod
    def from_dict(cls, values: Mapping[str, float]) -> "MeasureVector":
        return cls(**{name: values[name] for name in MEASURE_ORDER})


MEASURE_ORDER = (
    "avg_cc",
    "style_density",
    "sec_low_density",
    "sec_med_density",
    "sec_high_density",
    "avg_mi",
    "closed_2y",
    "closed_1y",
    "closed_6m",
    "closed_1m",
    "commits_per_day",
    "subscribers_per_day",
    "stargazers_per_day",
    "forks_per_day",
)

# The four closed-item windows carry increasing weight the more recent
# they are; MI and commit rate take the remaining shares.  Quality and
# popularity use equal weights.  All of it is user-overridable.
DEFAULT_MAINTAINABILITY_WEIGHTS = {
    "avg_mi": 0.30,
    "closed_2y": 0.05,
    "closed_1y": 0.10,
    "closed_6m": 0.15,
    "closed_1m": 0.25,
    "commits_per_day": 0.15,
}

_CATEGORY_MEASURES = {
    QUALITY: (
        "avg_cc",
        "style_density",
        "sec_low_density",
        "sec_med_density",
        "sec_high_density",
    ),
    MAINTAINABILITY: (
        "avg_mi",
        "closed_2y",
        "closed_1y",
        "closed_6m",
        "closed_1m",
        "commits_per_day",
    ),
    POPULARITY: ("subscribers_per_day", "stargazers_per_day", "forks_per_day"),
}

_COST_MEASURES = frozenset(
    {"avg_cc", "style_density", "sec_low_density", "sec_med_density", "sec_high_density"}
)


@dataclass(frozen=True)
class ScoreCard:
    name: str
    quality: float
    maintainability: float
    popularity: float
    overall: float


def default_specs(
    weight_overrides: Optional[Mapping[str, Mapping[str, float]]] = None,
    polarity_overrides: Optional[Mapping[str, str]] = None,
) -> list[MeasureSpec]:
    """The 14 measure specs, optionally reweighted or repolarized.

    ``weight_overrides`` maps category -> {measure id -> weight};
    ``polarity_overrides`` maps measure id -> "benefit" | "cost".
    """
    weight_overrides = weight_overrides or {}
    polarity_overrides = polarity_overrides or {}
    specs = []
    for category, measures in _CATEGORY_MEASURES.items():
        if category == MAINTAINABILITY:
            weights = dict(DEFAULT_MAINTAINABILITY_WEIGHTS)
        else:
            weights = {m: 1.0 / len(measures) for m in measures}
        for measure, weight in weight_overrides.get(category, {}).items():
            if measure not in weights:
                raise FatalConfig(f"unknown measure {measure!r} in [{category}] weights")
            weights[measure] = float(weight)
        for measure in measures:
            polarity = Polarity.COST if measure in _COST_MEASURES else Polarity.BENEFIT
            if measure in polarity_overrides:
                polarity = Polarity(polarity_overrides[measure])
            specs.append(MeasureSpec(measure, category, polarity, weights[measure]))
    validate_specs(specs)
    return specs


def validate_specs(specs: Sequence[MeasureSpec]) -> None:
    seen = [s.id for s in specs]
    if sorted(seen) != sorted(MEASURE_ORDER):
        raise FatalConfig("measure specs must cover each of the 14 measures exactly once")
    for category in CATEGORIES:
        total = math.fsum(s.weight for s in specs if s.category == category)
        if abs(total - 1.0) > 1e-9:
            raise FatalConfig(f"{category} weights sum to {total}, expected 1.0")
        if any(s.weight <= 0 for s in specs if s.category == category):
            raise FatalConfig(f"{category} weights must be positive")


def normalize(
    raw_values: Sequence[float],
    polarity: Polarity,
    degenerate: float = DEGENERATE_NORMALIZED,
) -> list[float]:
    """Position of each value in the observed range, as 0..100.

    Cost polarity inverts the scale; a degenerate range (max == min) maps
    every value to ``degenerate``.
    """
    if not raw_values:
        return []
    lo = min(raw_values)
    hi = max(raw_values)
    if hi == lo:
        return [degenerate] * len(raw_values)
    span = hi - lo
    # divide before scaling: (x - lo) / span is exactly 1.0 at the max, so
    # the endpoints map to exactly 0 and 100 and containment never drifts
    if polarity is Polarity.BENEFIT:
        return [(x - lo) / span * 100.0 for x in raw_values]
    return [(hi - x) / span * 100.0 for x in raw_values]


def category_score(
    normalized: Mapping[str, float], specs: Iterable[MeasureSpec], category: str
) -> float:
    """Weighted average of the category's normalized measures.

    Computed relative to the first measure's value so that identical
    inputs return exactly that value regardless of weight rounding.
    """
    members = [s for s in specs if s.category == category]
    missing = [s.id for s in members if s.id not in normalized]
    if missing or not members:
        raise MissingMeasure(f"category {category!r} missing measures: {missing}")
    base = normalized[members[0].id]
    correction = math.fsum(s.weight * (normalized[s.id] - base) for s in members)
    total_weight = math.fsum(s.weight for s in members)
    return base + correction / total_weight


def overall_score(quality: float, maintainability: float, popularity: float) -> float:
    return (quality + maintainability + popularity) / 3.0


def score_repos(
    measured: Sequence[tuple[str, MeasureVector]],
    specs: Optional[Sequence[MeasureSpec]] = None,
    degenerate: float = DEGENERATE_NORMALIZED,
) -> list[ScoreCard]:
    """ScoreCards for every repository, in input order (use rank() to sort)."""
    if specs is None:
        specs = default_specs()
    by_id = {s.id: s for s in specs}
    columns: dict[str, list[float]] = {}
    for measure in MEASURE_ORDER:
        raw = [getattr(vec, measure) for _, vec in measured]
        columns[measure] = normalize(raw, by_id[measure].polarity, degenerate)
    cards = []
    for row, (name, _vec) in enumerate(measured):
        normalized = {measure: columns[measure][row] for measure in MEASURE_ORDER}
        q = category_score(normalized, specs, QUALITY)
        m = category_score(normalized, specs, MAINTAINABILITY)
        p = category_score(normalized, specs, POPULARITY)
        cards.append(ScoreCard(name, q, m, p, overall_score(q, m, p)))
    return cards


def rank(cards: Sequence[ScoreCard]) -> list[ScoreCard]:
    """Descending by overall score; ties break ascending by name."""
    return sorted(cards, key=lambda c: (-c.overall, c.name))
