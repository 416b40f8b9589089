"""The 3D valence-arousal-dominance emotion space and its geometry.

Holds the core value types (VadPoint, BasicEmotion, EmotionSpace) plus
distance, radius and nearest-neighbor queries, and radius calibration.
Spaces are small (a few hundred points), so exhaustive scan is the
contract: every query returns a fully ordered, deterministic result.
"""

from __future__ import annotations

import enum
import hashlib
import json
import math
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple, Optional, Sequence

from .errors import (
    EmptyProbeSet,
    EmptySpace,
    InvalidCount,
    InvalidDocument,
    TargetUnreachable,
)

#: Slack allowed on the [-1, 1] bounds for clamped model outputs.
RANGE_TOLERANCE = 1e-9

SPACE_DOC_VERSION = "vadkit-space/1"


class VadPoint(NamedTuple):
    """A (valence, arousal, dominance) triple in the polar range [-1, 1]."""

    valence: float
    arousal: float
    dominance: float


class BasicEmotion(enum.Enum):
    """The six discrete emotion classes, in fixed ordinal order 0-5."""

    HAPPY = "happy"
    SAD = "sad"
    WORRIED = "worried"
    SURPRISED = "surprised"
    ANGRY = "angry"
    NEUTRAL = "neutral"

    @property
    def index(self) -> int:
        return _EMOTION_INDEX[self]

    @classmethod
    def from_name(cls, name: str) -> "BasicEmotion":
        try:
            return cls(name.strip().lower())
        except ValueError:
            raise KeyError(name) from None


#: Canonical emotion order; cluster index i is seeded by EMOTION_ORDER[i].
EMOTION_ORDER = (
    BasicEmotion.HAPPY,
    BasicEmotion.SAD,
    BasicEmotion.WORRIED,
    BasicEmotion.SURPRISED,
    BasicEmotion.ANGRY,
    BasicEmotion.NEUTRAL,
)

_EMOTION_INDEX = {e: i for i, e in enumerate(EMOTION_ORDER)}


def in_polar_range(point: VadPoint, tolerance: float = RANGE_TOLERANCE) -> bool:
    return all(
        math.isfinite(c) and -1.0 - tolerance <= c <= 1.0 + tolerance
        for c in point
    )


@dataclass(frozen=True)
class EmotionSpace:
    """Immutable set of lexicon terms embedded at polar VAD points.

    ``entries`` preserves construction order; ``seeds`` resolves each of
    the six basic emotions to its VAD point.  ``config_hash`` and
    ``subset_hash`` identify the configuration and vocabulary that
    produced the space, for provenance tracking.
    """

    entries: dict[str, VadPoint]
    seeds: dict[BasicEmotion, VadPoint]
    config_hash: str = ""
    subset_hash: str = field(default="", compare=False)

    def __post_init__(self):
        if set(self.seeds) != set(EMOTION_ORDER):
            raise EmptySpace("seeds must cover exactly the six basic emotions")
        if not self.subset_hash:
            object.__setattr__(self, "subset_hash", terms_hash(self.entries))

    def __len__(self) -> int:
        return len(self.entries)

    @property
    def terms(self) -> tuple[str, ...]:
        return tuple(self.entries)


def terms_hash(terms: Iterable[str]) -> str:
    """SHA-256 over the sorted term list; stable vocabulary fingerprint."""
    joined = "\n".join(sorted(terms))
    return hashlib.sha256(joined.encode("utf-8")).hexdigest()


def l2_distance(a: VadPoint, b: VadPoint) -> float:
    """Euclidean distance between two VAD points."""
    dv = a[0] - b[0]
    da = a[1] - b[1]
    dd = a[2] - b[2]
    return math.sqrt(dv * dv + da * da + dd * dd)


def _scan(space: EmotionSpace, query: VadPoint) -> list[tuple[str, float]]:
    # (distance, term) sort gives the ascending-distance, lexicographic-tie
    # ordering that every retrieval operation promises.
    pairs = [(term, l2_distance(query, point)) for term, point in space.entries.items()]
    pairs.sort(key=lambda pair: (pair[1], pair[0]))
    return pairs


def neighbors_within(
    space: EmotionSpace, query: VadPoint, radius: float
) -> list[tuple[str, float]]:
    """All terms with distance <= radius, nearest first.

    The radius bound is closed, so a term sitting exactly on the sphere
    is included; ties break lexicographically.
    """
    if radius < 0:
        raise ValueError(f"radius must be non-negative, got {radius}")
    return [(t, d) for t, d in _scan(space, query) if d <= radius]


def nearest(space: EmotionSpace, query: VadPoint, n: int) -> list[tuple[str, float]]:
    """The n closest terms, same ordering and tie rule as neighbors_within."""
    if not 1 <= n <= len(space):
        raise InvalidCount(
            f"n must be between 1 and {len(space)} entries, got {n}"
        )
    return _scan(space, query)[:n]


def mean_neighbor_count(
    space: EmotionSpace, probes: Sequence[VadPoint], radius: float
) -> float:
    """Mean neighborhood size over the probe points at the given radius."""
    if not probes:
        raise EmptyProbeSet("mean_neighbor_count requires at least one probe")
    total = sum(len(neighbors_within(space, p, radius)) for p in probes)
    return total / len(probes)


def calibrate_radius(
    space: EmotionSpace, probes: Sequence[VadPoint], target_mean: float
) -> float:
    """Smallest radius whose mean neighborhood size reaches target_mean.

    The mean neighbor count is a step function that only jumps at
    probe-to-entry distances, so the exact minimizer is one of those
    distances: sort the full distance multiset and walk the cumulative
    count until the mean first reaches the target.
    """
    if not probes:
        raise EmptyProbeSet("calibrate_radius requires at least one probe")
    if target_mean <= 0:
        raise TargetUnreachable(f"target mean must be positive, got {target_mean}")
    if target_mean > len(space):
        raise TargetUnreachable(
            f"target mean {target_mean} exceeds entry count {len(space)}"
        )

    distances = sorted(
        l2_distance(probe, point)
        for probe in probes
        for point in space.entries.values()
    )
    needed = target_mean * len(probes)  # cumulative pair count to reach
    for i, d in enumerate(distances):
        # include the whole tie group before testing the step
        if i + 1 < len(distances) and distances[i + 1] == d:
            continue
        if i + 1 >= needed:
            return d
    return distances[-1]


# --- serialization -----------------------------------------------------------

def space_to_document(space: EmotionSpace) -> dict:
    return {
        "version": SPACE_DOC_VERSION,
        "entries": {t: list(p) for t, p in space.entries.items()},
        "seeds": {e.value: list(p) for e, p in space.seeds.items()},
        "config_hash": space.config_hash,
        "subset_hash": space.subset_hash,
    }


def space_from_document(doc: dict) -> EmotionSpace:
    if not isinstance(doc, dict) or doc.get("version") != SPACE_DOC_VERSION:
        raise InvalidDocument(
            f"expected a {SPACE_DOC_VERSION} document, got {doc.get('version')!r}"
            if isinstance(doc, dict)
            else "space document must be a JSON object"
        )
    try:
        entries = {t: VadPoint(*map(float, p)) for t, p in doc["entries"].items()}
        seeds = {
            BasicEmotion.from_name(name): VadPoint(*map(float, p))
            for name, p in doc["seeds"].items()
        }
        space = EmotionSpace(
            entries=entries,
            seeds=seeds,
            config_hash=doc.get("config_hash", ""),
            subset_hash=doc.get("subset_hash", ""),
        )
    except (KeyError, TypeError, ValueError, EmptySpace) as exc:
        raise InvalidDocument(f"malformed space document: {exc}") from exc
    for term, point in entries.items():
        if not in_polar_range(point):
            raise InvalidDocument(f"entry {term!r} outside polar range: {point}")
    return space


def save_space(space: EmotionSpace, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(space_to_document(space), fh, indent=2, sort_keys=True)
        fh.write("\n")


def load_space(path) -> EmotionSpace:
    with open(path, encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise InvalidDocument(f"space file is not valid JSON: {exc}") from exc
    return space_from_document(doc)
