"""Bidirectional mapping between discrete labels, VAD points, and
open-vocabulary emotion sets."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Collection

from .clustering import ClusterModel, assign
from .errors import EmptySpace
from .space import BasicEmotion, EmotionSpace, VadPoint, nearest, neighbors_within

#: Neighborhood radius calibrated to yield about five terms on a
#: lexicon-sized space; override with calibrate_radius output.
DEFAULT_RADIUS = 0.25


@dataclass(frozen=True)
class OpenVocabResult:
    """Emotion terms retrieved around one predicted VAD point.

    When the neighborhood is empty the single globally nearest term is
    returned instead and fallback_applied is set.
    """

    sample_id: str
    terms: tuple[tuple[str, float], ...]
    radius_used: float
    fallback_applied: bool


def discrete_to_vad(space: EmotionSpace, label: BasicEmotion) -> VadPoint:
    """The continuous VAD point standing in for a discrete label."""
    return space.seeds[label]


def vad_to_discrete(model: ClusterModel, point: VadPoint) -> BasicEmotion:
    """Classify a VAD point by its nearest cluster centroid."""
    return model.label_of[assign(model, point)]


def open_vocab(
    space: EmotionSpace,
    point: VadPoint,
    radius: float = DEFAULT_RADIUS,
    sample_id: str = "",
    exclude: Collection[str] = (),
) -> OpenVocabResult:
    """Emotion terms within radius of the point, nearest first.

    ``exclude`` drops specific terms (e.g. the six basic labels) from
    consideration entirely, including from the fallback.
    """
    excluded = {t.lower() for t in exclude}
    if excluded:
        candidates = {t: p for t, p in space.entries.items() if t not in excluded}
        if not candidates:
            raise EmptySpace("exclusion list removed every term")
        scan_space = EmotionSpace(
            entries=candidates, seeds=space.seeds, config_hash=space.config_hash
        )
    else:
        scan_space = space

    terms = neighbors_within(scan_space, point, radius)
    if terms:
        return OpenVocabResult(sample_id, tuple(terms), radius, False)
    fallback = nearest(scan_space, point, 1)
    return OpenVocabResult(sample_id, tuple(fallback), radius, True)
