"""Seeded k-means over the emotion space.

Lloyd's algorithm with k fixed at 6 and the six basic-emotion VAD points
as the initial centroids, so cluster index i keeps the emotion that
seeded it and the fitted model classifies any VAD point by nearest
centroid.  Everything is deterministic: points are visited in sorted
term order, distance ties go to the lowest cluster index, and a cluster
that empties keeps its previous centroid.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Callable, Optional

from .errors import AssignmentMismatch, DegenerateSeeds, EmptySpace, InvalidDocument
from .space import (
    EMOTION_ORDER,
    BasicEmotion,
    EmotionSpace,
    VadPoint,
    l2_distance,
)

K = 6

MODEL_DOC_VERSION = "vadkit-cluster-model/1"


@dataclass(frozen=True)
class KMeansParams:
    """Lloyd's loop controls.

    max_iterations=0 skips the update phase entirely, classifying by the
    raw seeds.  pin_neutral keeps the neutral centroid at its seed
    through every update.
    """

    max_iterations: int = 300
    tolerance: float = 1e-9
    pin_neutral: bool = False


@dataclass(frozen=True)
class ClusterModel:
    """A fitted 6-cluster classifier over the emotion space."""

    centroids: tuple[VadPoint, ...]
    label_of: tuple[BasicEmotion, ...]
    assignments: dict[str, int]
    iterations_run: int
    final_wcss: float
    params: KMeansParams = field(default_factory=KMeansParams)
    subset_hash: str = ""

    def __post_init__(self):
        if len(self.centroids) != K or len(self.label_of) != K:
            raise InvalidDocument("a cluster model has exactly 6 centroids")
        if set(self.label_of) != set(EMOTION_ORDER):
            raise InvalidDocument("cluster labels must be a bijection onto the six emotions")

    def label_for_index(self, index: int) -> BasicEmotion:
        return self.label_of[index]


def _nearest_centroid(point: VadPoint, centroids: tuple[VadPoint, ...]) -> int:
    best = 0
    best_d = l2_distance(point, centroids[0])
    for i in range(1, len(centroids)):
        d = l2_distance(point, centroids[i])
        if d < best_d:  # ties keep the lowest index
            best, best_d = i, d
    return best


def assign(model: ClusterModel, point: VadPoint) -> int:
    """Cluster index of the nearest centroid (ties to the lowest index)."""
    return _nearest_centroid(point, model.centroids)


def _assign_all(
    terms: list[str], points: dict[str, VadPoint], centroids: tuple[VadPoint, ...]
) -> dict[str, int]:
    return {t: _nearest_centroid(points[t], centroids) for t in terms}


def _wcss_of(
    terms: list[str],
    points: dict[str, VadPoint],
    centroids: tuple[VadPoint, ...],
    assignments: dict[str, int],
) -> float:
    total = 0.0
    for t in terms:
        d = l2_distance(points[t], centroids[assignments[t]])
        total += d * d
    return total


def kmeans_seeded(
    space: EmotionSpace,
    params: KMeansParams = KMeansParams(),
    on_iteration: Optional[Callable[[int, float], None]] = None,
) -> ClusterModel:
    """Fit the 6-cluster model, seeding centroid i with basic emotion i.

    ``on_iteration(iteration, wcss)`` is invoked after each assignment
    step with the objective under the current centroids, for descent
    instrumentation.
    """
    if len(space) == 0:
        raise EmptySpace("cannot cluster an empty space")
    if len(space) < K:
        raise EmptySpace(f"clustering needs at least {K} entries, got {len(space)}")

    seeds = tuple(space.seeds[e] for e in EMOTION_ORDER)
    for i in range(K):
        for j in range(i + 1, K):
            if seeds[i] == seeds[j]:
                raise DegenerateSeeds(
                    f"seeds for {EMOTION_ORDER[i].value!r} and "
                    f"{EMOTION_ORDER[j].value!r} coincide at {tuple(seeds[i])}"
                )

    # canonical visit order makes sums independent of input permutation
    terms = sorted(space.entries)
    points = space.entries

    centroids = seeds
    iterations = 0
    for it in range(params.max_iterations):
        assignments = _assign_all(terms, points, centroids)
        if on_iteration is not None:
            on_iteration(it, _wcss_of(terms, points, centroids, assignments))

        sums = [[0.0, 0.0, 0.0] for _ in range(K)]
        counts = [0] * K
        for t in terms:
            i = assignments[t]
            p = points[t]
            sums[i][0] += p[0]
            sums[i][1] += p[1]
            sums[i][2] += p[2]
            counts[i] += 1

        new_centroids = []
        for i in range(K):
            if counts[i] == 0 or (
                params.pin_neutral and EMOTION_ORDER[i] is BasicEmotion.NEUTRAL
            ):
                new_centroids.append(centroids[i])
            else:
                n = counts[i]
                new_centroids.append(
                    VadPoint(sums[i][0] / n, sums[i][1] / n, sums[i][2] / n)
                )
        new_centroids = tuple(new_centroids)

        movement = max(l2_distance(a, b) for a, b in zip(centroids, new_centroids))
        centroids = new_centroids
        iterations = it + 1
        if movement < params.tolerance:
            break

    assignments = _assign_all(terms, points, centroids)
    final = _wcss_of(terms, points, centroids, assignments)
    return ClusterModel(
        centroids=centroids,
        label_of=EMOTION_ORDER,
        assignments=assignments,
        iterations_run=iterations,
        final_wcss=final,
        params=params,
        subset_hash=space.subset_hash,
    )


def wcss(space: EmotionSpace, model: ClusterModel) -> float:
    """Within-cluster sum of squares of the space under the model."""
    for term in space.entries:
        if term not in model.assignments:
            raise AssignmentMismatch(f"term {term!r} has no cluster assignment")
    terms = sorted(space.entries)
    return _wcss_of(terms, space.entries, model.centroids, model.assignments)


# --- serialization -----------------------------------------------------------

def model_to_document(model: ClusterModel) -> dict:
    return {
        "version": MODEL_DOC_VERSION,
        "centroids": [list(c) for c in model.centroids],
        "labels": [e.value for e in model.label_of],
        "assignments": dict(sorted(model.assignments.items())),
        "iterations_run": model.iterations_run,
        "final_wcss": model.final_wcss,
        "params": {
            "max_iterations": model.params.max_iterations,
            "tolerance": model.params.tolerance,
            "pin_neutral": model.params.pin_neutral,
        },
        "subset_hash": model.subset_hash,
    }


def model_from_document(doc: dict) -> ClusterModel:
    if not isinstance(doc, dict) or doc.get("version") != MODEL_DOC_VERSION:
        raise InvalidDocument(
            f"expected a {MODEL_DOC_VERSION} document, got {doc.get('version')!r}"
            if isinstance(doc, dict)
            else "model document must be a JSON object"
        )
    try:
        params = KMeansParams(
            max_iterations=int(doc["params"]["max_iterations"]),
            tolerance=float(doc["params"]["tolerance"]),
            pin_neutral=bool(doc["params"]["pin_neutral"]),
        )
        model = ClusterModel(
            centroids=tuple(VadPoint(*map(float, c)) for c in doc["centroids"]),
            label_of=tuple(BasicEmotion.from_name(n) for n in doc["labels"]),
            assignments={t: int(i) for t, i in doc["assignments"].items()},
            iterations_run=int(doc["iterations_run"]),
            final_wcss=float(doc["final_wcss"]),
            params=params,
            subset_hash=str(doc.get("subset_hash", "")),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidDocument(f"malformed model document: {exc}") from exc
    for term, i in model.assignments.items():
        if not 0 <= i < K:
            raise InvalidDocument(f"assignment for {term!r} out of range: {i}")
    return model


def save_model(model: ClusterModel, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(model_to_document(model), fh, indent=2, sort_keys=True)
        fh.write("\n")


def load_model(path) -> ClusterModel:
    with open(path, encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise InvalidDocument(f"model file is not valid JSON: {exc}") from exc
    return model_from_document(doc)
