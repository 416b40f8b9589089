"""Evaluation metrics for continuous (VAD) and discrete emotion labels.

Continuous: mean L2 distance, MSE, MAE, and Pearson correlation.
Discrete: confusion matrix, per-class precision/recall/F1, macro and
support-weighted averages, accuracy, and cross-entropy.

Undefined quantities (e.g. correlation of a constant sequence) are
reported as None, never silently coerced to a number.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

from .errors import (
    EmptyInput,
    LengthMismatch,
    NotAProbability,
    NotOneHot,
    TooFewSamples,
)
from .space import EMOTION_ORDER, BasicEmotion, VadPoint, l2_distance

#: Probability floor applied before the log in cross-entropy.
PROB_FLOOR = 1e-12

_ONEHOT_TOLERANCE = 1e-12
_PROB_SUM_TOLERANCE = 1e-9


@dataclass(frozen=True)
class ContinuousEval:
    """Metric bundle for VAD regression output.

    pcc_per_dim holds the per-axis Pearson correlations (valence,
    arousal, dominance); pcc_mean averages the defined axes and
    pcc_flat correlates all 3N scalars pooled, reported alongside for
    transparency since either aggregation is a defensible headline.
    """

    mean_l2: float
    mse: float
    mae: float
    pcc_per_dim: tuple[Optional[float], Optional[float], Optional[float]]
    pcc_mean: Optional[float]
    pcc_flat: Optional[float]
    n_samples: int


@dataclass(frozen=True)
class ClassMetrics:
    precision: float
    recall: float
    f1: float
    support: int


@dataclass(frozen=True)
class DiscreteEval:
    """Metric bundle for 6-class discrete output.

    Confusion rows are truth, columns are prediction, both in canonical
    emotion order.  Macro averages weight all six classes equally (a
    class with zero support contributes 0); weighted_f1 weights by
    support.
    """

    confusion: tuple[tuple[int, ...], ...]
    per_class: dict[BasicEmotion, ClassMetrics]
    macro_precision: float
    macro_recall: float
    macro_f1: float
    weighted_f1: float
    accuracy: float


def _check_paired(truth: Sequence, pred: Sequence, what: str) -> None:
    if len(truth) != len(pred):
        raise LengthMismatch(
            f"{what}: truth has {len(truth)} items, prediction has {len(pred)}"
        )
    if not truth:
        raise EmptyInput(f"{what}: no samples")


def mse(truth: Sequence[VadPoint], pred: Sequence[VadPoint]) -> float:
    """Mean squared error over all 3N scalar components."""
    _check_paired(truth, pred, "mse")
    total = 0.0
    for t, p in zip(truth, pred):
        for a, b in zip(t, p):
            e = a - b
            total += e * e
    return total / (3 * len(truth))


def mae(truth: Sequence[VadPoint], pred: Sequence[VadPoint]) -> float:
    """Mean absolute error over all 3N scalar components."""
    _check_paired(truth, pred, "mae")
    total = 0.0
    for t, p in zip(truth, pred):
        for a, b in zip(t, p):
            total += abs(a - b)
    return total / (3 * len(truth))


def mean_l2(truth: Sequence[VadPoint], pred: Sequence[VadPoint]) -> float:
    """Mean Euclidean distance between paired VAD points."""
    _check_paired(truth, pred, "mean_l2")
    return sum(l2_distance(t, p) for t, p in zip(truth, pred)) / len(truth)


def pcc(truth: Sequence[float], pred: Sequence[float]) -> Optional[float]:
    """Pearson correlation; None when either sequence is constant."""
    _check_paired(truth, pred, "pcc")
    n = len(truth)
    if n < 2:
        raise TooFewSamples("pcc needs at least 2 samples")
    # exact constancy test; accumulated variance of a constant sequence
    # can round to a nonzero value
    if min(truth) == max(truth) or min(pred) == max(pred):
        return None
    mean_t = sum(truth) / n
    mean_p = sum(pred) / n
    cov = 0.0
    var_t = 0.0
    var_p = 0.0
    for t, p in zip(truth, pred):
        dt = t - mean_t
        dp = p - mean_p
        cov += dt * dp
        var_t += dt * dt
        var_p += dp * dp
    # sqrt of the product keeps pcc(x, x) exactly 1.0
    denominator = math.sqrt(var_t * var_p)
    if denominator == 0.0:
        return None
    return min(1.0, max(-1.0, cov / denominator))


def pcc_vad(
    truth: Sequence[VadPoint], pred: Sequence[VadPoint]
) -> tuple[tuple[Optional[float], Optional[float], Optional[float]], Optional[float]]:
    """Per-dimension Pearson correlations and their mean over defined axes."""
    _check_paired(truth, pred, "pcc_vad")
    per_dim = tuple(
        pcc([t[d] for t in truth], [p[d] for p in pred]) for d in range(3)
    )
    defined = [r for r in per_dim if r is not None]
    mean = sum(defined) / len(defined) if defined else None
    return per_dim, mean


def pcc_flat(
    truth: Sequence[VadPoint], pred: Sequence[VadPoint]
) -> Optional[float]:
    """Pearson correlation over all 3N scalars pooled into one sequence."""
    _check_paired(truth, pred, "pcc_flat")
    flat_t = [c for point in truth for c in point]
    flat_p = [c for point in pred for c in point]
    return pcc(flat_t, flat_p)


def continuous_eval(
    truth: Sequence[VadPoint], pred: Sequence[VadPoint]
) -> ContinuousEval:
    """The full continuous metric bundle for paired VAD labels."""
    per_dim, mean = pcc_vad(truth, pred)
    return ContinuousEval(
        mean_l2=mean_l2(truth, pred),
        mse=mse(truth, pred),
        mae=mae(truth, pred),
        pcc_per_dim=per_dim,
        pcc_mean=mean,
        pcc_flat=pcc_flat(truth, pred),
        n_samples=len(truth),
    )


def cross_entropy(
    truth_onehot: Sequence[Sequence[float]], pred_prob: Sequence[Sequence[float]]
) -> float:
    """Mean negative log probability assigned to the true class.

    Probabilities are floored at 1e-12 before the log so degenerate
    inputs stay finite.
    """
    _check_paired(truth_onehot, pred_prob, "cross_entropy")
    total = 0.0
    for i, (t_row, p_row) in enumerate(zip(truth_onehot, pred_prob)):
        if len(t_row) != 6 or len(p_row) != 6:
            raise LengthMismatch(f"cross_entropy: row {i} is not a 6-vector")
        hot = -1
        for j, t in enumerate(t_row):
            if abs(t - 1.0) <= _ONEHOT_TOLERANCE:
                if hot >= 0:
                    raise NotOneHot(f"truth row {i} has multiple ones")
                hot = j
            elif abs(t) > _ONEHOT_TOLERANCE:
                raise NotOneHot(f"truth row {i} has entry {t}, expected 0 or 1")
        if hot < 0:
            raise NotOneHot(f"truth row {i} has no one")
        if any(p < -_ONEHOT_TOLERANCE for p in p_row):
            raise NotAProbability(f"prediction row {i} has a negative entry")
        if abs(sum(p_row) - 1.0) > _PROB_SUM_TOLERANCE:
            raise NotAProbability(
                f"prediction row {i} sums to {sum(p_row)}, expected 1"
            )
        total += -math.log(max(p_row[hot], PROB_FLOOR))
    return total / len(truth_onehot)


def discrete_eval(
    truth: Sequence[BasicEmotion], pred: Sequence[BasicEmotion]
) -> DiscreteEval:
    """Confusion matrix and the derived classification metric bundle."""
    _check_paired(truth, pred, "discrete_eval")
    n = len(truth)
    counts = [[0] * 6 for _ in range(6)]
    for t, p in zip(truth, pred):
        counts[t.index][p.index] += 1

    per_class: dict[BasicEmotion, ClassMetrics] = {}
    for emotion in EMOTION_ORDER:
        i = emotion.index
        tp = counts[i][i]
        support = sum(counts[i])
        predicted = sum(row[i] for row in counts)
        precision = tp / predicted if predicted else 0.0
        recall = tp / support if support else 0.0
        f1 = (
            2 * precision * recall / (precision + recall)
            if precision + recall > 0
            else 0.0
        )
        per_class[emotion] = ClassMetrics(precision, recall, f1, support)

    values = [per_class[e] for e in EMOTION_ORDER]
    macro_precision = sum(v.precision for v in values) / 6
    macro_recall = sum(v.recall for v in values) / 6
    macro_f1 = sum(v.f1 for v in values) / 6
    weighted_f1 = sum(v.f1 * v.support for v in values) / n
    accuracy = sum(counts[i][i] for i in range(6)) / n

    return DiscreteEval(
        confusion=tuple(tuple(row) for row in counts),
        per_class=per_class,
        macro_precision=macro_precision,
        macro_recall=macro_recall,
        macro_f1=macro_f1,
        weighted_f1=weighted_f1,
        accuracy=accuracy,
    )
