"""Dataset manifests, predictions, splits, evaluation pipelines, and
report emission.

Manifests and prediction files are JSON Lines: one object per line,
documented field names, optional fields omitted rather than nulled.
Structured reports are canonical JSON (sorted keys, two-space indent)
so identical inputs always produce byte-identical output.
"""

from __future__ import annotations

import enum
import json
import math
import random
from dataclasses import dataclass, field
from typing import IO, Optional, Sequence

from ._version import __version__
from .clustering import ClusterModel, KMeansParams
from .errors import (
    DuplicateSampleId,
    InvalidDocument,
    MalformedRecord,
    MissingLabels,
    NoJoinedRecords,
    UnknownLabel,
    UnmatchedSampleId,
)
from .metrics import (
    ClassMetrics,
    ContinuousEval,
    DiscreteEval,
    continuous_eval,
    discrete_eval,
)
from .similarity import EmbeddingTable, set_similarity
from .space import EMOTION_ORDER, BasicEmotion, EmotionSpace, VadPoint
from .transcode import OpenVocabResult, discrete_to_vad, open_vocab, vad_to_discrete

REPORT_DOC_VERSION = "vadkit-report/1"
SUMMARY_DOC_VERSION = "vadkit-summary/1"
OPEN_VOCAB_DOC_VERSION = "vadkit-open-vocab/1"


class Split(enum.Enum):
    TRAIN = "train"
    VAL = "val"
    TEST = "test"


@dataclass(frozen=True)
class SampleRecord:
    """One dataset sample: identity, labels, and clip metadata."""

    sample_id: str
    discrete_label: Optional[BasicEmotion] = None
    open_labels: Optional[tuple[str, ...]] = None
    clip_seconds: Optional[float] = None
    word_count: Optional[int] = None
    split: Optional[Split] = None


@dataclass(frozen=True)
class PredictionRecord:
    """One model prediction; out-of-range VAD is clamped, never silently."""

    sample_id: str
    pred_vad: VadPoint
    clamped: bool = False
    pred_discrete: Optional[BasicEmotion] = None


@dataclass(frozen=True)
class EmotionSummary:
    total: int
    train: int
    val: int
    test: int
    clip_seconds_avg: Optional[float]
    word_count_avg: Optional[float]


@dataclass(frozen=True)
class DatasetSummary:
    per_emotion: dict[BasicEmotion, EmotionSummary]
    unlabeled: Optional[EmotionSummary]
    total: int


@dataclass(frozen=True)
class Provenance:
    config_hash: str
    subset_hash: str
    model_params: KMeansParams
    tool_version: str


@dataclass(frozen=True)
class EvaluationReport:
    continuous: ContinuousEval
    discrete: DiscreteEval
    open_vocab_similarity: Optional[tuple[float, float]]
    dataset_summary: DatasetSummary
    provenance: Provenance


@dataclass(frozen=True)
class OpenVocabRun:
    """Per-sample open-vocabulary results plus optional set similarity."""

    results: list[OpenVocabResult]
    similarities: dict[str, tuple[float, float]]
    mean_similarity: Optional[tuple[float, float]]


# --- manifest / prediction ingestion ----------------------------------------

_MANIFEST_KEYS = {"sample_id", "discrete", "open_labels", "clip_seconds",
                  "word_count", "split"}
_PREDICTION_KEYS = {"sample_id", "vad", "discrete"}


def _parse_json_line(line: str, lineno: int) -> dict:
    try:
        obj = json.loads(line)
    except json.JSONDecodeError as exc:
        raise MalformedRecord(f"invalid JSON: {exc.msg}", line=lineno) from None
    if not isinstance(obj, dict):
        raise MalformedRecord("record must be a JSON object", line=lineno)
    return obj


def _parse_emotion(name, lineno: int, field_name: str) -> BasicEmotion:
    if not isinstance(name, str):
        raise MalformedRecord(f"{field_name} must be a string", line=lineno)
    try:
        return BasicEmotion.from_name(name)
    except KeyError:
        raise UnknownLabel(
            f"unknown {field_name} {name!r}; expected one of "
            f"{[e.value for e in EMOTION_ORDER]}",
            line=lineno,
        ) from None


def load_manifest(source: IO[str]) -> list[SampleRecord]:
    """Read and validate a JSON Lines manifest."""
    records: list[SampleRecord] = []
    seen: set[str] = set()
    for lineno, raw in enumerate(source, start=1):
        line = raw.strip()
        if not line:
            continue
        obj = _parse_json_line(line, lineno)
        unknown = set(obj) - _MANIFEST_KEYS
        if unknown:
            raise MalformedRecord(f"unknown fields {sorted(unknown)}", line=lineno)
        sample_id = obj.get("sample_id")
        if not isinstance(sample_id, str) or not sample_id:
            raise MalformedRecord("sample_id must be a non-empty string", line=lineno)
        if sample_id in seen:
            raise DuplicateSampleId(f"duplicate sample_id {sample_id!r}", line=lineno)
        seen.add(sample_id)

        discrete = None
        if "discrete" in obj:
            discrete = _parse_emotion(obj["discrete"], lineno, "discrete label")

        open_labels = None
        if "open_labels" in obj:
            labels = obj["open_labels"]
            if not (isinstance(labels, list) and labels
                    and all(isinstance(t, str) and t for t in labels)):
                raise MalformedRecord(
                    "open_labels must be a non-empty list of strings", line=lineno
                )
            open_labels = tuple(t.lower() for t in labels)

        clip_seconds = None
        if "clip_seconds" in obj:
            clip_seconds = obj["clip_seconds"]
            if not isinstance(clip_seconds, (int, float)) or isinstance(clip_seconds, bool) \
                    or not math.isfinite(clip_seconds) or clip_seconds <= 0:
                raise MalformedRecord("clip_seconds must be a positive number", line=lineno)
            clip_seconds = float(clip_seconds)

        word_count = None
        if "word_count" in obj:
            word_count = obj["word_count"]
            if not isinstance(word_count, int) or isinstance(word_count, bool) \
                    or word_count < 0:
                raise MalformedRecord("word_count must be a non-negative integer", line=lineno)

        split = None
        if "split" in obj:
            try:
                split = Split(obj["split"])
            except ValueError:
                raise UnknownLabel(
                    f"unknown split {obj['split']!r}; expected train, val, or test",
                    line=lineno,
                ) from None

        records.append(SampleRecord(sample_id, discrete, open_labels,
                                    clip_seconds, word_count, split))
    return records


def load_predictions(source: IO[str]) -> list[PredictionRecord]:
    """Read a JSON Lines prediction file, clamping VAD into [-1, 1]."""
    records: list[PredictionRecord] = []
    seen: set[str] = set()
    for lineno, raw in enumerate(source, start=1):
        line = raw.strip()
        if not line:
            continue
        obj = _parse_json_line(line, lineno)
        unknown = set(obj) - _PREDICTION_KEYS
        if unknown:
            raise MalformedRecord(f"unknown fields {sorted(unknown)}", line=lineno)
        sample_id = obj.get("sample_id")
        if not isinstance(sample_id, str) or not sample_id:
            raise MalformedRecord("sample_id must be a non-empty string", line=lineno)
        if sample_id in seen:
            raise DuplicateSampleId(f"duplicate sample_id {sample_id!r}", line=lineno)
        seen.add(sample_id)

        vad = obj.get("vad")
        if not (isinstance(vad, list) and len(vad) == 3
                and all(isinstance(c, (int, float)) and not isinstance(c, bool)
                        for c in vad)):
            raise MalformedRecord("vad must be a list of 3 numbers", line=lineno)
        components = [float(c) for c in vad]
        if not all(math.isfinite(c) for c in components):
            raise MalformedRecord("vad components must be finite", line=lineno)
        clamped = any(c < -1.0 or c > 1.0 for c in components)
        point = VadPoint(*(min(1.0, max(-1.0, c)) for c in components))

        pred_discrete = None
        if "discrete" in obj:
            pred_discrete = _parse_emotion(obj["discrete"], lineno, "discrete label")

        records.append(PredictionRecord(sample_id, point, clamped, pred_discrete))
    return records


def manifest_record_to_obj(record: SampleRecord) -> dict:
    """JSON object form of a manifest record, optional fields omitted."""
    obj: dict = {"sample_id": record.sample_id}
    if record.discrete_label is not None:
        obj["discrete"] = record.discrete_label.value
    if record.open_labels is not None:
        obj["open_labels"] = list(record.open_labels)
    if record.clip_seconds is not None:
        obj["clip_seconds"] = record.clip_seconds
    if record.word_count is not None:
        obj["word_count"] = record.word_count
    if record.split is not None:
        obj["split"] = record.split.value
    return obj


def dump_manifest(records: Sequence[SampleRecord]) -> str:
    return "".join(
        json.dumps(manifest_record_to_obj(r), allow_nan=False) + "\n" for r in records
    )


def prediction_record_to_obj(record: PredictionRecord) -> dict:
    obj: dict = {"sample_id": record.sample_id, "vad": list(record.pred_vad)}
    if record.pred_discrete is not None:
        obj["discrete"] = record.pred_discrete.value
    return obj


def dump_predictions(records: Sequence[PredictionRecord]) -> str:
    return "".join(
        json.dumps(prediction_record_to_obj(r), allow_nan=False) + "\n"
        for r in records
    )


# --- splitting ----------------------------------------------------------------

def split_manifest(
    records: Sequence[SampleRecord],
    ratios: tuple[float, float, float],
    seed: int,
) -> list[SampleRecord]:
    """Assign train/val/test splits, stratified by discrete label.

    Within each label the records are shuffled by a seeded permutation
    and cut at the ratio boundaries with largest-remainder rounding, so
    per-label split sizes are within one record of the exact products
    and the same seed always reproduces the same assignment.
    """
    if any(r < 0 for r in ratios):
        raise ValueError(f"ratios must be non-negative, got {ratios}")
    if abs(sum(ratios) - 1.0) > 1e-9:
        raise ValueError(f"ratios must sum to 1, got {sum(ratios)}")

    by_label: dict[BasicEmotion, list[str]] = {}
    for record in records:
        if record.discrete_label is None:
            raise MissingLabels(
                f"sample {record.sample_id!r} has no discrete label; "
                "stratified splitting requires labels"
            )
        by_label.setdefault(record.discrete_label, []).append(record.sample_id)

    assignment: dict[str, Split] = {}
    for label, ids in by_label.items():
        rng = random.Random(f"{seed}:{label.value}")
        shuffled = list(ids)
        rng.shuffle(shuffled)
        counts = _largest_remainder(len(shuffled), ratios)
        start = 0
        for split, count in zip((Split.TRAIN, Split.VAL, Split.TEST), counts):
            for sid in shuffled[start:start + count]:
                assignment[sid] = split
            start += count

    return [
        SampleRecord(
            r.sample_id, r.discrete_label, r.open_labels,
            r.clip_seconds, r.word_count, assignment[r.sample_id],
        )
        for r in records
    ]


def _largest_remainder(n: int, ratios: tuple[float, float, float]) -> tuple[int, ...]:
    exact = [n * r for r in ratios]
    floors = [int(math.floor(x)) for x in exact]
    leftover = n - sum(floors)
    # hand out remaining units by descending fractional part, ties by index
    order = sorted(range(3), key=lambda i: (-(exact[i] - floors[i]), i))
    for i in order[:leftover]:
        floors[i] += 1
    return tuple(floors)


# --- summarization -------------------------------------------------------------

def _mean_or_none(values: list[float]) -> Optional[float]:
    return sum(values) / len(values) if values else None


def _summarize_group(group: list[SampleRecord]) -> EmotionSummary:
    return EmotionSummary(
        total=len(group),
        train=sum(1 for r in group if r.split is Split.TRAIN),
        val=sum(1 for r in group if r.split is Split.VAL),
        test=sum(1 for r in group if r.split is Split.TEST),
        clip_seconds_avg=_mean_or_none(
            [r.clip_seconds for r in group if r.clip_seconds is not None]
        ),
        word_count_avg=_mean_or_none(
            [float(r.word_count) for r in group if r.word_count is not None]
        ),
    )


def summarize_dataset(records: Sequence[SampleRecord]) -> DatasetSummary:
    """Per-emotion totals, split counts, and clip/word averages."""
    per_emotion: dict[BasicEmotion, EmotionSummary] = {}
    for emotion in EMOTION_ORDER:
        group = [r for r in records if r.discrete_label is emotion]
        per_emotion[emotion] = _summarize_group(group)
    unlabeled_group = [r for r in records if r.discrete_label is None]
    unlabeled = _summarize_group(unlabeled_group) if unlabeled_group else None
    return DatasetSummary(per_emotion=per_emotion, unlabeled=unlabeled,
                          total=len(records))


# --- evaluation ----------------------------------------------------------------

def _join(
    manifest: Sequence[SampleRecord],
    predictions: Sequence[PredictionRecord],
    require_label: bool,
) -> list[tuple[SampleRecord, PredictionRecord]]:
    if not predictions:
        raise NoJoinedRecords("no predictions to evaluate")
    index = {r.sample_id: r for r in manifest}
    joined = []
    # sample_id sort fixes the reduction order for bit-reproducible sums
    for pred in sorted(predictions, key=lambda p: p.sample_id):
        record = index.get(pred.sample_id)
        if record is None:
            raise UnmatchedSampleId(
                f"prediction {pred.sample_id!r} has no manifest record"
            )
        if require_label and record.discrete_label is None:
            raise MissingLabels(
                f"sample {record.sample_id!r} has no discrete label to evaluate against"
            )
        joined.append((record, pred))
    return joined


def evaluate_continuous(
    manifest: Sequence[SampleRecord],
    predictions: Sequence[PredictionRecord],
    space: EmotionSpace,
) -> ContinuousEval:
    """Continuous metrics with truth VAD derived from the discrete labels."""
    joined = _join(manifest, predictions, require_label=True)
    truth = [discrete_to_vad(space, r.discrete_label) for r, _ in joined]
    pred = [p.pred_vad for _, p in joined]
    return continuous_eval(truth, pred)


def evaluate_discrete(
    manifest: Sequence[SampleRecord],
    predictions: Sequence[PredictionRecord],
    model: ClusterModel,
) -> DiscreteEval:
    """Discrete metrics; predicted labels fall back to nearest-centroid."""
    joined = _join(manifest, predictions, require_label=True)
    truth = [r.discrete_label for r, _ in joined]
    pred = [
        p.pred_discrete if p.pred_discrete is not None
        else vad_to_discrete(model, p.pred_vad)
        for _, p in joined
    ]
    return discrete_eval(truth, pred)


def run_open_vocab(
    manifest: Sequence[SampleRecord],
    predictions: Sequence[PredictionRecord],
    space: EmotionSpace,
    radius: float,
    embeddings: Optional[EmbeddingTable] = None,
    exclude: Sequence[str] = (),
) -> OpenVocabRun:
    """Open-vocabulary retrieval per prediction, scored against any
    reference open labels when an embedding table is supplied."""
    joined = _join(manifest, predictions, require_label=False)
    results: list[OpenVocabResult] = []
    similarities: dict[str, tuple[float, float]] = {}
    for record, pred in joined:
        result = open_vocab(space, pred.pred_vad, radius, pred.sample_id, exclude)
        results.append(result)
        if embeddings is not None and record.open_labels:
            generated = [t for t, _ in result.terms]
            similarities[pred.sample_id] = set_similarity(
                generated, list(record.open_labels), embeddings
            )
    mean_similarity = None
    if similarities:
        scores = [s for s, _ in similarities.values()]
        coverages = [c for _, c in similarities.values()]
        mean_similarity = (sum(scores) / len(scores), sum(coverages) / len(coverages))
    return OpenVocabRun(results, similarities, mean_similarity)


# --- report emission -----------------------------------------------------------

def build_report(
    manifest: Sequence[SampleRecord],
    predictions: Sequence[PredictionRecord],
    space: EmotionSpace,
    model: ClusterModel,
    radius: float,
    embeddings: Optional[EmbeddingTable] = None,
) -> EvaluationReport:
    """Run the full metric suite and assemble the evaluation report."""
    open_vocab_similarity = None
    if embeddings is not None:
        run = run_open_vocab(manifest, predictions, space, radius, embeddings)
        open_vocab_similarity = run.mean_similarity
    return EvaluationReport(
        continuous=evaluate_continuous(manifest, predictions, space),
        discrete=evaluate_discrete(manifest, predictions, model),
        open_vocab_similarity=open_vocab_similarity,
        dataset_summary=summarize_dataset(manifest),
        provenance=Provenance(
            config_hash=space.config_hash,
            subset_hash=space.subset_hash,
            model_params=model.params,
            tool_version=__version__,
        ),
    )


def _summary_to_obj(summary: DatasetSummary) -> dict:
    def row(s: EmotionSummary) -> dict:
        return {
            "total": s.total, "train": s.train, "val": s.val, "test": s.test,
            "clip_seconds_avg": s.clip_seconds_avg,
            "word_count_avg": s.word_count_avg,
        }

    obj = {
        "per_emotion": {e.value: row(s) for e, s in summary.per_emotion.items()},
        "total": summary.total,
    }
    if summary.unlabeled is not None:
        obj["unlabeled"] = row(summary.unlabeled)
    return obj


def _summary_from_obj(obj: dict) -> DatasetSummary:
    def row(o: dict) -> EmotionSummary:
        return EmotionSummary(
            total=o["total"], train=o["train"], val=o["val"], test=o["test"],
            clip_seconds_avg=o["clip_seconds_avg"],
            word_count_avg=o["word_count_avg"],
        )

    return DatasetSummary(
        per_emotion={
            BasicEmotion.from_name(name): row(o)
            for name, o in obj["per_emotion"].items()
        },
        unlabeled=row(obj["unlabeled"]) if "unlabeled" in obj else None,
        total=obj["total"],
    )


def report_to_document(report: EvaluationReport) -> dict:
    c = report.continuous
    d = report.discrete
    doc = {
        "version": REPORT_DOC_VERSION,
        "continuous": {
            "mean_l2": c.mean_l2,
            "mse": c.mse,
            "mae": c.mae,
            "pcc_per_dim": list(c.pcc_per_dim),
            "pcc_mean": c.pcc_mean,
            "pcc_flat": c.pcc_flat,
            "n_samples": c.n_samples,
        },
        "discrete": {
            "confusion": [list(row) for row in d.confusion],
            "per_class": {
                e.value: {
                    "precision": m.precision, "recall": m.recall,
                    "f1": m.f1, "support": m.support,
                }
                for e, m in d.per_class.items()
            },
            "macro_precision": d.macro_precision,
            "macro_recall": d.macro_recall,
            "macro_f1": d.macro_f1,
            "weighted_f1": d.weighted_f1,
            "accuracy": d.accuracy,
        },
        "dataset_summary": _summary_to_obj(report.dataset_summary),
        "provenance": {
            "config_hash": report.provenance.config_hash,
            "subset_hash": report.provenance.subset_hash,
            "model_params": {
                "max_iterations": report.provenance.model_params.max_iterations,
                "tolerance": report.provenance.model_params.tolerance,
                "pin_neutral": report.provenance.model_params.pin_neutral,
            },
            "tool_version": report.provenance.tool_version,
        },
    }
    if report.open_vocab_similarity is not None:
        score, coverage = report.open_vocab_similarity
        doc["open_vocab_similarity"] = {"score": score, "coverage": coverage}
    return doc


def report_from_document(doc: dict) -> EvaluationReport:
    if not isinstance(doc, dict) or doc.get("version") != REPORT_DOC_VERSION:
        raise InvalidDocument(
            f"expected a {REPORT_DOC_VERSION} document"
        )
    try:
        c = doc["continuous"]
        continuous = ContinuousEval(
            mean_l2=c["mean_l2"], mse=c["mse"], mae=c["mae"],
            pcc_per_dim=tuple(c["pcc_per_dim"]),
            pcc_mean=c["pcc_mean"], pcc_flat=c["pcc_flat"],
            n_samples=c["n_samples"],
        )
        d = doc["discrete"]
        discrete = DiscreteEval(
            confusion=tuple(tuple(row) for row in d["confusion"]),
            per_class={
                BasicEmotion.from_name(name): ClassMetrics(
                    precision=m["precision"], recall=m["recall"],
                    f1=m["f1"], support=m["support"],
                )
                for name, m in d["per_class"].items()
            },
            macro_precision=d["macro_precision"],
            macro_recall=d["macro_recall"],
            macro_f1=d["macro_f1"],
            weighted_f1=d["weighted_f1"],
            accuracy=d["accuracy"],
        )
        similarity = None
        if "open_vocab_similarity" in doc:
            s = doc["open_vocab_similarity"]
            similarity = (s["score"], s["coverage"])
        p = doc["provenance"]
        provenance = Provenance(
            config_hash=p["config_hash"],
            subset_hash=p["subset_hash"],
            model_params=KMeansParams(
                max_iterations=p["model_params"]["max_iterations"],
                tolerance=p["model_params"]["tolerance"],
                pin_neutral=p["model_params"]["pin_neutral"],
            ),
            tool_version=p["tool_version"],
        )
        summary = _summary_from_obj(doc["dataset_summary"])
    except (KeyError, TypeError) as exc:
        raise InvalidDocument(f"malformed report document: {exc}") from exc
    if not provenance.config_hash or not provenance.subset_hash \
            or not provenance.tool_version:
        raise InvalidDocument("provenance fields must be non-empty")
    return EvaluationReport(
        continuous=continuous, discrete=discrete,
        open_vocab_similarity=similarity,
        dataset_summary=summary, provenance=provenance,
    )


def canonical_json(doc: dict) -> str:
    """The one JSON serialization used everywhere byte-stability matters."""
    return json.dumps(doc, indent=2, sort_keys=True, allow_nan=False) + "\n"


def emit_report(report: EvaluationReport, format: str = "structured") -> str:
    """Render a report as canonical JSON or as human-readable tables."""
    if format == "structured":
        return canonical_json(report_to_document(report))
    if format == "table":
        return render_report_tables(report)
    raise ValueError(f"unknown report format {format!r}")


def parse_report(text: str) -> EvaluationReport:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidDocument(f"report is not valid JSON: {exc}") from exc
    return report_from_document(doc)


# --- table rendering -----------------------------------------------------------

def _fmt(value: Optional[float], digits: int = 4) -> str:
    if value is None:
        return "undefined"
    return f"{value:.{digits}f}"


def render_summary_table(summary: DatasetSummary) -> str:
    lines = ["Dataset Distribution",
             f"{'Emotion':<12}{'Total':>7}{'Train':>7}{'Val':>6}{'Test':>6}"
             f"{'C-Avg':>9}{'W-Avg':>9}"]
    rows = [(e.value, summary.per_emotion[e]) for e in EMOTION_ORDER]
    if summary.unlabeled is not None:
        rows.append(("unlabeled", summary.unlabeled))
    for name, s in rows:
        c_avg = f"{s.clip_seconds_avg:.2f}s" if s.clip_seconds_avg is not None else "-"
        w_avg = f"{s.word_count_avg:.2f}" if s.word_count_avg is not None else "-"
        lines.append(
            f"{name:<12}{s.total:>7}{s.train:>7}{s.val:>6}{s.test:>6}"
            f"{c_avg:>9}{w_avg:>9}"
        )
    lines.append(f"{'total':<12}{summary.total:>7}")
    return "\n".join(lines) + "\n"


def render_continuous_table(c: ContinuousEval) -> str:
    lines = [
        f"Continuous Emotion Detection (n={c.n_samples})",
        f"{'L2 distance':<14}{'MSE':<10}{'MAE':<10}{'PCC':<10}{'PCC(flat)':<10}",
        f"{_fmt(c.mean_l2):<14}{_fmt(c.mse):<10}{_fmt(c.mae):<10}"
        f"{_fmt(c.pcc_mean):<10}{_fmt(c.pcc_flat):<10}",
        "per-dimension PCC: "
        f"valence {_fmt(c.pcc_per_dim[0])}, "
        f"arousal {_fmt(c.pcc_per_dim[1])}, "
        f"dominance {_fmt(c.pcc_per_dim[2])}",
    ]
    return "\n".join(lines) + "\n"


def render_discrete_table(d: DiscreteEval) -> str:
    lines = ["Discrete Emotion Detection",
             f"{'Class':<12}{'Precision':>10}{'Recall':>10}{'F1':>10}{'Support':>10}"]
    for e in EMOTION_ORDER:
        m = d.per_class[e]
        lines.append(
            f"{e.value:<12}{m.precision:>10.4f}{m.recall:>10.4f}"
            f"{m.f1:>10.4f}{m.support:>10}"
        )
    lines.append(
        f"{'macro':<12}{d.macro_precision:>10.4f}{d.macro_recall:>10.4f}"
        f"{d.macro_f1:>10.4f}"
    )
    lines.append(f"weighted F1 {d.weighted_f1:.4f}")
    lines.append(f"accuracy    {d.accuracy:.4f}")
    lines.append("")
    lines.append("Confusion matrix (rows = truth, columns = prediction)")
    header = f"{'':<12}" + "".join(f"{e.value:>11}" for e in EMOTION_ORDER)
    lines.append(header)
    for e in EMOTION_ORDER:
        row = d.confusion[e.index]
        lines.append(f"{e.value:<12}" + "".join(f"{n:>11}" for n in row))
    return "\n".join(lines) + "\n"


def render_report_tables(report: EvaluationReport) -> str:
    parts = [
        render_summary_table(report.dataset_summary),
        render_continuous_table(report.continuous),
        render_discrete_table(report.discrete),
    ]
    if report.open_vocab_similarity is not None:
        score, coverage = report.open_vocab_similarity
        parts.append(
            "Open-Vocabulary Similarity\n"
            f"score {score:.4f}  coverage {coverage:.4f}\n"
        )
    p = report.provenance
    parts.append(
        "Provenance\n"
        f"config hash   {p.config_hash}\n"
        f"subset hash   {p.subset_hash}\n"
        f"model params  max_iterations={p.model_params.max_iterations} "
        f"tolerance={p.model_params.tolerance!r} "
        f"pin_neutral={p.model_params.pin_neutral}\n"
        f"tool version  {p.tool_version}\n"
    )
    return "\n".join(parts)
