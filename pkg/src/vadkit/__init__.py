"""vadkit: a toolkit bridging discrete emotion labels and the continuous
3D valence-arousal-dominance space.

A lexicon of emotion words is embedded at polar VAD points, a seeded
6-cluster k-means model turns any VAD point back into a basic emotion,
radius search around a point yields open-vocabulary emotion sets, and an
evaluation harness scores prediction files with regression and
classification metrics.
"""

from ._version import __version__
from .errors import VadkitError
from .space import (
    EMOTION_ORDER,
    BasicEmotion,
    EmotionSpace,
    VadPoint,
    calibrate_radius,
    l2_distance,
    load_space,
    mean_neighbor_count,
    nearest,
    neighbors_within,
    save_space,
)
from .lexicon import (
    LexiconConfig,
    NativeScale,
    RawLexiconEntry,
    basic_emotion_seed,
    build_space,
    config_from_document,
    format_lexicon,
    parse_lexicon,
    read_subset,
    to_polar,
)
from .clustering import (
    ClusterModel,
    KMeansParams,
    assign,
    kmeans_seeded,
    load_model,
    save_model,
    wcss,
)
from .transcode import (
    DEFAULT_RADIUS,
    OpenVocabResult,
    discrete_to_vad,
    open_vocab,
    vad_to_discrete,
)
from .metrics import (
    ContinuousEval,
    DiscreteEval,
    continuous_eval,
    cross_entropy,
    discrete_eval,
    mae,
    mean_l2,
    mse,
    pcc,
    pcc_flat,
    pcc_vad,
)
from .similarity import EmbeddingTable, cosine, load_embeddings, set_similarity
from .harness import (
    EvaluationReport,
    OpenVocabRun,
    PredictionRecord,
    SampleRecord,
    Split,
    build_report,
    dump_manifest,
    dump_predictions,
    emit_report,
    evaluate_continuous,
    evaluate_discrete,
    load_manifest,
    load_predictions,
    parse_report,
    run_open_vocab,
    split_manifest,
    summarize_dataset,
)

__all__ = [
    "__version__",
    "VadkitError",
    "BasicEmotion",
    "EmotionSpace",
    "VadPoint",
    "EMOTION_ORDER",
    "l2_distance",
    "neighbors_within",
    "nearest",
    "mean_neighbor_count",
    "calibrate_radius",
    "save_space",
    "load_space",
    "RawLexiconEntry",
    "LexiconConfig",
    "NativeScale",
    "parse_lexicon",
    "to_polar",
    "build_space",
    "basic_emotion_seed",
    "read_subset",
    "config_from_document",
    "format_lexicon",
    "ClusterModel",
    "KMeansParams",
    "kmeans_seeded",
    "assign",
    "wcss",
    "save_model",
    "load_model",
    "DEFAULT_RADIUS",
    "OpenVocabResult",
    "discrete_to_vad",
    "vad_to_discrete",
    "open_vocab",
    "ContinuousEval",
    "DiscreteEval",
    "continuous_eval",
    "cross_entropy",
    "discrete_eval",
    "mse",
    "mae",
    "mean_l2",
    "pcc",
    "pcc_vad",
    "pcc_flat",
    "EmbeddingTable",
    "load_embeddings",
    "cosine",
    "set_similarity",
    "SampleRecord",
    "PredictionRecord",
    "EvaluationReport",
    "OpenVocabRun",
    "Split",
    "load_manifest",
    "load_predictions",
    "dump_manifest",
    "dump_predictions",
    "split_manifest",
    "summarize_dataset",
    "evaluate_continuous",
    "evaluate_discrete",
    "run_open_vocab",
    "build_report",
    "emit_report",
    "parse_report",
]
