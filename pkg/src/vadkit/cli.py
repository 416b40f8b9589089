"""Command-line surface.

Subcommands cover the whole pipeline: build-space, fit-clusters,
transcode, open-vocab, calibrate-radius, split, evaluate, summarize,
report.  Reports go to --out (or stdout); diagnostics go to stderr.
Exit codes: 0 success, 1 usage error, 2 data error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from ._version import __version__
from . import clustering, harness, lexicon, similarity, space, transcode
from .errors import VadkitError
from .space import BasicEmotion, VadPoint

USAGE_EXIT = 1
DATA_EXIT = 2


class CliUsageError(Exception):
    """Bad flag combination or value; exits with the usage code."""


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on usage errors; the contract says 1
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(USAGE_EXIT, f"{self.prog}: error: {message}\n")


def _write_output(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8")


def _load_config(args) -> lexicon.LexiconConfig:
    doc: dict = {}
    config_dir = None
    if getattr(args, "config", None):
        path = Path(args.config)
        config_dir = path.parent
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    if getattr(args, "scale", None):
        doc["native_scale"] = args.scale

    subset_path = getattr(args, "subset", None)
    if subset_path is None and "subset" in doc:
        subset_path = doc["subset"]
        if config_dir is not None and not Path(subset_path).is_absolute():
            subset_path = str(config_dir / subset_path)
    doc.pop("subset", None)

    subset_terms = None
    if subset_path:
        with open(subset_path, encoding="utf-8") as fh:
            subset_terms = lexicon.read_subset(fh)
    return lexicon.config_from_document(doc, subset_terms)


def _build_space_from_args(args) -> space.EmotionSpace:
    config = _load_config(args)
    with open(args.lexicon, encoding="utf-8") as fh:
        entries = lexicon.parse_lexicon(fh, config)
    return lexicon.build_space(entries, config)


def _space_from_args(args) -> space.EmotionSpace:
    if getattr(args, "space", None):
        return space.load_space(args.space)
    if getattr(args, "lexicon", None):
        return _build_space_from_args(args)
    raise CliUsageError("either --space or --lexicon is required")


def _parse_point(text: str) -> VadPoint:
    parts = text.split(",")
    if len(parts) != 3:
        raise CliUsageError(f"expected 'v,a,d', got {text!r}")
    try:
        return VadPoint(*(float(p) for p in parts))
    except ValueError:
        raise CliUsageError(f"unparseable point {text!r}") from None


# --- subcommand handlers -----------------------------------------------------

def _cmd_build_space(args) -> None:
    built = _build_space_from_args(args)
    text = harness.canonical_json(space.space_to_document(built))
    _write_output(text, args.out)
    print(f"space of {len(built)} terms written", file=sys.stderr)


def _cmd_fit_clusters(args) -> None:
    built = _space_from_args(args)
    params = clustering.KMeansParams(
        max_iterations=args.max_iterations,
        tolerance=args.tolerance,
        pin_neutral=args.pin_neutral,
    )
    model = clustering.kmeans_seeded(built, params)
    text = harness.canonical_json(clustering.model_to_document(model))
    _write_output(text, args.out)
    print(
        f"converged after {model.iterations_run} iterations, "
        f"wcss {model.final_wcss:.6f}",
        file=sys.stderr,
    )


def _cmd_transcode(args) -> None:
    built = _space_from_args(args)
    given = [x is not None for x in (args.label, args.point, args.predictions)]
    if sum(given) != 1:
        raise CliUsageError("exactly one of --label, --point, --predictions is required")

    if args.label is not None:
        try:
            emotion = BasicEmotion.from_name(args.label)
        except KeyError:
            raise CliUsageError(f"unknown emotion {args.label!r}") from None
        point = transcode.discrete_to_vad(built, emotion)
        _write_output(harness.canonical_json({"label": emotion.value,
                                              "vad": list(point)}), args.out)
        return

    if not args.model:
        raise CliUsageError("--model is required to transcode points to labels")
    model = clustering.load_model(args.model)

    if args.point is not None:
        point = _parse_point(args.point)
        label = transcode.vad_to_discrete(model, point)
        _write_output(harness.canonical_json({"vad": list(point),
                                              "label": label.value}), args.out)
        return

    with open(args.predictions, encoding="utf-8") as fh:
        predictions = harness.load_predictions(fh)
    labeled = [
        harness.PredictionRecord(
            p.sample_id, p.pred_vad, p.clamped,
            transcode.vad_to_discrete(model, p.pred_vad),
        )
        for p in predictions
    ]
    _write_output(harness.dump_predictions(labeled), args.out)


def _cmd_open_vocab(args) -> None:
    built = _space_from_args(args)
    with open(args.predictions, encoding="utf-8") as fh:
        predictions = harness.load_predictions(fh)
    if args.manifest:
        with open(args.manifest, encoding="utf-8") as fh:
            manifest = harness.load_manifest(fh)
    else:
        manifest = [harness.SampleRecord(p.sample_id) for p in predictions]
    embeddings = None
    if args.embeddings:
        with open(args.embeddings, encoding="utf-8") as fh:
            embeddings = similarity.load_embeddings(fh)
    if args.radius < 0:
        raise CliUsageError(f"radius must be non-negative, got {args.radius}")

    run = harness.run_open_vocab(
        manifest, predictions, built, args.radius, embeddings,
        exclude=args.exclude or (),
    )
    results = []
    for r in run.results:
        obj = {
            "sample_id": r.sample_id,
            "terms": [[t, d] for t, d in r.terms],
            "radius_used": r.radius_used,
            "fallback_applied": r.fallback_applied,
        }
        if r.sample_id in run.similarities:
            score, coverage = run.similarities[r.sample_id]
            obj["similarity"] = {"score": score, "coverage": coverage}
        results.append(obj)
    doc = {"version": harness.OPEN_VOCAB_DOC_VERSION, "radius": args.radius,
           "results": results}
    if run.mean_similarity is not None:
        score, coverage = run.mean_similarity
        doc["mean_similarity"] = {"score": score, "coverage": coverage}
    _write_output(harness.canonical_json(doc), args.out)


def _cmd_calibrate_radius(args) -> None:
    built = _space_from_args(args)
    if args.predictions:
        with open(args.predictions, encoding="utf-8") as fh:
            probes = [p.pred_vad for p in harness.load_predictions(fh)]
    else:
        probes = list(built.entries.values())
    radius = space.calibrate_radius(built, probes, args.target_mean)
    achieved = space.mean_neighbor_count(built, probes, radius)
    doc = {"radius": radius, "target_mean": args.target_mean,
           "achieved_mean": achieved, "probes": len(probes)}
    _write_output(harness.canonical_json(doc), args.out)


def _cmd_split(args) -> None:
    try:
        parts = tuple(float(r) for r in args.ratios.split(","))
    except ValueError:
        raise CliUsageError(f"unparseable ratios {args.ratios!r}") from None
    if len(parts) != 3:
        raise CliUsageError("ratios must be three comma-separated numbers")
    if any(r < 0 for r in parts) or abs(sum(parts) - 1.0) > 1e-9:
        raise CliUsageError(f"ratios must be non-negative and sum to 1, got {args.ratios}")
    with open(args.manifest, encoding="utf-8") as fh:
        records = harness.load_manifest(fh)
    try:
        updated = harness.split_manifest(records, parts, args.seed)
    except ValueError as exc:
        raise CliUsageError(str(exc)) from None
    _write_output(harness.dump_manifest(updated), args.out)


def _cmd_summarize(args) -> None:
    with open(args.manifest, encoding="utf-8") as fh:
        records = harness.load_manifest(fh)
    summary = harness.summarize_dataset(records)
    if args.format == "table":
        _write_output(harness.render_summary_table(summary), args.out)
    else:
        doc = {"version": harness.SUMMARY_DOC_VERSION,
               "dataset_summary": harness._summary_to_obj(summary)}
        _write_output(harness.canonical_json(doc), args.out)


def _cmd_evaluate(args) -> None:
    built = _space_from_args(args)
    model = clustering.load_model(args.model)
    with open(args.manifest, encoding="utf-8") as fh:
        manifest = harness.load_manifest(fh)
    with open(args.predictions, encoding="utf-8") as fh:
        predictions = harness.load_predictions(fh)
    embeddings = None
    if args.embeddings:
        with open(args.embeddings, encoding="utf-8") as fh:
            embeddings = similarity.load_embeddings(fh)
    if args.radius < 0:
        raise CliUsageError(f"radius must be non-negative, got {args.radius}")
    report = harness.build_report(
        manifest, predictions, built, model, args.radius, embeddings
    )
    _write_output(harness.emit_report(report, args.format), args.out)


def _cmd_report(args) -> None:
    with open(args.input, encoding="utf-8") as fh:
        report = harness.parse_report(fh.read())
    _write_output(harness.emit_report(report, args.format), args.out)


# --- parser wiring -------------------------------------------------------------

def _add_space_inputs(p: _Parser, require: bool = False) -> None:
    p.add_argument("--space", help="serialized space file (from build-space)")
    p.add_argument("--lexicon", help="lexicon TSV file")
    p.add_argument("--subset", help="subset file, one term per line")
    p.add_argument("--scale", choices=["unit", "polar"],
                   help="native score range of the lexicon file")
    p.add_argument("--config", help="JSON config file")


def build_parser() -> _Parser:
    parser = _Parser(prog="vadkit", description=__doc__)
    parser.add_argument("--version", action="version", version=f"vadkit {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("build-space", help="build the polar emotion space from a lexicon")
    p.add_argument("--lexicon", required=True)
    p.add_argument("--subset")
    p.add_argument("--scale", choices=["unit", "polar"])
    p.add_argument("--config")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_build_space)

    p = sub.add_parser("fit-clusters", help="fit the seeded 6-cluster model")
    _add_space_inputs(p)
    p.add_argument("--max-iterations", type=int, default=300)
    p.add_argument("--tolerance", type=float, default=1e-9)
    p.add_argument("--pin-neutral", action="store_true",
                   help="keep the neutral centroid fixed at its seed")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_fit_clusters)

    p = sub.add_parser("transcode", help="map labels to VAD points and back")
    _add_space_inputs(p)
    p.add_argument("--model", help="fitted cluster model file")
    p.add_argument("--label", help="basic emotion to map to a VAD point")
    p.add_argument("--point", help="'v,a,d' point to map to a basic emotion")
    p.add_argument("--predictions", help="prediction file to label in batch")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_transcode)

    p = sub.add_parser("open-vocab", help="retrieve emotion terms around predictions")
    _add_space_inputs(p)
    p.add_argument("--predictions", required=True)
    p.add_argument("--manifest", help="manifest with reference open labels")
    p.add_argument("--embeddings", help="word-vector file for set similarity")
    p.add_argument("--radius", type=float, default=transcode.DEFAULT_RADIUS)
    p.add_argument("--exclude", action="append",
                   help="term to exclude from retrieval (repeatable)")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_open_vocab)

    p = sub.add_parser("calibrate-radius",
                       help="smallest radius reaching a target mean neighbor count")
    _add_space_inputs(p)
    p.add_argument("--target-mean", type=float, default=5.0)
    p.add_argument("--predictions", help="probe points (default: the lexicon points)")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_calibrate_radius)

    p = sub.add_parser("split", help="assign stratified train/val/test splits")
    p.add_argument("--manifest", required=True)
    p.add_argument("--ratios", default="0.7,0.15,0.15")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_split)

    p = sub.add_parser("summarize", help="dataset distribution summary")
    p.add_argument("--manifest", required=True)
    p.add_argument("--format", choices=["structured", "table"], default="structured")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_summarize)

    p = sub.add_parser("evaluate", help="full metric report for a prediction file")
    _add_space_inputs(p)
    p.add_argument("--model", required=True)
    p.add_argument("--manifest", required=True)
    p.add_argument("--predictions", required=True)
    p.add_argument("--embeddings")
    p.add_argument("--radius", type=float, default=transcode.DEFAULT_RADIUS)
    p.add_argument("--format", choices=["structured", "table"], default="structured")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_evaluate)

    p = sub.add_parser("report", help="re-render a structured report")
    p.add_argument("--input", required=True, help="structured report file")
    p.add_argument("--format", choices=["structured", "table"], default="table")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_report)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.func(args)
    except CliUsageError as exc:
        print(f"vadkit: error: {exc}", file=sys.stderr)
        return USAGE_EXIT
    except VadkitError as exc:
        print(f"vadkit: error[{exc.code}]: {exc}", file=sys.stderr)
        return DATA_EXIT
    except OSError as exc:
        print(f"vadkit: error[io]: {exc}", file=sys.stderr)
        return DATA_EXIT
    except json.JSONDecodeError as exc:
        print(f"vadkit: error[invalid-document]: {exc}", file=sys.stderr)
        return DATA_EXIT
    return 0


if __name__ == "__main__":
    sys.exit(main())
