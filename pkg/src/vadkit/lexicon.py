"""VAD lexicon ingestion: parsing, polar rescaling, and space construction.

A lexicon file is UTF-8 tab-separated text, one ``term<TAB>valence<TAB>
arousal<TAB>dominance`` record per line, with an optional header line
that is auto-detected by its non-numeric score fields.  Scores arrive
either on the unit interval [0, 1] or already polar [-1, 1]; the built
space is always polar.
"""

from __future__ import annotations

import enum
import hashlib
import json
from dataclasses import dataclass, field
from typing import IO, Iterable, Optional, Union

from .errors import (
    BasicEmotionUnresolvable,
    DuplicateTerm,
    InvalidConfig,
    MalformedLine,
    ScoreOutOfRange,
    SubsetTermMissing,
)
from .space import EMOTION_ORDER, BasicEmotion, EmotionSpace, VadPoint, terms_hash

_SCALE_TOLERANCE = 1e-12


class NativeScale(enum.Enum):
    """Score range declared by the lexicon file."""

    UNIT_INTERVAL = "unit"
    POLAR = "polar"


@dataclass(frozen=True)
class RawLexiconEntry:
    """One lexicon record, still in the file's native score range."""

    term: str
    valence: float
    arousal: float
    dominance: float


#: A basic emotion resolves either to a lexicon term or to an explicit point.
SeedSpec = Union[str, VadPoint]

DEFAULT_BASIC_EMOTIONS: dict[BasicEmotion, SeedSpec] = {
    BasicEmotion.HAPPY: "happy",
    BasicEmotion.SAD: "sad",
    BasicEmotion.WORRIED: "worried",
    BasicEmotion.SURPRISED: "surprised",
    BasicEmotion.ANGRY: "angry",
    # Neutral carries no lexicon score; it is pinned to the origin.
    BasicEmotion.NEUTRAL: VadPoint(0.0, 0.0, 0.0),
}


@dataclass(frozen=True)
class LexiconConfig:
    """How to read a lexicon file and resolve the six basic emotions."""

    native_scale: NativeScale = NativeScale.UNIT_INTERVAL
    subset_terms: Optional[tuple[str, ...]] = None
    basic_emotions: dict[BasicEmotion, SeedSpec] = field(
        default_factory=lambda: dict(DEFAULT_BASIC_EMOTIONS)
    )

    def __post_init__(self):
        if set(self.basic_emotions) != set(EMOTION_ORDER):
            missing = {e.value for e in EMOTION_ORDER} - {
                e.value for e in self.basic_emotions
            }
            raise InvalidConfig(
                f"basic_emotions must name exactly the six emotions; missing {sorted(missing)}"
            )

    def canonical_hash(self) -> str:
        """Stable fingerprint of the scale and seed resolution choices."""
        seeds = {
            e.value: (spec if isinstance(spec, str) else list(spec))
            for e, spec in self.basic_emotions.items()
        }
        blob = json.dumps(
            {"native_scale": self.native_scale.value, "basic_emotions": seeds},
            sort_keys=True,
            separators=(",", ":"),
        )
        return hashlib.sha256(blob.encode("utf-8")).hexdigest()


def config_from_document(doc: dict, subset_terms: Optional[Iterable[str]] = None) -> LexiconConfig:
    """Build a LexiconConfig from the JSON config document schema.

    Recognized keys: ``native_scale`` ("unit" | "polar") and
    ``basic_emotions`` mapping emotion name to ``{"term": ...}`` or
    ``{"vad": [v, a, d]}``.  Omitted emotions keep their defaults.
    """
    if not isinstance(doc, dict):
        raise InvalidConfig("config document must be a JSON object")
    unknown = set(doc) - {"native_scale", "subset", "basic_emotions"}
    if unknown:
        raise InvalidConfig(f"unknown config keys: {sorted(unknown)}")

    try:
        scale = NativeScale(doc.get("native_scale", "unit"))
    except ValueError:
        raise InvalidConfig(
            f"native_scale must be 'unit' or 'polar', got {doc.get('native_scale')!r}"
        ) from None

    seeds = dict(DEFAULT_BASIC_EMOTIONS)
    for name, spec in doc.get("basic_emotions", {}).items():
        try:
            emotion = BasicEmotion.from_name(name)
        except KeyError:
            raise InvalidConfig(f"unknown basic emotion {name!r}") from None
        if not isinstance(spec, dict) or len(spec) != 1:
            raise InvalidConfig(
                f"basic emotion {name!r} needs exactly one of 'term' or 'vad'"
            )
        if "term" in spec:
            seeds[emotion] = str(spec["term"]).lower()
        elif "vad" in spec:
            vad = spec["vad"]
            if not (isinstance(vad, list) and len(vad) == 3):
                raise InvalidConfig(f"basic emotion {name!r}: 'vad' must be a 3-list")
            seeds[emotion] = VadPoint(*(float(c) for c in vad))
        else:
            raise InvalidConfig(
                f"basic emotion {name!r} needs exactly one of 'term' or 'vad'"
            )

    subset = tuple(subset_terms) if subset_terms is not None else None
    return LexiconConfig(native_scale=scale, subset_terms=subset, basic_emotions=seeds)


def read_subset(source: IO[str]) -> tuple[str, ...]:
    """Read a subset file: one term per line, blank lines ignored."""
    terms = []
    seen = set()
    for line in source:
        term = line.strip().lower()
        if term and term not in seen:
            seen.add(term)
            terms.append(term)
    return tuple(terms)


def _native_bounds(scale: NativeScale) -> tuple[float, float]:
    return (0.0, 1.0) if scale is NativeScale.UNIT_INTERVAL else (-1.0, 1.0)


def parse_lexicon(source: IO[str], config: LexiconConfig) -> list[RawLexiconEntry]:
    """Parse a tab-separated lexicon stream into validated raw entries.

    The first line is treated as a header when any of its score fields
    fails to parse as a number.  Terms are lowercased; duplicates (after
    lowercasing) are rejected.
    """
    lo, hi = _native_bounds(config.native_scale)
    entries: list[RawLexiconEntry] = []
    seen: set[str] = set()

    for lineno, raw in enumerate(source, start=1):
        line = raw.rstrip("\n").rstrip("\r")
        if not line:
            continue
        fields = line.split("\t")
        if len(fields) != 4:
            if lineno == 1:
                # a short first line is still a plausible header
                if _is_header(fields):
                    continue
            raise MalformedLine(
                f"expected 4 tab-separated fields, got {len(fields)}", line=lineno
            )
        term = fields[0].strip().lower()
        try:
            scores = [float(f) for f in fields[1:]]
        except ValueError:
            if lineno == 1:
                continue  # header line
            raise MalformedLine(
                f"unparseable score in {fields[1:]!r}", line=lineno
            ) from None
        if not term:
            raise MalformedLine("empty term", line=lineno)
        if term in seen:
            raise DuplicateTerm(f"duplicate term {term!r}", line=lineno)
        for score in scores:
            if not (lo - _SCALE_TOLERANCE <= score <= hi + _SCALE_TOLERANCE):
                raise ScoreOutOfRange(
                    f"score {score} for {term!r} outside "
                    f"{config.native_scale.value} range [{lo}, {hi}]",
                    line=lineno,
                )
        seen.add(term)
        entries.append(RawLexiconEntry(term, *scores))
    return entries


def _is_header(fields: list[str]) -> bool:
    # headers are recognized by non-numeric score fields, nothing else
    for f in fields[1:]:
        try:
            float(f)
        except ValueError:
            return True
    return False


def to_polar(score: float) -> float:
    """Rescale a unit-interval score to the polar range: 2*score - 1."""
    if not (-_SCALE_TOLERANCE <= score <= 1.0 + _SCALE_TOLERANCE):
        raise ScoreOutOfRange(f"score {score} outside [0, 1]")
    return min(1.0, max(-1.0, 2.0 * score - 1.0))


def _entry_point(entry: RawLexiconEntry, scale: NativeScale) -> VadPoint:
    if scale is NativeScale.UNIT_INTERVAL:
        return VadPoint(
            to_polar(entry.valence), to_polar(entry.arousal), to_polar(entry.dominance)
        )
    return VadPoint(entry.valence, entry.arousal, entry.dominance)


def build_space(entries: list[RawLexiconEntry], config: LexiconConfig) -> EmotionSpace:
    """Select the working vocabulary, rescale to polar, resolve the seeds.

    Seed terms are looked up against the full entry list, so a subset
    may narrow the vocabulary without breaking seed resolution.
    """
    by_term = {e.term: _entry_point(e, config.native_scale) for e in entries}

    if config.subset_terms is not None:
        kept: dict[str, VadPoint] = {}
        for term in config.subset_terms:
            key = term.lower()
            if key not in by_term:
                raise SubsetTermMissing(f"subset term {term!r} not in lexicon")
            if key not in kept:
                kept[key] = by_term[key]
    else:
        kept = dict(by_term)

    seeds: dict[BasicEmotion, VadPoint] = {}
    for emotion in EMOTION_ORDER:
        spec = config.basic_emotions[emotion]
        if isinstance(spec, str):
            key = spec.lower()
            if key not in by_term:
                raise BasicEmotionUnresolvable(
                    f"{emotion.value!r} resolves to term {spec!r}, "
                    "which is not in the lexicon"
                )
            seeds[emotion] = by_term[key]
        else:
            seeds[emotion] = VadPoint(*spec)

    return EmotionSpace(
        entries=kept,
        seeds=seeds,
        config_hash=config.canonical_hash(),
        subset_hash=terms_hash(kept),
    )


def basic_emotion_seed(space: EmotionSpace, emotion: BasicEmotion) -> VadPoint:
    """The resolved polar VAD point for a basic emotion."""
    return space.seeds[emotion]


def format_lexicon(space: EmotionSpace) -> str:
    """Serialize a space back to polar-scale lexicon file form."""
    lines = ["term\tvalence\tarousal\tdominance"]
    for term, p in space.entries.items():
        lines.append(f"{term}\t{p.valence!r}\t{p.arousal!r}\t{p.dominance!r}")
    return "\n".join(lines) + "\n"
