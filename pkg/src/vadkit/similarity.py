"""Embedding-based semantic similarity between emotion term sets.

Consumes any word-vector file of the form ``term v1 v2 ... vd`` (space
separated, constant dimension, optional ``count dimension`` header) and
scores two term sets by symmetric mean best-match cosine.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import IO, Sequence

from .errors import (
    DimensionMismatch,
    DuplicateTerm,
    EmptyInput,
    MalformedLine,
    NoOverlapWithVocabulary,
    ZeroVector,
)

Vector = tuple[float, ...]


@dataclass(frozen=True)
class EmbeddingTable:
    vectors: dict[str, Vector]
    dimension: int

    def __contains__(self, term: str) -> bool:
        return term.lower() in self.vectors

    def __getitem__(self, term: str) -> Vector:
        return self.vectors[term.lower()]

    def __len__(self) -> int:
        return len(self.vectors)


def load_embeddings(source: IO[str]) -> EmbeddingTable:
    """Parse a word-vector stream into a validated table.

    Terms are lowercased; the dimension is fixed by the first data line
    and every later line must match it.
    """
    vectors: dict[str, Vector] = {}
    dimension = 0
    first_data_line = True
    for lineno, raw in enumerate(source, start=1):
        line = raw.strip()
        if not line:
            continue
        fields = line.split()
        if first_data_line and len(fields) == 2 and _all_ints(fields):
            continue  # "count dimension" header
        first_data_line = False
        if len(fields) < 2:
            raise MalformedLine("expected a term and at least one value", line=lineno)
        term = fields[0].lower()
        try:
            values = tuple(float(f) for f in fields[1:])
        except ValueError:
            raise MalformedLine(
                f"unparseable vector component for {term!r}", line=lineno
            ) from None
        if dimension == 0:
            dimension = len(values)
        elif len(values) != dimension:
            raise DimensionMismatch(
                f"{term!r} has {len(values)} components, expected {dimension}",
                line=lineno,
            )
        if term in vectors:
            raise DuplicateTerm(f"duplicate term {term!r}", line=lineno)
        if all(v == 0.0 for v in values):
            raise ZeroVector(f"zero vector for {term!r}", line=lineno)
        vectors[term] = values
    return EmbeddingTable(vectors=vectors, dimension=dimension)


def _all_ints(fields: Sequence[str]) -> bool:
    try:
        return all(float(f) == int(float(f)) for f in fields)
    except ValueError:
        return False


def cosine(u: Sequence[float], v: Sequence[float]) -> float:
    """Cosine similarity of two equal-dimension, non-zero vectors."""
    if len(u) != len(v):
        raise DimensionMismatch(f"vectors of dimension {len(u)} and {len(v)}")
    dot = sum(a * b for a, b in zip(u, v))
    nu = math.sqrt(sum(a * a for a in u))
    nv = math.sqrt(sum(b * b for b in v))
    if nu == 0.0 or nv == 0.0:
        raise ZeroVector("cosine of a zero vector is undefined")
    return min(1.0, max(-1.0, dot / (nu * nv)))


def set_similarity(
    generated: Sequence[str], reference: Sequence[str], table: EmbeddingTable
) -> tuple[float, float]:
    """Symmetric mean best-match similarity between two term sets.

    Each in-vocabulary term on one side takes its best cosine against
    the in-vocabulary terms on the other; the score averages the two
    directional means.  Lists are deduplicated (set semantics), and
    out-of-vocabulary terms are excluded from the score, showing up
    only in coverage (the in-vocabulary fraction of both sets pooled).
    """
    if not generated or not reference:
        raise EmptyInput("set_similarity requires two non-empty term lists")
    gen = list(dict.fromkeys(t.lower() for t in generated))
    ref = list(dict.fromkeys(t.lower() for t in reference))
    gen_in = [t for t in gen if t in table.vectors]
    ref_in = [t for t in ref if t in table.vectors]
    coverage = (len(gen_in) + len(ref_in)) / (len(gen) + len(ref))
    if not gen_in or not ref_in:
        raise NoOverlapWithVocabulary(
            "every term on one side is out of the embedding vocabulary"
        )

    def directional(sources: list[str], targets: list[str]) -> float:
        best_sum = 0.0
        for s in sources:
            best_sum += max(cosine(table.vectors[s], table.vectors[t]) for t in targets)
        return best_sum / len(sources)

    score = (directional(gen_in, ref_in) + directional(ref_in, gen_in)) / 2
    return score, coverage
