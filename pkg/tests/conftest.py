import io
from pathlib import Path

import pytest

import vadkit
from vadkit import lexicon as lx

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


@pytest.fixture(scope="session")
def fixture_dir() -> Path:
    return FIXTURES


@pytest.fixture(scope="session")
def subset_terms():
    with open(FIXTURES / "subset.txt", encoding="utf-8") as fh:
        return lx.read_subset(fh)


@pytest.fixture(scope="session")
def config(subset_terms) -> lx.LexiconConfig:
    return lx.LexiconConfig(subset_terms=subset_terms)


@pytest.fixture(scope="session")
def entries(config):
    with open(FIXTURES / "lexicon.tsv", encoding="utf-8") as fh:
        return lx.parse_lexicon(fh, config)


@pytest.fixture(scope="session")
def space(entries, config) -> vadkit.EmotionSpace:
    return lx.build_space(entries, config)


@pytest.fixture(scope="session")
def model(space) -> vadkit.ClusterModel:
    return vadkit.kmeans_seeded(space)


@pytest.fixture(scope="session")
def manifest():
    with open(FIXTURES / "manifest.jsonl", encoding="utf-8") as fh:
        return vadkit.load_manifest(fh)


@pytest.fixture(scope="session")
def predictions():
    with open(FIXTURES / "predictions.jsonl", encoding="utf-8") as fh:
        return vadkit.load_predictions(fh)


@pytest.fixture(scope="session")
def embeddings():
    with open(FIXTURES / "embeddings.txt", encoding="utf-8") as fh:
        return vadkit.load_embeddings(fh)


def stream(text: str) -> io.StringIO:
    return io.StringIO(text)
