import pytest

from walkratio.randgraph import corpus

CORPUS_SEED = 31415


@pytest.fixture(scope="session")
def random_corpus():
    """1000 seeded random strongly connected graphs on 3..10 vertices."""
    return corpus(CORPUS_SEED, count=1000, min_n=3, max_n=10)


@pytest.fixture(scope="session")
def small_corpus(random_corpus):
    return random_corpus[:120]
