import pytest

from fuzzygir.config import Config
from fuzzygir.corpus import Corpus
from fuzzygir.fixtures import corpus_path, gazetteer_path, mini_corpus_path
from fuzzygir.gazetteer import load_gazetteer
from fuzzygir.retrieval import Engine


@pytest.fixture(scope="session")
def gaz():
    return load_gazetteer(gazetteer_path())


@pytest.fixture(scope="session")
def config():
    return Config()


@pytest.fixture(scope="session")
def corpus():
    return Corpus.from_path(corpus_path()).seal()


@pytest.fixture(scope="session")
def mini_corpus():
    return Corpus.from_path(mini_corpus_path()).seal()


@pytest.fixture(scope="session")
def engine(corpus, gaz):
    return Engine.build(corpus, gaz)


@pytest.fixture(scope="session")
def mini_engine(mini_corpus, gaz):
    return Engine.build(mini_corpus, gaz)


@pytest.fixture(scope="session")
def bundle(tmp_path_factory, engine):
    path = tmp_path_factory.mktemp("bundle") / "idx"
    engine.save(path, gazetteer_source=gazetteer_path())
    return path
