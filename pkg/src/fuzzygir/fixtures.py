"""Paths to the bundled fixture gazetteer and corpora."""
from importlib import resources


def _path(name):
    return resources.files("fuzzygir").joinpath("data").joinpath(name)


def gazetteer_path():
    return _path("gazetteer.tsv")


def corpus_path():
    return _path("corpus.jsonl")


def mini_corpus_path():
    return _path("mini_corpus.jsonl")
