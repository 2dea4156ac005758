import json

import pytest

from fuzzygir.cli import main
from fuzzygir.fixtures import corpus_path, gazetteer_path
from fuzzygir.geojson import validate_geojson


@pytest.fixture(scope="module")
def built(tmp_path_factory):
    root = tmp_path_factory.mktemp("cli")
    assert main(["ingest", "--corpus", str(corpus_path()), "--out", str(root / "store")]) == 0
    assert main(["index", "--store", str(root / "store"), "--gazetteer", str(gazetteer_path()),
                 "--out", str(root / "idx")]) == 0
    return root


def test_query_end_to_end(built, capsys):
    out = built / "out.geojson"
    code = main(["query", "--index", str(built / "idx"), "flood near Marina Beach", "--top", "5", "--emit", str(out)])
    assert code == 0
    report = json.loads(capsys.readouterr().out)
    assert len(report["results"]) == 5
    assert report["location"] is not None
    validate_geojson(out.read_text())


def test_reproducible(built, capsys):
    args = ["query", "--index", str(built / "idx"), "flood near Marina Beach", "--fusion", "max", "--raster"]
    main(args + ["--emit", str(built / "a.geojson")])
    first = capsys.readouterr().out
    main(args + ["--emit", str(built / "b.geojson")])
    assert capsys.readouterr().out == first
    assert (built / "a.geojson").read_bytes() == (built / "b.geojson").read_bytes()


def test_explain(built, capsys):
    assert main(["explain", "--index", str(built / "idx"), "flood near Marina Beach", "--top", "2"]) == 0
    text = capsys.readouterr().out
    assert "swf_norm=" in text and "THEN relevance IS" in text and "resolved point" in text
    assert main(["query", "--index", str(built / "idx"), "festival", "--explain"]) == 0
    assert "no location" in capsys.readouterr().out


def test_usage_errors(built, capsys):
    assert main(["query", "--index", str(built / "missing"), "flood"]) == 1
    assert main(["query", "--bogus"]) == 1
    assert main([]) == 1
    assert main(["query", "--index", str(built / "idx"), "flood", "--top", "0"]) == 1
    assert main(["query", "--index", str(built / "idx"), "  "]) == 1
    assert main(["ingest", "--corpus", str(built / "nowhere"), "--out", str(built / "x")]) == 1
    assert main(["--help"]) == 0


def test_corrupted_index(tmp_path, built, capsys):
    import shutil

    idx = tmp_path / "idx"
    shutil.copytree(built / "idx", idx)
    (idx / "level1.jsonl").write_text("garbage\n")
    assert main(["query", "--index", str(idx), "flood"]) == 2
    assert "corrupted" in capsys.readouterr().err


def test_bad_gazetteer(tmp_path, built):
    bad = tmp_path / "g.tsv"
    bad.write_text("place_id\tprimary_name\talt_names\tlevel\tlon\tlat\nx\tX\t\tcity\t999\t0\n")
    assert main(["index", "--store", str(built / "store"), "--gazetteer", str(bad), "--out", str(tmp_path / "i")]) == 2


def test_config_override(tmp_path, built, capsys):
    cfg = tmp_path / "cfg"
    cfg.mkdir()
    (cfg / "retrieval.json").write_text('{"top_k": 2, "beta": 0.9}')
    assert main(["index", "--store", str(built / "store"), "--gazetteer", str(gazetteer_path()),
                 "--config", str(cfg), "--out", str(tmp_path / "idx")]) == 0
    capsys.readouterr()
    assert main(["query", "--index", str(tmp_path / "idx"), "flood near Marina Beach"]) == 0
    report = json.loads(capsys.readouterr().out)
    assert len(report["results"]) == 2
