import json
import math

import numpy as np
import pytest

from fuzzygir.corpus import Corpus
from fuzzygir.errors import IntegrityError
from fuzzygir.extractor import SpatialMention, extract_mentions
from fuzzygir.fuzzy.surface import alpha_cut_bbox
from fuzzygir.gazetteer import GranularityLevel
from fuzzygir.index import (
    SpatialIndex,
    build_index,
    cell_range,
    compute_swf,
    mention_surface,
    spatial_similarity,
)

from oracles import SWF_CASES


def mentions_of(corpus, gaz):
    return {d.doc_id: extract_mentions(d, gaz) for d in corpus}


@pytest.mark.parametrize("args,expected", SWF_CASES)
def test_swf_values(args, expected):
    assert abs(compute_swf(*args) - expected) <= 1e-9


def test_swf_errors():
    with pytest.raises(IntegrityError):
        compute_swf(1, 8, 0)
    with pytest.raises(IntegrityError):
        compute_swf(1, 8, 9)


def test_idf_monotone():
    vals = [compute_swf(3, 64, n) for n in range(1, 65)]
    assert all(a > b for a, b in zip(vals, vals[1:]))


def test_cosine_examples():
    assert spatial_similarity({"a": 6, "c": 3}, {"a": 6, "c": 3}) == pytest.approx(1.0)
    assert spatial_similarity({"a": 1}, {"b": 1}) == 0.0
    assert spatial_similarity({"a": 3, "b": 4}, {"a": 4, "b": 3}) == pytest.approx(0.96, abs=1e-9)
    assert spatial_similarity({}, {"a": 1}) == 0.0


def test_mini_fixture_postings(mini_corpus, gaz):
    idx = build_index(mini_corpus, mentions_of(mini_corpus, gaz), gaz)
    postings = idx.postings("chennai")
    assert len(postings) == 2
    for doc_id, sf in postings:
        assert idx.swf(doc_id, "chennai") == pytest.approx(sf * 3.0)


def test_relative_mentions_also_count_for_anchor(mini_corpus, gaz):
    idx = build_index(mini_corpus, mentions_of(mini_corpus, gaz), gaz)
    assert [d for d, _ in idx.postings("Near@marina_beach")] == ["m1"]
    assert sorted(d for d, _ in idx.postings("marina_beach")) == ["m1", "m3"]


def test_empty_corpus(gaz):
    idx = build_index(Corpus().seal(), {}, gaz)
    assert idx.n_docs == 0 and idx.level1 == {} and idx.vectors == {}
    assert idx.candidates((-180, -90, 180, 90), "country") == set()


def test_unknown_place_is_integrity_error(mini_corpus, gaz):
    m = SpatialMention("m1", (0, 3), "atlantis", GranularityLevel.CITY, 1.0, "atlantis")
    with pytest.raises(IntegrityError):
        build_index(mini_corpus, {"m1": [m]}, gaz)


def test_near_marina_in_landmark_cells(mini_corpus, gaz, config):
    ms = mentions_of(mini_corpus, gaz)
    idx = build_index(mini_corpus, ms, gaz)
    near = next(m for m in ms["m1"] if m.is_relative)
    box = alpha_cut_bbox(mention_surface(near, gaz, config.fuzzy), 0.5)
    # the 0.5-cut of Near is the anchor extent buffered by 3.5 km
    lat_pad = 3.5 / (math.pi * 6371.0088 / 180.0)
    radius_deg = 0.5 / (math.pi * 6371.0088 / 180.0)
    assert box[3] == pytest.approx(13.05 + radius_deg + lat_pad, abs=1e-6)
    edge = idx.edge("landmark")
    i0, j0, i1, j1 = cell_range(box, edge)
    cells = idx.level2[GranularityLevel.LANDMARK]
    for i in range(i0, i1 + 1):
        for j in range(j0, j1 + 1):
            assert "m1" in cells[(i, j)]


def scan_oracle(idx, gaz, config, region, alpha=0.5, n=25):
    """Documents with a mention whose surface reaches ``alpha`` at a sampled point of ``region``."""
    lon = np.linspace(region[0], region[2], n)
    lat = np.linspace(region[1], region[3], n)
    lon, lat = np.meshgrid(lon, lat)
    found = set()
    for doc_id, ms in idx.mentions.items():
        for m in ms:
            if (mention_surface(m, gaz, config.fuzzy).possibility(lon, lat) >= alpha).any():
                found.add(doc_id)
                break
    return found


def test_candidates_match_full_scan(engine, gaz, config):
    idx = engine.index
    box = (80.26, 13.03, 80.30, 13.07)  # around Marina Beach
    got = idx.candidates(box, "landmark")
    exact = {d for d, ms in idx.mentions.items()
             if any(_intersects(alpha_cut_bbox(mention_surface(m, gaz, config.fuzzy), 0.5), box) for m in ms)}
    assert got == exact
    assert scan_oracle(idx, gaz, config, box) <= got


def _intersects(a, b):
    return a[0] <= b[2] and b[0] <= a[2] and a[1] <= b[3] and b[1] <= a[3]


def test_candidates_outside_data(engine):
    # Far mentions reach everywhere, so pick a region they cannot satisfy at alpha 0.5 either:
    # there are none in the south Atlantic except via the unbounded "far from" wide entries
    got = engine.index.candidates((-30.0, -60.0, -29.0, -59.0), "city")
    far_docs = {d for d, ms in engine.index.mentions.items() for m in ms if m.relation and m.relation.kind == "Far"}
    assert got == far_docs
    assert engine.index.candidates((-30.0, -60.0, -29.0, -59.0), "city", ()) <= far_docs


def test_candidates_without_far(mini_engine):
    assert mini_engine.index.candidates((-30.0, -60.0, -29.0, -59.0), "landmark") == set()


def test_country_level_saturation(engine):
    got = engine.index.candidates((-180.0, -90.0, 180.0, 90.0), "country")
    assert got == set(engine.index.documents_with_mentions())


def test_candidate_completeness_random(engine, gaz, config):
    rng = np.random.default_rng(2024)
    centres = [(80.25, 13.05), (-89.65, 39.8), (-72.58, 42.1), (-0.97, 51.45), (77.6, 12.97), (72.85, 19.05)]
    for k in range(200):
        cx, cy = centres[k % len(centres)]
        cx, cy = cx + rng.normal(0, 0.3), cy + rng.normal(0, 0.3)
        w, h = rng.uniform(0.005, 0.6, size=2)
        region = (cx - w, cy - h, cx + w, cy + h)
        level = GranularityLevel(int(rng.integers(0, 5)))
        got = engine.index.candidates(region, level)
        assert scan_oracle(engine.index, gaz, config, region, n=9) <= got


def test_determinism(tmp_path, corpus, gaz):
    a = build_index(corpus, mentions_of(corpus, gaz), gaz)
    b = build_index(corpus, mentions_of(corpus, gaz), gaz)
    a.save(tmp_path / "a")
    b.save(tmp_path / "b")
    for name in ("level1.jsonl", "level2.jsonl", "vectors.jsonl", "mentions.jsonl", "index_meta.json"):
        assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()


def test_save_load_roundtrip(tmp_path, engine):
    engine.index.save(tmp_path)
    again = SpatialIndex.load(tmp_path)
    assert again.level1 == engine.index.level1
    assert again.vectors == engine.index.vectors
    assert again.level2 == engine.index.level2
    assert again.mentions == engine.index.mentions


def test_load_detects_corruption(tmp_path, mini_engine):
    mini_engine.index.save(tmp_path)
    lines = (tmp_path / "level2.jsonl").read_text().splitlines()
    rec = json.loads(lines[0])
    rec["docs"].append("ghost")
    (tmp_path / "level2.jsonl").write_text("\n".join([json.dumps(rec)] + lines[1:]) + "\n")
    with pytest.raises(IntegrityError):
        SpatialIndex.load(tmp_path)
    (tmp_path / "vectors.jsonl").write_text("{not json\n")
    with pytest.raises(IntegrityError):
        SpatialIndex.load(tmp_path)


def test_vector_weights_positive_only_for_present_keys(engine):
    for doc_id, weights in engine.index.vectors.items():
        keys = {k for m in engine.index.mentions[doc_id] for k in
                ((m.term_key, m.place_id) if m.is_relative else (m.place_id,))}
        assert set(weights) == keys
        assert all(w > 0 for w in weights.values())
