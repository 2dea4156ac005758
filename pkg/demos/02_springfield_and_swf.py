"""
Which Springfield?
==================

Extraction finds toponyms and vague relations, the gazetteer hierarchy
disambiguates, and each document becomes a vector of weighted spatial term
frequencies.
"""
from fuzzygir.corpus import Corpus
from fuzzygir.extractor import extract_mentions
from fuzzygir.fixtures import corpus_path, gazetteer_path
from fuzzygir.gazetteer import load_gazetteer
from fuzzygir.index import build_index, compute_swf, spatial_similarity

gaz = load_gazetteer(gazetteer_path())
print([e.place_id for e in gaz.lookup("Springfield")])  # the ambiguity set, most important first

corpus = Corpus.from_path(corpus_path()).seal()
for doc_id in ("d11", "d16", "d18", "d22"):
    doc = corpus[doc_id]
    found = [(m.term_key, round(m.confidence, 2)) for m in extract_mentions(doc, gaz)]
    print(doc_id, doc.raw_text)
    print("    ->", found or "no spatial mention")

# SWF = SF * (log2(N/n) + 1): rare places weigh more
print("SWF(2, 8, 2) =", compute_swf(2, 8, 2))

mentions = {d.doc_id: extract_mentions(d, gaz) for d in corpus}
index = build_index(corpus, mentions, gaz)
print("d03 vector:", index.vectors["d03"])
print("d29 vector:", index.vectors["d29"])
print("sim(d03, d29) =", round(spatial_similarity(index.vectors["d03"], index.vectors["d29"]), 3))
print("sim(d03, d16) =", round(spatial_similarity(index.vectors["d03"], index.vectors["d16"]), 3))
