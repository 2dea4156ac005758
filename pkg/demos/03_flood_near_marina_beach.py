"""
Where was the flood?
====================

The full pipeline: parse the query, pick candidates from the index at the
query's granularity, grade each document with the fuzzy rule base, then fuse
the evidence of the top documents into one possibility surface and
defuzzify it to a point and a footprint.
"""
import sys
import tempfile
from pathlib import Path

from fuzzygir.corpus import Corpus
from fuzzygir.fixtures import corpus_path, gazetteer_path
from fuzzygir.gazetteer import load_gazetteer
from fuzzygir.geo import haversine_km
from fuzzygir.geojson import emit_geojson
from fuzzygir.retrieval import Engine

engine = Engine.build(Corpus.from_path(corpus_path()), load_gazetteer(gazetteer_path()))
query = sys.argv[1] if len(sys.argv) > 1 else "flood near Marina Beach"

plan = engine.parse_query(query)
print("event terms:", plan.event_terms, "| spatial key:", plan.key, "| level:", plan.level.label)

ranked = engine.retrieve(plan)
for j in ranked:
    print(f"{j.doc_id}  final {j.final_score:.3f}  fuzzy {j.fuzzy_relevance:.3f}  thematic {j.thematic_cosine:.3f}"
          f"  | {engine.corpus[j.doc_id].raw_text[:60]}")

loc = engine.resolve_event_location(ranked, plan)
anchor = engine.gaz["marina_beach"]
print("resolved point:", tuple(round(v, 5) for v in loc.point),
      f"({haversine_km(anchor.lon, anchor.lat, *loc.point):.2f} km from Marina Beach)")
print("most certain :", loc.certainty["most_certain"])
print("least certain:", loc.certainty["least_certain"])

out = Path(tempfile.mkdtemp()) / "flood.geojson"
emit_geojson(loc, out, query=query, raster=True)
print("GeoJSON written to", out)
