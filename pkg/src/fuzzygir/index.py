"""Weighted spatial term frequencies and the two-level spatial index.

Level 1 is an inverted index from spatial term keys to ``(doc_id, SF)``
postings. Level 2 holds, for every granularity level, a grid of square
lon/lat cells whose edge matches the level; a document is posted to every
cell its mention surfaces' alpha-cut box touches. Mentions whose box would
cover too many cells at a fine level are kept in a per-level "wide" list and
matched by box intersection instead.
"""
import json
import math
from collections import Counter, defaultdict
from pathlib import Path

from .config import Config
from .errors import IntegrityError
from .extractor import SpatialMention
from .fuzzy.surface import alpha_cut_bbox, linguistic_surface
from .geo import bbox_intersects
from .gazetteer import GranularityLevel


def compute_swf(sf, n_docs, df):
    """Weighted spatial term frequency ``sf * (log2(N / n) + 1)``."""
    if sf < 0 or n_docs < 1:
        raise ValueError(f"need sf >= 0 and N >= 1, got sf={sf}, N={n_docs}")
    if df > n_docs:
        raise IntegrityError(f"document frequency {df} exceeds corpus size {n_docs}")
    if sf == 0:
        return 0.0
    if df < 1:
        raise IntegrityError("term occurs in a document but has document frequency 0")
    return sf * (math.log2(n_docs / df) + 1)


def spatial_similarity(vi, vj):
    """Cosine of two sparse SWF vectors (dicts); absent keys count as zero."""
    vi = getattr(vi, "weights", vi)
    vj = getattr(vj, "weights", vj)
    si = max(vi.values(), default=0.0)
    sj = max(vj.values(), default=0.0)
    if si <= 0 or sj <= 0:
        return 0.0
    # rescale to unit max so squaring tiny weights cannot underflow
    vi = {k: w / si for k, w in vi.items()}
    vj = {k: w / sj for k, w in vj.items()}
    if len(vi) > len(vj):
        vi, vj = vj, vi
    dot = sum(w * vj.get(k, 0.0) for k, w in vi.items())
    ni = sum(w * w for w in vi.values())
    nj = sum(w * w for w in vj.values())
    return min(1.0, max(0.0, dot / math.sqrt(ni * nj)))


def mention_keys(mention):
    """Term keys a mention contributes SF to: its own key, plus the bare anchor for relative mentions."""
    if mention.is_relative:
        return (mention.term_key, mention.place_id)
    return (mention.place_id,)


def mention_surface(mention, gaz, fuzzy_cfg):
    relation = mention.relation.kind if mention.relation else "At"
    direction = mention.relation.direction if mention.relation else None
    return linguistic_surface(relation, gaz.footprint(mention.place_id), mention.hedge, direction, fuzzy_cfg)


def cell_range(bbox, edge):
    return (
        math.floor(bbox[0] / edge),
        math.floor(bbox[1] / edge),
        math.floor(bbox[2] / edge),
        math.floor(bbox[3] / edge),
    )


class SpatialIndex:
    def __init__(self, n_docs, level1, vectors, level2, wide, mentions, cell_deg, alpha=0.5, boxes=None):
        self.n_docs = n_docs
        self.level1 = level1
        self.vectors = vectors
        self.level2 = level2
        self.wide = wide
        self.mentions = mentions
        self.cell_deg = {GranularityLevel.parse(k): float(v) for k, v in cell_deg.items()}
        self.alpha = alpha
        # per-document alpha-cut boxes; cell hits are confirmed against them
        self.boxes = boxes if boxes is not None else {}
        self.df = {k: len(p) for k, p in level1.items()}

    def edge(self, level):
        return self.cell_deg[GranularityLevel.parse(level)]

    def swf(self, doc_id, key):
        return self.vectors.get(doc_id, {}).get(key, 0.0)

    def max_swf(self, key):
        return max((self.vectors[d][key] for d, _ in self.level1.get(key, ())), default=0.0)

    def postings(self, key):
        return self.level1.get(key, [])

    def documents_with_mentions(self):
        return sorted(d for d, ms in self.mentions.items() if ms)

    def candidates(self, query_region, level, query_terms=(), on_probe=None):
        """Documents posted under ``query_terms`` or in level-2 cells touching ``query_region``.

        ``on_probe(level, edge, n_cells)`` is called when level 2 is consulted.
        """
        out = set()
        for key in query_terms:
            out.update(d for d, _ in self.level1.get(key, ()))
        if query_region is None:
            return out
        level = GranularityLevel.parse(level)
        edge = self.cell_deg[level]
        cells = self.level2.get(level, {})
        i0, j0, i1, j1 = cell_range(query_region, edge)
        n_region = (i1 - i0 + 1) * (j1 - j0 + 1)
        hits = set()
        if n_region <= len(cells):
            for i in range(i0, i1 + 1):
                for j in range(j0, j1 + 1):
                    hits.update(cells.get((i, j), ()))
        else:
            for (i, j), docs in cells.items():
                if i0 <= i <= i1 and j0 <= j <= j1:
                    hits.update(docs)
        for doc_id in hits:
            boxes = self.boxes.get(doc_id)
            if boxes is None or any(bbox_intersects(b, query_region) for b in boxes):
                out.add(doc_id)
        for doc_id, box in self.wide.get(level, ()):
            if bbox_intersects(box, query_region):
                out.add(doc_id)
        if on_probe is not None:
            on_probe(level, edge, n_region)
        return out

    # -- persistence ---------------------------------------------------

    def save(self, directory):
        directory = Path(directory)
        directory.mkdir(parents=True, exist_ok=True)
        with open(directory / "level1.jsonl", "w", encoding="utf-8") as fh:
            for key in sorted(self.level1):
                fh.write(json.dumps({"key": key, "postings": [list(p) for p in self.level1[key]]}, sort_keys=True) + "\n")
        with open(directory / "level2.jsonl", "w", encoding="utf-8") as fh:
            for level in sorted(self.level2):
                for cell in sorted(self.level2[level]):
                    rec = {"level": level.label, "cell": list(cell), "docs": sorted(self.level2[level][cell])}
                    fh.write(json.dumps(rec, sort_keys=True) + "\n")
            for level in sorted(self.wide):
                for doc_id, box in self.wide[level]:
                    fh.write(json.dumps({"level": level.label, "wide": list(box), "docs": [doc_id]}, sort_keys=True) + "\n")
        with open(directory / "vectors.jsonl", "w", encoding="utf-8") as fh:
            for doc_id in sorted(self.vectors):
                rec = {"doc_id": doc_id, "weights": self.vectors[doc_id]}
                if doc_id in self.boxes:
                    rec["boxes"] = [list(b) for b in self.boxes[doc_id]]
                fh.write(json.dumps(rec, sort_keys=True) + "\n")
        with open(directory / "mentions.jsonl", "w", encoding="utf-8") as fh:
            for doc_id in sorted(self.mentions):
                for m in self.mentions[doc_id]:
                    fh.write(json.dumps(m.to_json(), ensure_ascii=False, sort_keys=True) + "\n")
        meta = {"n_docs": self.n_docs, "alpha": self.alpha,
                "cell_deg": {lvl.label: e for lvl, e in sorted(self.cell_deg.items())}}
        with open(directory / "index_meta.json", "w", encoding="utf-8") as fh:
            json.dump(meta, fh, sort_keys=True, indent=1)
            fh.write("\n")

    @classmethod
    def load(cls, directory):
        directory = Path(directory)
        try:
            with open(directory / "index_meta.json", encoding="utf-8") as fh:
                meta = json.load(fh)
            level1 = {}
            with open(directory / "level1.jsonl", encoding="utf-8") as fh:
                for line in fh:
                    rec = json.loads(line)
                    level1[rec["key"]] = [(d, int(sf)) for d, sf in rec["postings"]]
            level2, wide = defaultdict(dict), defaultdict(list)
            with open(directory / "level2.jsonl", encoding="utf-8") as fh:
                for line in fh:
                    rec = json.loads(line)
                    level = GranularityLevel.parse(rec["level"])
                    if "wide" in rec:
                        wide[level].append((rec["docs"][0], tuple(rec["wide"])))
                    else:
                        level2[level][tuple(rec["cell"])] = set(rec["docs"])
            vectors, boxes = {}, {}
            with open(directory / "vectors.jsonl", encoding="utf-8") as fh:
                for line in fh:
                    rec = json.loads(line)
                    vectors[rec["doc_id"]] = {k: float(v) for k, v in rec["weights"].items()}
                    if "boxes" in rec:
                        boxes[rec["doc_id"]] = [tuple(float(x) for x in b) for b in rec["boxes"]]
            mentions = {d: [] for d in vectors}
            with open(directory / "mentions.jsonl", encoding="utf-8") as fh:
                for line in fh:
                    m = SpatialMention.from_json(json.loads(line))
                    mentions.setdefault(m.doc_id, []).append(m)
        except (OSError, ValueError, KeyError, TypeError, IndexError) as exc:
            raise IntegrityError(f"corrupted index in {directory}: {exc}") from exc
        index = cls(meta["n_docs"], level1, vectors, dict(level2), dict(wide), mentions,
                    meta["cell_deg"], meta["alpha"], boxes)
        index.check_integrity()
        return index

    def check_integrity(self):
        posted = {d for postings in self.level1.values() for d, _ in postings}
        for level, cells in self.level2.items():
            for cell, docs in cells.items():
                stray = docs - posted
                if stray:
                    raise IntegrityError(f"level-2 cell {level.label}{cell} lists documents without level-1 postings: {sorted(stray)}")
        for level, entries in self.wide.items():
            for doc_id, _ in entries:
                if doc_id not in posted:
                    raise IntegrityError(f"wide level-2 entry for {doc_id} has no level-1 posting")
        for key, postings in self.level1.items():
            for doc_id, sf in postings:
                if sf <= 0 or self.vectors.get(doc_id, {}).get(key, 0.0) <= 0:
                    raise IntegrityError(f"posting ({key}, {doc_id}) has no positive weight")


def build_index(corpus, mentions_by_doc, gaz, config=None):
    """Build level-1 postings, SWF vectors and level-2 cells for a sealed corpus."""
    config = config or Config()
    icfg = config.index
    alpha = float(icfg.get("alpha", 0.5))
    max_cells = int(icfg.get("max_cells_per_mention", 4096))
    cell_deg = {GranularityLevel.parse(k): float(v) for k, v in icfg["cell_deg"].items()}

    counts = {}
    for doc in corpus:
        sf = Counter()
        for m in mentions_by_doc.get(doc.doc_id, ()):
            if m.place_id not in gaz:
                raise IntegrityError(f"{doc.doc_id}: mention references unknown place {m.place_id!r}")
            sf.update(mention_keys(m))
        counts[doc.doc_id] = sf
    stray = set(mentions_by_doc) - set(counts)
    if stray:
        raise IntegrityError(f"mentions for documents not in corpus: {sorted(stray)}")

    level1 = defaultdict(list)
    for doc_id in sorted(counts):
        for key, sf in sorted(counts[doc_id].items()):
            level1[key].append((doc_id, sf))
    n_docs = corpus.n_docs
    vectors = {
        doc_id: {key: compute_swf(sf, n_docs, len(level1[key])) for key, sf in sorted(sf_map.items())}
        for doc_id, sf_map in counts.items()
    }

    level2 = {lvl: defaultdict(set) for lvl in cell_deg}
    wide = {lvl: [] for lvl in cell_deg}
    boxes = {}
    for doc_id in sorted(counts):
        for m in mentions_by_doc.get(doc_id, ()):
            box = alpha_cut_bbox(mention_surface(m, gaz, config.fuzzy), alpha)
            if box not in boxes.setdefault(doc_id, []):
                boxes[doc_id].append(box)
            for lvl, edge in cell_deg.items():
                i0, j0, i1, j1 = cell_range(box, edge)
                if (i1 - i0 + 1) * (j1 - j0 + 1) > max_cells:
                    if (doc_id, box) not in wide[lvl]:
                        wide[lvl].append((doc_id, box))
                    continue
                for i in range(i0, i1 + 1):
                    for j in range(j0, j1 + 1):
                        level2[lvl][(i, j)].add(doc_id)
    mentions = {d: list(mentions_by_doc.get(d, ())) for d in sorted(counts)}
    return SpatialIndex(
        n_docs,
        dict(level1),
        vectors,
        {lvl: dict(cells) for lvl, cells in level2.items()},
        wide,
        mentions,
        {lvl.label: e for lvl, e in cell_deg.items()},
        alpha,
        boxes,
    )
