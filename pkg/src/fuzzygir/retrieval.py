"""Query answering: parse, select candidates, grade, rank and locate the event."""
import json
import math
import shutil
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path

from .config import Config
from .corpus import Corpus, Document, tokenize
from .errors import DataError, IntegrityError, NoLocationError, NoRuleFiredError, QueryError
from .extractor import Lexicon, extract_mentions, extract_with_tokens
from .fuzzy.grid import FusionMode, certainty_report, defuzzify, fuse, fusion_extent
from .fuzzy.rules import FuzzyRuleBase
from .fuzzy.surface import alpha_cut_bbox
from .gazetteer import GranularityLevel, load_gazetteer
from .index import SpatialIndex, build_index, mention_surface

SUPPORT_ALPHA = 1e-12


@dataclass
class QueryPlan:
    text: str
    event_terms: list
    spatial_part: object = None
    level: GranularityLevel = GranularityLevel.COUNTRY
    top_k: int = 5
    fusion: FusionMode = FusionMode.WEIGHTED_AVERAGE

    @property
    def key(self):
        return self.spatial_part.term_key if self.spatial_part is not None else None

    @property
    def place_id(self):
        return self.spatial_part.place_id if self.spatial_part is not None else None

    def to_json(self):
        return {
            "text": self.text,
            "event_terms": list(self.event_terms),
            "spatial_part": None if self.spatial_part is None else {
                "key": self.key,
                "place_id": self.place_id,
                "relation": self.spatial_part.relation.key if self.spatial_part.relation else "At",
                "hedge": self.spatial_part.hedge.value if self.spatial_part.hedge else None,
                "confidence": self.spatial_part.confidence,
            },
            "level": self.level.label,
            "top_k": self.top_k,
            "fusion": self.fusion.value,
        }


@dataclass
class RelevanceJudgment:
    doc_id: str
    swf_norm: float
    gran_match: float
    expr_overlap: float
    fuzzy_relevance: float
    thematic_cosine: float
    final_score: float
    rule_trace: list = field(default_factory=list)

    @property
    def has_evidence(self):
        return self.swf_norm > 0 or self.expr_overlap > 0 or self.thematic_cosine > 0

    def to_json(self, trace=True):
        out = {
            "doc_id": self.doc_id,
            "swf_norm": self.swf_norm,
            "gran_match": self.gran_match,
            "expr_overlap": self.expr_overlap,
            "fuzzy_relevance": self.fuzzy_relevance,
            "thematic_cosine": self.thematic_cosine,
            "final_score": self.final_score,
        }
        if trace:
            out["rule_trace"] = [[rule, act] for rule, act in self.rule_trace]
        return out


@dataclass
class EventLocation:
    surface: object
    point: tuple
    footprint: list
    holes: list
    certainty: dict
    evidence: list

    def to_json(self):
        return {
            "point": [round(self.point[0], 6), round(self.point[1], 6)],
            "footprint": [[round(x, 6), round(y, 6)] for x, y in self.footprint],
            "certainty": self.certainty,
            "evidence": self.evidence,
        }


def parse_query(text, gaz, config=None, lexicon=None):
    """Split a query into event terms and (at most) one spatial expression."""
    if not text or not text.strip():
        raise QueryError("empty query")
    config = config or Config()
    lexicon = lexicon or Lexicon(config.extraction)
    rcfg = config.retrieval
    doc = Document("<query>", text, tokenize(text))
    pairs = extract_with_tokens(doc, gaz, lexicon)
    consumed = set()
    for _, toks in pairs:
        consumed |= toks
    relative = [m for m, _ in pairs if m.is_relative]
    spatial = relative[0] if relative else (pairs[0][0] if pairs else None)
    event_terms = [t.normalized for k, t in enumerate(doc.tokens) if k not in consumed]
    if spatial is None and not event_terms:
        raise QueryError(f"query {text!r} has neither event terms nor a spatial expression")
    level = spatial.granularity if spatial is not None else GranularityLevel.parse(rcfg["default_level"])
    return QueryPlan(
        text=text,
        event_terms=event_terms,
        spatial_part=spatial,
        level=level,
        top_k=int(rcfg["top_k"]),
        fusion=FusionMode.parse(rcfg["fusion"]),
    )


def detect_granulation(plan, config=None):
    if plan.spatial_part is not None:
        return plan.spatial_part.granularity
    config = config or Config()
    return GranularityLevel.parse(config.retrieval["default_level"])


class TextIndex:
    """Token postings and tf-idf document norms for thematic matching."""

    def __init__(self, corpus):
        self.n_docs = corpus.n_docs
        self.tf = {doc.doc_id: Counter(doc.normalized) for doc in corpus}
        self.df = Counter()
        for counts in self.tf.values():
            self.df.update(counts.keys())
        self.norm = {
            doc_id: math.sqrt(sum((c * self.idf(t)) ** 2 for t, c in counts.items()))
            for doc_id, counts in self.tf.items()
        }

    def idf(self, term):
        n = self.df.get(term, 0)
        return math.log2(self.n_docs / n) + 1 if n else 0.0

    def postings(self, term):
        return [d for d, counts in self.tf.items() if term in counts]

    def cosine(self, terms, doc_id):
        q = Counter(terms)
        qv = {t: c * self.idf(t) for t, c in q.items()}
        qn = math.sqrt(sum(w * w for w in qv.values()))
        dn = self.norm.get(doc_id, 0.0)
        if qn == 0 or dn == 0:
            return 0.0
        counts = self.tf[doc_id]
        dot = sum(w * counts.get(t, 0) * self.idf(t) for t, w in qv.items())
        return min(1.0, max(0.0, dot / (qn * dn)))


class Engine:
    """A sealed corpus, its gazetteer, spatial index and configuration."""

    def __init__(self, corpus, gaz, index, config=None):
        self.corpus = corpus
        self.gaz = gaz
        self.index = index
        self.config = config or Config()
        self.lexicon = Lexicon(self.config.extraction)
        self.rulebase = FuzzyRuleBase.from_config(self.config.fuzzy["rulebase"])
        self.text = TextIndex(corpus)
        self._rep_points = {}

    @classmethod
    def build(cls, corpus, gaz, config=None):
        config = config or Config()
        corpus.seal()
        lexicon = Lexicon(config.extraction)
        mentions = {doc.doc_id: extract_mentions(doc, gaz, lexicon) for doc in corpus}
        return cls(corpus, gaz, build_index(corpus, mentions, gaz, config), config)

    # -- persistence ---------------------------------------------------

    def save(self, directory, gazetteer_source=None):
        directory = Path(directory)
        directory.mkdir(parents=True, exist_ok=True)
        self.index.save(directory)
        self.corpus.save(directory / "corpus")
        self.config.save(directory / "config")
        if gazetteer_source is not None:
            shutil.copyfile(gazetteer_source, directory / "gazetteer.tsv")
        else:
            self.gaz.dump_tsv(directory / "gazetteer.tsv")

    @classmethod
    def load(cls, directory):
        directory = Path(directory)
        if not directory.is_dir():
            raise FileNotFoundError(f"index directory not found: {directory}")
        try:
            config = Config.load(directory / "config")
            gaz = load_gazetteer(directory / "gazetteer.tsv", radius_km=config.gazetteer["default_radius_km"],
                                 default_importance=config.gazetteer["default_importance"])
            corpus = Corpus.load(directory / "corpus")
        except DataError:
            raise
        except (OSError, ValueError, KeyError, TypeError) as exc:
            raise IntegrityError(f"index bundle {directory} is incomplete or unreadable: {exc}") from exc
        index = SpatialIndex.load(directory)
        if index.n_docs != corpus.n_docs or set(index.vectors) != set(corpus.docs):
            raise IntegrityError("index and corpus disagree on the document set")
        for doc_id, ms in index.mentions.items():
            for m in ms:
                if m.place_id not in gaz:
                    raise IntegrityError(f"mention in {doc_id} references unknown place {m.place_id!r}")
        return cls(corpus, gaz, index, config)

    # -- query pipeline ------------------------------------------------

    def parse_query(self, text, top_k=None, fusion=None):
        plan = parse_query(text, self.gaz, self.config, self.lexicon)
        if top_k is not None:
            if top_k < 1:
                raise QueryError("top_k must be >= 1")
            plan.top_k = int(top_k)
        if fusion is not None:
            plan.fusion = FusionMode.parse(fusion)
        return plan

    def query_surface(self, plan):
        if plan.spatial_part is None:
            return None
        return mention_surface(plan.spatial_part, self.gaz, self.config.fuzzy)

    def mention_point(self, mention):
        """Defuzzified point of a mention surface, or None for unbounded surfaces."""
        key = (mention.doc_id, mention.span, mention.term_key)
        if key not in self._rep_points:
            surface = mention_surface(mention, self.gaz, self.config.fuzzy)
            if not surface.bounded:
                point = None
            elif surface.direction is None and float(surface.distance_set(0.0)) >= 1.0:
                point = surface.anchor.centroid()
            else:
                grid = fuse([surface], FusionMode.MAX, grid_cfg=self.config.fuzzy["grid"])
                point = defuzzify(grid).point
            self._rep_points[key] = point
        return self._rep_points[key]

    def gran_match(self, plan, mentions):
        rcfg = self.config.retrieval
        table = rcfg["gran_table"]
        floor = float(rcfg["containment_floor"])
        best = 0.0
        for m in mentions:
            value = table[min(abs(int(m.granularity) - int(plan.level)), len(table) - 1)]
            if plan.place_id is not None and self.gaz.related(plan.place_id, m.place_id):
                value = max(value, floor)
            best = max(best, value)
        return float(best)

    def expr_overlap(self, plan, mentions, surface=None):
        if plan.spatial_part is None:
            return 0.0
        surface = surface or self.query_surface(plan)
        best = 0.0
        for m in mentions:
            if m.term_key == plan.key:
                return 1.0
            point = self.mention_point(m)
            if point is not None:
                best = max(best, float(surface.possibility(*point)))
        return best

    def swf_norm(self, plan, doc_id):
        if plan.key is None:
            return 0.0
        top = self.index.max_swf(plan.key)
        return self.index.swf(doc_id, plan.key) / top if top > 0 else 0.0

    def grade_document(self, plan, doc_id, surface=None):
        if doc_id not in self.index.vectors:
            raise IntegrityError(f"document {doc_id!r} is not indexed")
        mentions = self.index.mentions.get(doc_id, [])
        swf_norm = self.swf_norm(plan, doc_id)
        gran = self.gran_match(plan, mentions)
        overlap = self.expr_overlap(plan, mentions, surface)
        try:
            fuzzy_rel, trace = self.rulebase.infer({"swf": swf_norm, "gran": gran, "overlap": overlap})
        except NoRuleFiredError:
            fuzzy_rel, trace = 0.0, [(str(r), 0.0) for r in self.rulebase.rules]
        thematic = self.text.cosine(plan.event_terms, doc_id)
        beta = float(self.config.retrieval["beta"])
        final = beta * fuzzy_rel + (1 - beta) * thematic
        return RelevanceJudgment(doc_id, swf_norm, gran, overlap, fuzzy_rel, thematic, final, trace)

    def candidates(self, plan, on_probe=None):
        surface = self.query_surface(plan)
        out = set()
        for term in set(plan.event_terms):
            out.update(self.text.postings(term))
        if surface is not None:
            region = alpha_cut_bbox(surface, SUPPORT_ALPHA)
            keys = [plan.key, plan.place_id]
            out |= self.index.candidates(region, plan.level, keys, on_probe=on_probe)
        return out

    def retrieve(self, plan, prune=True, on_probe=None):
        """Graded documents with some evidence, best first, at most ``plan.top_k``."""
        if self.index.n_docs == 0:
            return []
        pool = self.candidates(plan, on_probe) if prune else set(self.index.vectors)
        surface = self.query_surface(plan)
        judged = [self.grade_document(plan, d, surface) for d in sorted(pool)]
        judged = [j for j in judged if j.has_evidence]
        judged.sort(key=lambda j: (-j.final_score, j.doc_id))
        return judged[: plan.top_k]

    def evidence_mentions(self, plan, judgments):
        if plan.place_id is None:
            return []
        out = []
        for j in judgments:
            for m in self.index.mentions.get(j.doc_id, []):
                if self.gaz.related(plan.place_id, m.place_id):
                    out.append((j, m))
        return out

    def resolve_event_location(self, judgments, plan):
        """Fuse the evidence surfaces of the ranked documents and defuzzify."""
        evidence = self.evidence_mentions(plan, judgments)
        if not evidence:
            raise NoLocationError("no spatial evidence matches the query place")
        fcfg, rcfg = self.config.fuzzy, self.config.retrieval
        surfaces = [mention_surface(m, self.gaz, fcfg) for _, m in evidence]
        weights = [j.final_score for j, _ in evidence]
        if sum(weights) <= 0:
            raise NoLocationError("evidence documents all have zero relevance")
        clip_alpha = float(fcfg["grid"].get("clip_alpha", 0.05))
        extent = fusion_extent(surfaces, clip_alpha)
        query_surface = self.query_surface(plan)
        if query_surface.bounded:
            qbox = alpha_cut_bbox(query_surface, clip_alpha)
            clipped = (max(extent[0], qbox[0]), max(extent[1], qbox[1]),
                       min(extent[2], qbox[2]), min(extent[3], qbox[3]))
            if clipped[0] <= clipped[2] and clipped[1] <= clipped[3]:
                extent = clipped
        grid = fuse(surfaces, plan.fusion, weights, fcfg["grid"], bbox=extent)
        result = defuzzify(grid, float(rcfg["footprint_alpha"]))
        certainty = certainty_report(grid, float(rcfg["most_certain"]), float(rcfg["least_certain"]))
        marks = []
        for j, m in evidence:
            # unbounded surfaces ("far from") have no defuzzified point; mark the anchor
            point = self.mention_point(m) or self.gaz.footprint(m.place_id).centroid()
            marks.append({"doc_id": j.doc_id, "key": m.term_key, "score": j.final_score,
                          "point": [float(point[0]), float(point[1])]})
        return EventLocation(grid, result.point, result.footprint, result.holes, certainty, marks)

    def query(self, text, top_k=None, fusion=None):
        plan = self.parse_query(text, top_k, fusion)
        judgments = self.retrieve(plan)
        location, error = None, None
        try:
            location = self.resolve_event_location(judgments, plan)
        except NoLocationError as exc:
            error = str(exc)
        return QueryReport(plan, judgments, location, error)


@dataclass
class QueryReport:
    plan: QueryPlan
    judgments: list
    location: EventLocation = None
    location_error: str = None

    def to_json(self, trace=True):
        return {
            "plan": self.plan.to_json(),
            "results": [j.to_json(trace) for j in self.judgments],
            "location": None if self.location is None else self.location.to_json(),
            "location_error": self.location_error,
        }

    def dumps(self, trace=True):
        return json.dumps(self.to_json(trace), indent=2, sort_keys=True, ensure_ascii=False)
