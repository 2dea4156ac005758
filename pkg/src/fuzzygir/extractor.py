"""Rule-based extraction of absolute and vague spatial expressions.

Toponyms are found by longest match against the gazetteer name index and
kept only when they are capitalised in the raw text or follow a spatial cue
word. A relation pattern ("near", "to the east of", ...) ending at most three
tokens before a toponym turns it into a relative mention.
"""
import json
from dataclasses import dataclass

from .config import Config
from .fuzzy.sets import Hedge
from .gazetteer import GranularityLevel


@dataclass(frozen=True)
class RelationTerm:
    kind: str
    direction: str = None

    @property
    def key(self):
        return f"{self.kind}:{self.direction}" if self.direction else self.kind

    @classmethod
    def from_key(cls, key):
        kind, _, direction = key.partition(":")
        return cls(kind, direction or None)


AT = RelationTerm("At")


@dataclass(frozen=True)
class SpatialMention:
    """One spatial expression in a document.

    ``relation`` is None for absolute mentions; for relative mentions
    ``place_id`` is the anchor.
    """

    doc_id: str
    span: tuple
    place_id: str
    granularity: GranularityLevel
    confidence: float
    surface: str
    relation: RelationTerm = None
    hedge: Hedge = None
    pattern: str = None

    @property
    def is_relative(self):
        return self.relation is not None

    @property
    def anchor_place_id(self):
        return self.place_id if self.is_relative else None

    @property
    def term_key(self):
        if self.relation is None:
            return self.place_id
        return f"{self.relation.key}@{self.place_id}"

    def to_json(self):
        return {
            "doc_id": self.doc_id,
            "span": list(self.span),
            "kind": "relative" if self.is_relative else "absolute",
            "place_id": self.place_id,
            "relation": self.relation.key if self.relation else None,
            "hedge": self.hedge.value if self.hedge else None,
            "pattern": self.pattern,
            "surface": self.surface,
            "confidence": self.confidence,
            "granularity": self.granularity.label,
        }

    @classmethod
    def from_json(cls, obj):
        return cls(
            doc_id=obj["doc_id"],
            span=tuple(obj["span"]),
            place_id=obj["place_id"],
            granularity=GranularityLevel.parse(obj["granularity"]),
            confidence=float(obj["confidence"]),
            surface=obj["surface"],
            relation=RelationTerm.from_key(obj["relation"]) if obj.get("relation") else None,
            hedge=Hedge(obj["hedge"]) if obj.get("hedge") else None,
            pattern=obj.get("pattern"),
        )


class Lexicon:
    """Relation patterns, hedges and cue words from the extraction config."""

    def __init__(self, cfg=None):
        cfg = cfg if cfg is not None else Config().extraction
        self.patterns = {}
        for kind, forms in cfg["relations"].items():
            for form in forms:
                self.patterns[tuple(form)] = RelationTerm(kind)
        for word, code in cfg["directions"].items():
            term = RelationTerm("CardinalOf", code)
            self.patterns[("to", "the", word, "of")] = term
            self.patterns[(word, "of")] = term
        self.hedges = {w: Hedge(h) for w, h in cfg["hedges"].items()}
        self.hedgeable = set(cfg["hedgeable"])
        self.cue_words = set(cfg["cue_words"])
        self.cue_window = int(cfg["cue_window"])
        self.max_toponym_tokens = int(cfg["max_toponym_tokens"])
        self.relation_window = int(cfg["relation_window"])
        self.max_pattern = max(len(p) for p in self.patterns)
        self.weights = dict(cfg["disambiguation"])

    def match_suffix(self, words):
        """Longest pattern ending the word list: ``(term, hedge, n_tokens)`` or None."""
        for n in range(min(self.max_pattern, len(words)), 0, -1):
            term = self.patterns.get(tuple(words[-n:]))
            if term is None:
                continue
            hedge = None
            if n < len(words) and term.kind in self.hedgeable:
                hedge = self.hedges.get(words[-n - 1])
            return term, hedge, n + (hedge is not None)
        return None


_DEFAULT_LEXICON = None


def default_lexicon():
    global _DEFAULT_LEXICON
    if _DEFAULT_LEXICON is None:
        _DEFAULT_LEXICON = Lexicon()
    return _DEFAULT_LEXICON


def _words(window):
    return [w if isinstance(w, str) else w.normalized for w in window]


def classify_expression(window, lexicon=None):
    """Map a token window (at most 5 tokens) to ``(RelationTerm, Hedge or None)``.

    The longest lexicon pattern that ends the window wins.
    """
    if len(window) > 5:
        raise ValueError("window longer than 5 tokens")
    found = (lexicon or default_lexicon()).match_suffix(_words(window))
    return None if found is None else found[:2]


@dataclass
class Candidate:
    surface: str
    token_span: tuple
    entries: list


def _score(entry, context, gaz, weights):
    consistent = any(gaz.related(pid, entry.place_id) for pid in context)
    return (
        weights["importance"] * entry.importance
        + weights["containment"] * (1.0 if consistent else 0.0)
        + weights["level_prior"] * int(entry.level) / 4.0
    )


def disambiguate(candidates, doc_mentions_so_far, gaz, weights=None):
    """Choose one place per candidate; returns ``[(place_id, confidence), ...]``.

    Unambiguous surfaces resolve first and join the context. Ambiguous
    surfaces then resolve in order of first appearance, each seeing the
    places resolved before it. Identical surfaces share one referent.
    """
    weights = weights or default_lexicon().weights
    context = list(doc_mentions_so_far)
    chosen = {}
    order = []
    for cand in candidates:
        if cand.surface not in chosen:
            chosen[cand.surface] = None
            order.append(cand)
    for cand in order:
        if len(cand.entries) == 1:
            chosen[cand.surface] = (cand.entries[0].place_id, 1.0)
            context.append(cand.entries[0].place_id)
    for cand in order:
        if chosen[cand.surface] is not None:
            continue
        scored = [(_score(e, context, gaz, weights), e.place_id) for e in cand.entries]
        best_score, best_id = min(scored, key=lambda t: (-t[0], t[1]))
        total = sum(s for s, _ in scored)
        confidence = best_score / total if total > 0 else 1.0 / len(scored)
        chosen[cand.surface] = (best_id, confidence)
        context.append(best_id)
    return [chosen[c.surface] for c in candidates]


def find_toponyms(tokens, gaz, lexicon):
    """Greedy longest-match toponym candidates as :class:`Candidate` objects."""
    out = []
    words = [t.normalized for t in tokens]
    max_len = min(lexicon.max_toponym_tokens, gaz.max_name_tokens)
    i = 0
    while i < len(tokens):
        cued = any(w in lexicon.cue_words for w in words[max(0, i - lexicon.cue_window):i])
        taken = 0
        if tokens[i].is_capitalized or cued:
            for n in range(min(max_len, len(tokens) - i), 0, -1):
                name = " ".join(words[i:i + n])
                if name in gaz.name_index:
                    out.append(Candidate(name, (i, i + n), gaz.lookup(name)))
                    taken = n
                    break
        i += taken or 1
    return out


def relation_before(tokens, start, blocked, lexicon):
    """Relation pattern ending within ``relation_window`` tokens before ``start``."""
    words = [t.normalized for t in tokens]
    for end in range(start - 1, max(start - 1 - lexicon.relation_window, -1), -1):
        if end in blocked:
            return None
        found = lexicon.match_suffix(words[max(0, end + 1 - lexicon.max_pattern - 1):end + 1])
        if found is not None:
            term, hedge, n = found
            return term, hedge, end + 1 - n, end + 1
    return None


def extract_with_tokens(doc, gaz, lexicon=None, context=()):
    """Like :func:`extract_mentions` but pairs each mention with the token
    range it consumed (relation pattern included, "in"/"at" too)."""
    lexicon = lexicon or default_lexicon()
    tokens = doc.tokens
    candidates = find_toponyms(tokens, gaz, lexicon)
    if not candidates:
        return []
    resolved = disambiguate(candidates, context, gaz, lexicon.weights)
    blocked = {k for c in candidates for k in range(*c.token_span)}
    out = []
    for cand, (place_id, confidence) in zip(candidates, resolved):
        i, j = cand.token_span
        level = gaz[place_id].level
        rel = relation_before(tokens, i, blocked, lexicon)
        if rel is not None and rel[0] != AT:
            term, hedge, p, q = rel
            span = (tokens[p].byte_start, tokens[j - 1].byte_end)
            pattern = " ".join(t.normalized for t in tokens[p:q])
            mention = SpatialMention(doc.doc_id, span, place_id, level, confidence, cand.surface,
                                     term, hedge, pattern)
            consumed = set(range(p, q)) | set(range(i, j))
        else:
            span = (tokens[i].byte_start, tokens[j - 1].byte_end)
            mention = SpatialMention(doc.doc_id, span, place_id, level, confidence, cand.surface)
            consumed = set(range(i, j))
            if rel is not None:
                consumed |= set(range(rel[2], rel[3]))
        out.append((mention, consumed))
    out.sort(key=lambda pair: (pair[0].span[0], pair[0].span[1]))
    return out


def extract_mentions(doc, gaz, lexicon=None, context=()):
    """All spatial mentions of ``doc``, ordered by span start."""
    return [m for m, _ in extract_with_tokens(doc, gaz, lexicon, context)]


def dump_mentions(mentions, path):
    with open(path, "w", encoding="utf-8") as fh:
        for m in mentions:
            fh.write(json.dumps(m.to_json(), ensure_ascii=False, sort_keys=True) + "\n")


def load_mentions(path):
    with open(path, encoding="utf-8") as fh:
        return [SpatialMention.from_json(json.loads(line)) for line in fh if line.strip()]
