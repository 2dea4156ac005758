"""Document ingestion, tokenization and corpus statistics."""
import json
import re
import unicodedata
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path

from .errors import DataError, EncodingError, IdentifierError, SealedCorpusError

_NON_SPACE = re.compile(r"\S+")


@dataclass(frozen=True)
class Token:
    surface: str
    normalized: str
    byte_start: int
    byte_end: int
    is_capitalized: bool

    def to_list(self):
        return [self.surface, self.normalized, self.byte_start, self.byte_end, self.is_capitalized]


@dataclass
class Document:
    doc_id: str
    raw_text: str
    tokens: list = field(default_factory=list)

    @property
    def length(self):
        return len(self.tokens)

    @property
    def normalized(self):
        return [t.normalized for t in self.tokens]

    def to_json(self):
        return {
            "doc_id": self.doc_id,
            "raw_text": self.raw_text,
            "tokens": [t.to_list() for t in self.tokens],
        }

    @classmethod
    def from_json(cls, obj):
        tokens = [Token(s, n, int(b0), int(b1), bool(c)) for s, n, b0, b1, c in obj["tokens"]]
        return cls(obj["doc_id"], obj["raw_text"], tokens)


@dataclass(frozen=True)
class CorpusStats:
    n_docs: int
    df: dict

    def __getitem__(self, term):
        return self.df.get(term, 0)


def _is_punct(ch):
    return unicodedata.category(ch).startswith("P")


def normalize(text):
    return text.strip().casefold()


def tokenize(raw_text):
    """Split ``raw_text`` into tokens.

    Whitespace-delimited chunks lose their leading and trailing punctuation;
    internal hyphens and apostrophes survive. Offsets are UTF-8 byte offsets.
    """
    tokens = []
    byte_pos = 0
    char_pos = 0
    for match in _NON_SPACE.finditer(raw_text):
        start, end = match.span()
        while start < end and _is_punct(raw_text[start]):
            start += 1
        while end > start and _is_punct(raw_text[end - 1]):
            end -= 1
        if start == end:
            continue
        byte_pos += len(raw_text[char_pos:start].encode("utf-8"))
        surface = raw_text[start:end]
        width = len(surface.encode("utf-8"))
        tokens.append(Token(surface, surface.casefold(), byte_pos, byte_pos + width, surface[0].isupper()))
        byte_pos += width
        char_pos = end
    return tokens


def _check_text(raw_text):
    if isinstance(raw_text, (bytes, bytearray)):
        try:
            return bytes(raw_text).decode("utf-8")
        except UnicodeDecodeError as exc:
            raise EncodingError(f"raw_text is not valid UTF-8: {exc}") from exc
    if not isinstance(raw_text, str):
        raise EncodingError(f"raw_text must be str or bytes, got {type(raw_text).__name__}")
    try:
        raw_text.encode("utf-8")
    except UnicodeEncodeError as exc:
        raise EncodingError(f"raw_text is not encodable as UTF-8: {exc}") from exc
    return raw_text


class Corpus:
    """In-memory document store with document frequencies.

    Single writer until :meth:`seal`; afterwards it is read-only.
    """

    def __init__(self):
        self.docs = {}
        self._df = Counter()
        self.sealed = False

    def __len__(self):
        return len(self.docs)

    def __iter__(self):
        return iter(self.docs[k] for k in sorted(self.docs))

    def __contains__(self, doc_id):
        return doc_id in self.docs

    def __getitem__(self, doc_id):
        return self.docs[doc_id]

    @property
    def n_docs(self):
        return len(self.docs)

    def seal(self):
        self.sealed = True
        return self

    def ingest_document(self, doc_id, raw_text):
        if self.sealed:
            raise SealedCorpusError("corpus is sealed")
        if not isinstance(doc_id, str) or not doc_id.strip():
            raise IdentifierError("doc_id must be a non-empty string")
        raw_text = _check_text(raw_text)
        old = self.docs.pop(doc_id, None)
        if old is not None:
            self._df.subtract(set(old.normalized))
            self._df = +self._df
        doc = Document(doc_id, raw_text, tokenize(raw_text))
        self.docs[doc_id] = doc
        self._df.update(set(doc.normalized))
        assert all(v <= len(self.docs) for v in self._df.values())
        return doc

    def document_frequency(self, term):
        return self._df.get(normalize(term), 0)

    def stats(self):
        return CorpusStats(len(self.docs), dict(sorted(self._df.items())))

    @property
    def vocabulary(self):
        return sorted(self._df)

    # -- persistence ---------------------------------------------------

    def save(self, directory):
        directory = Path(directory)
        directory.mkdir(parents=True, exist_ok=True)
        with open(directory / "docs.jsonl", "w", encoding="utf-8") as fh:
            for doc in self:
                fh.write(json.dumps(doc.to_json(), ensure_ascii=False, sort_keys=True) + "\n")
        stats = self.stats()
        with open(directory / "stats.json", "w", encoding="utf-8") as fh:
            json.dump({"n_docs": stats.n_docs, "df": stats.df}, fh, ensure_ascii=False, sort_keys=True, indent=1)
            fh.write("\n")

    @classmethod
    def load(cls, directory):
        directory = Path(directory)
        corpus = cls()
        try:
            with open(directory / "docs.jsonl", encoding="utf-8") as fh:
                for lineno, line in enumerate(fh, 1):
                    if not line.strip():
                        continue
                    doc = Document.from_json(json.loads(line))
                    corpus.docs[doc.doc_id] = doc
                    corpus._df.update(set(doc.normalized))
            with open(directory / "stats.json", encoding="utf-8") as fh:
                stored = json.load(fh)
        except (ValueError, KeyError, TypeError) as exc:
            raise DataError(f"corrupted corpus store {directory}: {exc}") from exc
        if stored.get("n_docs") != corpus.n_docs or stored.get("df") != dict(corpus._df):
            raise DataError(f"corpus store {directory}: stats.json disagrees with docs.jsonl")
        return corpus.seal()

    @classmethod
    def from_path(cls, path):
        """Build a corpus from a directory of ``.txt`` files or a JSONL file."""
        path = Path(path)
        corpus = cls()
        if path.is_dir():
            for txt in sorted(path.glob("*.txt")):
                corpus.ingest_document(txt.stem, txt.read_bytes())
        elif path.is_file():
            with open(path, encoding="utf-8") as fh:
                for lineno, line in enumerate(fh, 1):
                    if not line.strip():
                        continue
                    try:
                        row = json.loads(line)
                        corpus.ingest_document(row["id"], row["text"])
                    except (ValueError, KeyError, TypeError) as exc:
                        raise DataError(f"{path}:{lineno}: bad corpus record ({exc})") from exc
        else:
            raise FileNotFoundError(f"corpus input not found: {path}")
        return corpus
