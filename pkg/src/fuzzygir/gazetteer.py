"""Gazetteer of named places with footprints and a place-area hierarchy."""
import csv
import enum
import math
from dataclasses import dataclass
from pathlib import Path

from .corpus import tokenize
from .errors import GazetteerError, UnknownPlaceError
from .geo import Footprint

COLUMNS = ["place_id", "primary_name", "alt_names", "level", "lon", "lat", "polygon", "parent_id", "importance"]

DEFAULT_RADIUS_KM = {"landmark": 0.5, "neighborhood": 1.0, "city": 10.0, "region": 100.0, "country": 500.0}


class GranularityLevel(enum.IntEnum):
    LANDMARK = 0
    NEIGHBORHOOD = 1
    CITY = 2
    REGION = 3
    COUNTRY = 4

    @property
    def label(self):
        return self.name.lower()

    @classmethod
    def parse(cls, value):
        if isinstance(value, cls):
            return value
        if isinstance(value, int):
            return cls(value)
        return cls[str(value).strip().upper()]


def normalize_name(name):
    """Normalise a place name the same way document text is tokenised."""
    return " ".join(t.normalized for t in tokenize(name))


@dataclass(frozen=True)
class PlaceEntry:
    place_id: str
    primary_name: str
    alt_names: tuple
    level: GranularityLevel
    lon: float
    lat: float
    polygon: tuple = None
    parent_id: str = None
    importance: float = 0.5

    @property
    def names(self):
        return (self.primary_name,) + tuple(self.alt_names)


def _parse_polygon(text):
    ring = []
    for pair in text.split(";"):
        pair = pair.strip()
        if not pair:
            continue
        lon, lat = pair.split()
        ring.append((float(lon), float(lat)))
    return tuple(ring)


def _bad_coord(lon, lat):
    return not (math.isfinite(lon) and math.isfinite(lat) and -180 <= lon <= 180 and -90 <= lat <= 90)


class Gazetteer:
    """Immutable place dictionary.

    ``radius_km`` maps level labels to the disc radius used as the extent of
    entries that only carry a point.
    """

    def __init__(self, entries=(), radius_km=None):
        self.entries = {}
        self.name_index = {}
        self.radius_km = dict(DEFAULT_RADIUS_KM)
        if radius_km:
            self.radius_km.update(radius_km)
        for e in entries:
            self.entries[e.place_id] = e
            for name in e.names:
                self.name_index.setdefault(normalize_name(name), set()).add(e.place_id)
        self.max_name_tokens = max((len(k.split()) for k in self.name_index), default=0)
        self._children = {}
        for e in self.entries.values():
            if e.parent_id is not None:
                self._children.setdefault(e.parent_id, []).append(e.place_id)

    def __len__(self):
        return len(self.entries)

    def __contains__(self, place_id):
        return place_id in self.entries

    def __getitem__(self, place_id):
        try:
            return self.entries[place_id]
        except KeyError:
            raise UnknownPlaceError(f"unknown place_id: {place_id!r}") from None

    def __iter__(self):
        return iter(self.entries[k] for k in sorted(self.entries))

    def lookup(self, name):
        ids = self.name_index.get(normalize_name(name), ())
        return sorted((self.entries[i] for i in ids), key=lambda e: (-e.importance, e.place_id))

    def ancestors(self, place_id):
        """Parent chain of ``place_id``, nearest first (excluding itself)."""
        chain = []
        entry = self[place_id]
        while entry.parent_id is not None:
            entry = self.entries[entry.parent_id]
            chain.append(entry.place_id)
        return chain

    def children(self, place_id):
        return sorted(self._children.get(place_id, ()))

    def contains(self, ancestor, descendant):
        self[ancestor]
        return ancestor == descendant or ancestor in self.ancestors(descendant)

    def related(self, a, b):
        """True when either place contains the other."""
        return self.contains(a, b) or self.contains(b, a)

    def granularity_of(self, place_id):
        return self[place_id].level

    def depth(self):
        return max((len(self.ancestors(p)) + 1 for p in self.entries), default=0)

    def footprint(self, place_id):
        e = self[place_id]
        if e.polygon is not None:
            return Footprint(e.lon, e.lat, 0.0, e.polygon)
        return Footprint(e.lon, e.lat, float(self.radius_km[e.level.label]))

    # -- loading -------------------------------------------------------

    @classmethod
    def load(cls, path, radius_km=None, default_importance=0.5):
        return load_gazetteer(path, radius_km=radius_km, default_importance=default_importance)

    def dump_tsv(self, path):
        with open(path, "w", encoding="utf-8", newline="") as fh:
            w = csv.writer(fh, delimiter="\t", lineterminator="\n")
            w.writerow(COLUMNS)
            for e in self:
                poly = ";".join(f"{lon!r} {lat!r}" for lon, lat in e.polygon) if e.polygon else ""
                w.writerow([
                    e.place_id, e.primary_name, "|".join(e.alt_names), e.level.label,
                    repr(e.lon), repr(e.lat), poly, e.parent_id or "", repr(e.importance),
                ])


def load_gazetteer(path, radius_km=None, default_importance=0.5):
    """Parse and validate a gazetteer TSV; every violating row is reported."""
    path = Path(path)
    problems = []
    entries = []
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh, delimiter="\t", quoting=csv.QUOTE_NONE)
        header = next(reader, None)
        if header is None:
            return Gazetteer((), radius_km)
        if [h.strip() for h in header[:6]] != COLUMNS[:6]:
            raise GazetteerError([f"{path}: header must start with {' '.join(COLUMNS[:6])}"])
        for lineno, row in enumerate(reader, 2):
            if not any(cell.strip() for cell in row):
                continue
            if not 6 <= len(row) <= len(COLUMNS):
                problems.append(f"line {lineno}: expected 6-9 columns, got {len(row)}")
                continue
            row = [c.strip() for c in row] + [""] * (len(COLUMNS) - len(row))
            pid, name, alts, level, lon, lat, poly, parent, importance = row
            if not pid or not name:
                problems.append(f"line {lineno}: empty place_id or primary_name")
                continue
            try:
                level = GranularityLevel.parse(level)
            except KeyError:
                problems.append(f"line {lineno}: unknown level {level!r}")
                continue
            try:
                lon, lat = float(lon), float(lat)
                polygon = _parse_polygon(poly) if poly else None
                importance = float(importance) if importance else default_importance
            except ValueError as exc:
                problems.append(f"line {lineno}: malformed number ({exc})")
                continue
            if _bad_coord(lon, lat) or (polygon and any(_bad_coord(x, y) for x, y in polygon)):
                problems.append(f"line {lineno}: coordinate out of range")
                continue
            if polygon is not None and (len(polygon) < 4 or polygon[0] != polygon[-1]):
                problems.append(f"line {lineno}: polygon ring must be closed with >= 4 vertices")
                continue
            if not 0.0 <= importance <= 1.0:
                problems.append(f"line {lineno}: importance outside [0, 1]")
                continue
            alt_names = tuple(a.strip() for a in alts.split("|") if a.strip())
            entries.append((lineno, PlaceEntry(pid, name, alt_names, level, lon, lat, polygon, parent or None, importance)))

    by_id = {}
    for lineno, e in entries:
        if e.place_id in by_id:
            problems.append(f"line {lineno}: duplicate place_id {e.place_id!r}")
        else:
            by_id[e.place_id] = (lineno, e)
    for pid, (lineno, e) in by_id.items():
        if e.parent_id is None:
            continue
        if e.parent_id == pid:
            problems.append(f"line {lineno}: cyclic containment ({pid!r} is its own parent)")
            continue
        if e.parent_id not in by_id:
            problems.append(f"line {lineno}: unknown parent_id {e.parent_id!r}")
            continue
        seen = {pid}
        cur = by_id[e.parent_id][1]
        while cur is not None:
            if cur.place_id in seen:
                problems.append(f"line {lineno}: cyclic containment through {cur.place_id!r}")
                break
            seen.add(cur.place_id)
            cur = by_id.get(cur.parent_id, (None, None))[1] if cur.parent_id else None
        parent = by_id[e.parent_id][1]
        if parent.level <= e.level:
            problems.append(f"line {lineno}: parent {parent.place_id!r} is not coarser than {pid!r}")
    if problems:
        raise GazetteerError(problems)
    return Gazetteer((e for _, e in entries), radius_km)
