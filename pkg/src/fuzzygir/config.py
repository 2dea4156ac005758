"""Tunable parameters.

Every numeric choice of the engine lives in a JSON file under a config
directory. The defaults ship inside the package; a user directory only needs
the keys it overrides.
"""
import copy
import json
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

SECTIONS = ("extraction", "fuzzy", "retrieval", "gazetteer", "index")


def _read_defaults(name):
    text = resources.files("fuzzygir").joinpath("config").joinpath(f"{name}.json").read_text("utf-8")
    return json.loads(text)


def _merge(base, override):
    out = copy.deepcopy(base)
    for key, value in override.items():
        if isinstance(value, dict) and isinstance(out.get(key), dict):
            out[key] = _merge(out[key], value)
        else:
            out[key] = copy.deepcopy(value)
    return out


@dataclass
class Config:
    extraction: dict = field(default_factory=lambda: _read_defaults("extraction"))
    fuzzy: dict = field(default_factory=lambda: _read_defaults("fuzzy"))
    retrieval: dict = field(default_factory=lambda: _read_defaults("retrieval"))
    gazetteer: dict = field(default_factory=lambda: _read_defaults("gazetteer"))
    index: dict = field(default_factory=lambda: _read_defaults("index"))

    @classmethod
    def load(cls, directory=None):
        """Defaults overlaid with ``<directory>/<section>.json`` where present."""
        cfg = cls()
        if directory is None:
            return cfg
        directory = Path(directory)
        if not directory.is_dir():
            raise FileNotFoundError(f"config directory not found: {directory}")
        for name in SECTIONS:
            path = directory / f"{name}.json"
            if path.exists():
                with open(path, encoding="utf-8") as fh:
                    setattr(cfg, name, _merge(getattr(cfg, name), json.load(fh)))
        return cfg

    def save(self, directory):
        directory = Path(directory)
        directory.mkdir(parents=True, exist_ok=True)
        for name in SECTIONS:
            with open(directory / f"{name}.json", "w", encoding="utf-8") as fh:
                json.dump(getattr(self, name), fh, indent=2)
                fh.write("\n")

    def with_overrides(self, **sections):
        cfg = copy.deepcopy(self)
        for name, override in sections.items():
            setattr(cfg, name, _merge(getattr(cfg, name), override))
        return cfg
