"""Small shared helpers: canonical JSON and package data paths."""

import json
from importlib import resources


def canonical_json(obj) -> str:
    """Serialize with a fixed key order and spacing so outputs are byte-stable."""
    return json.dumps(obj, ensure_ascii=False, sort_keys=True, indent=2) + "\n"


def canonical_json_line(obj) -> str:
    """One-line canonical JSON, for JSON-lines outputs."""
    return json.dumps(obj, ensure_ascii=False, sort_keys=True, separators=(",", ":"))


def data_path(name: str):
    """Path to a data file shipped inside the package."""
    return resources.files("poligraph").joinpath("data").joinpath(name)


def read_data_text(name: str) -> str:
    return data_path(name).read_text(encoding="utf-8")
