"""External term ontologies.

An ontology is a rooted DAG of terms with a marked category level.  The
shipped data ontology follows CCPA personal-information categories; the
entity ontology groups companies under service categories.  Both are loaded
from YAML files that list every term once and name its children.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import yaml

from .errors import OntologyError
from .util import read_data_text


@dataclass
class Ontology:
    name: str
    kind: str
    root: str
    nodes: set[str] = field(default_factory=set)
    edges: set[tuple[str, str]] = field(default_factory=set)
    category_level: set[str] = field(default_factory=set)
    _children: dict[str, list[str]] = field(default_factory=dict)
    _reach: dict[str, frozenset[str]] = field(default_factory=dict)

    def __contains__(self, term: str) -> bool:
        return term in self.nodes

    def children(self, term: str) -> list[str]:
        self._require(term)
        return list(self._children.get(term, []))

    def _require(self, term: str) -> None:
        if term not in self.nodes:
            raise OntologyError(f"undeclared term: {term!r}")

    def _descendants(self, term: str) -> frozenset[str]:
        cached = self._reach.get(term)
        if cached is not None:
            return cached
        out = {term}
        for child in self._children.get(term, []):
            out |= self._descendants(child)
        result = frozenset(out)
        self._reach[term] = result
        return result

    def subsumes(self, broader: str, narrower: str) -> bool:
        """Reflexive, transitive reachability from broader to narrower."""
        self._require(broader)
        self._require(narrower)
        return narrower in self._descendants(broader)

    def categorize(self, term: str) -> set[str]:
        """Categories whose subtree contains the term (a category names itself)."""
        self._require(term)
        return {c for c in self.category_level if term in self._descendants(c)}


def _check_acyclic(children: dict[str, list[str]]) -> None:
    WHITE, GRAY, BLACK = 0, 1, 2
    color = {t: WHITE for t in children}

    def visit(term: str) -> None:
        color[term] = GRAY
        for child in children.get(term, []):
            if color.get(child, WHITE) == GRAY:
                raise OntologyError(f"ontology cycle: {term!r} -> {child!r}")
            if color.get(child, WHITE) == WHITE:
                visit(child)
        color[term] = BLACK

    for term in list(children):
        if color[term] == WHITE:
            visit(term)


def load_ontology(text: str) -> Ontology:
    try:
        obj = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        raise OntologyError(f"unreadable ontology file: {exc}") from exc
    if not isinstance(obj, dict):
        raise OntologyError("ontology file must be a mapping")
    for key in ("name", "kind", "root", "terms"):
        if key not in obj:
            raise OntologyError(f"ontology file missing {key!r}")
    kind = obj["kind"]
    if kind not in ("DATA", "ENTITY"):
        raise OntologyError(f"unknown ontology kind {kind!r}")

    nodes: set[str] = set()
    children: dict[str, list[str]] = {}
    categories: set[str] = set()
    for row in obj["terms"]:
        if not isinstance(row, dict) or "term" not in row:
            raise OntologyError("each term entry needs a 'term' key")
        term = str(row["term"])
        if term in nodes:
            raise OntologyError(f"duplicate term: {term!r}")
        nodes.add(term)
        kids = row.get("subsumes", [])
        if not isinstance(kids, list):
            raise OntologyError(f"'subsumes' of {term!r} must be a list")
        children[term] = [str(k) for k in kids]
        if row.get("category"):
            categories.add(term)

    for parent, kids in children.items():
        for child in kids:
            if child not in nodes:
                raise OntologyError(f"undeclared term: {child!r}")
    root = str(obj["root"])
    if root not in nodes:
        raise OntologyError(f"undeclared term: {root!r}")

    _check_acyclic(children)

    edges = {(p, c) for p, kids in children.items() for c in kids}
    return Ontology(
        name=str(obj["name"]),
        kind=kind,
        root=root,
        nodes=nodes,
        edges=edges,
        category_level=categories,
        _children=children,
    )


@lru_cache(maxsize=1)
def load_data_ontology() -> Ontology:
    return load_ontology(read_data_text("data_ontology.yaml"))


@lru_cache(maxsize=1)
def load_entity_ontology() -> Ontology:
    return load_ontology(read_data_text("entity_ontology.yaml"))
