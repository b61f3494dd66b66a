"""The knowledge graph built from a phrase graph.

Nodes are normalized term names split into data and entity sides; SUBSUME
edges order terms of the same kind from broader to narrower; COLLECT and
NOT_COLLECT edges connect an entity to a data term and carry an action, a
data subject, and purpose attributes.  The graph is kept acyclic: an edge
that would close a subsumption cycle is dropped with a warning.

Inference helpers follow the graph definitions: `subsumes` is reflexive and
transitive over stored SUBSUME edges, `collects` lifts stored COLLECT edges
through subsumption on both endpoints, and `purposes_of` unions purpose
texts over the covering edges.
"""

from __future__ import annotations

import json
import logging
import re
import xml.etree.ElementTree as ET
from dataclasses import dataclass, field
from functools import lru_cache

import yaml

from .annotators import (
    AFFIRMATIVE_ONLY,
    COLLECT,
    DATA,
    ENTITY,
    MODES,
    NOT_COLLECT,
    PURPOSE,
    SUBSUME,
    PhraseGraph,
)
from .errors import FormatError, ValidationError
from .normalize import Normalizer, load_default_normalizer, resolve_coref_chain
from .ontology import Ontology
from .ppd import NerLabel
from .util import canonical_json, read_data_text

log = logging.getLogger(__name__)

_PRONOUN_TEXTS = {"it", "they", "them", "this", "that", "these", "those"}
_PURPOSE_MARKERS = ("in order to ", "to ", "for ")

PURPOSE_OTHER = "other"


@dataclass(frozen=True)
class PurposePhrase:
    text: str
    categories: frozenset[str]

    def to_json_obj(self) -> dict:
        return {"text": self.text, "categories": sorted(self.categories)}


@dataclass(frozen=True)
class CollectEdge:
    entity: str
    data: str
    polarity: str = COLLECT
    action: str | None = None
    subject: str | None = None

    def key(self) -> tuple:
        return (self.entity, self.data, self.polarity, self.action or "", self.subject or "")


@lru_cache(maxsize=1)
def load_purpose_lexicon() -> dict[str, tuple[str, ...]]:
    obj = yaml.safe_load(read_data_text("purpose_lexicon.yaml"))
    return {
        category: tuple(str(s).lower() for s in stems)
        for category, stems in obj["categories"].items()
    }


def classify_purpose(text: str, lexicon: dict | None = None) -> set[str]:
    """Purpose categories hit by a phrase; {"other"} when none match."""
    if lexicon is None:
        lexicon = load_purpose_lexicon()
    low = text.lower()
    hits = {
        category
        for category, stems in lexicon.items()
        if any(re.search(r"\b" + re.escape(stem), low) for stem in stems)
    }
    return hits or {PURPOSE_OTHER}


def strip_purpose_marker(text: str) -> str:
    low = text.lower()
    for marker in _PURPOSE_MARKERS:
        if low.startswith(marker):
            return text[len(marker):]
    return text


@dataclass
class PoliGraph:
    source_id: str = ""
    mode: str = AFFIRMATIVE_ONLY
    data_nodes: set[str] = field(default_factory=set)
    entity_nodes: set[str] = field(default_factory=set)
    # (kind, broader, narrower) with kind in {DATA, ENTITY}
    subsume_edges: set[tuple[str, str, str]] = field(default_factory=set)
    collect_edges: list[CollectEdge] = field(default_factory=list)
    purposes: dict[tuple, tuple[PurposePhrase, ...]] = field(default_factory=dict)
    # edge key -> [{"segment": int, "rule": str}, ...]
    provenance: dict[tuple, list[dict]] = field(default_factory=dict)
    _closure: dict[str, dict[str, frozenset[str]]] = field(default_factory=dict)

    # -- structure ---------------------------------------------------------

    def nodes_of(self, kind: str) -> set[str]:
        return self.data_nodes if kind == DATA else self.entity_nodes

    def has_node(self, term: str, kind: str) -> bool:
        return term in self.nodes_of(kind)

    def validate(self) -> None:
        for kind, parent, child in self.subsume_edges:
            if kind not in (DATA, ENTITY):
                raise ValidationError(f"unknown subsume kind {kind!r}")
            pool = self.nodes_of(kind)
            if parent not in pool or child not in pool:
                raise ValidationError(
                    f"subsume edge endpoint missing: {parent!r} -> {child!r}"
                )
            if parent == child:
                raise ValidationError(f"subsume self-loop on {parent!r}")
        for edge in self.collect_edges:
            if edge.entity not in self.entity_nodes:
                raise ValidationError(f"collect edge entity missing: {edge.entity!r}")
            if edge.data not in self.data_nodes:
                raise ValidationError(f"collect edge data missing: {edge.data!r}")
            if edge.polarity not in (COLLECT, NOT_COLLECT):
                raise ValidationError(f"unknown polarity {edge.polarity!r}")
            if self.mode == AFFIRMATIVE_ONLY and edge.polarity == NOT_COLLECT:
                raise ValidationError("negative edge in affirmative-only graph")
        for kind in (DATA, ENTITY):
            self._check_acyclic(kind)
        keys = {e.key() for e in self.collect_edges}
        for key in self.purposes:
            if key not in keys:
                raise ValidationError(f"purposes attached to unknown edge {key!r}")

    def _check_acyclic(self, kind: str) -> None:
        children: dict[str, list[str]] = {}
        for k, parent, child in self.subsume_edges:
            if k == kind:
                children.setdefault(parent, []).append(child)
        WHITE, GRAY, BLACK = 0, 1, 2
        color: dict[str, int] = {}

        def visit(term: str) -> None:
            color[term] = GRAY
            for child in children.get(term, []):
                state = color.get(child, WHITE)
                if state == GRAY:
                    raise ValidationError(
                        f"subsumption cycle through {term!r} -> {child!r}"
                    )
                if state == WHITE:
                    visit(child)
            color[term] = BLACK

        for term in list(children):
            if color.get(term, WHITE) == WHITE:
                visit(term)

    # -- inference ---------------------------------------------------------

    def _descendants(self, term: str, kind: str) -> frozenset[str]:
        cache = self._closure.setdefault(kind, {})
        cached = cache.get(term)
        if cached is not None:
            return cached
        children: dict[str, list[str]] = {}
        for k, parent, child in self.subsume_edges:
            if k == kind:
                children.setdefault(parent, []).append(child)
        out = {term}
        stack = [term]
        while stack:
            cur = stack.pop()
            for child in children.get(cur, []):
                if child not in out:
                    out.add(child)
                    stack.append(child)
        result = frozenset(out)
        cache[term] = result
        return result

    def subsumes(self, broader: str, narrower: str, kind: str = DATA) -> bool:
        """Reflexive, transitive subsumption; false unless both terms exist."""
        pool = self.nodes_of(kind)
        if broader not in pool or narrower not in pool:
            return False
        return narrower in self._descendants(broader, kind)

    def collects(self, entity: str, data: str) -> bool:
        for edge in self.collect_edges:
            if edge.polarity != COLLECT:
                continue
            if self.subsumes(edge.entity, entity, ENTITY) and self.subsumes(
                edge.data, data, DATA
            ):
                return True
        return False

    def covering_edges(self, entity: str, data: str) -> list[CollectEdge]:
        return [
            e
            for e in self.collect_edges
            if e.polarity == COLLECT
            and self.subsumes(e.entity, entity, ENTITY)
            and self.subsumes(e.data, data, DATA)
        ]

    def purposes_of(self, entity: str, data: str) -> set[str]:
        out: set[str] = set()
        for edge in self.covering_edges(entity, data):
            for phrase in self.purposes.get(edge.key(), ()):
                out.add(phrase.text)
        return out

    def edge_purposes(self, edge: CollectEdge) -> tuple[PurposePhrase, ...]:
        return self.purposes.get(edge.key(), ())

    def local_ontology(self, kind: str) -> Ontology:
        children: dict[str, list[str]] = {t: [] for t in self.nodes_of(kind)}
        edges = set()
        for k, parent, child in self.subsume_edges:
            if k == kind:
                children[parent].append(child)
                edges.add((parent, child))
        return Ontology(
            name=f"local-{kind.lower()}",
            kind=kind,
            root=None,
            nodes=set(self.nodes_of(kind)),
            edges=edges,
            category_level=set(),
            _children=children,
        )


# -- construction -----------------------------------------------------------


def build_poligraph(
    phrase_graph: PhraseGraph,
    normalizer: Normalizer | None = None,
    mode: str = AFFIRMATIVE_ONLY,
    source_id: str = "",
    lexicon: dict | None = None,
) -> PoliGraph:
    """Normalize a phrase graph into the final knowledge graph."""
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}")
    if normalizer is None:
        normalizer = load_default_normalizer()

    coref = phrase_graph.coref_map()
    segments = phrase_graph.sentence_segments

    resolved: dict[int, int] = {}
    terms: dict[int, object] = {}

    def resolve(node_id: int):
        if node_id in resolved:
            final_id = resolved[node_id]
        else:
            final_id = resolve_coref_chain(node_id, coref)
            resolved[node_id] = final_id
        node = phrase_graph.nodes[final_id]
        if node.text.lower() in _PRONOUN_TEXTS:
            return node, None
        if final_id not in terms:
            kind = NerLabel.DATA if node.label == DATA else NerLabel.ENTITY
            terms[final_id] = normalizer.normalize(node.text, kind)
        return node, terms[final_id]

    graph = PoliGraph(source_id=source_id, mode=mode)

    collect_map: dict[tuple, CollectEdge] = {}
    contributions: dict[tuple[int, str], set[tuple]] = {}

    for edge in phrase_graph.edges_of_kind(COLLECT, NOT_COLLECT):
        if mode == AFFIRMATIVE_ONLY and edge.kind == NOT_COLLECT:
            continue
        src_node, src_term = resolve(edge.src)
        dst_node, dst_term = resolve(edge.dst)
        if src_term is None or dst_term is None:
            continue  # unresolved pronoun
        if src_node.label != ENTITY or dst_node.label != DATA:
            continue
        if mode == AFFIRMATIVE_ONLY:
            ce = CollectEdge(entity=src_term.name, data=dst_term.name)
        else:
            ce = CollectEdge(
                entity=src_term.name,
                data=dst_term.name,
                polarity=edge.kind,
                action=edge.action,
                subject=edge.subject,
            )
        key = ce.key()
        collect_map.setdefault(key, ce)
        segment = segments.get(edge.sentence, edge.sentence)
        graph.provenance.setdefault(key, []).append(
            {"segment": segment, "rule": edge.rule}
        )
        contributions.setdefault((segment, dst_term.name), set()).add(key)

    subsume_order = sorted(
        phrase_graph.edges_of_kind(SUBSUME),
        key=lambda e: (e.sentence, e.rule, e.src, e.dst),
    )
    children: dict[str, dict[str, set[str]]] = {DATA: {}, ENTITY: {}}

    def reaches(kind: str, start: str, goal: str) -> bool:
        seen = {start}
        stack = [start]
        while stack:
            cur = stack.pop()
            if cur == goal:
                return True
            for nxt in children[kind].get(cur, ()):
                if nxt not in seen:
                    seen.add(nxt)
                    stack.append(nxt)
        return False

    for edge in subsume_order:
        src_node, src_term = resolve(edge.src)
        dst_node, dst_term = resolve(edge.dst)
        if src_term is None or dst_term is None:
            continue
        if src_node.label != dst_node.label:
            continue
        kind = src_node.label
        parent, child = src_term.name, dst_term.name
        if parent == child:
            continue
        if (kind, parent, child) in graph.subsume_edges:
            pass
        elif reaches(kind, child, parent):
            log.warning(
                "dropping cycle-closing subsumption %r -> %r (%s)",
                parent,
                child,
                kind,
            )
            continue
        graph.subsume_edges.add((kind, parent, child))
        children[kind].setdefault(parent, set()).add(child)
        graph.provenance.setdefault((kind, parent, child), []).append(
            {"segment": segments.get(edge.sentence, edge.sentence), "rule": edge.rule}
        )

    for edge in phrase_graph.edges_of_kind(PURPOSE):
        src_node, src_term = resolve(edge.src)
        if src_term is None or src_node.label != DATA:
            continue
        purpose_node = phrase_graph.nodes[edge.dst]
        text = strip_purpose_marker(purpose_node.text)
        segment = segments.get(edge.sentence, edge.sentence)
        keys = contributions.get((segment, src_term.name))
        if not keys:
            continue
        phrase = PurposePhrase(
            text=text, categories=frozenset(classify_purpose(text, lexicon))
        )
        for key in keys:
            existing = graph.purposes.get(key, ())
            if any(p.text == phrase.text for p in existing):
                continue
            graph.purposes[key] = existing + (phrase,)

    graph.collect_edges = sorted(collect_map.values(), key=lambda e: e.key())
    for edge in graph.collect_edges:
        graph.entity_nodes.add(edge.entity)
        graph.data_nodes.add(edge.data)
    for kind, parent, child in graph.subsume_edges:
        pool = graph.nodes_of(kind)
        pool.add(parent)
        pool.add(child)

    # provenance entries deduplicated and ordered
    for key, rows in graph.provenance.items():
        unique = sorted({(r["segment"], r["rule"]) for r in rows})
        graph.provenance[key] = [{"segment": s, "rule": r} for s, r in unique]
    # purposes in stable text order
    for key, phrases in list(graph.purposes.items()):
        graph.purposes[key] = tuple(sorted(phrases, key=lambda p: p.text))

    graph.validate()
    return graph


# -- serialization ----------------------------------------------------------


def _edge_key_str(key: tuple) -> list:
    return list(key)


def graph_to_json_obj(graph: PoliGraph) -> dict:
    collect = []
    for edge in sorted(graph.collect_edges, key=lambda e: e.key()):
        key = edge.key()
        collect.append(
            {
                "entity": edge.entity,
                "data": edge.data,
                "polarity": edge.polarity,
                "action": edge.action,
                "subject": edge.subject,
                "purposes": [p.to_json_obj() for p in graph.purposes.get(key, ())],
                "provenance": graph.provenance.get(key, []),
            }
        )
    subsume = []
    for kind, parent, child in sorted(graph.subsume_edges):
        subsume.append(
            {
                "kind": kind,
                "broader": parent,
                "narrower": child,
                "provenance": graph.provenance.get((kind, parent, child), []),
            }
        )
    return {
        "source_id": graph.source_id,
        "mode": graph.mode,
        "data_nodes": sorted(graph.data_nodes),
        "entity_nodes": sorted(graph.entity_nodes),
        "collect_edges": collect,
        "subsume_edges": subsume,
    }


def graph_from_json_obj(obj: dict) -> PoliGraph:
    try:
        graph = PoliGraph(
            source_id=obj.get("source_id", ""),
            mode=obj.get("mode", AFFIRMATIVE_ONLY),
            data_nodes=set(obj["data_nodes"]),
            entity_nodes=set(obj["entity_nodes"]),
        )
        for row in obj["subsume_edges"]:
            key = (row["kind"], row["broader"], row["narrower"])
            graph.subsume_edges.add(key)
            if row.get("provenance"):
                graph.provenance[key] = row["provenance"]
        for row in obj["collect_edges"]:
            edge = CollectEdge(
                entity=row["entity"],
                data=row["data"],
                polarity=row.get("polarity", COLLECT),
                action=row.get("action"),
                subject=row.get("subject"),
            )
            graph.collect_edges.append(edge)
            key = edge.key()
            if row.get("purposes"):
                graph.purposes[key] = tuple(
                    PurposePhrase(p["text"], frozenset(p["categories"]))
                    for p in row["purposes"]
                )
            if row.get("provenance"):
                graph.provenance[key] = row["provenance"]
    except (KeyError, TypeError) as exc:
        raise FormatError(f"bad graph file: {exc}") from exc
    graph.validate()
    return graph


def load_graph(text: str) -> PoliGraph:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"bad graph file: {exc}", offset=exc.pos) from exc
    if not isinstance(obj, dict):
        raise FormatError("bad graph file: expected an object")
    return graph_from_json_obj(obj)


def _dot_quote(name: str) -> str:
    return '"' + name.replace("\\", "\\\\").replace('"', '\\"') + '"'


def graph_to_dot(graph: PoliGraph) -> str:
    lines = ["digraph poligraph {"]
    for term in sorted(graph.data_nodes):
        lines.append(f"  {_dot_quote('d:' + term)} [label={_dot_quote(term)}, kind=DATA];")
    for term in sorted(graph.entity_nodes):
        lines.append(
            f"  {_dot_quote('e:' + term)} [label={_dot_quote(term)}, kind=ENTITY];"
        )
    for kind, parent, child in sorted(graph.subsume_edges):
        prefix = "d:" if kind == DATA else "e:"
        lines.append(
            f"  {_dot_quote(prefix + parent)} -> {_dot_quote(prefix + child)}"
            " [kind=SUBSUME];"
        )
    for edge in sorted(graph.collect_edges, key=lambda e: e.key()):
        attrs = [f"kind={edge.polarity}"]
        if edge.action:
            attrs.append(f"action={_dot_quote(edge.action)}")
        if edge.subject:
            attrs.append(f"subject={_dot_quote(edge.subject)}")
        lines.append(
            f"  {_dot_quote('e:' + edge.entity)} -> {_dot_quote('d:' + edge.data)}"
            f" [{', '.join(attrs)}];"
        )
    lines.append("}")
    return "\n".join(lines) + "\n"


def graph_to_graphml(graph: PoliGraph) -> str:
    root = ET.Element("graphml", xmlns="http://graphml.graphdrawing.org/xmlns")
    keys = [
        ("kind", "node"),
        ("label", "node"),
        ("kind", "edge"),
        ("action", "edge"),
        ("subject", "edge"),
        ("purposes", "edge"),
    ]
    for i, (name, target) in enumerate(keys):
        ET.SubElement(
            root,
            "key",
            id=f"k{i}",
            attrib={"for": target, "attr.name": name, "attr.type": "string"},
        )
    gml = ET.SubElement(root, "graph", id="poligraph", edgedefault="directed")

    def node_el(node_id: str, kind: str, label: str):
        el = ET.SubElement(gml, "node", id=node_id)
        d = ET.SubElement(el, "data", key="k0")
        d.text = kind
        d = ET.SubElement(el, "data", key="k1")
        d.text = label

    for term in sorted(graph.data_nodes):
        node_el("d:" + term, DATA, term)
    for term in sorted(graph.entity_nodes):
        node_el("e:" + term, ENTITY, term)

    def edge_el(src: str, dst: str, kind: str, action=None, subject=None, purposes=None):
        el = ET.SubElement(gml, "edge", source=src, target=dst)
        d = ET.SubElement(el, "data", key="k2")
        d.text = kind
        if action:
            d = ET.SubElement(el, "data", key="k3")
            d.text = action
        if subject:
            d = ET.SubElement(el, "data", key="k4")
            d.text = subject
        if purposes:
            d = ET.SubElement(el, "data", key="k5")
            d.text = json.dumps([p.to_json_obj() for p in purposes], sort_keys=True)

    for kind, parent, child in sorted(graph.subsume_edges):
        prefix = "d:" if kind == DATA else "e:"
        edge_el(prefix + parent, prefix + child, SUBSUME)
    for edge in sorted(graph.collect_edges, key=lambda e: e.key()):
        edge_el(
            "e:" + edge.entity,
            "d:" + edge.data,
            edge.polarity,
            edge.action,
            edge.subject,
            graph.purposes.get(edge.key(), ()),
        )
    ET.indent(root)
    return ET.tostring(root, encoding="unicode", xml_declaration=True) + "\n"


def export_graph(graph: PoliGraph, format: str = "json") -> str:
    if format == "json":
        return canonical_json(graph_to_json_obj(graph))
    if format == "dot":
        return graph_to_dot(graph)
    if format == "graphml":
        return graph_to_graphml(graph)
    raise ValueError(f"unknown format {format!r}")


__all__ = [
    "CollectEdge",
    "PoliGraph",
    "PurposePhrase",
    "PURPOSE_OTHER",
    "build_poligraph",
    "classify_purpose",
    "strip_purpose_marker",
    "load_purpose_lexicon",
    "graph_to_json_obj",
    "graph_from_json_obj",
    "load_graph",
    "export_graph",
    "graph_to_dot",
    "graph_to_graphml",
]
