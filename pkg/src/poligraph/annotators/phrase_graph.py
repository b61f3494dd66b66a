"""Intermediate graph over verbatim phrase spans.

Nodes wrap NER spans (plus pronouns and purpose clauses) from concrete
sentences; edges record relations found by the annotators before any
normalization or merging happens.
"""
from __future__ import annotations

from dataclasses import dataclass, field

DATA = "DATA"
ENTITY = "ENTITY"
PURPOSE_PHRASE = "PURPOSE_PHRASE"

COLLECT = "COLLECT"
NOT_COLLECT = "NOT_COLLECT"
SUBSUME = "SUBSUME"
PURPOSE = "PURPOSE"
COREF = "COREF"

GENERAL_USER = "general_user"
CHILD = "child"


@dataclass(frozen=True)
class PhraseNode:
    id: int
    sentence: int
    start: int
    end: int
    text: str
    label: str

    def span_key(self) -> tuple[int, int, int, str]:
        return (self.sentence, self.start, self.end, self.label)


@dataclass(frozen=True)
class PhraseEdge:
    src: int
    dst: int
    kind: str
    sentence: int
    rule: str
    action: str | None = None
    subject: str = GENERAL_USER
    anchor: int | None = None


@dataclass
class PhraseGraph:
    nodes: list[PhraseNode] = field(default_factory=list)
    edges: list[PhraseEdge] = field(default_factory=list)
    # sentence index -> originating document segment, filled by the pipeline
    sentence_segments: dict[int, int] = field(default_factory=dict)
    _index: dict[tuple[int, int, int, str], int] = field(default_factory=dict)

    def node_for(self, sentence: int, start: int, end: int, label: str,
                 text: str) -> PhraseNode:
        """Return the node for a span, creating it on first sight."""
        key = (sentence, start, end, label)
        node_id = self._index.get(key)
        if node_id is not None:
            return self.nodes[node_id]
        node = PhraseNode(len(self.nodes), sentence, start, end, text, label)
        self.nodes.append(node)
        self._index[key] = node.id
        return node

    def find(self, sentence: int, start: int, end: int,
             label: str) -> PhraseNode | None:
        node_id = self._index.get((sentence, start, end, label))
        return None if node_id is None else self.nodes[node_id]

    def add_edge(self, edge: PhraseEdge) -> None:
        self.edges.append(edge)

    def edges_of_kind(self, *kinds: str) -> list[PhraseEdge]:
        return [e for e in self.edges if e.kind in kinds]

    def coref_map(self) -> dict[int, int]:
        """First COREF edge per source node wins (one referent each)."""
        out: dict[int, int] = {}
        for edge in self.edges:
            if edge.kind == COREF and edge.src not in out:
                out[edge.src] = edge.dst
        return out

    def to_json_obj(self) -> dict:
        return {
            "nodes": [
                {
                    "id": n.id,
                    "sentence": n.sentence,
                    "start": n.start,
                    "end": n.end,
                    "text": n.text,
                    "label": n.label,
                }
                for n in self.nodes
            ],
            "edges": [
                {
                    "src": e.src,
                    "dst": e.dst,
                    "kind": e.kind,
                    "sentence": e.sentence,
                    "rule": e.rule,
                    "action": e.action,
                    "subject": e.subject,
                }
                for e in self.edges
            ],
        }
