"""List structure annotator.

Works on the document tree rather than single sentences.  Two operations:

* an intro sentence that points at "the following ..." (or "... below")
  subsumes the head phrase of every list item under the same parent segment;
* an edge landing on one list item's head phrase is replicated to the heads
  of its sibling items, so statements distributed across bullets line up.
"""

from __future__ import annotations

from collections import defaultdict

from ..document import SegmentKind
from ..ppd import NerLabel, ParsedDocument, Sentence
from .phrase_graph import (
    COLLECT,
    DATA,
    ENTITY,
    NOT_COLLECT,
    SUBSUME,
    PhraseEdge,
    PhraseGraph,
    PhraseNode,
)

_MARKERS = {"following", "below", "follow"}


def _item_groups(doc: ParsedDocument) -> dict[int, list[int]]:
    """Parent segment id -> list item segment ids, in document order."""
    groups: dict[int, list[int]] = defaultdict(list)
    for seg in doc.tree.segments:
        if seg.kind == SegmentKind.LISTITEM and seg.parent is not None:
            groups[seg.parent].append(seg.id)
    return groups


def _base_sentence(doc: ParsedDocument, segment_id: int) -> int | None:
    for i, sent in enumerate(doc.sentences):
        if sent.segment == segment_id and sent.variant_depth == 0:
            return i
    return None


def _item_head(
    doc: ParsedDocument, segment_id: int, graph: PhraseGraph, label: str | None = None
) -> PhraseNode | None:
    """The phrase spanning the root of the item's own sentence."""
    idx = _base_sentence(doc, segment_id)
    if idx is None:
        return None
    sent = doc.sentences[idx]
    order = [label] if label else [DATA, ENTITY]
    for lab in order:
        ner_label = NerLabel.DATA if lab == DATA else NerLabel.ENTITY
        span = sent.span_at(sent.root, label=ner_label)
        if span is not None:
            return graph.node_for(
                idx, span.start, span.end, lab, sent.span_text(span)
            )
    return None


def _marker_spans(sentence: Sentence):
    """NER spans that point forward at a list."""
    for span in sentence.ner:
        inside = any(
            sentence.tokens[t].text.lower() in _MARKERS
            or sentence.tokens[t].lemma.lower() in _MARKERS
            for t in range(span.start, span.end)
        )
        if not inside:
            root = sentence.span_root(span.start, span.end)
            inside = any(
                sentence.tokens[c].text.lower() in _MARKERS
                or sentence.tokens[c].lemma.lower() in _MARKERS
                for c in sentence.children(root)
            )
        if inside:
            yield span


def _follow_markers(
    doc: ParsedDocument, graph: PhraseGraph, groups: dict[int, list[int]]
) -> list[PhraseEdge]:
    added = []
    emitted = set()
    for sent_index, sentence in enumerate(doc.sentences):
        items = groups.get(sentence.segment)
        if not items:
            continue
        for span in _marker_spans(sentence):
            label = DATA if span.label == NerLabel.DATA else ENTITY
            hyper = graph.node_for(
                sent_index, span.start, span.end, label, sentence.span_text(span)
            )
            for item in items:
                head = _item_head(doc, item, graph, label=label)
                if head is None or head.id == hyper.id:
                    continue
                key = (hyper.id, head.id)
                if key in emitted:
                    continue
                emitted.add(key)
                edge = PhraseEdge(
                    src=hyper.id,
                    dst=head.id,
                    kind=SUBSUME,
                    sentence=sent_index,
                    rule="list-following",
                )
                graph.add_edge(edge)
                added.append(edge)
    return added


def _replicate(
    doc: ParsedDocument, graph: PhraseGraph, groups: dict[int, list[int]]
) -> list[PhraseEdge]:
    heads: dict[int, list[tuple[int, PhraseNode]]] = {}
    for parent, items in groups.items():
        group = []
        for item in items:
            node = _item_head(doc, item, graph)
            if node is not None:
                group.append((item, node))
        if len(group) > 1:
            heads[parent] = group

    existing = {
        (e.kind, e.action, graph.nodes[e.src].text.lower(), graph.nodes[e.dst].text.lower())
        for e in graph.edges
        if e.kind in (COLLECT, NOT_COLLECT, SUBSUME)
    }
    added = []
    for edge in list(graph.edges):
        if edge.kind not in (COLLECT, NOT_COLLECT, SUBSUME):
            continue
        src = graph.nodes[edge.src]
        dst = graph.nodes[edge.dst]
        if src.sentence == dst.sentence and src.end > dst.start:
            continue
        for group in heads.values():
            matched = [
                (item, h) for item, h in group if h.text.lower() == dst.text.lower()
            ]
            if not matched:
                continue
            for item, _ in matched:
                if edge.kind == SUBSUME:
                    src_seg = doc.sentences[src.sentence].segment
                    if src_seg == item:
                        matched = []
                        break
            if not matched:
                continue
            for item, head in group:
                if head.text.lower() == dst.text.lower():
                    continue
                key = (edge.kind, edge.action, src.text.lower(), head.text.lower())
                if key in existing:
                    continue
                existing.add(key)
                new = PhraseEdge(
                    src=src.id,
                    dst=head.id,
                    kind=edge.kind,
                    sentence=edge.sentence,
                    rule="list",
                    action=edge.action,
                    subject=edge.subject,
                )
                graph.add_edge(new)
                added.append(new)
    return added


def annotate_list(doc: ParsedDocument, graph: PhraseGraph) -> list[PhraseEdge]:
    """Run both list operations over the whole document."""
    groups = _item_groups(doc)
    if not groups:
        return []
    added = _follow_markers(doc, graph, groups)
    added.extend(_replicate(doc, graph, groups))
    return added
