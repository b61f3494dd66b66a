"""Runs the annotators over a parsed document in a fixed order.

Context variants of the same segment often repeat a match; the pipeline
keeps the first occurrence of each logical finding, keyed by segment and
phrase texts rather than token offsets so that prepended context cannot
split a duplicate into two.
"""

from __future__ import annotations

from ..ppd import ParsedDocument, ensure_ner
from .collection import (
    AFFIRMATIVE_ONLY,
    EXTENDED,
    annotate_collection,
    annotate_subject,
)
from .coreference import annotate_coreference
from .listing import annotate_list
from .phrase_graph import PhraseGraph
from .purpose import annotate_purpose
from .rules import MatchRule, load_collection_rules
from .subsumption import annotate_subsumption

MODES = (AFFIRMATIVE_ONLY, EXTENDED)


def run_annotators(
    doc: ParsedDocument,
    rules: list[MatchRule] | None = None,
    mode: str = AFFIRMATIVE_ONLY,
) -> PhraseGraph:
    """Annotate a parsed document and return the resulting phrase graph."""
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}")
    if rules is None:
        rules = load_collection_rules()

    sentences = [ensure_ner(s) for s in doc.sentences]
    working = ParsedDocument(doc.source_id, doc.tree, sentences)

    graph = PhraseGraph()
    graph.sentence_segments = {i: s.segment for i, s in enumerate(sentences)}

    seen_collect: set[tuple] = set()
    seen_subsume: set[tuple] = set()
    seen_purpose: set[tuple] = set()

    def keep(added, seen, key_fn):
        start = len(graph.edges) - len(added)
        kept = []
        for edge in added:
            key = key_fn(edge)
            if key not in seen:
                seen.add(key)
                kept.append(edge)
        graph.edges[start:] = kept

    for i, sentence in enumerate(sentences):
        seg = sentence.segment

        added = annotate_collection(sentence, i, graph, rules, mode=mode)
        keep(
            added,
            seen_collect,
            lambda e: (
                seg,
                e.rule,
                e.kind,
                e.action,
                e.subject,
                graph.nodes[e.src].text.lower(),
                graph.nodes[e.dst].text.lower(),
            ),
        )

        added = annotate_subsumption(sentence, i, graph)
        keep(
            added,
            seen_subsume,
            lambda e: (
                seg,
                e.rule,
                graph.nodes[e.src].text.lower(),
                graph.nodes[e.dst].text.lower(),
            ),
        )

        added = annotate_purpose(sentence, i, graph)
        keep(
            added,
            seen_purpose,
            lambda e: (
                seg,
                graph.nodes[e.src].text.lower(),
                graph.nodes[e.dst].text.lower(),
            ),
        )

    for i in range(len(sentences)):
        annotate_coreference(sentences, i, graph)

    annotate_list(working, graph)

    if mode == EXTENDED:
        for i, sentence in enumerate(sentences):
            annotate_subject(sentence, i, graph)

    return graph
