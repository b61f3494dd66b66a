"""Coreference annotator.

Resolves two kinds of anaphora against the nearest earlier phrase: noun
phrases opened by a demonstrative ("this information", "such data") and bare
pronouns left behind by the collection annotator.  The search window is the
same sentence and the previous sentence; each reference gets at most one
COREF edge.  Context variants of the current segment do not count as a
previous sentence, they restate the same one.
"""

from __future__ import annotations

from ..ppd import NerLabel, NerSpan, Sentence
from .phrase_graph import COREF, DATA, ENTITY, PhraseEdge, PhraseGraph, PhraseNode

DET_LEMMAS = {"this", "that", "these", "those", "such"}
GENERIC_ROOTS = {"information", "data", "datum"}
PRONOUNS = {"it", "they", "them", "this", "that", "these", "those"}


def _reference_kind(sentence: Sentence, node: PhraseNode):
    """Classify a node as ("pronoun"|"generic"|"root", root_lemma|None)."""
    width = node.end - node.start
    if width == 1 and node.text.lower() in PRONOUNS:
        return ("pronoun", None)
    if width > 1 and sentence.tokens[node.start].lemma.lower() in DET_LEMMAS:
        root = sentence.span_root(node.start, node.end)
        lemma = sentence.tokens[root].lemma.lower()
        if lemma in GENERIC_ROOTS:
            return ("generic", None)
        return ("root", lemma)
    return None


def _candidate_spans(
    sentence: Sentence, kind: tuple, label: str
) -> list[NerSpan]:
    out = []
    for span in sentence.ner:
        if kind[0] == "generic":
            if span.label != NerLabel.DATA:
                continue
        else:
            if span.label != label:
                continue
            if kind[0] == "root":
                root = sentence.span_root(span.start, span.end)
                if sentence.tokens[root].lemma.lower() != kind[1]:
                    continue
        out.append(span)
    return out


def annotate_coreference(
    sentences: list[Sentence], sent_index: int, graph: PhraseGraph
) -> list[PhraseEdge]:
    """Link references in one sentence to their nearest antecedents."""
    sentence = sentences[sent_index]
    seg = sentence.segment
    depth = sentence.variant_depth
    prev_index = None
    for j in range(sent_index - 1, -1, -1):
        if sentences[j].segment == seg and sentences[j].variant_depth != depth:
            continue
        prev_index = j
        break

    already = {e.src for e in graph.edges if e.kind == COREF}
    refs = [
        n
        for n in graph.nodes
        if n.sentence == sent_index
        and n.label in (DATA, ENTITY)
        and n.id not in already
    ]
    added: list[PhraseEdge] = []
    for node in refs:
        kind = _reference_kind(sentence, node)
        if kind is None:
            continue
        target_label = DATA if kind[0] == "generic" else node.label

        found: tuple[int, NerSpan] | None = None
        same = [
            s
            for s in _candidate_spans(sentence, kind, node.label)
            if s.end <= node.start
        ]
        if same:
            found = (sent_index, max(same, key=lambda s: (s.end, s.start)))
        elif prev_index is not None:
            prev = _candidate_spans(sentences[prev_index], kind, node.label)
            if prev:
                found = (prev_index, max(prev, key=lambda s: (s.end, s.start)))
        if found is None:
            continue
        tgt_index, span = found
        antecedent = graph.node_for(
            tgt_index,
            span.start,
            span.end,
            target_label,
            sentences[tgt_index].span_text(span),
        )
        if antecedent.id == node.id:
            continue
        edge = PhraseEdge(
            src=node.id,
            dst=antecedent.id,
            kind=COREF,
            sentence=sent_index,
            rule="coref",
        )
        graph.add_edge(edge)
        added.append(edge)
    return added
