"""Purpose clause annotator.

Finds infinitival purpose clauses ("to …", "in order to …") and
"for … purpose(s)" prepositional phrases, then links every data phrase in
the sentence that sits outside those clauses to each purpose phrase.  The
phrase text is kept verbatim, marker included; downstream consumers strip
the marker when they store purposes as attributes.
"""

from __future__ import annotations

from ..ppd import NerLabel, Sentence
from .phrase_graph import DATA, PURPOSE, PURPOSE_PHRASE, PhraseEdge, PhraseGraph

_CLAUSE_DEPS = {"advcl", "xcomp"}


def _has_to_aux(sentence: Sentence, idx: int) -> bool:
    return any(
        sentence.tokens[c].dep == "aux" and sentence.tokens[c].lemma.lower() == "to"
        for c in sentence.children(idx)
    )


def _purpose_verbs(sentence: Sentence) -> list[int]:
    """Infinitival purpose verbs, including conjoined continuations."""
    anchors = []
    for i, tok in enumerate(sentence.tokens):
        if tok.pos != "VERB":
            continue
        if tok.dep in _CLAUSE_DEPS and _has_to_aux(sentence, i):
            anchors.append(i)
    out = []
    queue = list(anchors)
    seen = set(anchors)
    while queue:
        cur = queue.pop(0)
        out.append(cur)
        for c in sentence.children(cur):
            tok = sentence.tokens[c]
            if tok.dep == "conj" and tok.pos == "VERB" and c not in seen:
                if _has_to_aux(sentence, c):
                    seen.add(c)
                    queue.append(c)
    return sorted(set(out))


def _verb_span(sentence: Sentence, idx: int, all_anchors: set[int]) -> tuple[int, int]:
    """Token range of one purpose clause, minus conjoined purpose clauses."""
    excluded: set[int] = set()
    for c in sentence.children(idx):
        tok = sentence.tokens[c]
        if c in all_anchors and tok.dep == "conj":
            excluded.update(sentence.subtree(c))
        elif tok.dep == "cc":
            excluded.add(c)
    kept = [i for i in sentence.subtree(idx) if i not in excluded]
    return min(kept), max(kept) + 1


def _for_purpose_spans(sentence: Sentence) -> list[tuple[int, int]]:
    spans = []
    for i, tok in enumerate(sentence.tokens):
        if tok.dep != "prep" or tok.lemma.lower() != "for" or tok.head == i:
            continue
        if sentence.tokens[tok.head].pos not in ("VERB", "AUX"):
            continue
        for c in sentence.children(i):
            if sentence.tokens[c].dep != "pobj":
                continue
            sub = sentence.subtree(c)
            if any(sentence.tokens[t].lemma.lower() == "purpose" for t in sub):
                spans.append((i, max(sub) + 1))
                break
    return spans


def annotate_purpose(
    sentence: Sentence, sent_index: int, graph: PhraseGraph
) -> list[PhraseEdge]:
    """Attach purpose phrases to the sentence's data phrases."""
    anchors = _purpose_verbs(sentence)
    anchor_set = set(anchors)
    purposes: list[tuple[int, int, str]] = []  # (start, end, rule)
    for a in anchors:
        start, end = _verb_span(sentence, a, anchor_set)
        purposes.append((start, end, "purpose-to"))
    for start, end in _for_purpose_spans(sentence):
        purposes.append((start, end, "purpose-for"))
    if not purposes:
        return []

    added: list[PhraseEdge] = []
    emitted = set()
    for span in sentence.ner:
        if span.label != NerLabel.DATA:
            continue
        if any(span.start >= s and span.end <= e for s, e, _ in purposes):
            continue
        data_node = graph.node_for(
            sent_index, span.start, span.end, DATA, sentence.span_text(span)
        )
        for start, end, rule_id in purposes:
            text = sentence.text_of(start, end)
            purpose_node = graph.node_for(
                sent_index, start, end, PURPOSE_PHRASE, text
            )
            key = (data_node.id, purpose_node.id)
            if key in emitted:
                continue
            emitted.add(key)
            edge = PhraseEdge(
                src=data_node.id,
                dst=purpose_node.id,
                kind=PURPOSE,
                sentence=sent_index,
                rule=rule_id,
            )
            graph.add_edge(edge)
            added.append(edge)
    return added
