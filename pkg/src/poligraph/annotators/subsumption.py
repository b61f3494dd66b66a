"""Hypernymy annotator.

Finds lexico-syntactic constructions that subordinate one phrase to another
("X such as Y", "X, including Y", "Y1, Y2 (collectively X)", ...) and emits
SUBSUME edges from the broader phrase to each subordinate phrase.  Negation
around "not limited to" is deliberately ignored: the construction still
asserts membership.
"""

from __future__ import annotations

from ..ppd import NerLabel, Sentence
from .phrase_graph import DATA, ENTITY, SUBSUME, PhraseEdge, PhraseGraph, PhraseNode

_EG_LEMMAS = {"e.g.", "e.g", "eg", "eg.", "i.e.", "i.e", "ie", "ie."}
_ESP_LEMMAS = {"especially", "particularly"}
_COLLECTIVE_LEMMAS = {"collectively", "together"}
_PRONOUN_HYPERS = {"it", "they", "them", "this", "that", "these", "those"}

_EXPAND_DEPS = {"conj", "appos"}


def _expand(sentence: Sentence, idx: int) -> list[int]:
    out = {idx}
    queue = [idx]
    while queue:
        cur = queue.pop()
        for c in sentence.children(cur):
            if sentence.tokens[c].dep in _EXPAND_DEPS and c not in out:
                out.add(c)
                queue.append(c)
    return sorted(out)


def _span_node(
    sentence: Sentence,
    sent_index: int,
    idx: int,
    graph: PhraseGraph,
    label: str | None = None,
) -> PhraseNode | None:
    order = [label] if label else [NerLabel.DATA, NerLabel.ENTITY]
    for lab in order:
        span = sentence.span_at(idx, label=lab)
        if span is not None:
            lab_str = DATA if lab == NerLabel.DATA else ENTITY
            return graph.node_for(
                sent_index, span.start, span.end, lab_str, sentence.span_text(span)
            )
    return None


def _hyper_node(
    sentence: Sentence,
    sent_index: int,
    idx: int,
    graph: PhraseGraph,
    label: str,
) -> PhraseNode | None:
    node = _span_node(sentence, sent_index, idx, graph, label=label)
    if node is not None:
        return node
    tok = sentence.tokens[idx]
    if tok.text.lower() in _PRONOUN_HYPERS:
        return graph.node_for(sent_index, idx, idx + 1, label, tok.text)
    return None


def _not_limited_targets(sentence: Sentence, anchor: int) -> list[int]:
    """Follow '... but not limited to Y' hanging off an include anchor."""
    out: list[int] = []
    for c in sentence.children(anchor):
        if sentence.tokens[c].dep == "conj" and sentence.tokens[c].lemma.lower() == "limit":
            for p in sentence.children(c):
                if sentence.tokens[p].dep == "prep" and sentence.tokens[p].lemma.lower() == "to":
                    for o in sentence.children(p):
                        if sentence.tokens[o].dep == "pobj":
                            out.append(o)
    return out


def _matches(sentence: Sentence):
    """Yield (rule_id, hyper_token, [hypo_tokens]) for every construction."""
    toks = sentence.tokens
    for i, tok in enumerate(toks):
        lemma = tok.lemma.lower()
        low = tok.text.lower()

        # "X such as Y" / "such X as Y": prep 'as' under X, 'such' on either
        if lemma == "as" and tok.dep == "prep" and tok.head != i:
            head = tok.head
            has_such = any(
                toks[c].lemma.lower() == "such" for c in sentence.children(i)
            ) or any(
                toks[c].lemma.lower() == "such" for c in sentence.children(head)
            )
            if has_such:
                hypos = [
                    c for c in sentence.children(i) if toks[c].dep == "pobj"
                ]
                if hypos:
                    yield "such-as", head, hypos

        # "X, for example, Y": later appositives of X are the examples
        if low == "for" and tok.dep == "prep" and tok.head != i:
            if any(
                toks[c].dep == "pobj" and toks[c].lemma.lower() == "example"
                for c in sentence.children(i)
            ):
                head = tok.head
                hypos = [
                    c
                    for c in sentence.children(head)
                    if toks[c].dep == "appos" and c > i
                ]
                if hypos:
                    yield "for-example", head, hypos

        # "X, e.g. Y" / "X, i.e. Y": marker adverb on an appositive
        if lemma in _EG_LEMMAS and tok.dep == "advmod" and tok.head != i:
            y = tok.head
            if toks[y].dep == "appos" and toks[y].head != y:
                yield "eg-ie", toks[y].head, [y]

        # "X, especially Y" / "X, particularly Y"
        if lemma in _ESP_LEMMAS and tok.dep == "advmod" and tok.head != i:
            y = tok.head
            if toks[y].dep == "appos" and toks[y].head != y:
                yield "especially", toks[y].head, [y]

        # "X, which includes Y" (relative clause)
        if lemma == "include" and tok.dep == "relcl" and tok.head != i:
            has_wh = any(
                toks[c].dep in ("nsubj", "nsubjpass")
                and toks[c].lemma.lower() in ("which", "that")
                for c in sentence.children(i)
            )
            if has_wh:
                hypos = [c for c in sentence.children(i) if toks[c].dep == "dobj"]
                hypos.extend(_not_limited_targets(sentence, i))
                if hypos:
                    yield "which-includes", tok.head, hypos

        # "X including Y" / "X like Y" (prepositional), with the
        # "including but not limited to" continuation folded in
        if tok.dep == "prep" and lemma in ("include", "including", "like") and tok.head != i:
            hypos = [c for c in sentence.children(i) if toks[c].dep == "pobj"]
            hypos.extend(_not_limited_targets(sentence, i))
            if hypos:
                yield "including", tok.head, hypos

        # "Y1, Y2 (collectively X)": the appositive is the broader name
        if tok.dep == "appos" and tok.head != i:
            if any(
                toks[c].dep == "advmod" and toks[c].lemma.lower() in _COLLECTIVE_LEMMAS
                for c in sentence.children(i)
            ):
                y1 = tok.head
                hypos = [h for h in _expand(sentence, y1) if h != i]
                if hypos:
                    yield "collectively", i, hypos

        # "X includes Y" as the sentence verb (negation ignored)
        if lemma == "include" and tok.pos == "VERB" and tok.dep != "relcl":
            subs = [
                c
                for c in sentence.children(i)
                if toks[c].dep in ("nsubj", "nsubjpass")
                and toks[c].lemma.lower() not in ("which", "that")
            ]
            hypos = [c for c in sentence.children(i) if toks[c].dep == "dobj"]
            hypos.extend(_not_limited_targets(sentence, i))
            if subs and hypos:
                for s in subs:
                    yield "includes", s, hypos


def annotate_subsumption(
    sentence: Sentence, sent_index: int, graph: PhraseGraph
) -> list[PhraseEdge]:
    """Match hypernymy constructions and add SUBSUME edges to the graph."""
    added: list[PhraseEdge] = []
    emitted = set()
    for rule_id, hyper_tok, hypo_toks in _matches(sentence):
        expanded: list[int] = []
        for h in hypo_toks:
            expanded.extend(_expand(sentence, h))
        hypo_nodes = []
        for h in sorted(set(expanded)):
            node = _span_node(sentence, sent_index, h, graph)
            if node is not None:
                hypo_nodes.append(node)
        if not hypo_nodes:
            continue
        label = hypo_nodes[0].label
        hypo_nodes = [n for n in hypo_nodes if n.label == label]
        hyper = _hyper_node(sentence, sent_index, hyper_tok, graph, label)
        if hyper is None:
            continue
        for hypo in hypo_nodes:
            if hypo.id == hyper.id:
                continue
            key = (hyper.id, hypo.id)
            if key in emitted:
                continue
            emitted.add(key)
            edge = PhraseEdge(
                src=hyper.id,
                dst=hypo.id,
                kind=SUBSUME,
                sentence=sent_index,
                rule=rule_id,
            )
            graph.add_edge(edge)
            added.append(edge)
    return added
