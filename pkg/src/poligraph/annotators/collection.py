"""Collection statement annotator.

Matches verb-centred dependency patterns (loaded from the rule file) against
parsed sentences and emits COLLECT / NOT_COLLECT edges between entity and
data phrases.  Each rule anchors on a verb lemma, resolves slot paths through
the dependency tree, and expands bound tokens over conjunction and apposition
so that coordinated phrases each get their own edge.
"""

from __future__ import annotations

from dataclasses import replace

from ..ppd import NerLabel, Sentence
from .phrase_graph import (
    COLLECT,
    ENTITY,
    GENERAL_USER,
    CHILD,
    NOT_COLLECT,
    PhraseEdge,
    PhraseGraph,
    PhraseNode,
)
from .rules import MatchRule, classify_action

AFFIRMATIVE_ONLY = "affirmative_only"
EXTENDED = "extended"

NEG_LEMMAS = {"not", "never", "neither", "nor", "n't"}
WH_LEMMAS = {"what", "which", "who", "whom", "whose", "why", "how", "when", "where"}
FIRST_PARTY_TOKENS = {"we", "us", "i"}
BARE_PRONOUNS = {"it", "they", "them", "this", "that", "these", "those"}
CHILD_LEMMAS = {"child", "minor", "kid", "teen", "teenager"}

# dependency relations that coordinate or restate a phrase head
_EXPAND_DEPS = {"conj", "appos"}


def is_interrogative(sentence: Sentence) -> bool:
    if sentence.tokens and sentence.tokens[-1].text == "?":
        return True
    return sentence.tokens[sentence.root].lemma.lower() in WH_LEMMAS


def _is_passive(sentence: Sentence, idx: int) -> bool:
    for c in sentence.children(idx):
        if sentence.tokens[c].dep in ("auxpass", "nsubjpass"):
            return True
    return False


def _anchors(sentence: Sentence, rule: MatchRule):
    """Yield (outer, inner) token indices where the rule's verbs occur."""
    for i, tok in enumerate(sentence.tokens):
        if tok.pos not in ("VERB", "AUX"):
            continue
        lemma = tok.lemma.lower()
        if lemma not in rule.verbs:
            continue
        if rule.voice == "active":
            if not _is_passive(sentence, i):
                yield i, None
        elif rule.voice == "passive":
            if _is_passive(sentence, i):
                yield i, None
        else:  # composite: outer verb licenses an embedded clause verb
            for c in sentence.children(i):
                ct = sentence.tokens[c]
                if ct.dep == "xcomp" and ct.lemma.lower() in rule.inner_verbs:
                    yield i, c


def _is_negated(sentence: Sentence, idx: int) -> bool:
    """True if the verb, its auxiliaries, or a conjunction head is negated."""
    candidates = [idx]
    seen = {idx}
    cur = idx
    # negation on the first conjunct scopes over later ones
    while sentence.tokens[cur].dep == "conj":
        cur = sentence.tokens[cur].head
        if cur in seen:
            break
        seen.add(cur)
        candidates.append(cur)
    for cand in candidates:
        kids = list(sentence.children(cand))
        for c in kids:
            if sentence.tokens[c].dep in ("aux", "auxpass"):
                kids.extend(sentence.children(c))
        for c in kids:
            tok = sentence.tokens[c]
            if tok.dep == "neg" or tok.lemma.lower() in NEG_LEMMAS:
                return True
    return False


def _resolve_path(sentence: Sentence, start: int, inner: int | None, path) -> list[int]:
    current = [start]
    for dep, lemma in path:
        nxt = []
        for idx in current:
            for c in sentence.children(idx):
                tok = sentence.tokens[c]
                if tok.dep != dep:
                    continue
                if lemma is not None and tok.lemma.lower() != lemma:
                    continue
                if dep == "xcomp" and inner is not None and c != inner:
                    continue
                nxt.append(c)
        current = nxt
        if not current:
            return []
    return current


def _expand(sentence: Sentence, indices: list[int]) -> list[int]:
    out = set(indices)
    queue = list(indices)
    while queue:
        idx = queue.pop()
        for c in sentence.children(idx):
            if sentence.tokens[c].dep in _EXPAND_DEPS and c not in out:
                out.add(c)
                queue.append(c)
    return sorted(out)


def _bind_phrase(
    sentence: Sentence,
    sent_index: int,
    idx: int,
    role: str,
    graph: PhraseGraph,
) -> PhraseNode | None:
    label = NerLabel.DATA if role == "DATA" else NerLabel.ENTITY
    span = sentence.span_at(idx, label=label)
    if span is not None:
        return graph.node_for(
            sent_index, span.start, span.end, role, sentence.span_text(span)
        )
    tok = sentence.tokens[idx]
    low = tok.text.lower()
    if role == ENTITY and (low in FIRST_PARTY_TOKENS or tok.lemma.lower() in FIRST_PARTY_TOKENS):
        return graph.node_for(sent_index, idx, idx + 1, ENTITY, tok.text)
    if low in BARE_PRONOUNS:
        # left for the coreference pass to resolve
        return graph.node_for(sent_index, idx, idx + 1, role, tok.text)
    return None


def _clause_mentions_child(sentence: Sentence, anchor: int) -> bool:
    """Scan the anchor's clause without descending into other verbs."""
    queue = [anchor]
    seen = {anchor}
    while queue:
        idx = queue.pop()
        tok = sentence.tokens[idx]
        if tok.lemma.lower() in CHILD_LEMMAS:
            return True
        for c in sentence.children(idx):
            if c in seen:
                continue
            if sentence.tokens[c].pos == "VERB" and c != anchor:
                continue
            seen.add(c)
            queue.append(c)
    return False


def annotate_collection(
    sentence: Sentence,
    sent_index: int,
    graph: PhraseGraph,
    rules: list[MatchRule],
    mode: str = AFFIRMATIVE_ONLY,
) -> list[PhraseEdge]:
    """Match collection rules against one sentence and add edges to the graph."""
    if is_interrogative(sentence):
        return []
    added: list[PhraseEdge] = []
    emitted = set()
    for rule in rules:
        for outer, inner in _anchors(sentence, rule):
            bindings: dict[str, list[PhraseNode]] = {}
            ok = True
            for slot in rule.slots:
                tokens = _resolve_path(sentence, outer, inner, slot.path)
                tokens = _expand(sentence, tokens)
                nodes = []
                for t in tokens:
                    node = _bind_phrase(sentence, sent_index, t, slot.role, graph)
                    if node is not None:
                        nodes.append(node)
                if slot.required and not nodes:
                    ok = False
                    break
                bindings[slot.bind] = nodes
            if not ok:
                continue

            negated = _is_negated(sentence, outer) or (
                inner is not None and _is_negated(sentence, inner)
            )
            if negated and not rule.polarity_sensitive:
                negated = False
            if negated and mode == AFFIRMATIVE_ONLY:
                continue

            action_tok = sentence.tokens[inner if inner is not None else outer]
            action = rule.action or classify_action(action_tok.lemma.lower())
            anchor = inner if inner is not None else outer

            objects = bindings.get("object", [])
            subjects = bindings.get("subject", [])
            recipients = bindings.get("recipient", [])
            kind = NOT_COLLECT if negated else COLLECT

            pairs: list[tuple[PhraseNode, PhraseNode, str]] = []
            if rule.dual:
                if not negated:
                    for s in subjects:
                        for o in objects:
                            pairs.append((s, o, "collect"))
                for r in recipients:
                    for o in objects:
                        pairs.append((r, o, action))
            else:
                if not subjects:
                    # agentless passive: attribute collection to the document's
                    # first party
                    subjects = [
                        graph.node_for(sent_index, outer, outer + 1, ENTITY, "we")
                    ]
                for s in subjects:
                    for o in objects:
                        pairs.append((s, o, action))

            for src, dst, act in pairs:
                key = (rule.id, kind, act, src.id, dst.id)
                if key in emitted:
                    continue
                emitted.add(key)
                edge = PhraseEdge(
                    src=src.id,
                    dst=dst.id,
                    kind=kind,
                    sentence=sent_index,
                    rule=rule.id,
                    action=act,
                    subject=GENERAL_USER,
                    anchor=anchor,
                )
                graph.add_edge(edge)
                added.append(edge)
    return added


def annotate_subject(sentence: Sentence, sent_index: int, graph: PhraseGraph) -> int:
    """Mark edges whose clause talks about children as child-subject edges."""
    updated = 0
    for i, edge in enumerate(graph.edges):
        if edge.sentence != sent_index or edge.anchor is None:
            continue
        if edge.kind not in (COLLECT, NOT_COLLECT):
            continue
        if edge.subject != GENERAL_USER:
            continue
        if _clause_mentions_child(sentence, edge.anchor):
            graph.edges[i] = replace(edge, subject=CHILD)
            updated += 1
    return updated
