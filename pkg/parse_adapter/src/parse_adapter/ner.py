"""DATA/ENTITY span labeling.

The rule source marks noun chunks by their head word: data-type heads
("information", "address", "identifier", ...) become DATA spans,
recipient heads ("party", "partner", "provider", ...) and known company
names become ENTITY spans. Spans cover the whole chunk including
determiners and possessives, the shape downstream phrase normalization
expects. When a statistical model contributes spans, model spans win on
overlap and rule spans fill the gaps.
"""

from dataclasses import dataclass

from .english import Tok

DATA_HEAD_LEMMAS = {
    "information", "data", "address", "identifier", "id", "geolocation",
    "location", "name", "number", "history", "cookie", "record",
    "detail", "email", "phone", "birthday", "age", "gender",
    "contact", "photo", "content", "log", "preference", "activity",
    "credential", "password", "username", "ip",
}

ENTITY_HEAD_LEMMAS = {
    "party", "partner", "provider", "advertiser", "affiliate",
    "vendor", "company", "processor", "subsidiary", "network",
    "merchant", "operator", "broker", "authority", "agency",
}

# Heads that are entities only with a telling modifier ("social
# networking services", "advertising services").
CONDITIONAL_ENTITY_HEADS = {"service": {"networking", "social", "advertising"}}

KNOWN_COMPANIES = {
    "google", "facebook", "twitter", "firebase", "amazon", "apple",
    "microsoft", "instagram", "kayak", "booking.com", "adobe",
    "unity", "crashlytics", "admob", "flurry", "meta",
}


@dataclass(frozen=True)
class Span:
    start: int
    end: int
    label: str


def _chunk_bounds(toks: list[Tok]) -> list[tuple[int, int, int]]:
    """(start, end, head) for each dependency-attached noun chunk."""
    heads: dict[int, list[int]] = {}
    for t in toks:
        if t.dep in ("det", "poss", "amod", "compound", "nummod"):
            heads.setdefault(t.head, []).append(t.i)
    out = []
    for t in toks:
        if t.pos not in ("NOUN", "PROPN"):
            continue
        if t.dep in ("compound", "nummod"):
            continue  # interior of another chunk
        members = [t.i] + heads.get(t.i, [])
        lo, hi = min(members), max(members)
        # only keep contiguous modifier runs
        span_toks = toks[lo:hi + 1]
        if all(
            x.i == t.i or (x.head == t.i and x.dep in
                           ("det", "poss", "amod", "compound", "nummod"))
            for x in span_toks
        ):
            out.append((lo, hi + 1, t.i))
        else:
            out.append((t.i, t.i + 1, t.i))
    return out


def _label_for(toks: list[Tok], start: int, end: int, head: int) -> str | None:
    head_tok = toks[head]
    lemmas = {toks[k].lemma for k in range(start, end)}
    texts = {toks[k].text.lower() for k in range(start, end)}
    if head_tok.lemma in DATA_HEAD_LEMMAS:
        return "DATA"
    if head_tok.lemma in ENTITY_HEAD_LEMMAS:
        return "ENTITY"
    need = CONDITIONAL_ENTITY_HEADS.get(head_tok.lemma)
    if need and (lemmas & need or texts & need):
        return "ENTITY"
    if texts & KNOWN_COMPANIES or head_tok.lemma in KNOWN_COMPANIES:
        return "ENTITY"
    return None


# Prepositions whose object is a sharing recipient or data source.
_RECIPIENT_PREPS = {"with", "to", "by", "from"}

# Verbs whose proper-noun subject is the acting company.
_ACTOR_VERBS = {
    "collect", "share", "use", "store", "sell", "receive", "obtain",
    "disclose", "process", "gather", "transfer", "access", "track",
}


def rule_spans(toks: list[Tok]) -> list[Span]:
    chunk_list = _chunk_bounds(toks)
    spans: dict[int, Span] = {}
    deferred = []  # proper-noun chunks that need contextual evidence
    for start, end, head in chunk_list:
        label = _label_for(toks, start, end, head)
        if label:
            spans[head] = Span(start, end, label)
        elif toks[head].pos == "PROPN":
            deferred.append((start, end, head))

    # A capitalized name counts as an entity only where the parse puts
    # it in an entity-like position: object of a recipient preposition,
    # subject of a collection verb, or coordinated or apposed with a
    # chunk already labeled ENTITY.
    changed = True
    while changed:
        changed = False
        for start, end, head in deferred:
            if head in spans:
                continue
            t = toks[head]
            parent = toks[t.head]
            recipient = t.dep in ("pobj",) and parent.lemma in _RECIPIENT_PREPS
            actor = (
                t.dep in ("nsubj", "nsubjpass")
                and parent.lemma in _ACTOR_VERBS
            )
            linked = (
                t.dep in ("conj", "appos")
                and parent.i in spans
                and spans[parent.i].label == "ENTITY"
            )
            if recipient or actor or linked:
                spans[head] = Span(start, end, "ENTITY")
                changed = True
    return _dedupe(list(spans.values()))


def _dedupe(spans: list[Span]) -> list[Span]:
    """Sort and drop same-label overlaps, keeping the longer span."""
    out: list[Span] = []
    for span in sorted(spans, key=lambda s: (s.start, -(s.end - s.start))):
        clash = next(
            (o for o in out if o.label == span.label
             and span.start < o.end and o.start < span.end),
            None,
        )
        if clash is None:
            out.append(span)
    return sorted(out, key=lambda s: (s.start, s.end, s.label))


def merge_spans(model: list[Span], rules: list[Span]) -> list[Span]:
    """Model spans plus rule spans that overlap no model span."""
    kept = list(model)
    for span in rules:
        if all(span.end <= m.start or m.end <= span.start for m in model):
            kept.append(span)
    return _dedupe(kept)
