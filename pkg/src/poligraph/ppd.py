"""Parse interchange format (PPD): tokens, dependency trees, NER spans.

A PPD file is JSON lines, one parsed document per line:

    {"source_id": str,
     "tree": <DocumentTree JSON>,
     "sentences": [{"segment": int, "variant_depth": int,
                    "tokens": [{"i": int, "text": str, "lemma": str,
                                "pos": str, "head": int, "dep": str}],
                    "ner": [{"start": int, "end": int,
                             "label": "DATA|ENTITY"}]}]}

The loader validates every documented invariant; annotators may assume a
validated document. POS tags are Universal POS; dependency labels follow
the spaCy English scheme (nsubj, dobj, pobj, neg, ...) that the rule
files are written against.
"""

import json
from dataclasses import dataclass, field
from enum import Enum

from .document import DocumentTree
from .errors import FormatError, ValidationError


class NerLabel(str, Enum):
    DATA = "DATA"
    ENTITY = "ENTITY"


@dataclass(frozen=True)
class Token:
    i: int
    text: str
    lemma: str
    pos: str
    head: int
    dep: str


@dataclass(frozen=True)
class NerSpan:
    start: int
    end: int
    label: NerLabel


@dataclass
class Sentence:
    tokens: list[Token]
    ner: list[NerSpan]
    variant_depth: int
    segment: int
    _children: dict | None = field(default=None, repr=False, compare=False)

    @property
    def root(self) -> int:
        for t in self.tokens:
            if t.head == t.i:
                return t.i
        raise ValidationError("sentence has no root")

    def children(self, i: int) -> list[int]:
        if self._children is None:
            table: dict[int, list[int]] = {t.i: [] for t in self.tokens}
            for t in self.tokens:
                if t.head != t.i:
                    table[t.head].append(t.i)
            self._children = {k: sorted(v) for k, v in table.items()}
        return self._children.get(i, [])

    def subtree(self, i: int) -> list[int]:
        """Token indices of i's dependency subtree, sorted."""
        out = [i]
        stack = [i]
        while stack:
            for c in self.children(stack.pop()):
                out.append(c)
                stack.append(c)
        return sorted(out)

    def text_of(self, start: int, end: int) -> str:
        return " ".join(t.text for t in self.tokens[start:end])

    def span_text(self, span: NerSpan) -> str:
        return self.text_of(span.start, span.end)

    def span_at(self, i: int, label: NerLabel | None = None) -> NerSpan | None:
        """The NER span containing token i (narrowest if several)."""
        best = None
        for span in self.ner:
            if span.start <= i < span.end and (label is None or span.label == label):
                if best is None or (span.end - span.start) < (best.end - best.start):
                    best = span
        return best

    def span_root(self, start: int, end: int) -> int:
        """Index of the token in [start, end) whose head lies outside it."""
        for i in range(start, end):
            h = self.tokens[i].head
            if h == i or h < start or h >= end:
                return i
        return start

    @property
    def text(self) -> str:
        return self.text_of(0, len(self.tokens))


@dataclass
class ParsedDocument:
    source_id: str
    tree: DocumentTree
    sentences: list[Sentence]


def _validate_sentence(sent: Sentence, idx: int, tree: DocumentTree):
    def fail(rule: str):
        raise ValidationError(f"sentence {idx}: {rule}")

    n = len(sent.tokens)
    if n == 0:
        fail("no tokens")
    roots = []
    for pos, tok in enumerate(sent.tokens):
        if tok.i != pos:
            fail(f"token index mismatch at position {pos}")
        if not 0 <= tok.head < n:
            fail(f"head index out of range on token {tok.i}")
        if tok.head == tok.i:
            roots.append(tok.i)
    if len(roots) > 1:
        fail("multiple roots")
    if not roots:
        fail("no root")
    root = roots[0]
    if sent.tokens[root].dep != "ROOT":
        fail("root token dep is not ROOT")
    # Head pointers must form a tree: every token reaches the root.
    for tok in sent.tokens:
        seen = set()
        cur = tok.i
        while cur != root:
            if cur in seen:
                fail(f"dependency cycle through token {tok.i}")
            seen.add(cur)
            cur = sent.tokens[cur].head
    by_label: dict[NerLabel, list[NerSpan]] = {}
    for span in sent.ner:
        if not 0 <= span.start < span.end <= n:
            fail(f"ner span ({span.start}, {span.end}) out of bounds")
        by_label.setdefault(span.label, []).append(span)
    for label, spans in by_label.items():
        spans = sorted(spans, key=lambda s: (s.start, s.end))
        for a, b in zip(spans, spans[1:]):
            if b.start < a.end:
                fail(f"overlapping {label.value} spans")
    if not 0 <= sent.segment < len(tree.segments):
        fail(f"segment {sent.segment} not in tree")
    if sent.variant_depth < 0:
        fail("negative variant depth")
    if sent.variant_depth > len(tree.ancestors(sent.segment)):
        fail("variant depth exceeds ancestor count")


def parsed_document_from_obj(obj: dict) -> ParsedDocument:
    try:
        tree = DocumentTree.from_json_obj(obj["tree"])
        sentences = [
            Sentence(
                tokens=[
                    Token(
                        i=int(t["i"]),
                        text=t["text"],
                        lemma=t["lemma"],
                        pos=t["pos"],
                        head=int(t["head"]),
                        dep=t["dep"],
                    )
                    for t in s["tokens"]
                ],
                ner=[
                    NerSpan(
                        start=int(m["start"]),
                        end=int(m["end"]),
                        label=NerLabel(m["label"]),
                    )
                    for m in s["ner"]
                ],
                variant_depth=int(s["variant_depth"]),
                segment=int(s["segment"]),
            )
            for s in obj["sentences"]
        ]
        source_id = obj["source_id"]
    except (KeyError, TypeError, ValueError) as exc:
        raise ValidationError(f"bad PPD structure: {exc}") from exc
    doc = ParsedDocument(source_id=source_id, tree=tree, sentences=sentences)
    for idx, sent in enumerate(doc.sentences):
        _validate_sentence(sent, idx, tree)
    return doc


def load_parsed_document(data) -> ParsedDocument:
    """Parse and validate one PPD JSON document from bytes or text."""
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    try:
        obj = json.loads(data)
    except json.JSONDecodeError as exc:
        raise FormatError(exc.msg, offset=exc.pos) from exc
    if not isinstance(obj, dict):
        raise FormatError("expected a JSON object")
    return parsed_document_from_obj(obj)


def parsed_document_to_obj(doc: ParsedDocument) -> dict:
    return {
        "source_id": doc.source_id,
        "tree": doc.tree.to_json_obj(),
        "sentences": [
            {
                "segment": s.segment,
                "variant_depth": s.variant_depth,
                "tokens": [
                    {
                        "i": t.i,
                        "text": t.text,
                        "lemma": t.lemma,
                        "pos": t.pos,
                        "head": t.head,
                        "dep": t.dep,
                    }
                    for t in s.tokens
                ],
                "ner": [
                    {"start": m.start, "end": m.end, "label": m.label.value}
                    for m in s.ner
                ],
            }
            for s in doc.sentences
        ],
    }


def serialize_parsed_document(doc: ParsedDocument) -> str:
    """One JSON line; load_parsed_document round-trips it."""
    return json.dumps(parsed_document_to_obj(doc), ensure_ascii=False, sort_keys=True)


def iter_parsed_documents(stream):
    """Yield ParsedDocuments from a JSON-lines byte/text stream."""
    for line in stream:
        if isinstance(line, bytes):
            line = line.decode("utf-8")
        if line.strip():
            yield load_parsed_document(line)


def load_document_file(text: str) -> list:
    """Parse a PPD file holding one JSON document or JSON lines of them."""
    try:
        return [load_parsed_document(text)]
    except FormatError:
        docs = list(iter_parsed_documents(text.splitlines()))
        if not docs:
            raise
        return docs


# ---------------------------------------------------------------------------
# Rule-based NER fallback

# Root words anchoring noun phrases, by label.
DATA_ROOT_LEMMAS = frozenset({
    "information", "data", "datum", "address", "number", "location",
    "geolocation", "identifier", "id", "preference", "setting", "cookie",
})

ENTITY_ROOT_LEMMAS = frozenset({
    "agency", "advertiser", "affiliate", "analytic", "analytics", "app",
    "application", "broker", "business", "carrier", "company", "corporation",
    "distributor", "group", "institution", "network", "operator",
    "organization", "partner", "party", "platform", "processor", "product",
    "provider", "publisher", "service", "site", "software", "subsidiary",
    "vendor", "website",
})

# Dependencies that keep a token inside its noun phrase.
_NP_INTERNAL_DEPS = frozenset({"det", "amod", "compound", "poss", "nummod", "case"})


def _np_span(sent: Sentence, root_i: int) -> tuple[int, int]:
    """Contiguous NP extent around root_i over determiner/adjective/
    compound/possessive children."""
    members = {root_i}
    stack = [root_i]
    while stack:
        for c in sent.children(stack.pop()):
            if sent.tokens[c].dep in _NP_INTERNAL_DEPS:
                members.add(c)
                stack.append(c)
    # Restrict to the contiguous run containing the root.
    lo = root_i
    while lo - 1 in members:
        lo -= 1
    hi = root_i
    while hi + 1 in members:
        hi += 1
    return lo, hi + 1


def rule_based_ner(sent: Sentence) -> list[NerSpan]:
    """Label maximal noun phrases whose root lemma is a known root word."""
    spans: list[NerSpan] = []
    taken: dict[NerLabel, list[tuple[int, int]]] = {NerLabel.DATA: [], NerLabel.ENTITY: []}
    for tok in sent.tokens:
        if tok.pos not in ("NOUN", "PROPN"):
            continue
        if tok.dep in _NP_INTERNAL_DEPS:
            continue  # inside a larger noun phrase
        lemma = tok.lemma.lower()
        if lemma in DATA_ROOT_LEMMAS:
            label = NerLabel.DATA
        elif lemma in ENTITY_ROOT_LEMMAS:
            label = NerLabel.ENTITY
        else:
            continue
        start, end = _np_span(sent, tok.i)
        if any(b_start < end and start < b_end for b_start, b_end in taken[label]):
            continue
        taken[label].append((start, end))
        spans.append(NerSpan(start=start, end=end, label=label))
    return sorted(spans, key=lambda s: (s.start, s.end, s.label.value))


def ensure_ner(sent: Sentence) -> Sentence:
    """Apply the fallback only when a sentence carries no NER spans."""
    if sent.ner:
        return sent
    return Sentence(
        tokens=sent.tokens,
        ner=rule_based_ner(sent),
        variant_depth=sent.variant_depth,
        segment=sent.segment,
    )
