"""Hand-authoring helpers for parsed documents.

Rule development needs small, exactly-known dependency parses. This
module builds validated ParsedDocuments from a compact token notation
instead of a statistical parser, so tests and fixtures stay readable:

    sent("We||PRON|nsubj|collect "
         "collect||VERB|ROOT|_ "
         "cookies|cookie|NOUN|dobj|collect "
         ".||PUNCT|punct|collect",
         ner=[("DATA", "cookies")])

Each whitespace-separated item is ``text|lemma|pos|dep|head``; an empty
lemma defaults to the lowercased text. ``head`` names the head token by
its text (first occurrence; append ``#n`` for the n-th, or use ``@i``
for an absolute index); ``_`` marks the root. NER spans are given as
(label, phrase) pairs matched against consecutive token texts.
"""

from dataclasses import dataclass, field

from .document import DocumentTree, Segment, SegmentKind
from .ppd import NerLabel, NerSpan, ParsedDocument, Sentence, Token, parsed_document_from_obj, parsed_document_to_obj


def _parse_items(spec: str) -> list[tuple[str, str, str, str, str]]:
    items = []
    for raw in spec.split():
        parts = raw.split("|")
        if len(parts) != 5:
            raise ValueError(f"token spec needs 5 '|' fields: {raw!r}")
        items.append(tuple(parts))
    return items


def _resolve_head(ref: str, texts: list[str], self_i: int) -> int:
    if ref == "_":
        return self_i
    if ref.startswith("@"):
        return int(ref[1:])
    name, _, occurrence = ref.partition("#")
    want = int(occurrence) if occurrence else 1
    seen = 0
    for i, t in enumerate(texts):
        if t == name:
            seen += 1
            if seen == want:
                return i
    raise ValueError(f"head reference {ref!r} not found")


def _match_span(texts: list[str], phrase: str, used: set[tuple[int, int]]) -> tuple[int, int]:
    words = phrase.split()
    for start in range(len(texts) - len(words) + 1):
        if texts[start:start + len(words)] == words:
            span = (start, start + len(words))
            if span not in used:
                return span
    raise ValueError(f"NER phrase {phrase!r} not found in sentence")


def sent(spec: str, ner=(), segment: int = 0, depth: int = 0) -> Sentence:
    """Build one Sentence from the compact token notation."""
    items = _parse_items(spec)
    texts = [it[0] for it in items]
    tokens = []
    for i, (text, lemma, pos, dep, head) in enumerate(items):
        tokens.append(
            Token(
                i=i,
                text=text,
                lemma=lemma or text.lower(),
                pos=pos,
                head=_resolve_head(head, texts, i),
                dep=dep,
            )
        )
    spans = []
    used: set[tuple[int, int]] = set()
    for label, phrase in ner:
        start, end = _match_span(texts, phrase, used)
        used.add((start, end))
        spans.append(NerSpan(start=start, end=end, label=NerLabel(label)))
    return Sentence(tokens=tokens, ner=spans, variant_depth=depth, segment=segment)


@dataclass
class DocBuilder:
    """Accumulates segments and sentences into a validated ParsedDocument."""

    source_id: str
    segments: list[Segment] = field(default_factory=list)
    sentences: list[Sentence] = field(default_factory=list)

    def _add_segment(self, kind: SegmentKind, text: str, parent: int | None) -> int:
        seg_id = len(self.segments)
        self.segments.append(Segment(id=seg_id, kind=kind, text=text, parent=parent))
        return seg_id

    def heading(self, text: str, parent: int | None = None) -> int:
        return self._add_segment(SegmentKind.HEADING, text, parent)

    def text(self, text: str, parent: int | None = None) -> int:
        return self._add_segment(SegmentKind.TEXT, text, parent)

    def listitem(self, text: str, parent: int | None = None) -> int:
        return self._add_segment(SegmentKind.LISTITEM, text, parent)

    def sent(self, segment: int, spec: str, ner=(), depth: int = 0) -> Sentence:
        s = sent(spec, ner=ner, segment=segment, depth=depth)
        self.sentences.append(s)
        return s

    def tree(self) -> DocumentTree:
        return DocumentTree(source_id=self.source_id, segments=list(self.segments))

    def build(self) -> ParsedDocument:
        """Validate through the loader path and return the document."""
        doc = ParsedDocument(
            source_id=self.source_id, tree=self.tree(), sentences=list(self.sentences)
        )
        return parsed_document_from_obj(parsed_document_to_obj(doc))
