"""Optional spaCy parser backend.

Imported lazily so the package works without spaCy installed. Any
model name other than the built-in heuristic is resolved through
spacy.load; a missing package or model surfaces as AdapterError.
"""

from .config import AdapterError
from .english import Tok
from .ner import Span

# spaCy entity types that count as recipient entities for our purposes.
_ENTITY_LABELS = {"ORG", "PERSON", "GPE", "PRODUCT", "FAC", "NORP"}


class SpacyBackend:
    def __init__(self, model_name: str):
        try:
            import spacy
        except ImportError as exc:
            raise AdapterError(
                f"model {model_name!r} needs the spacy package, which is not "
                "installed; install parse-adapter[spacy] or use the built-in "
                "heuristic-v1 model"
            ) from exc
        try:
            self._nlp = spacy.load(model_name)
        except OSError as exc:
            raise AdapterError(f"cannot load spaCy model {model_name!r}: {exc}") from exc

    def parse_batch(
        self, sentences: list[str], batch_size: int
    ) -> list[tuple[list[Tok], list[Span]]]:
        out = []
        for doc in self._nlp.pipe(sentences, batch_size=batch_size):
            toks = [
                Tok(
                    i=t.i,
                    text=t.text,
                    lemma=t.lemma_,
                    pos=t.pos_,
                    head=t.head.i,
                    dep=t.dep_ or "dep",
                )
                for t in doc
            ]
            _single_root(toks)
            spans = [
                Span(ent.start, ent.end, "ENTITY")
                for ent in doc.ents
                if ent.label_ in _ENTITY_LABELS
            ]
            out.append((toks, spans))
        return out


def _single_root(toks: list[Tok]) -> None:
    """Keep the first root, demote any others to plain dependents."""
    roots = [t.i for t in toks if t.head == t.i]
    if not roots:
        if toks:
            toks[0].head = toks[0].i
            toks[0].dep = "ROOT"
        return
    first = roots[0]
    toks[first].dep = "ROOT"
    for i in roots[1:]:
        toks[i].head = first
        toks[i].dep = "dep"
