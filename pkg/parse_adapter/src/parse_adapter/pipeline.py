"""HTML to parsed-policy-document assembly.

One document flows through: segment tree extraction, context-variant
expansion, sentence splitting, parsing, and span labeling. The result
is a plain JSON object in the shape the downstream graph builder loads,
produced without importing it.
"""

import json

from .config import AdapterConfig, AdapterError, DEFAULT_MODEL
from .english import parse, split_sentences, tokenize
from .ner import merge_spans, rule_spans
from .tree import LISTITEM, Segment, ancestors, build_tree, tree_to_json_obj

# List items read differently with their intro line and heading in
# front, so they get every context depth up to two. Headings and body
# text stand alone.
MAX_LIST_DEPTH = 2


def make_backend(config: AdapterConfig):
    """None for the built-in pipeline, a SpacyBackend otherwise."""
    if config.model == DEFAULT_MODEL:
        return None
    from .spacy_backend import SpacyBackend

    return SpacyBackend(config.model)


def variant_texts(segments: list[Segment], seg: Segment) -> list[tuple[int, str]]:
    """(variant_depth, text) pairs for one segment."""
    out = [(0, seg.text)]
    if seg.kind != LISTITEM:
        return out
    chain = ancestors(segments, seg.id)
    for depth in range(1, min(MAX_LIST_DEPTH, len(chain)) + 1):
        prefix = [a.text for a in reversed(chain[:depth])]
        out.append((depth, " ".join(prefix + [seg.text])))
    return out


def parse_document(
    html: str,
    source_id: str,
    config: AdapterConfig | None = None,
    backend=None,
) -> dict:
    """Parse one HTML document into the JSON object for a .ppd file."""
    config = config or AdapterConfig()
    if config.ner_source == "model" and backend is None and config.model == DEFAULT_MODEL:
        raise AdapterError(
            "ner_source 'model' needs a statistical model; "
            "heuristic-v1 has none (use rule_fallback or merged)"
        )
    segments = build_tree(html, source_id)

    jobs = []  # (segment id, variant depth, sentence text)
    for seg in segments:
        for depth, text in variant_texts(segments, seg):
            for sent in split_sentences(text):
                if tokenize(sent):
                    jobs.append((seg.id, depth, sent))

    if backend is not None:
        parsed = backend.parse_batch([j[2] for j in jobs], config.batch_size)
    else:
        parsed = [(parse(tokenize(j[2])), []) for j in jobs]

    sentences = []
    for (seg_id, depth, _), (toks, model_spans) in zip(jobs, parsed):
        if not toks:
            continue
        if config.ner_source == "model":
            spans = model_spans
        elif config.ner_source == "rule_fallback":
            spans = rule_spans(toks)
        else:
            spans = merge_spans(model_spans, rule_spans(toks))
        sentences.append(
            {
                "segment": seg_id,
                "variant_depth": depth,
                "tokens": [
                    {
                        "i": t.i,
                        "text": t.text,
                        "lemma": t.lemma,
                        "pos": t.pos,
                        "head": t.head,
                        "dep": t.dep,
                    }
                    for t in toks
                ],
                "ner": [
                    {"start": s.start, "end": s.end, "label": s.label}
                    for s in spans
                ],
            }
        )

    return {
        "source_id": source_id,
        "tree": tree_to_json_obj(source_id, segments),
        "sentences": sentences,
    }


def serialize(obj: dict) -> str:
    """Stable one-line JSON, matching the downstream loader's format."""
    return json.dumps(obj, ensure_ascii=False, sort_keys=True)
