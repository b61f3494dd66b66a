"""parse-adapter: turn privacy policy pages into parsed-document files."""

from .config import AdapterConfig, AdapterError, DEFAULT_MODEL, NER_SOURCES
from .english import Tok, parse, split_sentences, tag, tokenize
from .ner import Span, merge_spans, rule_spans
from .pipeline import make_backend, parse_document, serialize, variant_texts
from .tree import HEADING, LISTITEM, TEXT, Segment, ancestors, build_tree, tree_to_json_obj

__version__ = "0.1.0"

__all__ = [
    "AdapterConfig",
    "AdapterError",
    "DEFAULT_MODEL",
    "HEADING",
    "LISTITEM",
    "NER_SOURCES",
    "Segment",
    "Span",
    "TEXT",
    "Tok",
    "ancestors",
    "build_tree",
    "make_backend",
    "merge_spans",
    "parse",
    "parse_document",
    "rule_spans",
    "serialize",
    "split_sentences",
    "tag",
    "tokenize",
    "tree_to_json_obj",
    "variant_texts",
]
