"""PPD loading, validation, sentence helpers, and rule-based NER."""

import json
import pathlib

import jsonschema
import pytest

from conftest import FIXTURES, load_fixture_doc

from poligraph import (
    FormatError,
    NerLabel,
    ValidationError,
    load_parsed_document,
    serialize_parsed_document,
)
from poligraph.authoring import sent
from poligraph.ppd import ensure_ner, load_document_file, rule_based_ner

SCHEMA = json.loads(
    (pathlib.Path(__file__).parent / "ppd.schema.json").read_text(encoding="utf-8")
)


@pytest.mark.parametrize("name", ["kayak", "acme", "globex"])
def test_fixture_files_validate_against_the_schema(name):
    obj = json.loads((FIXTURES / f"{name}.ppd").read_text(encoding="utf-8"))
    jsonschema.validate(obj, SCHEMA)


@pytest.mark.parametrize("name", ["kayak", "acme", "globex"])
def test_serialization_round_trips(name):
    doc = load_fixture_doc(name)
    text = serialize_parsed_document(doc)
    again = load_parsed_document(text)
    assert serialize_parsed_document(again) == text
    assert again.source_id == doc.source_id
    assert len(again.sentences) == len(doc.sentences)


def test_load_rejects_malformed_json():
    with pytest.raises(FormatError):
        load_parsed_document("{not json")
    with pytest.raises(FormatError):
        load_parsed_document("[1, 2, 3]")


def _doc_obj(tokens, ner=()):
    return {
        "source_id": "t",
        "tree": {
            "source_id": "t",
            "segments": [{"id": 0, "kind": "TEXT", "text": "x", "parent": None}],
        },
        "sentences": [
            {"segment": 0, "variant_depth": 0, "tokens": tokens, "ner": list(ner)}
        ],
    }


def _tok(i, text, head, dep, pos="NOUN"):
    return {"i": i, "text": text, "lemma": text.lower(), "pos": pos,
            "head": head, "dep": dep}


def test_load_rejects_head_out_of_range():
    obj = _doc_obj([_tok(0, "data", 5, "ROOT")])
    with pytest.raises(ValidationError, match="head index"):
        load_parsed_document(json.dumps(obj))


def test_load_rejects_multiple_roots():
    obj = _doc_obj([_tok(0, "a", 0, "ROOT"), _tok(1, "b", 1, "ROOT")])
    with pytest.raises(ValidationError, match="multiple roots"):
        load_parsed_document(json.dumps(obj))


def test_load_rejects_head_cycles():
    obj = _doc_obj(
        [_tok(0, "a", 0, "ROOT"), _tok(1, "b", 2, "dep"), _tok(2, "c", 1, "dep")]
    )
    with pytest.raises(ValidationError, match="cycle"):
        load_parsed_document(json.dumps(obj))


def test_load_rejects_out_of_bounds_ner_span():
    obj = _doc_obj([_tok(0, "data", 0, "ROOT")],
                   ner=[{"start": 0, "end": 2, "label": "DATA"}])
    with pytest.raises(ValidationError, match="out of bounds"):
        load_parsed_document(json.dumps(obj))


def test_load_rejects_overlapping_same_label_spans():
    obj = _doc_obj(
        [_tok(0, "user", 1, "compound"), _tok(1, "data", 1, "ROOT")],
        ner=[{"start": 0, "end": 2, "label": "DATA"},
             {"start": 1, "end": 2, "label": "DATA"}],
    )
    with pytest.raises(ValidationError, match="overlapping"):
        load_parsed_document(json.dumps(obj))


def test_load_rejects_unknown_segment_reference():
    obj = _doc_obj([_tok(0, "data", 0, "ROOT")])
    obj["sentences"][0]["segment"] = 7
    with pytest.raises(ValidationError, match="segment"):
        load_parsed_document(json.dumps(obj))


def test_load_document_file_reads_json_lines_too():
    single = (FIXTURES / "kayak.ppd").read_text(encoding="utf-8")
    docs = load_document_file(single)
    assert len(docs) == 1
    doc = docs[0]
    line = serialize_parsed_document(doc).strip().replace("\n", " ")
    line = json.dumps(json.loads(line))
    docs = load_document_file(line + "\n" + line)
    assert [d.source_id for d in docs] == ["kayak", "kayak"]


def test_sentence_helpers_navigate_the_tree():
    s = sent(
        "We||PRON|nsubj|collect "
        "collect||VERB|ROOT|_ "
        "your||PRON|poss|data "
        "data||NOUN|dobj|collect",
        ner=[("DATA", "your data")],
    )
    assert s.root == 1
    assert s.children(1) == [0, 3]
    assert s.subtree(3) == [2, 3]
    assert s.text == "We collect your data"
    assert s.text_of(2, 4) == "your data"
    span = s.span_at(3)
    assert span is not None and (span.start, span.end) == (2, 4)
    assert s.span_at(1) is None
    assert s.span_root(2, 4) == 3


def test_span_at_prefers_the_narrowest_span():
    s = sent(
        "device||NOUN|compound|id id||NOUN|ROOT|_",
        ner=[("DATA", "device id"), ("ENTITY", "device")],
    )
    got = s.span_at(0)
    assert got is not None and (got.start, got.end) == (0, 1)
    got = s.span_at(0, NerLabel.DATA)
    assert got is not None and (got.start, got.end) == (0, 2)


def test_rule_based_ner_labels_noun_phrases_by_root_word():
    s = sent(
        "We||PRON|nsubj|share "
        "share||VERB|ROOT|_ "
        "device||NOUN|compound|information "
        "information||NOUN|dobj|share "
        "with||ADP|prep|share "
        "ad||NOUN|compound|providers "
        "providers|provider|NOUN|pobj|with"
    )
    spans = rule_based_ner(s)
    got = {(sp.start, sp.end, sp.label.value) for sp in spans}
    assert (2, 4, "DATA") in got
    assert (5, 7, "ENTITY") in got


def test_ensure_ner_keeps_existing_spans():
    s = sent(
        "information||NOUN|ROOT|_",
        ner=[("DATA", "information")],
    )
    before = list(s.ner)
    assert ensure_ner(s).ner == before
