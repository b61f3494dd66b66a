"""Interchange contract with the downstream graph builder.

The adapter talks to the graph side only through serialized JSON, so
these tests are the one place the poligraph package is imported: every
fixture document we emit must load through its validating reader.
"""

import pytest
from conftest import fixture_paths

from parse_adapter import serialize

poligraph = pytest.importorskip("poligraph")


def test_corpus_has_ten_documents():
    assert len(fixture_paths()) == 10


def test_every_fixture_loads_through_the_validating_reader(corpus):
    assert len(corpus) == 10
    for name, obj in corpus.items():
        doc = poligraph.load_parsed_document(serialize(obj))
        assert doc.source_id == name


def test_loaded_documents_preserve_counts(corpus):
    for name, obj in corpus.items():
        doc = poligraph.load_parsed_document(serialize(obj))
        assert len(doc.sentences) == len(obj["sentences"])
        assert len(doc.tree.segments) == len(obj["tree"]["segments"])


def test_empty_fixture_round_trips_with_zero_sentences(corpus):
    doc = poligraph.load_parsed_document(serialize(corpus["08_empty"]))
    assert len(doc.sentences) == 0


def test_variant_depths_stay_within_the_contract(corpus):
    seen = set()
    for obj in corpus.values():
        for s in obj["sentences"]:
            seen.add(s["variant_depth"])
            assert 0 <= s["variant_depth"] <= 2
    assert seen == {0, 1, 2}


def test_adapter_output_feeds_the_graph_builder(corpus):
    from poligraph import build_poligraph, run_annotators

    doc = poligraph.load_parsed_document(serialize(corpus["02_lists"]))
    graph = build_poligraph(run_annotators(doc))
    assert "geolocation" in graph.nodes_of("DATA")
    assert graph.collects("we", "geolocation")
