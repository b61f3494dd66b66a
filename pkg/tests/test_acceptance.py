"""Acceptance gate.

One test per shipped guarantee, so a verbose run reads as a checklist.
Each test re-derives its expectations from fixtures or independent
oracles rather than trusting the library's own outputs, and the latency
bounds are part of the contract.
"""

import time

import pytest

from conftest import FIXTURES, build_fixture_graph, load_fixture_doc
from coref_cases import CASES as COREF_CASES
from coref_cases import run_case
from flow_cases import (
    KAYAK_FLOW_TABLE,
    WORST_EXPECTED,
    WORST_FLOWS,
    crafted_ontology_pair,
    make_flow_graph,
)
from oracles import brute_conflicts
from pattern_cases import (
    HYPERNYM_PATTERNS,
    TABLE2,
    TABLE3,
    TABLE8,
    VERB_ACTIONS,
    build_graph,
    observed_edges,
)
from test_cli import run_cli
from test_conflict_oracle import _pair_graph, random_extended_graph
from test_document import EXAMPLE_HTML
from test_inference_oracle import check_one, random_graph
from test_normalize import PHRASES

import random

from poligraph import (
    AFFIRMATIVE_ONLY,
    COLLECT,
    EXTENDED,
    NOT_COLLECT,
    CollectEdge,
    DATA,
    NerLabel,
    PurposePhrase,
    build_document_tree,
    check_flow,
    enumerate_text_variants,
    find_conflicts,
    load_default_normalizer,
    worst_disclosure,
)
from poligraph.annotators.rules import classify_action


def test_reference_policy_graph_is_reproduced_exactly():
    start = time.perf_counter()
    graph = build_fixture_graph("kayak", AFFIRMATIVE_ONLY)
    elapsed = time.perf_counter() - start

    assert graph.entity_nodes == {"we", "travel partners", "social networking services"}
    assert graph.data_nodes == {
        "personal information", "device information", "geolocation", "ip address",
    }
    assert {(e.entity, e.data) for e in graph.collect_edges} == {
        ("we", "personal information"),
        ("we", "device information"),
        ("we", "geolocation"),
        ("travel partners", "personal information"),
        ("social networking services", "personal information"),
    }
    assert len(graph.collect_edges) == 5
    assert set(graph.subsume_edges) == {
        (DATA, "personal information", "device information"),
        (DATA, "personal information", "geolocation"),
        (DATA, "device information", "ip address"),
    }
    assert graph.collects("we", "ip address")
    assert graph.collects("travel partners", "geolocation")
    assert "provide features" in graph.purposes_of("we", "geolocation")
    assert elapsed < 1.0, f"took {elapsed:.3f}s"


def test_every_documented_verb_and_hypernym_pattern_extracts_exactly():
    assert len(TABLE2) == 7
    assert {c.pattern for c in TABLE3} == set(HYPERNYM_PATTERNS)
    assert len(HYPERNYM_PATTERNS) == 11

    start = time.perf_counter()
    failures = []
    for case in TABLE2 + TABLE3:
        collect, subsume = observed_edges(case, build_graph(case))
        if collect != case.collect or subsume != case.subsume:
            failures.append(case.name)
    elapsed = time.perf_counter() - start
    assert failures == []
    assert elapsed < 1.0, f"took {elapsed:.3f}s"


def test_every_verb_maps_to_its_action_including_the_dual_share():
    for action, verbs in VERB_ACTIONS.items():
        for verb in verbs:
            assert classify_action(verb) == action

    failures = []
    for case in TABLE8:
        collect, _ = observed_edges(case, build_graph(case))
        if collect != case.collect:
            failures.append(case.name)
    assert failures == []

    dual = next(c for c in TABLE8 if c.name == "share-affirmative-dual")
    assert {(e[0], e[3]) for e in dual.collect} == {
        ("we", "collect"), ("google", "be_shared"),
    }


def test_inference_agrees_with_a_brute_force_oracle():
    rng = random.Random(20260819)
    start = time.perf_counter()
    for _ in range(1000):
        check_one(random_graph(rng))
    elapsed = time.perf_counter() - start
    assert elapsed < 10.0, f"took {elapsed:.3f}s"


def test_conflict_detection_agrees_with_its_oracle_and_fixtures():
    rng = random.Random(97)
    mismatches = 0
    for _ in range(500):
        graph = random_extended_graph(rng)
        got = {(p.positive.key(), p.negative.key()) for p in find_conflicts(graph)}
        if got != brute_conflicts(graph):
            mismatches += 1
    assert mismatches == 0

    # restricting either side to disjoint purposes, subjects, or actions
    # must not count as a contradiction
    pos = CollectEdge("we", "personal information", COLLECT, "collect", "general_user")
    neg = CollectEdge("we", "personal information", NOT_COLLECT, "collect", "general_user")
    services = [PurposePhrase("to provide the service", frozenset({"services"}))]
    ads = [PurposePhrase("for advertising purposes", frozenset({"advertising"}))]
    assert find_conflicts(_pair_graph(pos, neg, pos_purposes=services,
                                      neg_purposes=ads)) == []
    neg_child = CollectEdge("we", "personal information", NOT_COLLECT, "collect", "child")
    assert find_conflicts(_pair_graph(pos, neg_child)) == []
    pos_shared = CollectEdge("we", "personal information", COLLECT, "be_shared",
                             "general_user")
    neg_sold = CollectEdge("we", "personal information", NOT_COLLECT, "be_sold",
                           "general_user")
    assert find_conflicts(_pair_graph(pos_shared, neg_sold)) == []

    # while an unqualified denial of a covered data type is one
    neg_email = CollectEdge("we", "email address", NOT_COLLECT, "collect",
                            "general_user")
    pairs = find_conflicts(_pair_graph(
        pos, neg_email,
        subsume={(DATA, "personal information", "email address")},
    ))
    assert len(pairs) == 1
    assert pairs[0].data_witness == "email address"


def test_observed_flows_get_their_hand_derived_labels(kayak_graph,
                                                      data_ontology,
                                                      entity_ontology):
    crafted_data, crafted_entity = crafted_ontology_pair()
    assert len(KAYAK_FLOW_TABLE) == 10
    failures = []
    for flow, kind, witnesses, purposes in KAYAK_FLOW_TABLE:
        disc = check_flow(kayak_graph, flow, crafted_data, crafted_entity)
        got = (disc.kind, disc.witnesses, tuple(p.text for p in disc.purposes))
        if got != (kind, witnesses, purposes):
            failures.append((flow, got))
    assert failures == []

    flow_graph = make_flow_graph()
    kinds = [
        check_flow(flow_graph, flow, data_ontology, entity_ontology).kind
        for _, flow, _ in WORST_FLOWS
    ]
    assert kinds == [k for _, _, k in WORST_FLOWS]
    assert worst_disclosure(kinds) == WORST_EXPECTED


def test_normalization_is_idempotent_and_maps_the_pinned_phrases():
    norm = load_default_normalizer()
    assert norm.normalize("contact details", NerLabel.DATA).name == "contact information"
    assert norm.normalize("information", NerLabel.DATA).name == "unspecified data"
    assert norm.normalize("your vehicle records", NerLabel.DATA).name == "vehicle record"
    assert norm.normalize("Firebase", NerLabel.ENTITY).name == "google"

    phrases = set()
    for name in ("kayak", "acme", "globex"):
        doc = load_fixture_doc(name)
        for sent in doc.sentences:
            for span in sent.ner:
                text = " ".join(t.text for t in sent.tokens[span.start:span.end])
                phrases.add((text, span.label))
    assert phrases
    phrases.update((p, label) for p in PHRASES for label in NerLabel)
    for text, label in sorted(phrases):
        once = norm.normalize(text, label).name
        assert norm.normalize(once, label).name == once, text


def test_every_coreference_heuristic_case_resolves():
    assert len(COREF_CASES) == 20
    failures = [case.name for case in COREF_CASES if run_case(case) != case.expect]
    assert failures == []


def test_document_example_reproduces_byte_exactly():
    tree = build_document_tree(EXAMPLE_HTML, "example-1")
    assert [(s.id, s.kind.value, s.text, s.parent) for s in tree.segments] == [
        (0, "HEADING", "Data Collection", None),
        (1, "TEXT", "We collect the following personal information:", 0),
        (2, "LISTITEM", "Device information, such as IP address...", 1),
        (3, "LISTITEM", "Location", 1),
        (4, "TEXT", "We disclose the personal information as follows...", 0),
    ]
    intro = "We collect the following personal information:"
    for seg_id, text in ((2, "Device information, such as IP address..."),
                         (3, "Location")):
        variants = enumerate_text_variants(tree, seg_id)
        assert [(v.depth, v.text) for v in variants] == [
            (0, text),
            (1, f"{intro} {text}"),
            (2, f"Data Collection {intro} {text}"),
        ]


def test_two_corpus_runs_are_byte_identical(tmp_path):
    def corpus_run(out_dir):
        for mode_args, sub in (((), "plain"), (("--mode", EXTENDED), "extended")):
            target = out_dir / sub
            code, _, err = run_cli(
                "build", "--in", str(FIXTURES), "--out", str(target),
                "--emit-phrase-graph", *mode_args,
            )
            assert code == 0, err
        code, _, err = run_cli(
            "summarize",
            *(str(p) for p in sorted((out_dir / "plain").glob("*.graph.json"))),
            "--out", str(out_dir / "summary.csv"),
        )
        assert code == 0, err
        return {
            str(p.relative_to(out_dir)): p.read_bytes()
            for p in sorted(out_dir.rglob("*"))
            if p.is_file()
        }

    first = corpus_run(tmp_path / "run1")
    second = corpus_run(tmp_path / "run2")
    assert list(first) == list(second)
    assert first == second
