"""Ontology loading, subsumption reasoning, and categorization."""

import pytest

from poligraph import (
    OntologyError,
    load_data_ontology,
    load_entity_ontology,
    load_ontology,
)

SMALL = """
name: test
kind: DATA
root: info
terms:
  - term: info
    subsumes: [contact, device]
  - term: contact
    category: true
    subsumes: [email]
  - term: device
    category: true
    subsumes: [email]
  - term: email
"""


def test_subsumes_is_reflexive_and_transitive():
    ont = load_ontology(SMALL)
    assert ont.subsumes("email", "email")
    assert ont.subsumes("contact", "email")
    assert ont.subsumes("info", "email")
    assert not ont.subsumes("email", "contact")
    assert not ont.subsumes("contact", "device")


def test_membership_and_undeclared_terms():
    ont = load_ontology(SMALL)
    assert "email" in ont
    assert "fax" not in ont
    with pytest.raises(OntologyError, match="undeclared term"):
        ont.subsumes("info", "fax")


def test_categorize_returns_every_covering_category():
    ont = load_ontology(SMALL)
    assert ont.categorize("email") == {"contact", "device"}
    assert ont.categorize("contact") == {"contact"}
    assert ont.categorize("info") == set()


def test_cycles_are_rejected():
    text = SMALL + "\n" # force distinct string
    bad = text.replace("- term: email", "- term: email\n    subsumes: [info]")
    with pytest.raises(OntologyError, match="cycle"):
        load_ontology(bad)


def test_duplicate_terms_are_rejected():
    bad = SMALL + "  - term: email\n"
    with pytest.raises(OntologyError, match="duplicate"):
        load_ontology(bad)


def test_undeclared_children_are_rejected():
    bad = SMALL.replace("subsumes: [email]\n  - term: device", "subsumes: [fax]\n  - term: device")
    with pytest.raises(OntologyError, match="undeclared"):
        load_ontology(bad)


def test_missing_keys_are_rejected():
    with pytest.raises(OntologyError, match="missing"):
        load_ontology("name: x\nkind: DATA\nterms: []")
    with pytest.raises(OntologyError, match="kind"):
        load_ontology("name: x\nkind: OTHER\nroot: a\nterms: [{term: a}]")


def test_global_data_ontology_has_the_eight_categories(data_ontology):
    assert sorted(data_ontology.category_level) == [
        "biometric information",
        "contact information",
        "geolocation",
        "government identifier",
        "hardware identifier",
        "internet activity",
        "protected classification",
        "software identifier",
    ]
    assert data_ontology.root == "personal information"
    assert data_ontology.subsumes("personal information", "ip address")
    assert data_ontology.subsumes("software identifier", "ip address")
    assert data_ontology.subsumes("contact information", "email address")


def test_device_identifier_covers_both_identifier_categories(data_ontology):
    assert data_ontology.subsumes("device identifier", "android id")
    assert data_ontology.subsumes("device identifier", "mac address")
    assert data_ontology.categorize("android id") >= {"software identifier"}


def test_global_entity_ontology_links_companies_to_categories(entity_ontology):
    assert entity_ontology.subsumes("advertiser", "google")
    assert entity_ontology.subsumes("analytic provider", "google")
    assert entity_ontology.subsumes("social media", "facebook")
    assert entity_ontology.categorize("google") == {"advertiser", "analytic provider"}
    assert "we" not in entity_ontology


def test_global_ontologies_load_once_and_consistently():
    assert load_data_ontology() is load_data_ontology()
    assert load_entity_ontology() is load_entity_ontology()
