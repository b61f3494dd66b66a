import pathlib

import pytest

from poligraph import (
    AFFIRMATIVE_ONLY,
    EXTENDED,
    build_poligraph,
    load_data_ontology,
    load_default_normalizer,
    load_entity_ontology,
    load_parsed_document,
    run_annotators,
)

FIXTURES = pathlib.Path(__file__).parent / "fixtures"


def load_fixture_doc(name: str):
    return load_parsed_document((FIXTURES / f"{name}.ppd").read_text(encoding="utf-8"))


def build_fixture_graph(name: str, mode: str):
    doc = load_fixture_doc(name)
    return build_poligraph(run_annotators(doc, mode=mode), mode=mode, source_id=name)


@pytest.fixture(scope="session")
def kayak_doc():
    return load_fixture_doc("kayak")


@pytest.fixture(scope="session")
def kayak_graph():
    return build_fixture_graph("kayak", AFFIRMATIVE_ONLY)


@pytest.fixture(scope="session")
def acme_graph():
    return build_fixture_graph("acme", EXTENDED)


@pytest.fixture(scope="session")
def globex_graph():
    return build_fixture_graph("globex", EXTENDED)


@pytest.fixture(scope="session")
def data_ontology():
    return load_data_ontology()


@pytest.fixture(scope="session")
def entity_ontology():
    return load_entity_ontology()


@pytest.fixture(scope="session")
def normalizer():
    return load_default_normalizer()
