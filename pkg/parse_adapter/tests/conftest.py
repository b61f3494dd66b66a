import pathlib

import pytest

from parse_adapter import AdapterConfig, parse_document

FIXTURES = pathlib.Path(__file__).parent / "fixtures"


def fixture_paths():
    return sorted(p for p in FIXTURES.iterdir() if p.is_file())


@pytest.fixture(scope="session")
def corpus():
    """Every fixture document parsed once with the default config."""
    out = {}
    for path in fixture_paths():
        html = path.read_text(encoding="utf-8")
        out[path.stem] = parse_document(html, path.stem, AdapterConfig())
    return out
