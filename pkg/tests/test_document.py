"""Document tree construction and text variant enumeration."""

import pytest

from poligraph import (
    DocumentTree,
    SegmentKind,
    UnknownSegmentError,
    build_document_tree,
    enumerate_text_variants,
)

EXAMPLE_HTML = (
    "<h1>Data Collection</h1>"
    "<p>We collect the following personal information:</p>"
    "<ul>"
    "<li>Device information, such as IP address...</li>"
    "<li>Location</li>"
    "</ul>"
    "<p>We disclose the personal information as follows...</p>"
)


def example_tree() -> DocumentTree:
    return build_document_tree(EXAMPLE_HTML, "example-1")


def test_example_tree_segments_are_byte_exact():
    tree = example_tree()
    got = [(s.id, s.kind.value, s.text, s.parent) for s in tree.segments]
    assert got == [
        (0, "HEADING", "Data Collection", None),
        (1, "TEXT", "We collect the following personal information:", 0),
        (2, "LISTITEM", "Device information, such as IP address...", 1),
        (3, "LISTITEM", "Location", 1),
        (4, "TEXT", "We disclose the personal information as follows...", 0),
    ]


def test_example_listitem_enumerates_three_variants():
    tree = example_tree()
    variants = enumerate_text_variants(tree, 3)
    assert [(v.depth, v.text) for v in variants] == [
        (0, "Location"),
        (1, "We collect the following personal information: Location"),
        (2, "Data Collection We collect the following personal information: Location"),
    ]
    variants = enumerate_text_variants(tree, 2)
    assert [v.text for v in variants] == [
        "Device information, such as IP address...",
        "We collect the following personal information: "
        "Device information, such as IP address...",
        "Data Collection We collect the following personal information: "
        "Device information, such as IP address...",
    ]


def test_segment_with_no_parent_has_one_variant():
    tree = build_document_tree("<p>Standalone paragraph.</p>", "t")
    variants = enumerate_text_variants(tree, 0)
    assert [(v.depth, v.text) for v in variants] == [(0, "Standalone paragraph.")]


def test_deeper_variants_extend_shallower_ones():
    tree = example_tree()
    for segment in tree.segments:
        variants = enumerate_text_variants(tree, segment.id)
        assert variants[0].text == segment.text
        for prev, cur in zip(variants, variants[1:]):
            assert cur.depth == prev.depth + 1
            assert cur.text.endswith(prev.text)
            assert len(cur.text) > len(prev.text)


def test_empty_and_unparsable_inputs_yield_empty_trees():
    assert build_document_tree("", "t").segments == []
    assert build_document_tree("   \n\t ", "t").segments == []
    assert build_document_tree("<div><span></div>", "t").segments == []


def test_unknown_segment_id_raises():
    tree = example_tree()
    with pytest.raises(UnknownSegmentError):
        enumerate_text_variants(tree, 99)
    with pytest.raises(UnknownSegmentError):
        tree.segment(-1)


def test_plain_text_numbered_list_becomes_listitems():
    tree = build_document_tree(
        "<p>We collect:</p><p>1. Name</p><p>2. Gender</p>", "t"
    )
    got = [(s.kind.value, s.text, s.parent) for s in tree.segments]
    assert got == [
        ("TEXT", "We collect:", None),
        ("LISTITEM", "Name", 0),
        ("LISTITEM", "Gender", 0),
    ]


def test_plain_text_bullet_list_becomes_listitems():
    tree = build_document_tree(
        "<p>Sources:</p><p>- Your device</p><p>- Our partners</p>", "t"
    )
    kinds = [s.kind for s in tree.segments]
    assert kinds == [SegmentKind.TEXT, SegmentKind.LISTITEM, SegmentKind.LISTITEM]


def test_single_prefixed_paragraph_is_not_a_list():
    tree = build_document_tree("<p>Intro:</p><p>1. Only one row here</p>", "t")
    assert [s.kind for s in tree.segments] == [SegmentKind.TEXT, SegmentKind.TEXT]


def test_boilerplate_containers_are_stripped():
    tree = build_document_tree(
        "<nav><p>Home | About</p></nav>"
        "<div><h2>Privacy</h2><p>We collect data.</p></div>"
        "<footer><p>Copyright 2024</p></footer>"
        "<script>var x = 1;</script>",
        "t",
    )
    texts = [s.text for s in tree.segments]
    assert texts == ["Privacy", "We collect data."]


def test_nested_headings_use_nearest_heading_as_parent():
    tree = build_document_tree(
        "<h1>Policy</h1><h2>Sharing</h2><p>We share data.</p>", "t"
    )
    got = [(s.kind.value, s.parent) for s in tree.segments]
    assert got == [("HEADING", None), ("HEADING", 0), ("TEXT", 1)]


def test_listitem_nested_two_lists_deep_has_four_variants():
    tree = build_document_tree(
        "<h2>Your Data</h2><p>We collect:</p><ul><li>Contact data"
        "<ul><li>Email address</li></ul></li></ul>",
        "t",
    )
    inner = [s for s in tree.segments if s.text == "Email address"]
    assert len(inner) == 1
    variants = enumerate_text_variants(tree, inner[0].id)
    assert len(variants) == 4
    assert variants[-1].text == "Your Data We collect: Contact data Email address"


def test_segment_ids_are_dense_and_in_document_order():
    tree = example_tree()
    assert [s.id for s in tree.segments] == list(range(len(tree.segments)))


def test_json_round_trip_preserves_the_tree():
    tree = example_tree()
    obj = tree.to_json_obj()
    assert obj["source_id"] == "example-1"
    assert set(obj["segments"][0]) == {"id", "kind", "text", "parent"}
    back = DocumentTree.from_json_obj(obj)
    assert back == tree


def test_build_is_deterministic():
    a = build_document_tree(EXAMPLE_HTML, "t")
    b = build_document_tree(EXAMPLE_HTML, "t")
    assert a == b
