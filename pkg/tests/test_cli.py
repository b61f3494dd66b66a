"""End-to-end tests for the command-line interface.

Everything runs in-process through cli.main so exit codes and stream
output are exactly what a shell invocation would see.
"""

import contextlib
import io
import json
import pathlib
import shutil
import xml.etree.ElementTree as ET

import pytest

from flow_cases import make_flow_graph
from poligraph import (
    COLLECT,
    DATA,
    EXTENDED,
    NOT_COLLECT,
    CollectEdge,
    PoliGraph,
    export_graph,
    load_graph,
)
from poligraph import __version__
from poligraph.cli import main, rule_file_versions

FIXTURES = pathlib.Path(__file__).parent / "fixtures"


def run_cli(*argv):
    out, err = io.StringIO(), io.StringIO()
    with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
        code = main(list(argv))
    return code, out.getvalue(), err.getvalue()


def build_kayak(tmp_path, *extra):
    out_dir = tmp_path / "out"
    code, out, err = run_cli(
        "build", "--in", str(FIXTURES / "kayak.ppd"), "--out", str(out_dir), *extra
    )
    assert code == 0, err
    return out_dir, out


# -- version -----------------------------------------------------------------


def test_version_prints_tool_and_rule_file_versions():
    code, out, err = run_cli("--version")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == f"poligraph {__version__}"
    named = dict(line.rsplit(" ", 1) for line in lines[1:])
    assert set(named) == set(rule_file_versions())
    assert all(v.isdigit() for v in named.values())


# -- build -------------------------------------------------------------------


def test_build_writes_one_graph_per_document(tmp_path):
    out_dir, out = build_kayak(tmp_path)
    graph_path = out_dir / "kayak.graph.json"
    assert out.splitlines() == [str(graph_path)]
    graph = load_graph(graph_path.read_text(encoding="utf-8"))
    assert graph.source_id == "kayak"
    assert graph.collects("we", "ip address")


def test_build_directory_builds_every_policy(tmp_path):
    in_dir = tmp_path / "corpus"
    in_dir.mkdir()
    for name in ("kayak", "acme", "globex"):
        shutil.copy(FIXTURES / f"{name}.ppd", in_dir / f"{name}.ppd")
    out_dir = tmp_path / "out"
    code, out, err = run_cli("build", "--in", str(in_dir), "--out", str(out_dir))
    assert code == 0, err
    assert out.splitlines() == [
        str(out_dir / "acme.graph.json"),
        str(out_dir / "globex.graph.json"),
        str(out_dir / "kayak.graph.json"),
    ]


def test_build_multi_document_file_gets_indexed_stems(tmp_path):
    obj = json.loads((FIXTURES / "kayak.ppd").read_text(encoding="utf-8"))
    twin = dict(obj, source_id="kayak2")
    pair = tmp_path / "pair.ppd"
    pair.write_text(json.dumps(obj) + "\n" + json.dumps(twin) + "\n", encoding="utf-8")
    out_dir = tmp_path / "out"
    code, out, err = run_cli("build", "--in", str(pair), "--out", str(out_dir))
    assert code == 0, err
    names = [pathlib.Path(line).name for line in out.splitlines()]
    assert names == ["pair-0.graph.json", "pair-1.graph.json"]
    second = load_graph((out_dir / "pair-1.graph.json").read_text(encoding="utf-8"))
    assert second.source_id == "kayak2"


def test_build_emits_phrase_graph_when_asked(tmp_path):
    out_dir, out = build_kayak(tmp_path, "--emit-phrase-graph")
    pg_path = out_dir / "kayak.phrase.json"
    assert str(pg_path) in out.splitlines()
    obj = json.loads(pg_path.read_text(encoding="utf-8"))
    assert {"nodes", "edges"} <= set(obj)
    assert obj["nodes"]


def test_build_extended_mode_flag(tmp_path):
    out_dir, _ = build_kayak(tmp_path, "--mode", EXTENDED)
    graph = load_graph((out_dir / "kayak.graph.json").read_text(encoding="utf-8"))
    assert graph.mode == EXTENDED


def test_build_dot_and_graphml_formats(tmp_path):
    out_dir, _ = build_kayak(tmp_path, "--format", "dot")
    dot = (out_dir / "kayak.graph.dot").read_text(encoding="utf-8")
    assert dot.startswith("digraph poligraph {")

    out_dir2 = tmp_path / "out2"
    code, _, err = run_cli(
        "build", "--in", str(FIXTURES / "kayak.ppd"),
        "--out", str(out_dir2), "--format", "graphml",
    )
    assert code == 0, err
    root = ET.parse(out_dir2 / "kayak.graph.graphml").getroot()
    assert root.tag.endswith("graphml")


def test_corpus_build_continues_past_bad_documents(tmp_path):
    in_dir = tmp_path / "corpus"
    in_dir.mkdir()
    shutil.copy(FIXTURES / "kayak.ppd", in_dir / "kayak.ppd")
    (in_dir / "broken.ppd").write_text("not json at all", encoding="utf-8")
    out_dir = tmp_path / "out"
    code, out, err = run_cli("build", "--in", str(in_dir), "--out", str(out_dir))
    assert code == 0
    assert (out_dir / "kayak.graph.json").exists()
    failures = json.loads((out_dir / "diagnostics.json").read_text(encoding="utf-8"))
    assert len(failures) == 1
    assert failures[0]["file"].endswith("broken.ppd")
    assert failures[0]["error"]
    assert "1 document(s) failed" in err


def test_corpus_build_survives_undecodable_bytes(tmp_path):
    in_dir = tmp_path / "corpus"
    in_dir.mkdir()
    shutil.copy(FIXTURES / "kayak.ppd", in_dir / "kayak.ppd")
    (in_dir / "mojibake.ppd").write_bytes(b'\xff\xfe{"nope": 1}')
    out_dir = tmp_path / "out"
    code, out, err = run_cli("build", "--in", str(in_dir), "--out", str(out_dir))
    assert code == 0
    failures = json.loads((out_dir / "diagnostics.json").read_text(encoding="utf-8"))
    assert [f["file"].endswith("mojibake.ppd") for f in failures] == [True]


def test_single_bad_file_is_an_input_error(tmp_path):
    bad = tmp_path / "broken.ppd"
    bad.write_text("not json at all", encoding="utf-8")
    code, out, err = run_cli("build", "--in", str(bad), "--out", str(tmp_path / "out"))
    assert code == 2
    assert "error:" in err


def test_missing_input_is_an_input_error(tmp_path):
    code, out, err = run_cli(
        "build", "--in", str(tmp_path / "absent.ppd"), "--out", str(tmp_path / "out")
    )
    assert code == 2
    assert "not found" in err


def test_non_ppd_single_file_rejected(tmp_path):
    other = tmp_path / "policy.txt"
    other.write_text("{}", encoding="utf-8")
    code, _, err = run_cli("build", "--in", str(other), "--out", str(tmp_path / "out"))
    assert code == 2
    assert "not a PPD file" in err


def test_empty_directory_rejected(tmp_path):
    in_dir = tmp_path / "corpus"
    in_dir.mkdir()
    code, _, err = run_cli("build", "--in", str(in_dir), "--out", str(tmp_path / "out"))
    assert code == 2
    assert "no .ppd files" in err


def test_bad_rules_file_is_a_config_error(tmp_path):
    code, _, err = run_cli(
        "build", "--in", str(FIXTURES / "kayak.ppd"),
        "--out", str(tmp_path / "out"),
        "--rules", str(tmp_path / "absent.yaml"),
    )
    assert code == 1
    assert "rules file" in err


# -- query -------------------------------------------------------------------


def test_query_collect_answers_true_and_false(tmp_path):
    out_dir, _ = build_kayak(tmp_path)
    graph_file = str(out_dir / "kayak.graph.json")
    code, out, _ = run_cli("query", graph_file, "collect", "we", "ip address")
    assert (code, out) == (0, "true\n")
    code, out, _ = run_cli("query", graph_file, "collect", "travel partners", "ssn")
    assert (code, out) == (0, "false\n")


def test_query_subsume_is_reflexive_and_follows_chains(tmp_path):
    out_dir, _ = build_kayak(tmp_path)
    graph_file = str(out_dir / "kayak.graph.json")
    cases = [
        (("personal information", "personal information"), "true"),
        (("personal information", "ip address"), "true"),
        (("ip address", "personal information"), "false"),
    ]
    for (broad, narrow), want in cases:
        code, out, _ = run_cli("query", graph_file, "subsume", broad, narrow)
        assert (code, out) == (0, want + "\n")


def test_query_subsume_entity_kind(tmp_path):
    graph = PoliGraph(
        source_id="crafted",
        data_nodes={"email address"},
        entity_nodes={"advertiser", "google"},
        subsume_edges={("ENTITY", "advertiser", "google")},
        collect_edges=[CollectEdge("google", "email address")],
    )
    graph.validate()
    path = tmp_path / "crafted.graph.json"
    path.write_text(export_graph(graph, "json"), encoding="utf-8")
    code, out, _ = run_cli(
        "query", str(path), "subsume", "advertiser", "google", "--kind", "ENTITY"
    )
    assert (code, out) == (0, "true\n")
    # default kind is DATA, where these terms do not exist
    code, out, _ = run_cli("query", str(path), "subsume", "advertiser", "google")
    assert (code, out) == (0, "false\n")


def test_query_purposes_lists_each_phrase(tmp_path):
    out_dir, _ = build_kayak(tmp_path)
    code, out, _ = run_cli(
        "query", str(out_dir / "kayak.graph.json"), "purposes", "we", "geolocation"
    )
    assert code == 0
    lines = out.splitlines()
    assert "provide features" in lines
    assert lines == sorted(lines)


def test_query_wrong_arity_is_usage_error(tmp_path):
    out_dir, _ = build_kayak(tmp_path)
    code, _, err = run_cli("query", str(out_dir / "kayak.graph.json"), "collect", "we")
    assert code == 1
    assert "ENTITY DATA" in err


def test_query_unknown_relation_rejected(tmp_path):
    out_dir, _ = build_kayak(tmp_path)
    code, _, err = run_cli(
        "query", str(out_dir / "kayak.graph.json"), "owns", "we", "ip address"
    )
    assert code == 1


# -- summarize ---------------------------------------------------------------


def test_summarize_writes_eight_category_rows(tmp_path):
    in_dir = tmp_path / "corpus"
    in_dir.mkdir()
    for name in ("kayak", "acme", "globex"):
        shutil.copy(FIXTURES / f"{name}.ppd", in_dir / f"{name}.ppd")
    out_dir = tmp_path / "out"
    code, _, err = run_cli("build", "--in", str(in_dir), "--out", str(out_dir))
    assert code == 0, err

    csv_path = tmp_path / "summary.csv"
    code, out, err = run_cli(
        "summarize",
        str(out_dir / "acme.graph.json"),
        str(out_dir / "globex.graph.json"),
        str(out_dir / "kayak.graph.json"),
        "--out", str(csv_path),
    )
    assert code == 0, err
    assert out.strip() == str(csv_path)
    lines = csv_path.read_text(encoding="utf-8").splitlines()
    assert len(lines) == 9
    assert lines[0].startswith("data_category,policies,")
    categories = [line.split(",", 1)[0] for line in lines[1:]]
    assert categories == sorted(categories)
    assert "geolocation" in categories


def test_summarize_to_stdout(tmp_path):
    out_dir, _ = build_kayak(tmp_path)
    code, out, err = run_cli("summarize", str(out_dir / "kayak.graph.json"), "--out", "-")
    assert code == 0, err
    assert out.startswith("data_category,policies,")


def test_summarize_rejects_corrupt_graph_file(tmp_path):
    bad = tmp_path / "bad.graph.json"
    bad.write_text("[]", encoding="utf-8")
    code, _, err = run_cli("summarize", str(bad), "--out", "-")
    assert code == 2
    assert "error:" in err


# -- checkdefs ---------------------------------------------------------------


def test_checkdefs_reports_deviations_with_policy_id(tmp_path):
    graph = PoliGraph(
        source_id="shady",
        data_nodes={"non-personal information", "ip address", "log data"},
        entity_nodes={"we"},
        subsume_edges={("DATA", "non-personal information", "ip address")},
        collect_edges=[CollectEdge("we", "ip address")],
    )
    graph.validate()
    path = tmp_path / "shady.graph.json"
    path.write_text(export_graph(graph, "json"), encoding="utf-8")

    out_path = tmp_path / "deviations.jsonl"
    code, out, err = run_cli("checkdefs", str(path), "--out", str(out_path))
    assert code == 0, err
    rows = [json.loads(line) for line in out_path.read_text(encoding="utf-8").splitlines()]
    assert [(r["kind"], r["hypernym"], r["hyponym"]) for r in rows] == [
        ("misleading_nonpersonal", "non-personal information", "ip address"),
        ("nonstandard_term", "log data", None),
    ]
    assert all(r["policy"] == "shady" for r in rows)


def test_checkdefs_clean_graph_writes_nothing(tmp_path):
    out_dir, _ = build_kayak(tmp_path)
    code, out, err = run_cli("checkdefs", str(out_dir / "kayak.graph.json"), "--out", "-")
    assert code == 0, err
    assert out == ""


# -- conflicts ---------------------------------------------------------------


def conflicted_graph():
    graph = PoliGraph(
        source_id="conf",
        mode=EXTENDED,
        data_nodes={"email address"},
        entity_nodes={"we"},
        collect_edges=[
            CollectEdge("we", "email address", polarity=COLLECT),
            CollectEdge("we", "email address", polarity=NOT_COLLECT),
        ],
    )
    graph.validate()
    return graph


def test_conflicts_emits_pairs_for_extended_graphs(tmp_path):
    path = tmp_path / "conf.graph.json"
    path.write_text(export_graph(conflicted_graph(), "json"), encoding="utf-8")
    code, out, err = run_cli("conflicts", str(path), "--out", "-")
    assert code == 0, err
    rows = [json.loads(line) for line in out.splitlines()]
    assert len(rows) == 1
    row = rows[0]
    assert row["policy"] == "conf"
    assert row["positive"]["polarity"] == COLLECT
    assert row["negative"]["polarity"] == NOT_COLLECT
    assert row["witness"]["data"] == "email address"
    assert row["witness"]["entity"] == "we"


def test_conflicts_rejects_affirmative_graphs(tmp_path):
    out_dir, _ = build_kayak(tmp_path)
    code, _, err = run_cli("conflicts", str(out_dir / "kayak.graph.json"), "--out", "-")
    assert code == 2
    assert "extended" in err


# -- flowcheck ---------------------------------------------------------------

FLOWS_CSV = (
    "app_id,entity,data_type\n"
    "flowapp,we,email address\n"
    "flowapp,Facebook,Android ID\n"
    "flowapp,facebook,social security number\n"
)


def write_flow_inputs(tmp_path):
    graph_path = tmp_path / "flowapp.graph.json"
    graph_path.write_text(export_graph(make_flow_graph(), "json"), encoding="utf-8")
    flows_path = tmp_path / "flows.csv"
    flows_path.write_text(FLOWS_CSV, encoding="utf-8")
    return graph_path, flows_path


def test_flowcheck_labels_flows_and_worst_disclosure(tmp_path):
    graph_path, flows_path = write_flow_inputs(tmp_path)
    out_path = tmp_path / "consistency.csv"
    worst_path = tmp_path / "worst.csv"
    code, out, err = run_cli(
        "flowcheck", str(graph_path), "--flows", str(flows_path),
        "--out", str(out_path), "--worst-out", str(worst_path),
    )
    assert code == 0, err

    lines = out_path.read_text(encoding="utf-8").splitlines()
    assert lines[0] == (
        "app_id,entity,data_type,disclosure,witness_data,witness_entity,purposes"
    )
    # flow terms are normalized before matching, so Facebook/Android ID
    # come back in canonical form
    assert lines[1:] == [
        "flowapp,we,email address,clear,,,provide features",
        "flowapp,facebook,android id,vague,device identifier,advertiser,serve ads",
        "flowapp,facebook,social security number,inconsistent,,,",
    ]
    assert worst_path.read_text(encoding="utf-8") == (
        "app_id,disclosure\nflowapp,inconsistent\n"
    )


def test_flowcheck_duplicate_app_graphs_rejected(tmp_path):
    graph_path, flows_path = write_flow_inputs(tmp_path)
    twin = tmp_path / "again.graph.json"
    shutil.copy(graph_path, twin)
    code, _, err = run_cli(
        "flowcheck", str(graph_path), str(twin), "--flows", str(flows_path),
        "--out", "-", "--worst-out", "-",
    )
    assert code == 2
    assert "duplicate graph" in err


def test_flowcheck_unknown_app_rejected(tmp_path):
    graph_path, flows_path = write_flow_inputs(tmp_path)
    flows_path.write_text(
        "app_id,entity,data_type\nghostapp,we,email address\n", encoding="utf-8"
    )
    code, _, err = run_cli(
        "flowcheck", str(graph_path), "--flows", str(flows_path),
        "--out", "-", "--worst-out", "-",
    )
    assert code == 2
    assert "ghostapp" in err


def test_flowcheck_bad_flow_header_rejected(tmp_path):
    graph_path, flows_path = write_flow_inputs(tmp_path)
    flows_path.write_text("app,who,what\nx,y,z\n", encoding="utf-8")
    code, _, err = run_cli(
        "flowcheck", str(graph_path), "--flows", str(flows_path),
        "--out", "-", "--worst-out", "-",
    )
    assert code == 2
    assert "header" in err


# -- exit code 3 -------------------------------------------------------------


def test_internal_errors_exit_3(tmp_path, monkeypatch):
    out_dir, _ = build_kayak(tmp_path)

    def boom(text):
        raise RuntimeError("boom")

    monkeypatch.setattr("poligraph.cli.load_graph", boom)
    code, _, err = run_cli(
        "query", str(out_dir / "kayak.graph.json"), "collect", "we", "ip address"
    )
    assert code == 3
    assert "internal error" in err


# -- determinism -------------------------------------------------------------


def test_build_outputs_are_byte_identical_across_runs(tmp_path):
    dir1, _ = build_kayak(tmp_path / "run1", "--emit-phrase-graph")
    dir2, _ = build_kayak(tmp_path / "run2", "--emit-phrase-graph")
    for name in ("kayak.graph.json", "kayak.phrase.json"):
        assert (dir1 / name).read_bytes() == (dir2 / name).read_bytes()
