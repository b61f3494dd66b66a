"""Command-line interface.

Subcommands: build (PPD files to graph files), query (relation lookups on a
built graph), summarize, checkdefs, conflicts, flowcheck. Exit codes: 0 on
success, 1 for usage or configuration problems, 2 for invalid input files,
3 for anything unexpected.
"""

from __future__ import annotations

import pathlib
import sys

import click
import yaml

from .analyses import (
    DataFlow,
    check_definitions,
    check_flow,
    conflicts_to_jsonl,
    find_conflicts,
    flow_results_to_csv,
    flows_from_csv,
    summarize_corpus,
    summary_to_csv,
    worst_to_csv,
)
from .annotators import AFFIRMATIVE_ONLY, DATA, ENTITY, MODES, run_annotators
from .annotators.rules import load_collection_rules
from .errors import (
    ConfigError,
    FormatError,
    OntologyError,
    PoligraphError,
    UnknownSegmentError,
    UnmappedVerbError,
    ValidationError,
)
from .graph import build_poligraph, export_graph, load_graph
from .normalize import load_default_normalizer
from .ontology import load_data_ontology, load_entity_ontology
from .ppd import NerLabel, load_document_file
from .util import canonical_json, canonical_json_line, read_data_text
from . import __version__

_RULE_FILES = (
    "collection_rules.yaml",
    "synonyms.yaml",
    "purpose_lexicon.yaml",
    "deviation_terms.yaml",
    "data_ontology.yaml",
    "entity_ontology.yaml",
    "entity_aliases.yaml",
)


def rule_file_versions() -> dict[str, int]:
    out = {}
    for name in _RULE_FILES:
        obj = yaml.safe_load(read_data_text(name))
        out[name] = int(obj.get("version", 0))
    return out


def _print_version(ctx, param, value):
    if not value or ctx.resilient_parsing:
        return
    click.echo(f"poligraph {__version__}")
    for name, version in rule_file_versions().items():
        click.echo(f"{name} {version}")
    ctx.exit(0)


@click.group()
@click.option(
    "--version",
    is_flag=True,
    callback=_print_version,
    expose_value=False,
    is_eager=True,
    help="Print tool and rule-file versions and exit.",
)
def cli():
    """Build and analyze privacy-policy knowledge graphs."""


def _read_input_text(path: pathlib.Path) -> str:
    try:
        return path.read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise ValidationError(f"cannot read {path}: {exc}") from exc


def _input_files(in_path: pathlib.Path) -> tuple[list[pathlib.Path], bool]:
    """Resolve --in to PPD files. Returns (files, is_corpus)."""
    if in_path.is_dir():
        files = sorted(p for p in in_path.iterdir() if p.suffix == ".ppd")
        if not files:
            raise ValidationError(f"no .ppd files in {in_path}")
        return files, True
    if not in_path.exists():
        raise ValidationError(f"input not found: {in_path}")
    if in_path.suffix != ".ppd":
        raise ValidationError(f"not a PPD file: {in_path}")
    return [in_path], False


_FORMAT_SUFFIX = {"json": ".graph.json", "dot": ".graph.dot", "graphml": ".graph.graphml"}


@cli.command()
@click.option("--in", "in_path", required=True, type=click.Path(path_type=pathlib.Path))
@click.option("--out", "out_dir", required=True, type=click.Path(path_type=pathlib.Path))
@click.option("--mode", type=click.Choice(sorted(MODES)), default=AFFIRMATIVE_ONLY)
@click.option("--format", "fmt", type=click.Choice(sorted(_FORMAT_SUFFIX)), default="json")
@click.option("--emit-phrase-graph", is_flag=True)
@click.option("--rules", "rules_path", type=click.Path(path_type=pathlib.Path), default=None)
def build(in_path, out_dir, mode, fmt, emit_phrase_graph, rules_path):
    """Build one graph file per policy document under --in."""
    rules = None
    if rules_path is not None:
        try:
            rules = load_collection_rules(rules_path.read_text(encoding="utf-8"))
        except (OSError, UnicodeDecodeError) as exc:
            raise ConfigError(f"cannot read rules file: {exc}") from exc
    files, is_corpus = _input_files(in_path)
    out_dir.mkdir(parents=True, exist_ok=True)
    normalizer = load_default_normalizer()

    failures = []
    for path in files:
        try:
            docs = load_document_file(_read_input_text(path))
            if not docs:
                raise ValidationError(f"no documents in {path}")
            for i, doc in enumerate(docs):
                phrase_graph = run_annotators(doc, rules=rules, mode=mode)
                graph = build_poligraph(
                    phrase_graph, normalizer=normalizer, mode=mode,
                    source_id=doc.source_id,
                )
                stem = path.stem if len(docs) == 1 else f"{path.stem}-{i}"
                out_path = out_dir / (stem + _FORMAT_SUFFIX[fmt])
                out_path.write_text(export_graph(graph, fmt), encoding="utf-8")
                click.echo(str(out_path))
                if emit_phrase_graph:
                    pg_path = out_dir / (stem + ".phrase.json")
                    pg_path.write_text(
                        canonical_json(phrase_graph.to_json_obj()), encoding="utf-8"
                    )
                    click.echo(str(pg_path))
        except PoligraphError as exc:
            if not is_corpus:
                raise
            failures.append({"file": str(path), "error": str(exc)})
    if failures:
        diag_path = out_dir / "diagnostics.json"
        diag_path.write_text(canonical_json(failures), encoding="utf-8")
        click.echo(f"{len(failures)} document(s) failed; see {diag_path}", err=True)


def _load_graph_file(path: pathlib.Path):
    return load_graph(_read_input_text(path))


@cli.command()
@click.argument("graph_file", type=click.Path(path_type=pathlib.Path))
@click.argument("relation", type=click.Choice(["collect", "subsume", "purposes"]))
@click.argument("args", nargs=-1)
@click.option("--kind", type=click.Choice([DATA, ENTITY]), default=DATA,
              help="Node kind for subsume queries.")
def query(graph_file, relation, args, kind):
    """Answer a relation query against a built graph."""
    graph = _load_graph_file(graph_file)
    if relation == "collect":
        if len(args) != 2:
            raise click.UsageError("query collect takes ENTITY DATA")
        click.echo("true" if graph.collects(args[0], args[1]) else "false")
    elif relation == "subsume":
        if len(args) != 2:
            raise click.UsageError("query subsume takes BROADER NARROWER")
        click.echo("true" if graph.subsumes(args[0], args[1], kind) else "false")
    else:
        if len(args) != 2:
            raise click.UsageError("query purposes takes ENTITY DATA")
        for text in sorted(graph.purposes_of(args[0], args[1])):
            click.echo(text)


def _write_text(out: str, text: str) -> None:
    if out == "-":
        click.echo(text, nl=False)
    else:
        pathlib.Path(out).write_text(text, encoding="utf-8")
        click.echo(out)


@cli.command()
@click.argument("graphs", nargs=-1, required=True,
                type=click.Path(path_type=pathlib.Path))
@click.option("--out", default="summary.csv", show_default=True,
              help="Output CSV path, or - for stdout.")
def summarize(graphs, out):
    """Count policies per data category and per category pair."""
    corpus = [_load_graph_file(p) for p in graphs]
    data_ontology = load_data_ontology()
    entity_ontology = load_entity_ontology()
    report = summarize_corpus(corpus, data_ontology, entity_ontology)
    _write_text(out, summary_to_csv(report, data_ontology, entity_ontology))


@cli.command()
@click.argument("graphs", nargs=-1, required=True,
                type=click.Path(path_type=pathlib.Path))
@click.option("--out", default="-", show_default=True,
              help="Output JSONL path, or - for stdout.")
def checkdefs(graphs, out):
    """Report local definitions that deviate from the global data ontology."""
    data_ontology = load_data_ontology()
    lines = []
    for path in graphs:
        graph = _load_graph_file(path)
        for dev in check_definitions(graph, data_ontology):
            obj = {"policy": graph.source_id}
            obj.update(dev.to_json_obj())
            lines.append(canonical_json_line(obj) + "\n")
    _write_text(out, "".join(lines))


@cli.command()
@click.argument("graphs", nargs=-1, required=True,
                type=click.Path(path_type=pathlib.Path))
@click.option("--out", default="-", show_default=True,
              help="Output JSONL path, or - for stdout.")
def conflicts(graphs, out):
    """Find contradicting positive/negative edge pairs in extended graphs."""
    lines = []
    for path in graphs:
        graph = _load_graph_file(path)
        for pair in find_conflicts(graph):
            obj = {"policy": graph.source_id}
            obj.update(pair.to_json_obj())
            lines.append(canonical_json_line(obj) + "\n")
    _write_text(out, "".join(lines))


@cli.command()
@click.argument("graphs", nargs=-1, required=True,
                type=click.Path(path_type=pathlib.Path))
@click.option("--flows", "flows_path", required=True,
              type=click.Path(path_type=pathlib.Path))
@click.option("--out", default="consistency.csv", show_default=True,
              help="Per-flow CSV path, or - for stdout.")
@click.option("--worst-out", default="worst.csv", show_default=True,
              help="Per-app worst-disclosure CSV path, or - for stdout.")
def flowcheck(graphs, flows_path, out, worst_out):
    """Label observed data flows against each app's policy graph."""
    by_app = {}
    for path in graphs:
        graph = _load_graph_file(path)
        if graph.source_id in by_app:
            raise ValidationError(f"duplicate graph for app {graph.source_id!r}")
        by_app[graph.source_id] = graph
    flow_rows = flows_from_csv(_read_input_text(flows_path))

    data_ontology = load_data_ontology()
    entity_ontology = load_entity_ontology()
    normalizer = load_default_normalizer()
    results = []
    for app_id, flow in flow_rows:
        if app_id not in by_app:
            raise ValidationError(f"no graph for app {app_id!r}")
        normalized = DataFlow(
            entity=normalizer.normalize(flow.entity, NerLabel.ENTITY).name,
            data_type=normalizer.normalize(flow.data_type, NerLabel.DATA).name,
        )
        disc = check_flow(by_app[app_id], normalized, data_ontology, entity_ontology)
        results.append((app_id, normalized, disc))
    _write_text(out, flow_results_to_csv(results))
    _write_text(worst_out, worst_to_csv(results))


def main(argv=None) -> int:
    try:
        cli.main(args=argv, prog_name="poligraph", standalone_mode=False)
    except click.exceptions.Exit as exc:
        return exc.exit_code
    except click.UsageError as exc:
        click.echo(f"error: {exc.format_message()}", err=True)
        return 1
    except click.ClickException as exc:
        exc.show()
        return 1
    except (ConfigError, UnmappedVerbError) as exc:
        click.echo(f"error: {exc}", err=True)
        return 1
    except (FormatError, ValidationError, OntologyError, UnknownSegmentError) as exc:
        click.echo(f"error: {exc}", err=True)
        return 2
    except Exception as exc:  # noqa: BLE001  anything else is a bug
        click.echo(f"internal error: {exc!r}", err=True)
        return 3
    return 0


if __name__ == "__main__":
    sys.exit(main())
