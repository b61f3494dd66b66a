"""Command line interface: adapt a directory of policy pages."""

import json
import logging
import pathlib

import click

from .config import AdapterConfig, AdapterError, DEFAULT_MODEL, NER_SOURCES
from .pipeline import make_backend, parse_document, serialize

log = logging.getLogger("parse_adapter")

SUFFIXES = (".html", ".htm", ".txt")


@click.command(name="adapt")
@click.option(
    "--in", "in_dir", required=True,
    type=click.Path(exists=True, file_okay=False, path_type=pathlib.Path),
    help="Directory of .html/.htm/.txt policy documents.",
)
@click.option(
    "--out", "out_dir", required=True,
    type=click.Path(file_okay=False, path_type=pathlib.Path),
    help="Directory that receives one .ppd file per input document.",
)
@click.option("--model", default=DEFAULT_MODEL, show_default=True,
              help="Parser: the built-in heuristic or a spaCy package name.")
@click.option("--ner-source", type=click.Choice(NER_SOURCES),
              default="rule_fallback", show_default=True,
              help="Where DATA/ENTITY spans come from.")
@click.option("--batch-size", default=32, show_default=True,
              help="Sentences per model call (statistical models only).")
def main(in_dir, out_dir, model, ner_source, batch_size):
    """Convert policy documents into parsed-document (.ppd) files."""
    logging.basicConfig(level=logging.INFO, format="%(levelname)s %(message)s")
    try:
        config = AdapterConfig(model=model, batch_size=batch_size,
                               ner_source=ner_source)
    except ValueError as exc:
        raise click.ClickException(str(exc)) from exc
    try:
        backend = make_backend(config)
    except AdapterError as exc:
        raise click.ClickException(str(exc)) from exc

    out_dir.mkdir(parents=True, exist_ok=True)
    files = sorted(p for p in in_dir.iterdir()
                   if p.suffix.lower() in SUFFIXES and p.is_file())
    written = 0
    failures = []
    for path in files:
        try:
            html = path.read_text(encoding="utf-8", errors="replace")
            obj = parse_document(html, path.stem, config, backend)
            target = out_dir / (path.stem + ".ppd")
            target.write_text(serialize(obj) + "\n", encoding="utf-8")
            written += 1
            log.info("%s: %d sentences", path.name, len(obj["sentences"]))
        except AdapterError as exc:
            raise click.ClickException(str(exc)) from exc
        except Exception as exc:  # noqa: BLE001 - one bad file must not stop the run
            log.error("%s: %s", path.name, exc)
            failures.append({"file": path.name, "error": str(exc)})

    diagnostics = {
        "documents": written,
        "failures": failures,
        "model": config.model,
        "ner_source": config.ner_source,
    }
    (out_dir / "diagnostics.json").write_text(
        json.dumps(diagnostics, indent=2, sort_keys=True) + "\n", encoding="utf-8"
    )
    click.echo(f"adapted {written}/{len(files)} documents -> {out_dir}")


if __name__ == "__main__":
    main()
