"""Batch command-line entry points mirroring the service.

Exit codes: 0 success, 1 validation dirty, 2 I/O problem, 3 configuration
or network problem.
"""

from __future__ import annotations

import json
import os
import sys
from pathlib import Path

import click

from .datagen import (
    DataGenError,
    apply_user_data,
    generate_table,
    parse_user_table,
)
from .io import load_document, parse_document, serialize
from .model import DslError, DslParseError
from .pipeline import (
    HttpChatTransport,
    InputError,
    MllmEndpointConfig,
    PipelineRunner,
    reproduce_from_fixtures,
)
from .render import RenderError, render_document
from .scoring import AccuracyReport, run_gallery, score
from .validate import validate

EXIT_OK = 0
EXIT_DIRTY = 1
EXIT_IO = 2
EXIT_CONFIG = 3


def _load(path: str):
    try:
        return load_document(path)
    except FileNotFoundError:
        click.echo(f"error: no such file: {path}", err=True)
        sys.exit(EXIT_IO)
    except DslParseError as exc:
        click.echo(f"error: {path}: {exc}", err=True)
        sys.exit(EXIT_IO)


def _write_output(text: str, output: str) -> None:
    if output == "-":
        click.echo(text, nl=False)
        return
    try:
        Path(output).write_text(text, encoding="utf-8")
    except OSError as exc:
        click.echo(f"error: cannot write {output}: {exc}", err=True)
        sys.exit(EXIT_IO)


@click.group()
def main():
    """Chart reverse-engineering toolchain: image -> DSL -> mock data -> SVG."""


@main.command()
@click.argument("image", type=click.Path())
@click.option("-o", "--output", default="out.revis.json", show_default=True)
@click.option("--fixtures", "fixtures_dir", type=click.Path(), default=None,
              help="Replay a recorded case directory instead of calling an endpoint.")
def reproduce(image, output, fixtures_dir):
    """Run the full image-to-DSL pipeline."""
    if fixtures_dir:
        case = Path(fixtures_dir)
        if not case.is_dir():
            click.echo(f"error: no such fixture directory: {fixtures_dir}", err=True)
            sys.exit(EXIT_IO)
        run = reproduce_from_fixtures(case)
    else:
        image_path = Path(image)
        if not image_path.is_file():
            click.echo(f"error: no such file: {image}", err=True)
            sys.exit(EXIT_IO)
        config = MllmEndpointConfig.from_env(os.environ)
        if not config.base_url or not config.api_key:
            click.echo(
                "error: live runs need REVIS_MLLM_BASE_URL and REVIS_MLLM_API_KEY",
                err=True,
            )
            sys.exit(EXIT_CONFIG)
        suffix = image_path.suffix.lower().lstrip(".")
        media = {"jpg": "image/jpeg", "jpeg": "image/jpeg", "gif": "image/gif",
                 "webp": "image/webp"}.get(suffix, "image/png")
        try:
            runner = PipelineRunner(config, HttpChatTransport(config))
            run = runner.run(image_path.read_bytes(), media)
        except InputError as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(EXIT_CONFIG)
    if run.status != "done":
        click.echo(f"error: pipeline failed: {run.failure}", err=True)
        sys.exit(EXIT_CONFIG)
    _write_output(serialize(run.document), output)
    for warning in run.warnings:
        click.echo(f"warning: {warning}", err=True)
    if output != "-":
        click.echo(f"wrote {output}")


@main.command("validate")
@click.argument("dsl", type=click.Path())
def validate_cmd(dsl):
    """Print the validation report; exit 0 only when clean."""
    doc = _load(dsl)
    report = validate(doc)
    if not report.issues:
        click.echo("clean")
        sys.exit(EXIT_OK)
    for issue in report.issues:
        click.echo(str(issue))
    sys.exit(EXIT_DIRTY if report.errors else EXIT_OK)


@main.command()
@click.argument("dsl", type=click.Path())
@click.option("-o", "--output", default="out.svg", show_default=True,
              help="Output path; '-' writes SVG to stdout.")
@click.option("--seed", default=0, show_default=True, type=int)
@click.option("--width", default=800, show_default=True, type=float)
@click.option("--height", default=600, show_default=True, type=float)
@click.option("--data", "data_args", multiple=True, metavar="CID=FILE",
              help="Replace a container's mocked table from a JSON/CSV file.")
def render(dsl, output, seed, width, height, data_args):
    """Render a document to SVG with freshly mocked (or supplied) data."""
    doc = _load(dsl)
    overrides = {}
    for arg in data_args:
        if "=" not in arg:
            click.echo(f"error: --data expects CID=FILE, got {arg!r}", err=True)
            sys.exit(EXIT_IO)
        cid, file_path = arg.split("=", 1)
        try:
            rows = parse_user_table(Path(file_path).read_text(encoding="utf-8"))
            current = None
            if cid in doc.data_specifications:
                current = generate_table(doc.data_specifications[cid], seed, cid)
            doc, table = apply_user_data(doc, cid, rows, seed=seed, current=current)
            overrides[cid] = table
        except FileNotFoundError:
            click.echo(f"error: no such file: {file_path}", err=True)
            sys.exit(EXIT_IO)
        except (DataGenError, DslError) as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(EXIT_IO)
    try:
        svg = render_document(doc, seed=seed, width=width, height=height,
                              overrides=overrides)
    except RenderError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_DIRTY)
    _write_output(svg, output)
    if output != "-":
        click.echo(f"wrote {output}")


@main.command()
@click.argument("dsl", type=click.Path())
@click.option("--container", "cid", required=True)
@click.option("--seed", default=0, show_default=True, type=int)
@click.option("--format", "fmt", type=click.Choice(["json", "csv"]), default="json",
              show_default=True)
def mockdata(dsl, cid, seed, fmt):
    """Emit the exemplar table users copy when uploading their own data."""
    doc = _load(dsl)
    if cid not in doc.data_specifications:
        click.echo(f"error: container {cid!r} has no data specification", err=True)
        sys.exit(EXIT_IO)
    table = generate_table(doc.data_specifications[cid], seed, cid)
    rows = table.to_jsonable()
    if fmt == "json":
        click.echo(json.dumps(rows, indent=2))
        return
    import csv as _csv
    import io as _io

    columns: list[str] = []
    for row in rows:
        for key in row:
            if key not in columns:
                columns.append(key)
    out = _io.StringIO()
    writer = _csv.DictWriter(out, fieldnames=columns)
    writer.writeheader()
    writer.writerows(rows)
    click.echo(out.getvalue(), nl=False)


@main.command()
@click.argument("ground_truth", type=click.Path())
@click.argument("generated", type=click.Path())
@click.option("--format", "fmt", type=click.Choice(["text", "csv", "json"]),
              default="text", show_default=True)
def diff(ground_truth, generated, fmt):
    """Score one generated document against its ground truth."""
    gt = _load(ground_truth)
    gen = _load(generated)
    case = score(gt, gen, name=Path(generated).stem)
    report = AccuracyReport(cases=(case,))
    if fmt == "json":
        click.echo(json.dumps(report.to_jsonable(), indent=2))
    elif fmt == "csv":
        click.echo(report.to_csv(), nl=False)
    else:
        click.echo(report.to_text())
        for path, expected, actual in case.mismatches:
            click.echo(f"  mismatch {path}: expected {expected!r}, got {actual!r}")
    sys.exit(EXIT_OK if case.mismatched == 0 else EXIT_DIRTY)


@main.command()
@click.argument("cases_dir", type=click.Path())
@click.option("--format", "fmt", type=click.Choice(["text", "csv", "json"]),
              default="text", show_default=True)
def gallery(cases_dir, fmt):
    """Score every case folder (ground_truth + generated) under a directory."""
    try:
        report = run_gallery(cases_dir)
    except (FileNotFoundError, NotADirectoryError, DslParseError) as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_IO)
    if fmt == "json":
        click.echo(json.dumps(report.to_jsonable(), indent=2))
    elif fmt == "csv":
        click.echo(report.to_csv(), nl=False)
    else:
        click.echo(report.to_text())
    sys.exit(EXIT_OK)


@main.command()
@click.option("--port", default=8008, show_default=True, type=int)
@click.option("--host", default="127.0.0.1", show_default=True)
def serve(port, host):
    """Start the editing service (configuration via REVIS_* environment)."""
    import uvicorn

    from .service import ServiceConfig, create_app

    app = create_app(ServiceConfig.from_env())
    uvicorn.run(app, host=host, port=port, log_level="warning")


if __name__ == "__main__":
    main()
