"""Command-line workbench: validate, ingest, run, export, diff, gen-sample.

Exit codes: 0 success, 1 errors in the input (diagnostics, malformed
data, config mismatches), 2 usage errors, 3 I/O failures. Commands write
nothing when validation fails.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

import click

from fdia import store
from fdia.errors import FdiaError
from fdia.lang.analyzer import analyze
from fdia.lang.diagnostics import Diagnostic, ScenarioSyntaxError, Severity
from fdia.lang.parser import parse
from fdia.engine.executor import execute
from fdia.model.dataset import ConfigError, DatasetConfig
from fdia.model.export import export_dataset, export_labels
from fdia.model.ingest import ingest
from fdia.sample import render_sample

EXIT_INPUT_ERROR = 1
EXIT_IO_ERROR = 3


@click.group()
def cli() -> None:
    """Parse attack scenarios and run them against IoT datasets."""


def _fail_io(exc: OSError) -> None:
    click.echo(f"error: {exc}", err=True)
    sys.exit(EXIT_IO_ERROR)


def _fail_input(message: str) -> None:
    click.echo(f"error: {message}", err=True)
    sys.exit(EXIT_INPUT_ERROR)


def _read_text(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        _fail_io(exc)
        raise AssertionError("unreachable")


def _write_text(path: str, text: str) -> None:
    try:
        Path(path).write_text(text, encoding="utf-8")
    except OSError as exc:
        _fail_io(exc)


def _load_config(path: str) -> DatasetConfig:
    text = _read_text(path)
    try:
        return DatasetConfig.from_dict(json.loads(text))
    except json.JSONDecodeError as exc:
        _fail_input(f"{path}: {exc}")
    except ConfigError as exc:
        _fail_input(f"{path}: {exc}")
    raise AssertionError("unreachable")


def _print_diagnostics(diagnostics: list[Diagnostic], filename: str) -> None:
    for diagnostic in diagnostics:
        click.echo(diagnostic.render(filename))


def _validate_scenario(scenario_path: str, config: DatasetConfig):
    """Parse and analyze; prints diagnostics and exits 1 on errors."""
    source = _read_text(scenario_path)
    try:
        ast = parse(source)
    except ScenarioSyntaxError as exc:
        _print_diagnostics(exc.diagnostics, scenario_path)
        sys.exit(EXIT_INPUT_ERROR)
    diagnostics = analyze(ast, config)
    _print_diagnostics(diagnostics, scenario_path)
    if any(d.severity is Severity.ERROR for d in diagnostics):
        sys.exit(EXIT_INPUT_ERROR)
    return ast


@cli.command()
@click.option("--scenario", "scenario_path", required=True, type=str)
@click.option("--config", "config_path", required=True, type=str)
def validate(scenario_path: str, config_path: str) -> None:
    """Check a scenario file against a dataset configuration."""
    config = _load_config(config_path)
    _validate_scenario(scenario_path, config)


@cli.command()
@click.option("--input", "input_path", required=True, type=str)
@click.option("--config", "config_path", required=True, type=str)
@click.option("--store", "store_path", required=True, type=str)
def ingest_cmd(input_path: str, config_path: str, store_path: str) -> None:
    """Convert a JSON/JSONL/CSV dataset into a store file."""
    config = _load_config(config_path)
    text = _read_text(input_path)
    try:
        dataset = ingest(text, config)
    except FdiaError as exc:
        _fail_input(f"{input_path}: {exc}")
        raise AssertionError("unreachable")
    try:
        store.save(dataset, store_path)
    except OSError as exc:
        _fail_io(exc)
    click.echo(f"ingested {len(dataset.records)} records")


def _load_store(path: str):
    text_path = Path(path)
    try:
        if not text_path.exists():
            raise FileNotFoundError(f"no such store file: {path}")
    except OSError as exc:
        _fail_io(exc)
    try:
        return store.load(path)
    except FdiaError as exc:
        _fail_input(f"{path}: {exc}")
        raise AssertionError("unreachable")
    except OSError as exc:
        _fail_io(exc)
        raise AssertionError("unreachable")


@cli.command()
@click.option("--scenario", "scenario_path", required=True, type=str)
@click.option("--store", "store_path", required=True, type=str)
@click.option("--out", "out_path", required=True, type=str)
@click.option("--report", "report_path", required=True, type=str)
def run(scenario_path: str, store_path: str, out_path: str, report_path: str) -> None:
    """Execute a scenario over a store, writing the tampered store."""
    dataset = _load_store(store_path)
    ast = _validate_scenario(scenario_path, dataset.config)
    tampered, report = execute(ast, dataset)
    try:
        store.save(tampered, out_path)
    except OSError as exc:
        _fail_io(exc)
    _write_text(report_path, report.to_json())
    for action in report.actions:
        for warning_text in action.warnings:
            click.echo(f"warning: action {action.index}: {warning_text}", err=True)
    click.echo(
        f"executed {len(report.actions)} actions, matched {report.total_matched} "
        f"records in {report.wall_time_ms} ms"
    )


@cli.command()
@click.option("--store", "store_path", required=True, type=str)
@click.option("--out", "out_path", required=True, type=str)
@click.option(
    "--format",
    "format_name",
    type=click.Choice(["json", "jsonl", "csv"]),
    default=None,
    help="Override the original serialization format.",
)
@click.option("--labels", "labels_path", type=str, default=None)
@click.option("--keep-meta", is_flag=True, default=False)
def export(
    store_path: str,
    out_path: str,
    format_name: str | None,
    labels_path: str | None,
    keep_meta: bool,
) -> None:
    """Convert a store back to its original (or an overridden) format."""
    dataset = _load_store(store_path)
    try:
        rendered = export_dataset(dataset, format_name, include_meta=keep_meta)
    except FdiaError as exc:
        _fail_input(str(exc))
        raise AssertionError("unreachable")
    _write_text(out_path, rendered)
    if labels_path is not None:
        _write_text(labels_path, export_labels(dataset))
    click.echo(f"exported {len(dataset.records)} records")


@cli.command()
@click.argument("store_a", type=str)
@click.argument("store_b", type=str)
@click.option("--report", "report_path", required=True, type=str)
def diff(store_a: str, store_b: str, report_path: str) -> None:
    """Compare two stores record by record."""
    original = _load_store(store_a)
    tampered = _load_store(store_b)
    try:
        report = store.diff(original, tampered)
    except ConfigError as exc:
        _fail_input(str(exc))
        raise AssertionError("unreachable")
    _write_text(report_path, report.to_json())
    click.echo(
        f"altered {report.records_altered}, created {report.records_created}, "
        f"deleted {report.records_deleted}"
    )
    for path_text, count in sorted(report.per_field_changes.items()):
        click.echo(f"  {path_text}: {count}")


@cli.command("gen-sample")
@click.option("--out", "out_path", required=True, type=str)
@click.option("--devices", type=int, default=3, show_default=True)
@click.option("--days", type=int, default=31, show_default=True)
@click.option("--seed", type=int, default=7, show_default=True)
def gen_sample(out_path: str, devices: int, days: int, seed: int) -> None:
    """Generate a deterministic synthetic sensor dataset (JSON)."""
    if devices < 1 or days < 1:
        raise click.UsageError("--devices and --days must be at least 1")
    _write_text(out_path, render_sample(devices, days, seed))
    click.echo(f"wrote {devices * days * 96} records")


cli.add_command(ingest_cmd, name="ingest")


def main() -> None:
    cli(prog_name="fdia")


if __name__ == "__main__":
    main()
