"""Export a Dataset back to its source serialization.

Unaltered values come straight from their preserved lexemes, so the
output is byte-identical to the input apart from insignificant
whitespace (JSON follows the fixed pretty-print of jsontext; CSV quoting
is normalized to RFC 4180 minimal quoting).
"""

from __future__ import annotations

import csv
import io
import json

from fdia.errors import FdiaError
from fdia.model.dataset import Dataset, FlatRecord
from fdia.model.flatpath import encode_path
from fdia.model.flatten import StructureError, unflatten
from fdia.model.jsontext import write_compact, write_document
from fdia.model.values import Value, ValueKind


class ExportError(FdiaError):
    """A dataset that cannot be rendered in the requested format."""


META_KEY = "_meta"


def export_dataset(dataset: Dataset, fmt: str | None = None, include_meta: bool = False) -> str:
    """Render the dataset in its source format or an explicit override."""
    fmt = fmt or dataset.config.source_format
    if fmt == "json":
        return _export_json(dataset, include_meta)
    if fmt == "jsonl":
        return _export_jsonl(dataset, include_meta)
    if fmt == "csv":
        return _export_csv(dataset, include_meta)
    raise ExportError(f"unknown export format {fmt!r}")


def _meta_dict(record: FlatRecord) -> dict:
    meta: dict[str, object] = {"tampered": Value.boolean(record.tampered)}
    if record.origin is not None:
        meta["origin"] = Value.integer(record.origin)
    if record.scenario is not None:
        meta["scenario"] = Value.string(record.scenario)
    return meta


def _record_tree(record: FlatRecord, include_meta: bool) -> object:
    try:
        tree = unflatten(record.properties)
    except StructureError as exc:
        raise ExportError(f"record {record.seq}: {exc}") from exc
    if include_meta:
        if not isinstance(tree, dict):
            raise ExportError(
                f"record {record.seq}: cannot attach metadata to a non-object record"
            )
        tree[META_KEY] = _meta_dict(record)
    return tree


def _export_json(dataset: Dataset, include_meta: bool) -> str:
    records = dataset.records
    if dataset.json_shape == "object" and len(records) == 1:
        return write_document(_record_tree(records[0], include_meta)) + "\n"
    trees = [_record_tree(r, include_meta) for r in records]
    return write_document(trees) + "\n"


def _export_jsonl(dataset: Dataset, include_meta: bool) -> str:
    lines = [write_compact(_record_tree(r, include_meta)) for r in dataset.records]
    return "".join(line + "\n" for line in lines)


def _cell_text(value: Value) -> str:
    if value.kind is ValueKind.STRING:
        return value.text()
    if value.kind is ValueKind.NULL:
        return ""
    return value.lexical


def _export_csv(dataset: Dataset, include_meta: bool) -> str:
    columns: list[str] = list(dataset.csv_columns or [])
    seen = set(columns)
    for record in dataset.records:
        for path in record.properties:
            text = encode_path(path)
            if text not in seen:
                seen.add(text)
                columns.append(text)
    meta_columns = ["_tampered", "_origin", "_scenario"] if include_meta else []

    out = io.StringIO(newline="")
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(columns + meta_columns)
    for record in dataset.records:
        by_text = {encode_path(p): v for p, v in record.properties.items()}
        row = [_cell_text(by_text[c]) if c in by_text else "" for c in columns]
        if include_meta:
            row.append("true" if record.tampered else "false")
            row.append("" if record.origin is None else str(record.origin))
            row.append("" if record.scenario is None else record.scenario)
        writer.writerow(row)
    return out.getvalue()


def export_labels(dataset: Dataset) -> str:
    """Detector-training labels: tamper provenance per record, as JSON."""
    rows = [
        {
            "seq": record.seq,
            "tampered": record.tampered,
            "origin": record.origin,
            "scenario": record.scenario,
        }
        for record in dataset.records
    ]
    return json.dumps(rows, indent=2) + "\n"
