"""Dataset ingestion from JSON, JSONL and CSV sources."""

from __future__ import annotations

import csv
import io
import re

from fdia.errors import FdiaError
from fdia.model.dataset import Dataset, DatasetConfig, FlatRecord
from fdia.model.flatpath import FlatPath
from fdia.model.flatten import StructureError, flatten
from fdia.model.jsontext import JsonParseError, parse_document, parse_line
from fdia.model.values import Value, ValueKind


class IngestError(FdiaError):
    """Input that cannot be converted under the declared source format."""


def ingest(text: str, config: DatasetConfig) -> Dataset:
    """Convert source text into a Dataset ordered by (timestamp, seq)."""
    if config.source_format == "json":
        dataset = _ingest_json(text, config)
    elif config.source_format == "jsonl":
        dataset = _ingest_jsonl(text, config)
    else:
        dataset = _ingest_csv(text, config)
    _validate_timestamps(dataset)
    dataset.sort_records()
    return dataset


def _validate_timestamps(dataset: Dataset) -> None:
    config = dataset.config
    ts_path = config.timestamp_path
    for record in dataset.records:
        value = record.get(ts_path)
        if value is None:
            raise IngestError(
                f"record {record.seq} is missing the timestamp field "
                f"{config.timestamp_field!r}"
            )
        if value.as_number() is None:
            raise IngestError(
                f"record {record.seq}: timestamp field {config.timestamp_field!r} "
                f"is not numeric ({value.lexical!r})"
            )


def _record_from_document(document: object, seq: int) -> FlatRecord:
    if not isinstance(document, dict):
        raise IngestError(f"record {seq}: each message must be a JSON object")
    try:
        properties = flatten(document)
    except StructureError as exc:
        raise IngestError(f"record {seq}: {exc}") from exc
    return FlatRecord(seq=seq, properties=properties)


def _ingest_json(text: str, config: DatasetConfig) -> Dataset:
    try:
        document = parse_document(text)
    except JsonParseError as exc:
        raise IngestError(str(exc)) from exc
    if isinstance(document, dict):
        return Dataset(
            config=config,
            records=[_record_from_document(document, 0)],
            json_shape="object",
        )
    if isinstance(document, list):
        records = [_record_from_document(item, seq) for seq, item in enumerate(document)]
        return Dataset(config=config, records=records, json_shape="array")
    raise IngestError("JSON input must be an object or an array of objects")


def _ingest_jsonl(text: str, config: DatasetConfig) -> Dataset:
    records = []
    seq = 0
    for line_no, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        try:
            document = parse_line(line, line_no)
        except JsonParseError as exc:
            raise IngestError(str(exc)) from exc
        records.append(_record_from_document(document, seq))
        seq += 1
    return Dataset(config=config, records=records, json_shape="lines")


_INT_CELL = re.compile(r"-?(0|[1-9][0-9]*)\Z")
_REAL_CELL = re.compile(r"-?(0|[1-9][0-9]*)(\.[0-9]+([eE][+-]?[0-9]+)?|[eE][+-]?[0-9]+)\Z")


def cell_to_value(cell: str) -> Value:
    """Infer a CSV cell's kind, keeping its original lexical text.

    Only canonical JSON spellings infer as numbers (so "007" stays a
    string and survives a later JSON export); "true"/"false" must be
    lowercase; an empty cell is null.
    """
    if cell == "":
        return Value.null()
    if cell == "true" or cell == "false":
        return Value(ValueKind.BOOLEAN, cell)
    if _INT_CELL.match(cell):
        return Value(ValueKind.INTEGER, cell, int(cell))
    if _REAL_CELL.match(cell):
        return Value(ValueKind.REAL, cell, float(cell))
    return Value.string(cell)


def _ingest_csv(text: str, config: DatasetConfig) -> Dataset:
    reader = csv.reader(io.StringIO(text, newline=""))
    try:
        header = next(reader)
    except StopIteration:
        raise IngestError("CSV input has no header row") from None
    except csv.Error as exc:
        raise IngestError(f"CSV line 1: {exc}") from exc
    if any(not column for column in header):
        raise IngestError("CSV header has an empty column name")
    if len(set(header)) != len(header):
        raise IngestError("CSV header has duplicate column names")

    records = []
    seq = 0
    try:
        for row in reader:
            if not row:
                continue
            if len(row) != len(header):
                raise IngestError(
                    f"CSV line {reader.line_num}: expected {len(header)} cells, "
                    f"got {len(row)}"
                )
            properties = {
                FlatPath((column,)): cell_to_value(cell)
                for column, cell in zip(header, row)
            }
            records.append(FlatRecord(seq=seq, properties=properties))
            seq += 1
    except csv.Error as exc:
        raise IngestError(f"CSV line {reader.line_num}: {exc}") from exc
    return Dataset(config=config, records=records, csv_columns=list(header))
