"""Durable dataset storage as a newline-delimited envelope log.

The first line is a header carrying the store version and the dataset
configuration; every following line is one record envelope::

    {"store_version":1,"config":{...}}
    {"seq":0,"meta":{"tampered":false},"properties":[["data.meter_code",
        {"k":"string","v":"10"}], ...]}

Properties are an array of pairs so member order survives; ``v`` holds
the value's original lexical text. Appending a conforming envelope line
to a store file yields a loadable store with one more record.
"""

from __future__ import annotations

import json
import os
import tempfile
from dataclasses import dataclass, field
from pathlib import Path

from fdia.errors import FdiaError
from fdia.model.dataset import ConfigError, Dataset, DatasetConfig, FlatRecord
from fdia.model.flatpath import PathSyntaxError, decode_path, encode_path
from fdia.model.values import Value, ValueKind

STORE_VERSION = 1

_KIND_CODES = {kind.value: kind for kind in ValueKind}


class StoreFormatError(FdiaError):
    """A store file that does not conform to the envelope format."""


def _value_to_wire(value: Value) -> dict:
    return {"k": value.kind.value, "v": value.lexical}


def _value_from_wire(raw: object, where: str) -> Value:
    if not isinstance(raw, dict) or set(raw) != {"k", "v"}:
        raise StoreFormatError(f"{where}: malformed value entry")
    kind = _KIND_CODES.get(raw["k"])
    if kind is None or not isinstance(raw["v"], str):
        raise StoreFormatError(f"{where}: malformed value entry")
    lexical = raw["v"]
    if kind is ValueKind.INTEGER:
        return Value(kind, lexical, int(lexical))
    if kind is ValueKind.REAL:
        return Value(kind, lexical, float(lexical))
    return Value(kind, lexical)


def record_to_line(record: FlatRecord) -> str:
    meta: dict[str, object] = {"tampered": record.tampered}
    if record.origin is not None:
        meta["origin"] = record.origin
    if record.scenario is not None:
        meta["scenario"] = record.scenario
    envelope = {
        "seq": record.seq,
        "meta": meta,
        "properties": [
            [encode_path(path), _value_to_wire(value)]
            for path, value in record.properties.items()
        ],
    }
    return json.dumps(envelope, separators=(",", ":"), ensure_ascii=False)


def _record_from_line(line: str, line_no: int) -> FlatRecord:
    where = f"line {line_no}"
    try:
        envelope = json.loads(line)
    except json.JSONDecodeError as exc:
        raise StoreFormatError(f"{where}: malformed envelope ({exc.msg})") from exc
    if not isinstance(envelope, dict):
        raise StoreFormatError(f"{where}: envelope must be an object")
    try:
        seq = envelope["seq"]
        meta = envelope["meta"]
        pairs = envelope["properties"]
    except KeyError as exc:
        raise StoreFormatError(f"{where}: envelope is missing {exc}") from None
    if not isinstance(seq, int) or not isinstance(meta, dict) or not isinstance(pairs, list):
        raise StoreFormatError(f"{where}: malformed envelope fields")
    properties = {}
    for pair in pairs:
        if not isinstance(pair, list) or len(pair) != 2 or not isinstance(pair[0], str):
            raise StoreFormatError(f"{where}: malformed property pair")
        try:
            path = decode_path(pair[0])
        except PathSyntaxError as exc:
            raise StoreFormatError(f"{where}: {exc}") from exc
        if path in properties:
            raise StoreFormatError(f"{where}: duplicate property path {pair[0]!r}")
        properties[path] = _value_from_wire(pair[1], where)
    return FlatRecord(
        seq=seq,
        properties=properties,
        tampered=bool(meta.get("tampered", False)),
        origin=meta.get("origin"),
        scenario=meta.get("scenario"),
    )


def save(dataset: Dataset, path: str | Path) -> None:
    """Write the dataset atomically (temp file, then rename)."""
    path = Path(path)
    header: dict[str, object] = {
        "store_version": STORE_VERSION,
        "config": dataset.config.to_dict(),
    }
    if dataset.json_shape != "array":
        header["json_shape"] = dataset.json_shape
    if dataset.csv_columns is not None:
        header["csv_columns"] = dataset.csv_columns
    lines = [json.dumps(header, separators=(",", ":"), ensure_ascii=False)]
    lines.extend(record_to_line(record) for record in dataset.records)
    payload = "".join(line + "\n" for line in lines)

    fd, tmp_name = tempfile.mkstemp(dir=path.parent or Path("."), suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as handle:
            handle.write(payload)
        os.replace(tmp_name, path)
    except BaseException:
        try:
            os.unlink(tmp_name)
        except OSError:
            pass
        raise


def load(path: str | Path) -> Dataset:
    """Reconstruct a dataset; validates the header before any record."""
    text = Path(path).read_text(encoding="utf-8")
    lines = text.splitlines()
    if not lines or not lines[0].strip():
        raise StoreFormatError("missing store header")
    try:
        header = json.loads(lines[0])
    except json.JSONDecodeError as exc:
        raise StoreFormatError(f"line 1: malformed store header ({exc.msg})") from exc
    if not isinstance(header, dict) or "store_version" not in header:
        raise StoreFormatError("missing store header")
    version = header["store_version"]
    if version != STORE_VERSION:
        raise StoreFormatError(
            f"unsupported store version {version!r} (expected {STORE_VERSION})"
        )
    if "config" not in header:
        raise StoreFormatError("store header has no config")
    try:
        config = DatasetConfig.from_dict(header["config"])
    except ConfigError as exc:
        raise StoreFormatError(f"store header config: {exc}") from exc

    records = []
    seen = set()
    for line_no, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        record = _record_from_line(line, line_no)
        if record.seq in seen:
            raise StoreFormatError(f"line {line_no}: duplicate seq {record.seq}")
        seen.add(record.seq)
        records.append(record)

    dataset = Dataset(
        config=config,
        records=records,
        json_shape=header.get("json_shape", "array"),
        csv_columns=header.get("csv_columns"),
    )
    dataset.sort_records()
    return dataset


@dataclass
class DiffReport:
    records_altered: int = 0
    records_created: int = 0
    records_deleted: int = 0
    per_field_changes: dict[str, int] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "recordsAltered": self.records_altered,
            "recordsCreated": self.records_created,
            "recordsDeleted": self.records_deleted,
            "perFieldChangeCounts": dict(self.per_field_changes),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"


def diff(original: Dataset, tampered: Dataset) -> DiffReport:
    """Field-level comparison of two datasets matched by record seq."""
    a_cfg, b_cfg = original.config, tampered.config
    if (
        a_cfg.identifier_field != b_cfg.identifier_field
        or a_cfg.timestamp_field != b_cfg.timestamp_field
    ):
        raise ConfigError(
            "datasets disagree on identifier/timestamp fields and cannot be diffed"
        )
    report = DiffReport()
    before = {record.seq: record for record in original.records}
    after = {record.seq: record for record in tampered.records}
    report.records_created = sum(1 for seq in after if seq not in before)
    report.records_deleted = sum(1 for seq in before if seq not in after)
    for seq, old in before.items():
        new = after.get(seq)
        if new is None:
            continue
        changed_paths = set()
        for path, value in old.properties.items():
            if new.properties.get(path) != value:
                changed_paths.add(path)
        for path in new.properties:
            if path not in old.properties:
                changed_paths.add(path)
        if changed_paths:
            report.records_altered += 1
            for path in changed_paths:
                text = encode_path(path)
                report.per_field_changes[text] = report.per_field_changes.get(text, 0) + 1
    return report
