"""Lossless record model: values, paths, flattening, ingestion, export."""

from fdia.model.dataset import (
    Dataset,
    DatasetConfig,
    FlatRecord,
    ConfigError,
    LocationError,
    parse_location,
    resolve_field,
)
from fdia.model.flatpath import FlatPath, PathSyntaxError, decode_path, encode_path
from fdia.model.flatten import StructureError, flatten, unflatten
from fdia.model.ingest import IngestError, ingest
from fdia.model.export import ExportError, export_dataset, export_labels
from fdia.model.values import (
    INCOMPARABLE,
    CompareOp,
    Value,
    ValueKind,
    compare_values,
)

__all__ = [
    "Dataset",
    "DatasetConfig",
    "FlatRecord",
    "ConfigError",
    "LocationError",
    "parse_location",
    "resolve_field",
    "FlatPath",
    "PathSyntaxError",
    "decode_path",
    "encode_path",
    "StructureError",
    "flatten",
    "unflatten",
    "IngestError",
    "ingest",
    "ExportError",
    "export_dataset",
    "export_labels",
    "INCOMPARABLE",
    "CompareOp",
    "Value",
    "ValueKind",
    "compare_values",
]
