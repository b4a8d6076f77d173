"""Datasets: converted record collections plus their field configuration."""

from __future__ import annotations

from dataclasses import dataclass, field, replace

from fdia.errors import FdiaError
from fdia.model.flatpath import FlatPath, PathSyntaxError, decode_path
from fdia.model.values import Value, ValueKind

LAT_COMMA_LON = "latCommaLon"

SOURCE_FORMATS = ("json", "jsonl", "csv")
TIMEFRAME_MODES = ("relative", "absolute")


class ConfigError(FdiaError):
    """A dataset configuration that does not satisfy its contract."""


class LocationError(FdiaError):
    """A record location that is missing, malformed, or out of range."""


@dataclass(frozen=True)
class DatasetConfig:
    """Which fields carry record identity, time and position.

    Field references are printed path text (see flatpath); location_format
    is either "latCommaLon" (one text field "<lat>,<lon>") or a pair of
    path texts naming separate numeric latitude/longitude fields.
    """

    identifier_field: str
    timestamp_field: str
    location_field: str | None = None
    location_format: str | tuple[str, str] = LAT_COMMA_LON
    timeframe_mode: str = "relative"
    source_format: str = "json"

    def __post_init__(self) -> None:
        if self.timeframe_mode not in TIMEFRAME_MODES:
            raise ConfigError(f"unknown timeframe_mode {self.timeframe_mode!r}")
        if self.source_format not in SOURCE_FORMATS:
            raise ConfigError(f"unknown source_format {self.source_format!r}")
        if isinstance(self.location_format, str):
            if self.location_format != LAT_COMMA_LON:
                raise ConfigError(
                    f"location_format must be {LAT_COMMA_LON!r} or a pair of "
                    f"field paths, got {self.location_format!r}"
                )
        elif not (
            len(self.location_format) == 2
            and all(isinstance(p, str) for p in self.location_format)
        ):
            raise ConfigError("location_format pair must hold two field paths")
        for name in ("identifier_field", "timestamp_field"):
            text = getattr(self, name)
            if not text:
                raise ConfigError(f"{name} must be set")
            _decode_config_path(name, text)
        if self.location_field is not None:
            _decode_config_path("location_field", self.location_field)

    @property
    def timestamp_path(self) -> FlatPath:
        return decode_path(self.timestamp_field)

    @property
    def identifier_path(self) -> FlatPath:
        return decode_path(self.identifier_field)

    @property
    def location_path(self) -> FlatPath | None:
        if self.location_field is None:
            return None
        return decode_path(self.location_field)

    @staticmethod
    def from_dict(raw: dict) -> "DatasetConfig":
        if not isinstance(raw, dict):
            raise ConfigError("dataset config must be a JSON object")
        known = {
            "identifier_field",
            "timestamp_field",
            "location_field",
            "location_format",
            "timeframe_mode",
            "source_format",
        }
        unknown = set(raw) - known
        if unknown:
            raise ConfigError(f"unknown config keys: {', '.join(sorted(unknown))}")
        for required in ("identifier_field", "timestamp_field"):
            if required not in raw:
                raise ConfigError(f"config is missing {required!r}")
        kwargs = dict(raw)
        fmt = kwargs.get("location_format", LAT_COMMA_LON)
        if isinstance(fmt, list):
            kwargs["location_format"] = tuple(fmt)
        return DatasetConfig(**kwargs)

    def to_dict(self) -> dict:
        fmt = self.location_format
        return {
            "identifier_field": self.identifier_field,
            "timestamp_field": self.timestamp_field,
            "location_field": self.location_field,
            "location_format": list(fmt) if isinstance(fmt, tuple) else fmt,
            "timeframe_mode": self.timeframe_mode,
            "source_format": self.source_format,
        }


def _decode_config_path(name: str, text: str) -> FlatPath:
    try:
        return decode_path(text)
    except PathSyntaxError as exc:
        raise ConfigError(f"bad {name}: {exc}") from exc


@dataclass
class FlatRecord:
    """One device message in flattened form, with tamper provenance."""

    seq: int
    properties: dict[FlatPath, Value]
    tampered: bool = False
    origin: int | None = None
    scenario: str | None = None

    def get(self, path: FlatPath) -> Value | None:
        return self.properties.get(path)

    def timestamp(self, config: DatasetConfig) -> int | float:
        value = self.properties.get(config.timestamp_path)
        if value is None:
            raise ConfigError(
                f"record {self.seq} has no timestamp field "
                f"{config.timestamp_field!r}"
            )
        number = value.as_number()
        if number is None:
            raise ConfigError(
                f"record {self.seq}: timestamp field {config.timestamp_field!r} "
                f"is not numeric ({value.lexical!r})"
            )
        return number

    def clone(self, seq: int | None = None) -> "FlatRecord":
        return FlatRecord(
            seq=self.seq if seq is None else seq,
            properties=dict(self.properties),
            tampered=self.tampered,
            origin=self.origin,
            scenario=self.scenario,
        )


def resolve_field(record: FlatRecord, reference: FlatPath) -> FlatPath | None:
    """Resolve a scenario field reference against one record.

    An exact path match wins; otherwise the reference matches a record
    path whose trailing segments equal it, provided exactly one such path
    exists (the scenario language cannot spell nested paths, so `meter_code`
    addresses `data.meter_code`). Ambiguous or absent references resolve
    to None.
    """
    if reference in record.properties:
        return reference
    found: FlatPath | None = None
    for path in record.properties:
        if reference.is_suffix_of(path):
            if found is not None:
                return None
            found = path
    return found


@dataclass
class Dataset:
    """An ordered record collection plus its configuration.

    json_shape records whether a JSON source was a single object or an
    array; csv_columns keeps the original CSV header order. Both matter
    only for exporting back to the source format.
    """

    config: DatasetConfig
    records: list[FlatRecord] = field(default_factory=list)
    json_shape: str = "array"
    csv_columns: list[str] | None = None

    def sort_records(self) -> None:
        """Re-establish the (timestamp, seq) ordering after mutations."""
        self.records.sort(key=lambda r: (r.timestamp(self.config), r.seq))

    def next_seq(self) -> int:
        return max((r.seq for r in self.records), default=-1) + 1

    def clone(self) -> "Dataset":
        return Dataset(
            config=self.config,
            records=[r.clone() for r in self.records],
            json_shape=self.json_shape,
            csv_columns=list(self.csv_columns) if self.csv_columns else None,
        )

    def with_config(self, **changes) -> "Dataset":
        return Dataset(
            config=replace(self.config, **changes),
            records=self.records,
            json_shape=self.json_shape,
            csv_columns=self.csv_columns,
        )


def _parse_coordinate(text: str, what: str) -> float:
    try:
        coord = float(text)
    except ValueError:
        raise LocationError(f"malformed {what} {text!r}") from None
    if coord != coord or coord in (float("inf"), float("-inf")):
        raise LocationError(f"malformed {what} {text!r}")
    return coord


def _check_range(lat: float, lon: float) -> tuple[float, float]:
    if not -90.0 <= lat <= 90.0:
        raise LocationError(f"latitude out of range: {lat}")
    if not -180.0 <= lon <= 180.0:
        raise LocationError(f"longitude out of range: {lon}")
    return lat, lon


def parse_location(record: FlatRecord, config: DatasetConfig) -> tuple[float, float]:
    """Extract (lat, lon) in degrees from a record per the configuration."""
    if config.location_field is None:
        raise LocationError("no location field configured")
    if isinstance(config.location_format, tuple):
        lat_text, lon_text = config.location_format
        coords = []
        for text in (lat_text, lon_text):
            value = record.get(decode_path(text))
            if value is None:
                raise LocationError(f"record {record.seq} has no field {text!r}")
            number = value.as_number()
            if number is None:
                raise LocationError(
                    f"record {record.seq}: field {text!r} is not numeric"
                )
            coords.append(float(number))
        return _check_range(coords[0], coords[1])

    value = record.get(config.location_path)
    if value is None:
        raise LocationError(
            f"record {record.seq} has no field {config.location_field!r}"
        )
    if value.kind is not ValueKind.STRING:
        raise LocationError(
            f"record {record.seq}: location field {config.location_field!r} "
            f"must be text in {LAT_COMMA_LON!r} format"
        )
    return parse_lat_comma_lon(value.text(), record.seq)


def parse_lat_comma_lon(text: str, seq: int | None = None) -> tuple[float, float]:
    where = "" if seq is None else f"record {seq}: "
    head, sep, tail = text.partition(",")
    if not sep:
        raise LocationError(f"{where}no comma in location text {text!r}")
    lat = _parse_coordinate(head.strip(), "latitude")
    lon = _parse_coordinate(tail.strip(), "longitude")
    return _check_range(lat, lon)
