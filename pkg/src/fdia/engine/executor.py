"""Scenario execution against a dataset.

Actions run strictly in source order, each seeing the effects of its
predecessors. Execution never mutates the input dataset: it works on a
clone and returns it together with a ScenarioReport. Per-record problems
(say, incrementing a field holding "abc") become warnings in the report
rather than aborting the run.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

from fdia.errors import FdiaError
from fdia.engine.geo import haversine_m
from fdia.engine.report import ActionReport, ScenarioReport
from fdia.lang.analyzer import analyze
from fdia.lang.ast import (
    Action,
    AddConst,
    AddEvol,
    AlterationCriteria,
    Assign,
    AssignEvol,
    Compare,
    Evol,
    InsideCircle,
    MulConst,
    Primitive,
    ScenarioAst,
    SelectionCriteria,
    Timeframe,
    UserCall,
)
from fdia.lang.diagnostics import Severity, SourceSpan, error as _error_diag
from fdia.lang.registry import FunctionRegistry
from fdia.model.dataset import (
    Dataset,
    DatasetConfig,
    FlatRecord,
    LocationError,
    parse_lat_comma_lon,
    parse_location,
    resolve_field,
)
from fdia.model.flatpath import FlatPath, decode_path
from fdia.model.values import Value, ValueKind, compare_values


class ScenarioInvalidError(FdiaError):
    """Raised when execute() is handed a scenario that fails analysis."""

    def __init__(self, diagnostics) -> None:
        self.diagnostics = list(diagnostics)
        first = self.diagnostics[0]
        super().__init__(f"scenario failed validation: {first.message}")


@dataclass
class ExecutionContext:
    """Fixed per-run facts every action evaluation consults."""

    config: DatasetConfig
    time_origin: int | float
    scenario_name: str
    scenario_geo: tuple[float, float] | None = None
    ticker: int | float | None = None
    registry: FunctionRegistry | None = None


def build_context(
    scenario: ScenarioAst,
    dataset: Dataset,
    registry: FunctionRegistry | None = None,
) -> ExecutionContext:
    """Fix the execution context before the first action runs.

    In relative mode timeframes address raw record timestamps; in
    absolute mode they are offsets from the first (earliest) record.
    """
    if dataset.config.timeframe_mode == "absolute" and dataset.records:
        origin = min(r.timestamp(dataset.config) for r in dataset.records)
    else:
        origin = 0
    geo = scenario.geolocation()
    ticker = scenario.ticker()
    return ExecutionContext(
        config=dataset.config,
        time_origin=origin,
        scenario_name=scenario.name,
        scenario_geo=(geo.lat, geo.lon) if geo else None,
        ticker=ticker.interval if ticker else None,
        registry=registry,
    )


# -- selection ------------------------------------------------------------


def evol_delta(evol: Evol, i: int) -> float:
    """Delta for the i-th matched record: start + i*step, capped at end."""
    return min(evol.start + i * evol.step, evol.end)


def attenuate(delta: float, distance_m: float, coefficient: float) -> float:
    """Subtractive per-meter attenuation, clamped at zero magnitude."""
    magnitude = abs(delta) - coefficient * distance_m
    if magnitude <= 0:
        return 0.0
    return magnitude if delta >= 0 else -magnitude


def _record_point(
    record: FlatRecord, field_name: str, ctx: ExecutionContext
) -> tuple[float, float] | None:
    """Locate a record via the named field, or None if it cannot be."""
    config = ctx.config
    location_path = config.location_path
    try:
        if location_path is not None and _refers_to(field_name, location_path):
            return parse_location(record, config)
        resolved = resolve_field(record, _reference_path(field_name))
        if resolved is None:
            return None
        value = record.get(resolved)
        if value is None or value.kind is not ValueKind.STRING:
            return None
        return parse_lat_comma_lon(value.text(), record.seq)
    except LocationError:
        return None


def _reference_path(field_name: str) -> FlatPath:
    try:
        return decode_path(field_name)
    except Exception:
        return FlatPath((field_name,))


def _refers_to(field_name: str, full_path: FlatPath) -> bool:
    reference = _reference_path(field_name)
    return reference == full_path or reference.is_suffix_of(full_path)


def in_timeframe(
    record: FlatRecord, timeframe: Timeframe, ctx: ExecutionContext
) -> bool:
    try:
        offset = record.timestamp(ctx.config) - ctx.time_origin
    except FdiaError:
        return False
    return timeframe.from_t <= offset <= timeframe.to_t


def matches(
    record: FlatRecord,
    selection: SelectionCriteria | None,
    timeframe: Timeframe,
    ctx: ExecutionContext,
) -> bool:
    """Record targeting: the timeframe plus the conjunction of criteria.

    A criterion naming a field the record does not carry is false, not an
    error; heterogeneous records are expected.
    """
    if not in_timeframe(record, timeframe, ctx):
        return False
    if selection is None:
        return True
    for criterion in selection.criteria:
        if isinstance(criterion, Compare):
            resolved = resolve_field(record, _reference_path(criterion.field_name))
            if resolved is None:
                return False
            value = record.get(resolved)
            if compare_values(value, criterion.op, criterion.literal) is not True:
                return False
        elif isinstance(criterion, InsideCircle):
            point = _record_point(record, criterion.field_name, ctx)
            if point is None:
                return False
            distance = haversine_m(
                point[0], point[1], criterion.center_lat, criterion.center_lon
            )
            if distance > criterion.radius_m:
                return False
        else:
            assert isinstance(criterion, UserCall)
            fn = ctx.registry.selection_function(criterion.name) if ctx.registry else None
            if fn is None:
                raise ScenarioInvalidError(
                    [_unknown_function_diag(criterion, "selection")]
                )
            if not fn(record, criterion.args, ctx):
                return False
    return True


def _unknown_function_diag(criterion: UserCall, what: str):
    return _error_diag(
        f"unknown {what} function '{criterion.name}'",
        criterion.span or SourceSpan(1, 1, 0),
    )


# -- alteration -----------------------------------------------------------


def _rewrite_like(old: Value | None, result: int | float) -> Value:
    """Render a computed number in the kind of the value it replaces.

    A string field that held a number stays a string; one that held an
    integer-form number rounds back to integer form (half to even).
    """
    if old is None:
        return Value.from_number(result)
    if old.kind is ValueKind.STRING and old.as_number() is not None:
        text = old.text()
        if "." in text or "e" in text or "E" in text:
            return Value.string(_shortest_number_text(float(result)))
        rounded = result if isinstance(result, int) else round(result)
        return Value.string(str(rounded))
    if old.kind is ValueKind.INTEGER:
        return Value.integer(result if isinstance(result, int) else round(result))
    if old.kind is ValueKind.REAL:
        return Value.real(float(result))
    return Value.from_number(result)


def _shortest_number_text(x: float) -> str:
    text = repr(float(x))
    return text[:-2] if text.endswith(".0") else text


def _assign_value(old: Value | None, literal: Value) -> Value:
    """Assignment takes the literal's kind, except that a string field
    holding a number keeps its string kind (so "6500" assigned 42 becomes
    "42", preserving the schema the system under test expects)."""
    if (
        old is not None
        and old.kind is ValueKind.STRING
        and old.as_number() is not None
        and literal.kind in (ValueKind.INTEGER, ValueKind.REAL)
    ):
        return Value.string(literal.lexical)
    return literal


class _Skip(Exception):
    """Internal: one alteration criterion does not apply to this record."""

    def __init__(self, reason: str) -> None:
        self.reason = reason


def _current_number(record: FlatRecord, path: FlatPath | None, field_name: str):
    if path is None:
        raise _Skip(f"field '{field_name}' not found")
    value = record.get(path)
    number = value.as_number() if value is not None else None
    if number is None:
        shown = value.lexical if value is not None else "missing"
        raise _Skip(f"field '{field_name}' is not numeric ({shown})")
    return value, number


def _finite(result: int | float, field_name: str) -> int | float:
    if isinstance(result, float) and (result != result or result in (float("inf"), float("-inf"))):
        raise _Skip(f"arithmetic on field '{field_name}' overflowed")
    return result


def apply_alteration(
    record: FlatRecord,
    criteria: AlterationCriteria,
    ctx: ExecutionContext,
    match_index: int,
    action_index: int = 0,
) -> tuple[int, list[str]]:
    """Apply alteration criteria left to right to one record.

    Returns (changed field count, warnings). The record is marked
    tampered only when a value actually changed; a fully attenuated
    increment leaves no mark and a criterion that cannot apply (missing
    or non-numeric field under arithmetic) is skipped with a warning.
    """
    changed = 0
    warnings: list[str] = []
    for criterion in criteria.criteria:
        try:
            changed += _apply_criterion(record, criterion, ctx, match_index)
        except _Skip as skip:
            warnings.append(f"record {record.seq}: {skip.reason}; skipped")
    if changed:
        record.tampered = True
        if record.origin is None:
            record.origin = action_index
        if record.scenario is None:
            record.scenario = ctx.scenario_name
    return changed, warnings


def _apply_criterion(
    record: FlatRecord,
    criterion,
    ctx: ExecutionContext,
    match_index: int,
) -> int:
    if isinstance(criterion, UserCall):
        fn = (
            ctx.registry.alteration_function(criterion.name) if ctx.registry else None
        )
        if fn is None:
            raise ScenarioInvalidError([_unknown_function_diag(criterion, "alteration")])
        changed_paths = fn(record, criterion.args, ctx, match_index)
        return len(changed_paths or ())

    reference = _reference_path(criterion.field_name)
    resolved = resolve_field(record, reference)

    if isinstance(criterion, Assign):
        target = resolved or reference
        new_value = _assign_value(record.get(resolved) if resolved else None, criterion.literal)
        return _write(record, target, new_value)

    if isinstance(criterion, AssignEvol):
        target = resolved or reference
        delta = evol_delta(criterion.evol, match_index)
        old = record.get(resolved) if resolved else None
        return _write(record, target, _rewrite_like(old, delta))

    if isinstance(criterion, AddConst):
        old, number = _current_number(record, resolved, criterion.field_name)
        result = _finite(number + criterion.amount, criterion.field_name)
        return _write(record, resolved, _rewrite_like(old, result))

    if isinstance(criterion, MulConst):
        old, number = _current_number(record, resolved, criterion.field_name)
        result = _finite(number * criterion.factor, criterion.field_name)
        return _write(record, resolved, _rewrite_like(old, result))

    assert isinstance(criterion, AddEvol)
    old, number = _current_number(record, resolved, criterion.field_name)
    delta = evol_delta(criterion.evol, match_index)
    if criterion.attenuation is not None:
        if ctx.scenario_geo is None:
            raise _Skip("attenuation without a scenario geolocation")
        try:
            lat, lon = parse_location(record, ctx.config)
        except LocationError as exc:
            raise _Skip(f"cannot locate record for attenuation ({exc})") from None
        distance = haversine_m(ctx.scenario_geo[0], ctx.scenario_geo[1], lat, lon)
        delta = attenuate(delta, distance, criterion.attenuation.coefficient)
    result = _finite(number + delta, criterion.field_name)
    return _write(record, resolved, _rewrite_like(old, result))


def _write(record: FlatRecord, path: FlatPath, new_value: Value) -> int:
    old = record.properties.get(path)
    if old == new_value:
        return 0
    record.properties[path] = new_value
    return 1


# -- actions ----------------------------------------------------------------


def exec_alter(
    action: Action, dataset: Dataset, ctx: ExecutionContext, index: int = 0
) -> ActionReport:
    report = ActionReport(index, Primitive.ALTER.value)
    ts_path = ctx.config.timestamp_path
    timestamps_touched = False
    match_index = 0
    for record in dataset.records:
        if not matches(record, action.selection, action.timeframe, ctx):
            continue
        before_ts = record.get(ts_path)
        changed, warnings = apply_alteration(
            record, action.alteration, ctx, match_index, index
        )
        report.matched += 1
        report.mutated_fields += changed
        report.warnings.extend(warnings)
        if record.get(ts_path) != before_ts:
            timestamps_touched = True
        match_index += 1
    if timestamps_touched:
        dataset.sort_records()
    return report


def exec_delete(
    action: Action, dataset: Dataset, ctx: ExecutionContext, index: int = 0
) -> ActionReport:
    report = ActionReport(index, Primitive.DELETE.value)
    kept: list[FlatRecord] = []
    for record in dataset.records:
        if matches(record, action.selection, action.timeframe, ctx):
            report.matched += 1
            report.deleted_records += 1
        else:
            kept.append(record)
    dataset.records = kept
    return report


def exec_create(
    action: Action, dataset: Dataset, ctx: ExecutionContext, index: int = 0
) -> ActionReport:
    report = ActionReport(index, Primitive.CREATE.value)
    ticker = ctx.ticker
    if ticker is None or ticker <= 0:
        raise ScenarioInvalidError(
            analyze_failure(f"create needs a positive ticker, got {ticker!r}")
        )
    ts_path = ctx.config.timestamp_path
    seq = dataset.next_seq()
    t = ctx.time_origin + action.timeframe.from_t
    end = ctx.time_origin + action.timeframe.to_t
    creation_index = 0
    while t <= end:
        record = FlatRecord(
            seq=seq,
            properties={ts_path: Value.from_number(t)},
            tampered=True,
            origin=index,
            scenario=ctx.scenario_name,
        )
        changed, warnings = apply_alteration(
            record, action.alteration, ctx, creation_index, index
        )
        report.mutated_fields += changed
        report.warnings.extend(warnings)
        dataset.records.append(record)
        report.created_records += 1
        seq += 1
        creation_index += 1
        t = t + ticker
    dataset.sort_records()
    return report


def exec_copy(
    action: Action, dataset: Dataset, ctx: ExecutionContext, index: int = 0
) -> ActionReport:
    report = ActionReport(index, Primitive.COPY.value)
    sources = [
        record
        for record in dataset.records
        if matches(record, action.selection, action.timeframe, ctx)
    ]
    report.matched = len(sources)
    seq = dataset.next_seq()
    for clone_index, source in enumerate(sources):
        clone = source.clone(seq=seq)
        clone.tampered = True
        clone.origin = index
        clone.scenario = ctx.scenario_name
        changed, warnings = apply_alteration(
            clone, action.alteration, ctx, clone_index, index
        )
        report.mutated_fields += changed
        report.warnings.extend(warnings)
        dataset.records.append(clone)
        report.copied_records += 1
        seq += 1
    dataset.sort_records()
    return report


def analyze_failure(message: str):
    return [_error_diag(message, SourceSpan(1, 1, 0))]


_EXECUTORS = {
    Primitive.ALTER: exec_alter,
    Primitive.DELETE: exec_delete,
    Primitive.CREATE: exec_create,
    Primitive.COPY: exec_copy,
}


def execute(
    scenario: ScenarioAst,
    dataset: Dataset,
    registry: FunctionRegistry | None = None,
) -> tuple[Dataset, ScenarioReport]:
    """Run every action in order on a clone of the dataset.

    Deterministic: identical inputs give identical outputs. Raises
    ScenarioInvalidError when the scenario does not pass analysis against
    the dataset's configuration.
    """
    diagnostics = analyze(scenario, dataset.config, registry)
    errors = [d for d in diagnostics if d.severity is Severity.ERROR]
    if errors:
        raise ScenarioInvalidError(errors)

    started = time.perf_counter()
    result = dataset.clone()
    ctx = build_context(scenario, result, registry)
    reports = [
        _EXECUTORS[action.primitive](action, result, ctx, action_index)
        for action_index, action in enumerate(scenario.actions)
    ]
    wall_ms = (time.perf_counter() - started) * 1000.0
    return result, ScenarioReport(scenario.name, reports, round(wall_ms, 3))
