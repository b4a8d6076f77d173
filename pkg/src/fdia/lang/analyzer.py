"""Semantic validation of a parsed scenario against a dataset configuration."""

from __future__ import annotations

from fdia.lang.ast import (
    Action,
    AddConst,
    AddEvol,
    Assign,
    AssignEvol,
    Compare,
    Evol,
    Geolocation,
    InsideCircle,
    MulConst,
    Primitive,
    ScenarioAst,
    Ticker,
    UserCall,
)
from fdia.lang.diagnostics import Diagnostic, SourceSpan, error, warning
from fdia.lang.registry import FunctionRegistry
from fdia.model.dataset import DatasetConfig
from fdia.model.flatpath import FlatPath, decode_path

_NO_SPAN = SourceSpan(1, 1, 0)


def analyze(
    ast: ScenarioAst,
    config: DatasetConfig,
    registry: FunctionRegistry | None = None,
) -> list[Diagnostic]:
    """Check scenario semantics; returns diagnostics (empty when clean).

    Errors block execution, warnings do not.
    """
    registry = registry or FunctionRegistry()
    out: list[Diagnostic] = []

    _check_properties(ast, out)
    location_path = config.location_path
    has_geo = ast.geolocation() is not None
    ticker = ast.ticker()

    for action in ast.actions:
        span = action.span or _NO_SPAN
        _check_timeframe(action, out)
        if action.selection is not None:
            for criterion in action.selection.criteria:
                _check_selection_criterion(criterion, location_path, registry, out)
        if action.alteration is not None:
            _check_alteration(action, has_geo, location_path, registry, out)
        if action.primitive is Primitive.CREATE:
            if ticker is None:
                out.append(error("create requires scenario property 'ticker'", span))
            elif ticker.interval <= 0:
                out.append(
                    error("create requires a positive ticker interval", span)
                )
    return out


def _check_properties(ast: ScenarioAst, out: list[Diagnostic]) -> None:
    tickers = [p for p in ast.properties if isinstance(p, Ticker)]
    geos = [p for p in ast.properties if isinstance(p, Geolocation)]
    for dup in tickers[1:]:
        out.append(error("duplicate 'ticker' property", dup.span or _NO_SPAN))
    for dup in geos[1:]:
        out.append(error("duplicate 'geolocation' property", dup.span or _NO_SPAN))
    for tick in tickers[:1]:
        if tick.interval < 0:
            out.append(error("ticker interval must not be negative", tick.span or _NO_SPAN))
    for geo in geos[:1]:
        span = geo.span or _NO_SPAN
        if not -90.0 <= geo.lat <= 90.0:
            out.append(error(f"latitude out of range: {geo.lat}", span))
        if not -180.0 <= geo.lon <= 180.0:
            out.append(error(f"longitude out of range: {geo.lon}", span))


def _check_timeframe(action: Action, out: list[Diagnostic]) -> None:
    frame = action.timeframe
    if frame.from_t > frame.to_t:
        out.append(
            error(
                f"empty time frame: from {frame.from_t} > to {frame.to_t}",
                frame.span or action.span or _NO_SPAN,
            )
        )


def _check_selection_criterion(criterion, location_path, registry, out) -> None:
    if isinstance(criterion, InsideCircle):
        span = criterion.span or _NO_SPAN
        if not -90.0 <= criterion.center_lat <= 90.0:
            out.append(error(f"latitude out of range: {criterion.center_lat}", span))
        if not -180.0 <= criterion.center_lon <= 180.0:
            out.append(error(f"longitude out of range: {criterion.center_lon}", span))
        if criterion.radius_m < 0:
            out.append(error("circle radius must not be negative", span))
        if location_path is None:
            out.append(
                warning(
                    "'isInsideCircle' used but the dataset configuration has "
                    "no location field",
                    span,
                )
            )
        elif not _refers_to(criterion.field_name, location_path):
            out.append(
                warning(
                    f"'isInsideCircle' on field '{criterion.field_name}' but the "
                    f"configured location field is '{location_path}'",
                    span,
                )
            )
    elif isinstance(criterion, UserCall):
        if registry.selection_function(criterion.name) is None:
            out.append(
                error(
                    f"unknown selection function '{criterion.name}'",
                    criterion.span or _NO_SPAN,
                )
            )


def _check_alteration(action, has_geo, location_path, registry, out) -> None:
    assigned: set[str] = set()
    for criterion in action.alteration.criteria:
        span = getattr(criterion, "span", None) or action.span or _NO_SPAN
        if isinstance(criterion, (Assign, AssignEvol)):
            assigned.add(criterion.field_name)
        if isinstance(criterion, (AssignEvol, AddEvol)):
            _check_evol(criterion.evol, span, out)
        if isinstance(criterion, AddEvol) and criterion.attenuation is not None:
            if criterion.attenuation.coefficient < 0:
                out.append(
                    error("attenuation coefficient must not be negative", span)
                )
            if not has_geo:
                out.append(
                    error(
                        "attenuation requires scenario property 'geolocation'",
                        span,
                    )
                )
            if location_path is None:
                out.append(
                    error(
                        "attenuation requires a configured location field",
                        span,
                    )
                )
        if isinstance(criterion, UserCall):
            if registry.alteration_function(criterion.name) is None:
                out.append(
                    error(f"unknown alteration function '{criterion.name}'", span)
                )
        if action.primitive is Primitive.CREATE and isinstance(
            criterion, (AddConst, MulConst, AddEvol)
        ):
            if criterion.field_name not in assigned:
                out.append(
                    error(
                        f"arithmetic on field '{criterion.field_name}' never "
                        "assigned within this create action",
                        span,
                    )
                )


def _check_evol(evol: Evol, span: SourceSpan, out: list[Diagnostic]) -> None:
    if evol.start > evol.end:
        out.append(
            error(
                f"evol start {evol.start} is greater than its end {evol.end}",
                evol.span or span,
            )
        )
    if evol.step < 0:
        out.append(error("evol step must not be negative", evol.span or span))


def _refers_to(field_name: str, full_path: FlatPath) -> bool:
    """True when a scenario field reference can address the given path."""
    try:
        reference = decode_path(field_name)
    except Exception:
        reference = FlatPath((field_name,))
    return reference == full_path or reference.is_suffix_of(full_path)
