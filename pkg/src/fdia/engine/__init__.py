"""Scenario execution engine."""

from fdia.engine.executor import (
    ExecutionContext,
    ScenarioInvalidError,
    apply_alteration,
    attenuate,
    build_context,
    evol_delta,
    exec_alter,
    exec_copy,
    exec_create,
    exec_delete,
    execute,
    matches,
)
from fdia.engine.geo import EARTH_RADIUS_M, haversine_m
from fdia.engine.report import ActionReport, ScenarioReport

__all__ = [
    "ExecutionContext",
    "ScenarioInvalidError",
    "apply_alteration",
    "attenuate",
    "build_context",
    "evol_delta",
    "exec_alter",
    "exec_copy",
    "exec_create",
    "exec_delete",
    "execute",
    "matches",
    "EARTH_RADIUS_M",
    "haversine_m",
    "ActionReport",
    "ScenarioReport",
]
