"""Canonical source rendering of a scenario AST.

Output uses lowercase keywords, one statement per line and explicit
``;`` terminators; re-parsing the result yields an AST equal to the
input.
"""

from __future__ import annotations

from decimal import Decimal

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
from fdia.model.values import Value, ValueKind


def format_scenario(ast: ScenarioAst) -> str:
    lines = [f'scenario "{ast.name}";']
    for prop in ast.properties:
        if isinstance(prop, Ticker):
            lines.append(f"ticker {_number(prop.interval)};")
        else:
            assert isinstance(prop, Geolocation)
            lines.append(f"geolocation ({_number(prop.lat)}, {_number(prop.lon)});")
    for action in ast.actions:
        lines.append(_format_action(action))
    return "\n".join(lines) + "\n"


def _number(value: int | float) -> str:
    # DSL numerals have no exponent form; fall back to the float's exact
    # decimal expansion for magnitudes repr() would print with one.
    if isinstance(value, int):
        return str(value)
    if value != value or value in (float("inf"), float("-inf")):
        raise ValueError(f"cannot format non-finite number {value!r}")
    text = repr(value)
    if "e" in text or "E" in text:
        text = format(Decimal(value), "f")
    return text


def _literal(value: Value) -> str:
    if value.kind is ValueKind.STRING:
        return f'"{value.lexical}"'
    if value.kind in (ValueKind.INTEGER, ValueKind.REAL):
        return _number(value.numeric)
    raise ValueError(f"cannot format literal of kind {value.kind.value}")


def _format_action(action: Action) -> str:
    parts = [action.primitive.value, "things"]
    if action.selection is not None:
        terms = [_selection_criterion(c) for c in action.selection.criteria]
        parts.append("where " + " and ".join(terms))
    if action.alteration is not None:
        terms = [_alteration_criterion(c) for c in action.alteration.criteria]
        parts.append("set " + " and ".join(terms))
    frame = action.timeframe
    parts.append(f"from {_number(frame.from_t)} to {_number(frame.to_t)}")
    return " ".join(parts) + ";"


def _selection_criterion(criterion) -> str:
    if isinstance(criterion, Compare):
        return f"{criterion.field_name} {criterion.op.value} {_literal(criterion.literal)}"
    if isinstance(criterion, InsideCircle):
        return (
            f"{criterion.field_name} isinsidecircle({_number(criterion.center_lat)}, "
            f"{_number(criterion.center_lon)}, {_number(criterion.radius_m)})"
        )
    assert isinstance(criterion, UserCall)
    return _user_call(criterion)


def _alteration_criterion(criterion) -> str:
    if isinstance(criterion, Assign):
        return f"{criterion.field_name} = {_literal(criterion.literal)}"
    if isinstance(criterion, AssignEvol):
        return f"{criterion.field_name} = {_evol(criterion.evol)}"
    if isinstance(criterion, AddConst):
        return f"{criterion.field_name} += {_number(criterion.amount)}"
    if isinstance(criterion, MulConst):
        return f"{criterion.field_name} *= {_number(criterion.factor)}"
    if isinstance(criterion, AddEvol):
        text = f"{criterion.field_name} += {_evol(criterion.evol)}"
        if criterion.attenuation is not None:
            text += f" with attenuation of {_number(criterion.attenuation.coefficient)}"
        return text
    assert isinstance(criterion, UserCall)
    return _user_call(criterion)


def _evol(evol: Evol) -> str:
    return f"({_number(evol.start)} -> {_number(evol.end)}, {_number(evol.step)})"


def _user_call(call: UserCall) -> str:
    args = ", ".join(_literal(a) for a in call.args)
    return f"{call.name}({args})"
