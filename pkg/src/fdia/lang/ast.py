"""In-memory representation of a validated attack scenario.

All nodes are frozen; source spans are carried for diagnostics but
excluded from equality so that a formatted-and-reparsed scenario compares
equal to the original.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from fdia.lang.diagnostics import SourceSpan
from fdia.model.values import CompareOp, Value


@dataclass(frozen=True)
class Ticker:
    """Inter-message interval of the attacked device, in timestamp units."""

    interval: int | float
    span: SourceSpan | None = field(default=None, compare=False)


@dataclass(frozen=True)
class Geolocation:
    """Point of application of the scenario (degrees)."""

    lat: float
    lon: float
    span: SourceSpan | None = field(default=None, compare=False)


ScenarioProperty = Ticker | Geolocation


@dataclass(frozen=True)
class Evol:
    """An evolving delta: start + i*step per matched record, capped at end."""

    start: float
    end: float
    step: float
    span: SourceSpan | None = field(default=None, compare=False)


@dataclass(frozen=True)
class Attenuation:
    """Per-meter reduction of an alteration's magnitude."""

    coefficient: float
    span: SourceSpan | None = field(default=None, compare=False)


@dataclass(frozen=True)
class Compare:
    field_name: str
    op: CompareOp
    literal: Value
    span: SourceSpan | None = field(default=None, compare=False)


@dataclass(frozen=True)
class InsideCircle:
    field_name: str
    center_lat: float
    center_lon: float
    radius_m: float
    span: SourceSpan | None = field(default=None, compare=False)


@dataclass(frozen=True)
class UserCall:
    """Call to a deployment-registered extension function."""

    name: str
    args: tuple[Value, ...]
    span: SourceSpan | None = field(default=None, compare=False)


SelectionCriterion = Compare | InsideCircle | UserCall


@dataclass(frozen=True)
class SelectionCriteria:
    """Conjunction of criteria choosing the records an action targets."""

    criteria: tuple[SelectionCriterion, ...]

    def __post_init__(self) -> None:
        if not self.criteria:
            raise ValueError("selection needs at least one criterion")


@dataclass(frozen=True)
class Assign:
    field_name: str
    literal: Value
    span: SourceSpan | None = field(default=None, compare=False)


@dataclass(frozen=True)
class AssignEvol:
    field_name: str
    evol: Evol
    span: SourceSpan | None = field(default=None, compare=False)


@dataclass(frozen=True)
class AddConst:
    field_name: str
    amount: float
    span: SourceSpan | None = field(default=None, compare=False)


@dataclass(frozen=True)
class MulConst:
    field_name: str
    factor: float
    span: SourceSpan | None = field(default=None, compare=False)


@dataclass(frozen=True)
class AddEvol:
    field_name: str
    evol: Evol
    attenuation: Attenuation | None = None
    span: SourceSpan | None = field(default=None, compare=False)


AlterationCriterion = Assign | AssignEvol | AddConst | MulConst | AddEvol | UserCall


@dataclass(frozen=True)
class AlterationCriteria:
    """Field mutations applied left to right to each targeted record."""

    criteria: tuple[AlterationCriterion, ...]

    def __post_init__(self) -> None:
        if not self.criteria:
            raise ValueError("alteration needs at least one criterion")


@dataclass(frozen=True)
class Timeframe:
    """Inclusive [from, to] window in timestamp units (no calendar)."""

    from_t: int | float
    to_t: int | float
    span: SourceSpan | None = field(default=None, compare=False)


class Primitive(enum.Enum):
    CREATE = "create"
    ALTER = "alter"
    DELETE = "delete"
    COPY = "copy"


@dataclass(frozen=True)
class Action:
    primitive: Primitive
    timeframe: Timeframe
    selection: SelectionCriteria | None = None
    alteration: AlterationCriteria | None = None
    span: SourceSpan | None = field(default=None, compare=False)

    def __post_init__(self) -> None:
        needs_selection = self.primitive is not Primitive.CREATE
        needs_alteration = self.primitive is not Primitive.DELETE
        if needs_selection != (self.selection is not None):
            raise ValueError(f"{self.primitive.value}: selection mismatch")
        if needs_alteration != (self.alteration is not None):
            raise ValueError(f"{self.primitive.value}: alteration mismatch")


@dataclass(frozen=True)
class ScenarioAst:
    name: str
    properties: tuple[ScenarioProperty, ...]
    actions: tuple[Action, ...]

    def ticker(self) -> Ticker | None:
        for prop in self.properties:
            if isinstance(prop, Ticker):
                return prop
        return None

    def geolocation(self) -> Geolocation | None:
        for prop in self.properties:
            if isinstance(prop, Geolocation):
                return prop
        return None
