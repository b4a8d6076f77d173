"""Execution reports: per-action counters and overall timing."""

from __future__ import annotations

import json
from dataclasses import dataclass, field


@dataclass
class ActionReport:
    index: int
    primitive: str
    matched: int = 0
    mutated_fields: int = 0
    created_records: int = 0
    deleted_records: int = 0
    copied_records: int = 0
    warnings: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "index": self.index,
            "primitive": self.primitive,
            "matched": self.matched,
            "mutatedFields": self.mutated_fields,
            "created": self.created_records,
            "deleted": self.deleted_records,
            "copied": self.copied_records,
            "warnings": list(self.warnings),
        }


@dataclass
class ScenarioReport:
    scenario: str
    actions: list[ActionReport]
    wall_time_ms: float = 0.0

    def to_dict(self) -> dict:
        return {
            "scenario": self.scenario,
            "actions": [a.to_dict() for a in self.actions],
            "wallTimeMs": self.wall_time_ms,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    @property
    def total_matched(self) -> int:
        return sum(a.matched for a in self.actions)
