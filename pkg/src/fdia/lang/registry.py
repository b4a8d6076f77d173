"""Extension point for deployment-defined selection and alteration functions.

The grammar reserves a call syntax (``field_or_name(arg, ...)`` with
number and string arguments) for functions that a deployment registers
here; the package itself ships none. A selection function decides
whether a record matches; an alteration function mutates a record and
reports which fields it changed so tamper provenance stays accurate.

Signatures:

    selection(record: FlatRecord, args: tuple[Value, ...], ctx) -> bool
    alteration(record: FlatRecord, args: tuple[Value, ...], ctx,
               match_index: int) -> list[FlatPath]   # paths changed
"""

from __future__ import annotations

from typing import Callable


class FunctionRegistry:
    def __init__(self) -> None:
        self._selection: dict[str, Callable] = {}
        self._alteration: dict[str, Callable] = {}

    def register_selection(self, name: str, fn: Callable) -> None:
        if name in self._selection:
            raise ValueError(f"selection function {name!r} already registered")
        self._selection[name] = fn

    def register_alteration(self, name: str, fn: Callable) -> None:
        if name in self._alteration:
            raise ValueError(f"alteration function {name!r} already registered")
        self._alteration[name] = fn

    def selection_function(self, name: str) -> Callable | None:
        return self._selection.get(name)

    def alteration_function(self, name: str) -> Callable | None:
        return self._alteration.get(name)
