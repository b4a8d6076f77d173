"""Scalar value model with lossless lexical round-tripping.

A Value keeps the exact source lexeme it was read from, so a record that
is never altered re-serializes byte for byte. Altered values are rebuilt
through the constructors below, which produce canonical lexemes.

For string values ``lexical`` holds the characters between the quotes
with escape sequences intact; for every other kind it is the full lexeme
(``8.03``, ``true``, ``null``). The lexeme is always valid JSON syntax,
which is the internal interchange format for all source formats.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum


class ValueKind(Enum):
    STRING = "string"
    INTEGER = "int"
    REAL = "real"
    BOOLEAN = "bool"
    NULL = "null"
    # Structural markers recording empty containers in flattened records.
    EMPTY_OBJECT = "obj"
    EMPTY_ARRAY = "arr"


class CompareOp(Enum):
    EQ = "="
    GT = ">"
    LT = "<"
    NEQ = "!="


class _Incomparable:
    """Result of a comparison that is defined for neither operand kind."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "INCOMPARABLE"

    def __bool__(self) -> bool:
        return False


INCOMPARABLE = _Incomparable()


@dataclass(frozen=True)
class Value:
    """One scalar cell of a record.

    ``numeric`` carries the canonical numeric form for INTEGER and REAL
    kinds (a Python int or float; ints are exact at any magnitude).
    """

    kind: ValueKind
    lexical: str
    numeric: int | float | None = None

    # -- constructors -------------------------------------------------

    @staticmethod
    def string(text: str) -> "Value":
        return Value(ValueKind.STRING, escape_string_inner(text))

    @staticmethod
    def integer(n: int) -> "Value":
        return Value(ValueKind.INTEGER, str(n), n)

    @staticmethod
    def real(x: float) -> "Value":
        # repr() is the shortest digit string that round-trips the float.
        return Value(ValueKind.REAL, repr(float(x)), float(x))

    @staticmethod
    def boolean(b: bool) -> "Value":
        return Value(ValueKind.BOOLEAN, "true" if b else "false")

    @staticmethod
    def null() -> "Value":
        return Value(ValueKind.NULL, "null")

    @staticmethod
    def empty_object() -> "Value":
        return Value(ValueKind.EMPTY_OBJECT, "{}")

    @staticmethod
    def empty_array() -> "Value":
        return Value(ValueKind.EMPTY_ARRAY, "[]")

    @staticmethod
    def from_number(x: int | float) -> "Value":
        """Canonical Value for a computed number: integral becomes INTEGER."""
        if isinstance(x, bool):
            raise TypeError("bool is not a number here")
        if isinstance(x, int):
            return Value.integer(x)
        if float(x).is_integer() and abs(x) < 2**53:
            return Value.integer(int(x))
        return Value.real(x)

    # -- accessors -----------------------------------------------------

    def text(self) -> str:
        """Decoded text content of a STRING value."""
        if self.kind is not ValueKind.STRING:
            raise TypeError(f"not a string value: {self!r}")
        return unescape_string_inner(self.lexical)

    def as_bool(self) -> bool:
        if self.kind is not ValueKind.BOOLEAN:
            raise TypeError(f"not a boolean value: {self!r}")
        return self.lexical == "true"

    def as_number(self) -> int | float | None:
        """Numeric form, coercing numeric-looking strings; None otherwise.

        Booleans and nulls never coerce. A string coerces only when its
        entire text is a plain decimal number (no whitespace, no inf/nan).
        """
        if self.kind in (ValueKind.INTEGER, ValueKind.REAL):
            return self.numeric
        if self.kind is ValueKind.STRING:
            return parse_numeric_text(self.text())
        return None


_NUMERIC_TEXT = re.compile(r"[+-]?(?:[0-9]+(?:\.[0-9]*)?|\.[0-9]+)(?:[eE][+-]?[0-9]+)?\Z")
_INTEGER_TEXT = re.compile(r"[+-]?[0-9]+\Z")


def parse_numeric_text(text: str) -> int | float | None:
    """Parse text that is entirely a decimal number, else None.

    Integers parse exactly at any magnitude; anything with a fraction or
    exponent parses as float.
    """
    if not _NUMERIC_TEXT.match(text):
        return None
    if _INTEGER_TEXT.match(text):
        return int(text)
    return float(text)


def compare_values(a: Value, op: CompareOp, b: Value) -> bool | _Incomparable:
    """Compare two values under the scenario language's operators.

    Numeric coercion wins when both sides have it (so the string "6500"
    compares numerically against the integer 451). Equality across
    unrelated kinds is simply false; ordering without numbers on both
    sides is INCOMPARABLE, which never satisfies a selection.
    """
    an, bn = a.as_number(), b.as_number()
    if an is not None and bn is not None:
        if op is CompareOp.EQ:
            return an == bn
        if op is CompareOp.NEQ:
            return an != bn
        if op is CompareOp.GT:
            return an > bn
        return an < bn

    if op in (CompareOp.EQ, CompareOp.NEQ):
        if a.kind is ValueKind.STRING and b.kind is ValueKind.STRING:
            eq = a.text() == b.text()
        elif a.kind is ValueKind.BOOLEAN and b.kind is ValueKind.BOOLEAN:
            eq = a.as_bool() == b.as_bool()
        elif a.kind is ValueKind.NULL and b.kind is ValueKind.NULL:
            eq = True
        elif a.kind == b.kind:
            eq = a.lexical == b.lexical
        else:
            eq = False
        return eq if op is CompareOp.EQ else not eq

    return INCOMPARABLE


# -- JSON string escaping -----------------------------------------------

_SHORT_ESCAPES = {
    '"': '\\"',
    "\\": "\\\\",
    "\n": "\\n",
    "\t": "\\t",
    "\r": "\\r",
    "\b": "\\b",
    "\f": "\\f",
}

_UNESCAPES = {
    '"': '"',
    "\\": "\\",
    "/": "/",
    "n": "\n",
    "t": "\t",
    "r": "\r",
    "b": "\b",
    "f": "\f",
}


def escape_string_inner(text: str) -> str:
    """Canonical JSON escaping of string content (quotes not included)."""
    if not any(ch in _SHORT_ESCAPES or ord(ch) < 0x20 for ch in text):
        return text
    out: list[str] = []
    for ch in text:
        if ch in _SHORT_ESCAPES:
            out.append(_SHORT_ESCAPES[ch])
        elif ord(ch) < 0x20:
            out.append(f"\\u{ord(ch):04x}")
        else:
            out.append(ch)
    return "".join(out)


def unescape_string_inner(lexical: str) -> str:
    """Decode JSON string content, combining UTF-16 surrogate pairs."""
    if "\\" not in lexical:
        return lexical
    out: list[str] = []
    i = 0
    n = len(lexical)
    while i < n:
        ch = lexical[i]
        if ch != "\\":
            out.append(ch)
            i += 1
            continue
        if i + 1 >= n:
            raise ValueError("dangling backslash in string lexeme")
        esc = lexical[i + 1]
        if esc in _UNESCAPES:
            out.append(_UNESCAPES[esc])
            i += 2
            continue
        if esc != "u":
            raise ValueError(f"invalid escape sequence \\{esc}")
        if i + 6 > n:
            raise ValueError("truncated \\u escape")
        code = int(lexical[i + 2 : i + 6], 16)
        i += 6
        if 0xD800 <= code <= 0xDBFF and lexical[i : i + 2] == "\\u":
            low = int(lexical[i + 2 : i + 6], 16)
            if 0xDC00 <= low <= 0xDFFF:
                code = 0x10000 + ((code - 0xD800) << 10) + (low - 0xDC00)
                i += 6
        out.append(chr(code))
    return "".join(out)
