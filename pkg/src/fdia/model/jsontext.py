"""JSON reading and writing that keeps every scalar's source lexeme.

The standard json module decodes numbers and strings into Python objects
and re-encodes them in its own spelling, which breaks the byte-level
fidelity this tool guarantees for unaltered data. This scanner instead
builds trees of dicts, lists and Value leaves where each Value remembers
the exact lexeme it was read from; the writer splices those lexemes back
verbatim. Whitespace is the only thing not preserved: output follows a
fixed pretty-print policy compatible with ``json.dumps(indent=2,
ensure_ascii=False)``.
"""

from __future__ import annotations

import re

from fdia.errors import FdiaError
from fdia.model.values import Value, ValueKind, escape_string_inner

# A document tree: dict[str, Node] | list[Node] | Value
Node = object


class JsonParseError(FdiaError):
    def __init__(self, message: str, line: int, column: int) -> None:
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


_WS = " \t\r\n"
_DIGITS = "0123456789"

_WS_RUN = re.compile(r"[ \t\r\n]*")
_PLAIN_STRING_RUN = re.compile(r'[^"\\\x00-\x1f]*')


class _Scanner:
    def __init__(self, text: str) -> None:
        self.text = text
        self.pos = 0
        self.line = 1
        self.col = 1

    def error(self, message: str) -> JsonParseError:
        return JsonParseError(message, self.line, self.col)

    def advance(self, count: int = 1) -> None:
        for _ in range(count):
            if self.text[self.pos] == "\n":
                self.line += 1
                self.col = 1
            else:
                self.col += 1
            self.pos += 1

    def skip_ws(self) -> None:
        start = self.pos
        end = _WS_RUN.match(self.text, start).end()
        if end == start:
            return
        newlines = self.text.count("\n", start, end)
        if newlines:
            self.line += newlines
            self.col = end - self.text.rindex("\n", start, end)
        else:
            self.col += end - start
        self.pos = end

    def peek(self) -> str:
        if self.pos >= len(self.text):
            raise self.error("unexpected end of input")
        return self.text[self.pos]

    def expect(self, ch: str) -> None:
        if self.pos >= len(self.text) or self.text[self.pos] != ch:
            got = self.text[self.pos] if self.pos < len(self.text) else "end of input"
            raise self.error(f"expected {ch!r}, got {got!r}")
        self.advance()

    # -- productions ---------------------------------------------------

    def parse_value(self) -> Node:
        ch = self.peek()
        if ch == "{":
            return self.parse_object()
        if ch == "[":
            return self.parse_array()
        if ch == '"':
            raw, _ = self.parse_string()
            return Value(ValueKind.STRING, raw)
        if ch == "-" or ch in _DIGITS:
            return self.parse_number()
        if self.text.startswith("true", self.pos):
            self.advance(4)
            return Value(ValueKind.BOOLEAN, "true")
        if self.text.startswith("false", self.pos):
            self.advance(5)
            return Value(ValueKind.BOOLEAN, "false")
        if self.text.startswith("null", self.pos):
            self.advance(4)
            return Value(ValueKind.NULL, "null")
        raise self.error(f"unexpected character {ch!r}")

    def parse_object(self) -> dict:
        self.expect("{")
        out: dict[str, Node] = {}
        self.skip_ws()
        if self.pos < len(self.text) and self.text[self.pos] == "}":
            self.advance()
            return out
        while True:
            self.skip_ws()
            if self.peek() != '"':
                raise self.error("expected object key")
            _, key = self.parse_string()
            if key in out:
                raise self.error(f"duplicate object key {key!r}")
            self.skip_ws()
            self.expect(":")
            self.skip_ws()
            out[key] = self.parse_value()
            self.skip_ws()
            ch = self.peek()
            if ch == ",":
                self.advance()
                continue
            if ch == "}":
                self.advance()
                return out
            raise self.error(f"expected ',' or '}}', got {ch!r}")

    def parse_array(self) -> list:
        self.expect("[")
        out: list[Node] = []
        self.skip_ws()
        if self.pos < len(self.text) and self.text[self.pos] == "]":
            self.advance()
            return out
        while True:
            self.skip_ws()
            out.append(self.parse_value())
            self.skip_ws()
            ch = self.peek()
            if ch == ",":
                self.advance()
                continue
            if ch == "]":
                self.advance()
                return out
            raise self.error(f"expected ',' or ']', got {ch!r}")

    def parse_string(self) -> tuple[str, str]:
        """Scan a string literal; returns (raw inner lexeme, decoded text)."""
        self.expect('"')
        start = self.pos
        text = self.text
        decoded: list[str] = []
        while True:
            # bulk-consume the run of plain characters ahead
            run_end = _PLAIN_STRING_RUN.match(text, self.pos).end()
            if run_end > self.pos:
                decoded.append(text[self.pos : run_end])
                self.col += run_end - self.pos
                self.pos = run_end
            if self.pos >= len(text):
                raise self.error("unterminated string")
            ch = text[self.pos]
            if ch == '"':
                raw = text[start : self.pos]
                self.advance()
                return raw, "".join(decoded)
            if ch == "\\":
                self.parse_escape(decoded)
            else:
                raise self.error("unescaped control character in string")

    _SIMPLE_ESCAPES = {
        '"': '"',
        "\\": "\\",
        "/": "/",
        "b": "\b",
        "f": "\f",
        "n": "\n",
        "r": "\r",
        "t": "\t",
    }

    def parse_escape(self, decoded: list[str]) -> None:
        self.advance()  # backslash
        if self.pos >= len(self.text):
            raise self.error("unterminated string")
        esc = self.text[self.pos]
        if esc in self._SIMPLE_ESCAPES:
            decoded.append(self._SIMPLE_ESCAPES[esc])
            self.advance()
            return
        if esc != "u":
            raise self.error(f"invalid escape sequence '\\{esc}'")
        code = self.parse_hex4()
        if 0xD800 <= code <= 0xDBFF and self.text.startswith("\\u", self.pos):
            save = (self.pos, self.line, self.col)
            self.advance(2)
            low = self.parse_hex4()
            if 0xDC00 <= low <= 0xDFFF:
                code = 0x10000 + ((code - 0xD800) << 10) + (low - 0xDC00)
            else:
                self.pos, self.line, self.col = save
        decoded.append(chr(code))

    def parse_hex4(self) -> int:
        self.advance()  # the 'u'
        if self.pos + 4 > len(self.text):
            raise self.error("truncated \\u escape")
        hexs = self.text[self.pos : self.pos + 4]
        try:
            code = int(hexs, 16)
        except ValueError:
            raise self.error(f"bad \\u escape '\\u{hexs}'") from None
        self.advance(4)
        return code

    def parse_number(self) -> Value:
        text = self.text
        n = len(text)
        start = pos = self.pos
        if text[pos] == "-":
            pos += 1
        if pos >= n or text[pos] not in _DIGITS:
            self.col += pos - start
            self.pos = pos
            raise self.error("malformed number")
        if text[pos] == "0":
            pos += 1
        else:
            while pos < n and text[pos] in _DIGITS:
                pos += 1
        is_real = False
        if pos < n and text[pos] == ".":
            is_real = True
            pos += 1
            if pos >= n or text[pos] not in _DIGITS:
                self.col += pos - start
                self.pos = pos
                raise self.error("digit expected after decimal point")
            while pos < n and text[pos] in _DIGITS:
                pos += 1
        if pos < n and text[pos] in "eE":
            is_real = True
            pos += 1
            if pos < n and text[pos] in "+-":
                pos += 1
            if pos >= n or text[pos] not in _DIGITS:
                self.col += pos - start
                self.pos = pos
                raise self.error("digit expected in exponent")
            while pos < n and text[pos] in _DIGITS:
                pos += 1
        lexeme = text[start:pos]
        self.col += pos - start
        self.pos = pos
        if is_real:
            return Value(ValueKind.REAL, lexeme, float(lexeme))
        return Value(ValueKind.INTEGER, lexeme, int(lexeme))


def parse_document(text: str) -> Node:
    """Parse one JSON document, rejecting trailing content."""
    scanner = _Scanner(text)
    scanner.skip_ws()
    node = scanner.parse_value()
    scanner.skip_ws()
    if scanner.pos != len(text):
        raise scanner.error("trailing content after JSON document")
    return node


def parse_line(text: str, line_no: int) -> Node:
    """Parse one newline-delimited document, reporting errors at line_no."""
    scanner = _Scanner(text)
    scanner.line = line_no
    scanner.skip_ws()
    node = scanner.parse_value()
    scanner.skip_ws()
    if scanner.pos != len(text):
        raise scanner.error("trailing content after JSON document")
    return node


# -- writer ---------------------------------------------------------------


def _write_scalar(value: Value) -> str:
    if value.kind is ValueKind.STRING:
        return f'"{value.lexical}"'
    return value.lexical


def write_document(node: Node, indent: int = 2) -> str:
    """Pretty-print matching json.dumps(indent=2, ensure_ascii=False)."""
    out: list[str] = []
    _write_pretty(node, 0, indent, out)
    return "".join(out)


def _write_pretty(node: Node, depth: int, indent: int, out: list[str]) -> None:
    if isinstance(node, Value):
        out.append(_write_scalar(node))
        return
    pad = " " * (indent * (depth + 1))
    closing_pad = " " * (indent * depth)
    if isinstance(node, dict):
        if not node:
            out.append("{}")
            return
        out.append("{\n")
        for i, (key, child) in enumerate(node.items()):
            if i:
                out.append(",\n")
            out.append(f'{pad}"{escape_string_inner(key)}": ')
            _write_pretty(child, depth + 1, indent, out)
        out.append(f"\n{closing_pad}}}")
        return
    if isinstance(node, list):
        if not node:
            out.append("[]")
            return
        out.append("[\n")
        for i, child in enumerate(node):
            if i:
                out.append(",\n")
            out.append(pad)
            _write_pretty(child, depth + 1, indent, out)
        out.append(f"\n{closing_pad}]")
        return
    raise TypeError(f"cannot serialize node of type {type(node).__name__}")


def write_compact(node: Node) -> str:
    """Single-line form matching json.dumps(ensure_ascii=False) defaults."""
    if isinstance(node, Value):
        return _write_scalar(node)
    if isinstance(node, dict):
        parts = (
            f'"{escape_string_inner(k)}": {write_compact(v)}' for k, v in node.items()
        )
        return "{" + ", ".join(parts) + "}"
    if isinstance(node, list):
        return "[" + ", ".join(write_compact(v) for v in node) + "]"
    raise TypeError(f"cannot serialize node of type {type(node).__name__}")
