"""Lexical scanner for the attack-scenario language.

Keywords are matched case-insensitively; identifiers keep their case.
String literals are restricted to letters, digits and underscores (which
also means they need no escape mechanism). Statement boundaries lie on
line breaks, so tokens carry their source line and the parser compares
lines rather than receiving explicit newline tokens.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from fdia.lang.diagnostics import (
    Diagnostic,
    ScenarioSyntaxError,
    SourceSpan,
    error,
)


class TokenType(enum.Enum):
    # Keywords
    SCENARIO = "scenario"
    TICKER = "ticker"
    GEOLOCATION = "geolocation"
    CREATE = "create"
    ALTER = "alter"
    DELETE = "delete"
    COPY = "copy"
    THINGS = "things"
    WHERE = "where"
    AND = "and"
    SET = "set"
    FROM = "from"
    TO = "to"
    WITH = "with"
    ATTENUATION = "attenuation"
    OF = "of"
    IS_INSIDE_CIRCLE = "isinsidecircle"

    # Punctuation and operators
    SEMI = ";"
    LPAREN = "("
    RPAREN = ")"
    COMMA = ","
    EQ = "="
    GT = ">"
    LT = "<"
    NEQ = "!="
    PLUS_EQ = "+="
    STAR_EQ = "*="
    ARROW = "->"
    MINUS = "-"

    # Literals and identifiers
    INT = "INT"
    REAL = "REAL"
    STRING = "STRING"
    IDENT = "IDENT"


KEYWORDS = {t.value: t for t in TokenType if t.value.isalpha() and t.value.islower()}


@dataclass(frozen=True)
class Token:
    type: TokenType
    text: str
    span: SourceSpan

    @property
    def line(self) -> int:
        return self.span.line


_IDENT_START = set("abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ")
_IDENT_CONT = _IDENT_START | set("0123456789_")
_STRING_CHARS = _IDENT_CONT


def tokenize(source: str) -> list[Token]:
    """Scan source text to tokens; raises ScenarioSyntaxError on bad input."""
    tokens, diagnostics = scan(source)
    if diagnostics:
        raise ScenarioSyntaxError(diagnostics)
    return tokens


def scan(source: str) -> tuple[list[Token], list[Diagnostic]]:
    """Tokenize while collecting lexical diagnostics instead of raising."""
    return _Lexer(source).run()


class _Lexer:
    def __init__(self, source: str) -> None:
        self.source = source
        self.pos = 0
        self.line = 1
        self.col = 1
        self.tokens: list[Token] = []
        self.diagnostics: list[Diagnostic] = []

    def run(self) -> tuple[list[Token], list[Diagnostic]]:
        while self.pos < len(self.source):
            ch = self.source[self.pos]
            if ch in " \t\r\n":
                self.advance()
            elif ch in _IDENT_START:
                self.scan_word()
            elif ch.isdigit():
                self.scan_number()
            elif ch == '"':
                self.scan_string()
            else:
                self.scan_symbol()
        return self.tokens, self.diagnostics

    def advance(self) -> str:
        ch = self.source[self.pos]
        self.pos += 1
        if ch == "\n":
            self.line += 1
            self.col = 1
        else:
            self.col += 1
        return ch

    def span_from(self, line: int, col: int, length: int) -> SourceSpan:
        return SourceSpan(line, col, length)

    def emit(
        self, typ: TokenType, text: str, line: int, col: int, length: int | None = None
    ) -> None:
        length = len(text) if length is None else length
        self.tokens.append(Token(typ, text, self.span_from(line, col, length)))

    def scan_word(self) -> None:
        line, col, start = self.line, self.col, self.pos
        while self.pos < len(self.source) and self.source[self.pos] in _IDENT_CONT:
            self.advance()
        text = self.source[start : self.pos]
        keyword = KEYWORDS.get(text.lower())
        if keyword is not None:
            self.emit(keyword, text, line, col)
        else:
            self.emit(TokenType.IDENT, text, line, col)

    def scan_number(self) -> None:
        line, col, start = self.line, self.col, self.pos
        while self.pos < len(self.source) and self.source[self.pos].isdigit():
            self.advance()
        is_real = (
            self.pos + 1 < len(self.source)
            and self.source[self.pos] == "."
            and self.source[self.pos + 1].isdigit()
        )
        if is_real:
            self.advance()  # the dot
            while self.pos < len(self.source) and self.source[self.pos].isdigit():
                self.advance()
        text = self.source[start : self.pos]
        self.emit(TokenType.REAL if is_real else TokenType.INT, text, line, col)

    def scan_string(self) -> None:
        line, col = self.line, self.col
        self.advance()  # opening quote
        start = self.pos
        while self.pos < len(self.source):
            ch = self.source[self.pos]
            if ch == '"':
                text = self.source[start : self.pos]
                self.advance()
                for offset, bad in enumerate(text):
                    if bad not in _STRING_CHARS:
                        self.diagnostics.append(
                            error(
                                f"invalid character {bad!r} in string literal "
                                f"(letters, digits and '_' only)",
                                self.span_from(line, col + 1 + offset, 1),
                            )
                        )
                        break
                self.emit(TokenType.STRING, text, line, col, length=len(text) + 2)
                return
            if ch == "\n":
                break
            self.advance()
        self.diagnostics.append(
            error("unterminated string literal", self.span_from(line, col, 1))
        )

    _SINGLE = {
        ";": TokenType.SEMI,
        "(": TokenType.LPAREN,
        ")": TokenType.RPAREN,
        ",": TokenType.COMMA,
        "=": TokenType.EQ,
        ">": TokenType.GT,
        "<": TokenType.LT,
    }

    def scan_symbol(self) -> None:
        line, col = self.line, self.col
        ch = self.source[self.pos]
        nxt = self.source[self.pos + 1] if self.pos + 1 < len(self.source) else ""
        if ch == "!" and nxt == "=":
            self.advance()
            self.advance()
            self.emit(TokenType.NEQ, "!=", line, col)
        elif ch == "+" and nxt == "=":
            self.advance()
            self.advance()
            self.emit(TokenType.PLUS_EQ, "+=", line, col)
        elif ch == "*" and nxt == "=":
            self.advance()
            self.advance()
            self.emit(TokenType.STAR_EQ, "*=", line, col)
        elif ch == "-" and nxt == ">":
            self.advance()
            self.advance()
            self.emit(TokenType.ARROW, "->", line, col)
        elif ch == "-":
            self.advance()
            self.emit(TokenType.MINUS, "-", line, col)
        elif ch in self._SINGLE:
            self.advance()
            self.emit(self._SINGLE[ch], ch, line, col)
        else:
            self.advance()
            self.diagnostics.append(
                error(f"illegal character {ch!r}", self.span_from(line, col, 1))
            )
