"""Scanner behavior: token shapes, spans, case folding, lexical errors."""

from __future__ import annotations

import pytest

from fdia.lang.diagnostics import ScenarioSyntaxError
from fdia.lang.lexer import TokenType, tokenize


def kinds(source: str) -> list[TokenType]:
    return [t.type for t in tokenize(source)]


def test_property_line_tokens():
    tokens = tokenize("geolocation (47.237829,6.0240539) ;")
    assert [t.type for t in tokens] == [
        TokenType.GEOLOCATION,
        TokenType.LPAREN,
        TokenType.REAL,
        TokenType.COMMA,
        TokenType.REAL,
        TokenType.RPAREN,
        TokenType.SEMI,
    ]
    assert tokens[2].text == "47.237829"
    assert tokens[4].text == "6.0240539"


def test_empty_input_gives_no_tokens():
    assert tokenize("") == []
    assert tokenize("   \n\t\n") == []


def test_unterminated_string_is_reported():
    with pytest.raises(ScenarioSyntaxError) as exc_info:
        tokenize('set x = "abc')
    (diagnostic,) = exc_info.value.diagnostics
    assert "unterminated string literal" in diagnostic.message
    assert diagnostic.span.line == 1


def test_string_rejects_characters_outside_identifier_set():
    with pytest.raises(ScenarioSyntaxError) as exc_info:
        tokenize('scenario "two words"')
    assert "invalid character" in exc_info.value.diagnostics[0].message


def test_illegal_character():
    with pytest.raises(ScenarioSyntaxError) as exc_info:
        tokenize("ticker 2 @")
    (diagnostic,) = exc_info.value.diagnostics
    assert "illegal character" in diagnostic.message
    assert (diagnostic.span.line, diagnostic.span.column) == (1, 10)


def test_multiple_lexical_errors_collected():
    with pytest.raises(ScenarioSyntaxError) as exc_info:
        tokenize("@ ~")
    assert len(exc_info.value.diagnostics) == 2


def test_keywords_fold_case_identifiers_do_not():
    tokens = tokenize("SCENARIO Alter isInsideCircle Meter_Code")
    assert [t.type for t in tokens] == [
        TokenType.SCENARIO,
        TokenType.ALTER,
        TokenType.IS_INSIDE_CIRCLE,
        TokenType.IDENT,
    ]
    assert tokens[3].text == "Meter_Code"


def test_compound_operators():
    assert kinds("+= *= -> != - = > <") == [
        TokenType.PLUS_EQ,
        TokenType.STAR_EQ,
        TokenType.ARROW,
        TokenType.NEQ,
        TokenType.MINUS,
        TokenType.EQ,
        TokenType.GT,
        TokenType.LT,
    ]


def test_bare_plus_and_star_are_illegal():
    for source in ("+", "*", "!"):
        with pytest.raises(ScenarioSyntaxError):
            tokenize(source)


def test_number_shapes():
    tokens = tokenize("42 4.5 999999999 0.0")
    assert [t.type for t in tokens] == [
        TokenType.INT,
        TokenType.REAL,
        TokenType.INT,
        TokenType.REAL,
    ]
    # "1." is an int then a stray dot, not a real
    with pytest.raises(ScenarioSyntaxError):
        tokenize("1.")


def test_spans_cover_tokens():
    tokens = tokenize('alter things\nwhere a="b"')
    where = tokens[2]
    assert (where.span.line, where.span.column) == (2, 1)
    literal = tokens[-1]
    assert literal.span.length == 3  # quotes included
    assert literal.text == "b"
