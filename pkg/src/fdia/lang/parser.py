"""Recursive-descent parser for attack-scenario source text.

Statements (the declaration, each property, each action) occupy one
source line each; a ``;`` is required only to separate two statements
sharing a line and is otherwise optional. On a syntax error the parser
reports one diagnostic for the offending statement and resumes at the
next ``;`` or line, so independent statements produce independent
errors.
"""

from __future__ import annotations

from fdia.lang.ast import (
    Action,
    AddConst,
    AddEvol,
    AlterationCriteria,
    AlterationCriterion,
    Assign,
    AssignEvol,
    Attenuation,
    Compare,
    Evol,
    Geolocation,
    InsideCircle,
    MulConst,
    Primitive,
    ScenarioAst,
    SelectionCriteria,
    SelectionCriterion,
    Ticker,
    Timeframe,
    UserCall,
)
from fdia.lang.diagnostics import (
    Diagnostic,
    ScenarioSyntaxError,
    SourceSpan,
    error,
)
from fdia.lang.lexer import Token, TokenType, scan
from fdia.model.values import CompareOp, Value

_COMPARE_OPS = {
    TokenType.EQ: CompareOp.EQ,
    TokenType.GT: CompareOp.GT,
    TokenType.LT: CompareOp.LT,
    TokenType.NEQ: CompareOp.NEQ,
}

_PRIMITIVES = {
    TokenType.CREATE: Primitive.CREATE,
    TokenType.ALTER: Primitive.ALTER,
    TokenType.DELETE: Primitive.DELETE,
    TokenType.COPY: Primitive.COPY,
}

_DESCRIPTIONS = {
    TokenType.INT: "a number",
    TokenType.REAL: "a number",
    TokenType.STRING: "a string literal",
    TokenType.IDENT: "an identifier",
}


def _describe(token_type: TokenType) -> str:
    return _DESCRIPTIONS.get(token_type, f"'{token_type.value}'")


def parse(source: str) -> ScenarioAst:
    """Parse scenario source text.

    Raises ScenarioSyntaxError carrying every collected diagnostic; the
    lexical pass runs first and short-circuits so each bad statement is
    reported once.
    """
    tokens, lex_diagnostics = scan(source)
    if lex_diagnostics:
        raise ScenarioSyntaxError(lex_diagnostics)
    parser = _Parser(tokens)
    ast = parser.parse_scenario()
    if parser.diagnostics:
        raise ScenarioSyntaxError(parser.diagnostics)
    assert ast is not None
    return ast


class _Abort(Exception):
    """Internal: unwinds to the statement loop for panic-mode recovery."""


class _Parser:
    def __init__(self, tokens: list[Token]) -> None:
        self.tokens = tokens
        self.idx = 0
        self.stmt_line = 1
        self.diagnostics: list[Diagnostic] = []

    # -- token stream helpers -------------------------------------------

    def peek(self) -> Token | None:
        if self.idx < len(self.tokens):
            return self.tokens[self.idx]
        return None

    def advance(self) -> Token:
        token = self.tokens[self.idx]
        self.idx += 1
        return token

    def last_span(self) -> SourceSpan:
        if self.idx > 0:
            return self.tokens[self.idx - 1].span
        return SourceSpan(1, 1, 0)

    def fail(self, message: str, span: SourceSpan | None = None) -> None:
        self.diagnostics.append(error(message, span or self.last_span()))
        raise _Abort()

    def expect(self, token_type: TokenType, expected: str | None = None) -> Token:
        expected = expected or _describe(token_type)
        token = self.peek()
        if token is None:
            self.fail(f"expected {expected}")
        elif token.line != self.stmt_line:
            self.fail(f"expected {expected} before end of line")
        elif token.type is not token_type:
            self.fail(f"expected {expected}, got '{token.text}'", token.span)
        return self.advance()

    def accept(self, token_type: TokenType) -> Token | None:
        token = self.peek()
        if token is not None and token.line == self.stmt_line and token.type is token_type:
            return self.advance()
        return None

    def next_in_statement(self) -> Token | None:
        token = self.peek()
        if token is not None and token.line == self.stmt_line:
            return token
        return None

    def end_statement(self) -> None:
        if self.accept(TokenType.SEMI):
            return
        stray = self.next_in_statement()
        if stray is not None:
            self.fail("expected ';' between statements on one line", stray.span)

    def recover(self) -> None:
        while True:
            token = self.peek()
            if token is None or token.line != self.stmt_line:
                return
            self.advance()
            if token.type is TokenType.SEMI:
                return

    # -- grammar ---------------------------------------------------------

    def parse_scenario(self) -> ScenarioAst | None:
        name: str | None = None
        properties: list = []
        actions: list[Action] = []

        token = self.peek()
        if token is None:
            self.diagnostics.append(error("expected 'scenario'", SourceSpan(1, 1, 0)))
            return None
        if token.type is TokenType.SCENARIO:
            self.stmt_line = token.line
            try:
                name = self.parse_declaration()
                self.end_statement()
            except _Abort:
                self.recover()
        else:
            self.diagnostics.append(
                error("expected 'scenario' at the start of the file", token.span)
            )

        while (token := self.peek()) is not None:
            self.stmt_line = token.line
            try:
                if token.type in (TokenType.TICKER, TokenType.GEOLOCATION):
                    if actions:
                        self.fail(
                            "scenario properties must appear before actions",
                            token.span,
                        )
                    properties.append(self.parse_property())
                    self.end_statement()
                elif token.type in _PRIMITIVES:
                    actions.append(self.parse_action())
                    self.end_statement()
                elif token.type is TokenType.SCENARIO:
                    self.fail("unexpected second 'scenario' declaration", token.span)
                else:
                    self.fail(
                        "expected 'ticker', 'geolocation', 'create', 'alter', "
                        "'delete' or 'copy'",
                        token.span,
                    )
            except _Abort:
                self.recover()

        if not actions and not self.diagnostics:
            self.diagnostics.append(
                error("scenario must contain at least one action", self.last_span())
            )
        if self.diagnostics:
            return None
        assert name is not None
        return ScenarioAst(name, tuple(properties), tuple(actions))

    def parse_declaration(self) -> str:
        self.expect(TokenType.SCENARIO)
        token = self.expect(TokenType.STRING, "the scenario name")
        if not token.text:
            self.fail("scenario name must not be empty", token.span)
        return token.text

    def parse_property(self):
        token = self.advance()
        if token.type is TokenType.TICKER:
            interval = self.number("the ticker interval")
            return Ticker(interval, token.span)
        self.expect(TokenType.LPAREN)
        lat = self.real_number("a latitude")
        self.expect(TokenType.COMMA)
        lon = self.real_number("a longitude")
        self.expect(TokenType.RPAREN)
        return Geolocation(lat, lon, token.span)

    def parse_action(self) -> Action:
        token = self.advance()
        primitive = _PRIMITIVES[token.type]
        self.expect(TokenType.THINGS)
        selection = None
        if primitive is not Primitive.CREATE:
            selection = self.parse_selection()
        alteration = None
        if primitive is not Primitive.DELETE:
            alteration = self.parse_alteration()
        timeframe = self.parse_timeframe()
        return Action(
            primitive=primitive,
            timeframe=timeframe,
            selection=selection,
            alteration=alteration,
            span=token.span,
        )

    def parse_selection(self) -> SelectionCriteria:
        self.expect(TokenType.WHERE)
        criteria = [self.parse_selection_criterion()]
        while self.accept(TokenType.AND):
            criteria.append(self.parse_selection_criterion())
        return SelectionCriteria(tuple(criteria))

    def parse_selection_criterion(self) -> SelectionCriterion:
        field = self.expect(TokenType.IDENT, "a field name")
        token = self.next_in_statement()
        if token is not None and token.type in _COMPARE_OPS:
            self.advance()
            literal = self.parse_type_literal()
            return Compare(field.text, _COMPARE_OPS[token.type], literal, field.span)
        if token is not None and token.type is TokenType.IS_INSIDE_CIRCLE:
            self.advance()
            self.expect(TokenType.LPAREN)
            lat = self.real_number("a latitude")
            self.expect(TokenType.COMMA)
            lon = self.real_number("a longitude")
            self.expect(TokenType.COMMA)
            radius = self.real_number("a radius in meters")
            self.expect(TokenType.RPAREN)
            return InsideCircle(field.text, lat, lon, radius, field.span)
        if token is not None and token.type is TokenType.LPAREN:
            return self.parse_user_call(field)
        self.fail(
            "expected '=', '>', '<', '!=', 'isInsideCircle' or '(' "
            f"after '{field.text}'",
            token.span if token else None,
        )

    def parse_user_call(self, name: Token) -> UserCall:
        self.expect(TokenType.LPAREN)
        args: list[Value] = []
        if not self.accept(TokenType.RPAREN):
            while True:
                args.append(self.parse_call_argument())
                if self.accept(TokenType.COMMA):
                    continue
                self.expect(TokenType.RPAREN)
                break
        return UserCall(name.text, tuple(args), name.span)

    def parse_call_argument(self) -> Value:
        token = self.next_in_statement()
        if token is not None and token.type is TokenType.STRING:
            self.advance()
            return Value.string(token.text)
        if token is not None and token.type is TokenType.INT:
            self.advance()
            return Value.integer(int(token.text))
        if token is not None and token.type is TokenType.REAL:
            self.advance()
            return Value.real(self.finite_float(token))
        self.fail(
            "expected a number or string argument", token.span if token else None
        )

    def parse_type_literal(self) -> Value:
        """The comparison right-hand side: id, string, or number."""
        token = self.next_in_statement()
        if token is None:
            self.fail("expected a value before end of line")
        if token.type is TokenType.IDENT:
            self.advance()
            return Value.string(token.text)
        if token.type is TokenType.STRING:
            self.advance()
            return Value.string(token.text)
        if token.type is TokenType.INT:
            self.advance()
            return Value.integer(int(token.text))
        if token.type is TokenType.REAL:
            self.advance()
            return Value.real(self.finite_float(token))
        self.fail(f"expected a value, got '{token.text}'", token.span)

    def parse_alteration(self) -> AlterationCriteria:
        self.expect(TokenType.SET)
        criteria = [self.parse_alteration_criterion()]
        while self.accept(TokenType.AND):
            criteria.append(self.parse_alteration_criterion())
        return AlterationCriteria(tuple(criteria))

    def parse_alteration_criterion(self) -> AlterationCriterion:
        field = self.expect(TokenType.IDENT, "a field name")
        token = self.next_in_statement()
        if token is not None and token.type is TokenType.LPAREN:
            return self.parse_user_call(field)
        if token is not None and token.type is TokenType.EQ:
            self.advance()
            if self.looking_at(TokenType.LPAREN):
                evol = self.parse_evol()
                return AssignEvol(field.text, evol, field.span)
            literal = self.parse_effect_literal()
            return Assign(field.text, literal, field.span)
        if token is not None and token.type is TokenType.PLUS_EQ:
            self.advance()
            if self.looking_at(TokenType.LPAREN):
                evol = self.parse_evol()
                attenuation = self.parse_attenuation_opt()
                return AddEvol(field.text, evol, attenuation, field.span)
            amount = self.real_number("a number", allow_minus=True)
            return AddConst(field.text, amount, field.span)
        if token is not None and token.type is TokenType.STAR_EQ:
            self.advance()
            factor = self.real_number("a number", allow_minus=True)
            return MulConst(field.text, factor, field.span)
        self.fail(
            f"expected '=', '+=', '*=' or '(' after '{field.text}'",
            token.span if token else None,
        )

    def parse_effect_literal(self) -> Value:
        """An assignment effect: like a type literal but minus is allowed."""
        token = self.next_in_statement()
        if token is not None and token.type is TokenType.MINUS:
            self.advance()
            number = self.expect_number("a number after '-'")
            if number.type is TokenType.INT:
                return Value.integer(-int(number.text))
            return Value.real(-self.finite_float(number))
        return self.parse_type_literal()

    def parse_evol(self) -> Evol:
        token = self.expect(TokenType.LPAREN)
        start = self.real_number("the evol start", allow_minus=True)
        self.expect(TokenType.ARROW)
        end = self.real_number("the evol end", allow_minus=True)
        self.expect(TokenType.COMMA)
        step = self.real_number("the evol step")
        self.expect(TokenType.RPAREN)
        return Evol(start, end, step, token.span)

    def parse_attenuation_opt(self) -> Attenuation | None:
        token = self.next_in_statement()
        if token is None or token.type is not TokenType.WITH:
            return None
        self.advance()
        self.expect(TokenType.ATTENUATION)
        self.expect(TokenType.OF)
        coefficient = self.real_number("the attenuation coefficient")
        return Attenuation(coefficient, token.span)

    def parse_timeframe(self) -> Timeframe:
        token = self.expect(TokenType.FROM)
        from_t = self.number("the start time")
        self.expect(TokenType.TO)
        to_t = self.number("the end time")
        return Timeframe(from_t, to_t, token.span)

    # -- literal helpers --------------------------------------------------

    def looking_at(self, token_type: TokenType) -> bool:
        token = self.next_in_statement()
        return token is not None and token.type is token_type

    def expect_number(self, expected: str) -> Token:
        token = self.next_in_statement()
        if token is None:
            self.fail(f"expected {expected} before end of line")
        if token.type not in (TokenType.INT, TokenType.REAL):
            self.fail(f"expected {expected}, got '{token.text}'", token.span)
        return self.advance()

    def number(self, expected: str) -> int | float:
        """A numeric literal; integers stay exact ints."""
        token = self.expect_number(expected)
        if token.type is TokenType.INT:
            return int(token.text)
        return self.finite_float(token)

    def finite_float(self, token: Token) -> float:
        value = float(token.text)
        if value in (float("inf"), float("-inf")):
            self.fail("number literal too large", token.span)
        return value

    def real_number(self, expected: str, allow_minus: bool = False) -> float:
        negative = False
        if allow_minus and self.looking_at(TokenType.MINUS):
            self.advance()
            negative = True
        token = self.expect_number(expected)
        value = self.finite_float(token)
        return -value if negative else value
