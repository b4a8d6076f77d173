"""Attack-scenario language: lexer, parser, analyzer, formatter."""

from fdia.lang.analyzer import analyze
from fdia.lang.ast import (
    Action,
    AddConst,
    AddEvol,
    AlterationCriteria,
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
    Ticker,
    Timeframe,
    UserCall,
)
from fdia.lang.diagnostics import (
    Diagnostic,
    ScenarioSyntaxError,
    Severity,
    SourceSpan,
    has_errors,
)
from fdia.lang.formatter import format_scenario
from fdia.lang.lexer import Token, TokenType, tokenize
from fdia.lang.parser import parse
from fdia.lang.registry import FunctionRegistry

__all__ = [
    "analyze",
    "Action",
    "AddConst",
    "AddEvol",
    "AlterationCriteria",
    "Assign",
    "AssignEvol",
    "Attenuation",
    "Compare",
    "Evol",
    "Geolocation",
    "InsideCircle",
    "MulConst",
    "Primitive",
    "ScenarioAst",
    "SelectionCriteria",
    "Ticker",
    "Timeframe",
    "UserCall",
    "Diagnostic",
    "ScenarioSyntaxError",
    "Severity",
    "SourceSpan",
    "has_errors",
    "format_scenario",
    "Token",
    "TokenType",
    "tokenize",
    "parse",
    "FunctionRegistry",
]
