"""Value model: kinds, lexical preservation, comparison semantics."""

from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from fdia.model.values import (
    INCOMPARABLE,
    CompareOp,
    Value,
    ValueKind,
    compare_values,
    parse_numeric_text,
    unescape_string_inner,
)


def test_constructors_produce_canonical_lexicals():
    assert Value.integer(42).lexical == "42"
    assert Value.real(0.5).lexical == "0.5"
    assert Value.boolean(True).lexical == "true"
    assert Value.null().lexical == "null"
    assert Value.string("ab c").lexical == "ab c"
    assert Value.string('q"\n').lexical == 'q\\"\\n'


def test_string_text_round_trips_escapes():
    original = 'tab\there "quoted" \\ end'
    assert Value.string(original).text() == original


def test_unescape_combines_surrogate_pairs():
    assert unescape_string_inner("\\ud83d\\ude00") == "\U0001f600"


@pytest.mark.parametrize(
    "text,expected",
    [
        ("42", 42),
        ("-7", -7),
        ("4.5", 4.5),
        ("1e3", 1000.0),
        ("9007199254740993", 9007199254740993),  # exact beyond 2**53
        ("", None),
        (" 5", None),
        ("5 ", None),
        ("nan", None),
        ("inf", None),
        ("1_000", None),
        ("abc", None),
    ],
)
def test_parse_numeric_text(text, expected):
    assert parse_numeric_text(text) == expected
    if expected is not None:
        assert type(parse_numeric_text(text)) is type(expected)


def test_string_number_compares_numerically():
    # A numeric reading kept as a string still orders against integers.
    assert compare_values(Value.string("6500"), CompareOp.GT, Value.integer(451)) is True


def test_string_equality():
    assert compare_values(Value.string("521"), CompareOp.EQ, Value.string("521")) is True
    assert compare_values(Value.string("521"), CompareOp.EQ, Value.string("10")) is False


def test_non_numeric_ordering_is_incomparable():
    assert (
        compare_values(Value.string("abc"), CompareOp.GT, Value.integer(1))
        is INCOMPARABLE
    )
    assert (
        compare_values(Value.string("abc"), CompareOp.LT, Value.string("abd"))
        is INCOMPARABLE
    )


def test_equality_across_kinds():
    assert compare_values(Value.string("abc"), CompareOp.EQ, Value.integer(1)) is False
    assert compare_values(Value.string("abc"), CompareOp.NEQ, Value.integer(1)) is True
    assert compare_values(Value.null(), CompareOp.EQ, Value.null()) is True
    assert compare_values(Value.boolean(True), CompareOp.EQ, Value.boolean(False)) is False
    assert compare_values(Value.boolean(True), CompareOp.GT, Value.boolean(False)) is INCOMPARABLE


def test_numeric_equality_coerces_string_and_real():
    assert compare_values(Value.string("10"), CompareOp.EQ, Value.real(10.0)) is True
    assert compare_values(Value.string("10"), CompareOp.EQ, Value.string("521")) is False


def test_booleans_do_not_coerce_to_numbers():
    assert Value.boolean(True).as_number() is None
    assert compare_values(Value.boolean(True), CompareOp.GT, Value.integer(0)) is INCOMPARABLE


_scalars = st.one_of(
    st.integers(min_value=-(10**6), max_value=10**6).map(Value.integer),
    st.floats(allow_nan=False, allow_infinity=False, width=32).map(Value.real),
    st.text(max_size=8).map(Value.string),
    st.booleans().map(Value.boolean),
    st.just(Value.null()),
)


@given(a=_scalars, b=_scalars)
def test_equality_is_symmetric(a, b):
    assert compare_values(a, CompareOp.EQ, b) == compare_values(b, CompareOp.EQ, a)
    assert compare_values(a, CompareOp.NEQ, b) == compare_values(b, CompareOp.NEQ, a)


@given(a=_scalars, b=_scalars)
def test_eq_and_neq_are_complements_when_defined(a, b):
    eq = compare_values(a, CompareOp.EQ, b)
    neq = compare_values(a, CompareOp.NEQ, b)
    assert eq is not INCOMPARABLE and neq is not INCOMPARABLE
    assert eq != neq
