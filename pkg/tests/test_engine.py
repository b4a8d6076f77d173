"""Execution engine: matching, alteration arithmetic, and the four primitives."""

from __future__ import annotations

import json

import pytest

from fdia.engine.executor import (
    apply_alteration,
    attenuate,
    build_context,
    evol_delta,
    exec_copy,
    execute,
    matches,
    ScenarioInvalidError,
)
from fdia.lang.ast import Evol, Timeframe
from fdia.lang.parser import parse
from fdia.model.dataset import DatasetConfig
from fdia.model.flatpath import key_path
from fdia.model.ingest import ingest
from fdia.model.values import Value, ValueKind

from tests.conftest import ATTENUATION_SRC, FAILSENSOR_SRC, SENSOR_MESSAGE_JSON


def sensor_dataset(sensor_config, messages=None):
    text = SENSOR_MESSAGE_JSON if messages is None else json.dumps(messages)
    return ingest(text, sensor_config)


def scenario_context(source, dataset):
    return build_context(parse(source), dataset)


# -- evol and attenuation ---------------------------------------------------


@pytest.mark.parametrize(
    "evol,i,expected",
    [
        (Evol(0, 99999, 10), 0, 0),
        (Evol(0, 99999, 10), 3, 30),
        (Evol(5, 5, 10), 0, 5),
        (Evol(5, 5, 10), 7, 5),
        (Evol(0, 25, 10), 7, 25),
    ],
)
def test_evol_delta(evol, i, expected):
    assert evol_delta(evol, i) == expected


@pytest.mark.parametrize(
    "delta,distance,coefficient,expected",
    [
        (100, 0, 10, 100),
        (100, 5, 10, 50),
        (100, 50, 10, 0),
        (100, 500, 10, 0),
        (-100, 5, 10, -50),
        (100, 3, 0, 100),
    ],
)
def test_attenuate(delta, distance, coefficient, expected):
    assert attenuate(delta, distance, coefficient) == expected


# -- matching ----------------------------------------------------------------


def test_circle_selection_matches_own_location(sensor_config):
    dataset = sensor_dataset(sensor_config)
    ctx = scenario_context(ATTENUATION_SRC, dataset)
    action = parse(ATTENUATION_SRC).actions[0]
    assert matches(dataset.records[0], action.selection, action.timeframe, ctx)


def test_identifier_selection_misses_other_device(sensor_config):
    dataset = sensor_dataset(sensor_config)
    ctx = scenario_context(FAILSENSOR_SRC, dataset)
    action = parse(FAILSENSOR_SRC).actions[0]
    # this record's meter_code is "10", the scenario targets "521"
    assert not matches(dataset.records[0], action.selection, action.timeframe, ctx)


def test_timeframe_bounds_are_inclusive(sensor_config):
    msg = {"data": {"meter_code": "10", "timestamp": 10}}
    dataset = sensor_dataset(sensor_config, [msg])
    ctx = scenario_context('scenario "s"\ndelete things where a=1 from 0 to 1;', dataset)
    record = dataset.records[0]
    assert matches(record, None, Timeframe(10, 10), ctx)
    assert matches(record, None, Timeframe(0, 10), ctx)
    assert matches(record, None, Timeframe(10, 20), ctx)
    assert not matches(record, None, Timeframe(11, 20), ctx)
    assert not matches(record, None, Timeframe(0, 9), ctx)


def test_absolute_mode_offsets_from_first_record(sensor_config_dict):
    config = DatasetConfig.from_dict(
        {**sensor_config_dict, "timeframe_mode": "absolute"}
    )
    messages = [
        {"data": {"meter_code": "10", "timestamp": 1000 + 10 * i}} for i in range(5)
    ]
    dataset = ingest(json.dumps(messages), config)
    src = 'scenario "s"\ndelete things where meter_code = "10" from 0 to 20;'
    out, report = execute(parse(src), dataset)
    assert report.actions[0].deleted_records == 3  # offsets 0, 10, 20
    assert len(out.records) == 2


def test_missing_selection_field_is_a_non_match(sensor_config):
    dataset = sensor_dataset(sensor_config)
    ctx = scenario_context(FAILSENSOR_SRC, dataset)
    action = parse('scenario "s"\ndelete things where ghost = 1 from 0 to 999999999;').actions[0]
    assert not matches(dataset.records[0], action.selection, action.timeframe, ctx)


def test_unlocatable_record_fails_circle_selection(sensor_config):
    messages = [{"data": {"meter_code": "10", "timestamp": 5}}]
    dataset = sensor_dataset(sensor_config, messages)
    src = 'scenario "s"\ndelete things where location isInsideCircle(0.0,0.0,100000) from 0 to 9;'
    ctx = scenario_context(src, dataset)
    action = parse(src).actions[0]
    assert not matches(dataset.records[0], action.selection, action.timeframe, ctx)


def test_string_numeric_timestamps_participate_in_timeframes(sensor_config):
    messages = [{"data": {"meter_code": "10", "timestamp": "150"}}]
    dataset = sensor_dataset(sensor_config, messages)
    ctx = scenario_context(FAILSENSOR_SRC, dataset)
    assert matches(dataset.records[0], None, Timeframe(100, 200), ctx)
    assert not matches(dataset.records[0], None, Timeframe(200, 300), ctx)


# -- apply_alteration ---------------------------------------------------------


def test_assign_pins_value_and_leaves_the_rest(sensor_config):
    dataset = sensor_dataset(sensor_config)
    record = dataset.records[0]
    before = dict(record.properties)
    ctx = scenario_context(FAILSENSOR_SRC, dataset)
    criteria = parse(FAILSENSOR_SRC).actions[0].alteration
    changed, warnings = apply_alteration(record, criteria, ctx, 0)
    assert (changed, warnings) == (1, [])
    assert record.get(key_path("data", "temperatureTC")) == Value.integer(50)
    assert record.tampered and record.origin == 0
    untouched = {p: v for p, v in before.items() if p != key_path("data", "temperatureTC")}
    for path, value in untouched.items():
        assert record.get(path) == value


def test_assign_keeps_string_kind_for_numeric_strings(sensor_config):
    dataset = sensor_dataset(sensor_config)
    record = dataset.records[0]
    ctx = scenario_context(FAILSENSOR_SRC, dataset)
    criteria = parse(
        'scenario "s"\nalter things where a=1 set LAeq = 42 and meter_code = "99" from 0 to 1;'
    ).actions[0].alteration
    apply_alteration(record, criteria, ctx, 0)
    assert record.get(key_path("data", "LAeq")) == Value(ValueKind.STRING, "42")
    assert record.get(key_path("data", "meter_code")) == Value(ValueKind.STRING, "99")


def test_add_evol_composes_with_attenuation(sensor_config):
    dataset = sensor_dataset(sensor_config)
    record = dataset.records[0]
    ctx = scenario_context(ATTENUATION_SRC, dataset)
    criteria = parse(ATTENUATION_SRC).actions[0].alteration
    changed, _ = apply_alteration(record, criteria, ctx, 2)
    # delta = min(0 + 2*10, 99999) attenuated over zero distance = 20
    assert changed == 1
    assert record.get(key_path("data", "particles")) == Value.integer(18939 + 20)


def test_fully_attenuated_delta_leaves_no_tamper_mark(sensor_config):
    messages = [
        {
            "data": {
                "meter_code": "10",
                "humidity": 50,
                "location": "47.213865,5.981436",  # roughly 1 km east
                "timestamp": 100,
            }
        }
    ]
    dataset = sensor_dataset(sensor_config, messages)
    src = (
        'scenario "s"\ngeolocation (47.213865,5.968195)\n'
        "alter things where meter_code = \"10\" set humidity += (0.0->451.0,10.0) "
        "with attenuation of 10.0 from 0 to 999;"
    )
    ctx = scenario_context(src, dataset)
    record = dataset.records[0]
    changed, warnings = apply_alteration(record, parse(src).actions[0].alteration, ctx, 45)
    assert changed == 0 and warnings == []
    assert record.get(key_path("data", "humidity")) == Value.integer(50)
    assert not record.tampered


def test_arithmetic_on_non_numeric_warns_and_skips(sensor_config):
    dataset = sensor_dataset(sensor_config)
    record = dataset.records[0]
    ctx = scenario_context(FAILSENSOR_SRC, dataset)
    criteria = parse(
        'scenario "s"\nalter things where a=1 set meter_code += 5 and ghost *= 2 from 0 to 1;'
    ).actions[0].alteration
    changed, warnings = apply_alteration(record, criteria, ctx, 0)
    assert changed == 1  # meter_code "10" is numeric-coercible, "ghost" is missing
    assert record.get(key_path("data", "meter_code")) == Value(ValueKind.STRING, "15")
    assert len(warnings) == 1 and "ghost" in warnings[0]

    bad = parse(
        'scenario "s"\nalter things where a=1 set location += 5 from 0 to 1;'
    ).actions[0].alteration
    changed, warnings = apply_alteration(record, bad, ctx, 0)
    assert changed == 0
    assert len(warnings) == 1 and "location" in warnings[0]


def test_overflowing_arithmetic_warns_and_skips(sensor_config):
    messages = [{"data": {"meter_code": "10", "v": 1e308, "timestamp": 1}}]
    dataset = sensor_dataset(sensor_config, messages)
    record = dataset.records[0]
    src = 'scenario "s"\nalter things where meter_code="10" set v *= 10.0 from 0 to 9;'
    ctx = scenario_context(src, dataset)
    changed, warnings = apply_alteration(record, parse(src).actions[0].alteration, ctx, 0)
    assert changed == 0
    assert len(warnings) == 1 and "overflowed" in warnings[0]
    assert record.get(key_path("data", "v")).numeric == 1e308
    assert not record.tampered


def test_mul_const_rounds_back_into_integer_kind(sensor_config):
    dataset = sensor_dataset(sensor_config)
    record = dataset.records[0]
    ctx = scenario_context(FAILSENSOR_SRC, dataset)
    criteria = parse(
        'scenario "s"\nalter things where a=1 set particles *= 0.5 from 0 to 1;'
    ).actions[0].alteration
    apply_alteration(record, criteria, ctx, 0)
    # 18939 * 0.5 = 9469.5, round half to even
    assert record.get(key_path("data", "particles")) == Value.integer(9470)


# -- primitives ---------------------------------------------------------------


def device_month(sensor_config, devices=("10", "521"), slots=40):
    messages = []
    for slot in range(slots):
        for di, code in enumerate(devices):
            messages.append(
                {
                    "data": {
                        "meter_code": code,
                        "temperatureTC": 8.0 + slot % 5,
                        "timestamp": 622559700 + slot * 900,
                    }
                }
            )
    return ingest(json.dumps(messages), sensor_config)


def test_alter_pins_only_windowed_device(sensor_config):
    slots = 40
    window_src = (
        'scenario "failsensor"\nticker 2\n'
        'alter things where meter_code="521" set temperatureTC=50 '
        "from 622559700 to 622577700;"  # first 21 slots
    )
    dataset = device_month(sensor_config, slots=slots)
    out, report = execute(parse(window_src), dataset)
    t_path = key_path("data", "temperatureTC")
    hit = [
        r
        for r in out.records
        if r.get(key_path("data", "meter_code")).text() == "521"
        and r.timestamp(out.config) <= 622577700
    ]
    assert report.actions[0].matched == len(hit) == 21
    assert all(r.get(t_path) == Value.integer(50) for r in hit)
    assert all(r.tampered for r in hit)
    others = [r for r in out.records if r not in hit]
    assert all(r.get(t_path) != Value.integer(50) for r in others)
    assert not any(r.tampered for r in others)


def test_alter_matching_nothing_changes_nothing(sensor_config):
    dataset = device_month(sensor_config)
    src = 'scenario "s"\nalter things where meter_code="none" set t=1 from 0 to 999999999;'
    out, report = execute(parse(src), dataset)
    assert report.actions[0].matched == 0
    assert out == dataset


def test_delete_then_redelete_is_idempotent(sensor_config):
    dataset = device_month(sensor_config)
    before = len(dataset.records)
    src = 'scenario "s"\ndelete things where meter_code="521" from 0 to 999999999;'
    out, report = execute(parse(src), dataset)
    assert report.actions[0].deleted_records == before // 2
    assert len(out.records) == before // 2
    again, report2 = execute(parse(src), out)
    assert report2.actions[0].matched == 0
    assert len(again.records) == before // 2


def test_create_spaces_records_by_ticker(sensor_config):
    dataset = ingest("[]", sensor_config)
    src = (
        'scenario "s"\nticker 2\n'
        'create things set meter_code="99" and temperatureTC=(0->10,1) from 0 to 4;'
    )
    out, report = execute(parse(src), dataset)
    assert report.actions[0].created_records == 3
    stamps = [r.timestamp(out.config) for r in out.records]
    assert stamps == [0, 2, 4]
    temps = [r.get(key_path("temperatureTC")).numeric for r in out.records]
    assert temps == [0, 1, 2]
    assert all(r.tampered and r.origin == 0 for r in out.records)


def test_create_with_ticker_larger_than_window(sensor_config):
    dataset = ingest("[]", sensor_config)
    src = 'scenario "s"\nticker 10\ncreate things set meter_code="99" from 0 to 1;'
    out, report = execute(parse(src), dataset)
    assert report.actions[0].created_records == 1
    assert out.records[0].timestamp(out.config) == 0


def test_copy_clones_then_alters_only_clones(sensor_config):
    dataset = device_month(sensor_config, devices=("10",), slots=5)
    src = (
        'scenario "s"\ncopy things where meter_code="10" set meter_code="11" '
        "from 0 to 999999999;"
    )
    out, report = execute(parse(src), dataset)
    assert report.actions[0].matched == 5
    assert report.actions[0].copied_records == 5
    assert len(out.records) == 10
    originals = [r for r in out.records if r.get(key_path("data", "meter_code")).text() == "10"]
    clones = [r for r in out.records if r.get(key_path("data", "meter_code")).text() == "11"]
    assert len(originals) == 5 and len(clones) == 5
    assert not any(r.tampered for r in originals)
    assert all(r.tampered for r in clones)
    by_ts = {}
    for r in originals:
        by_ts[r.timestamp(out.config)] = r
    for clone in clones:
        twin = by_ts[clone.timestamp(out.config)]
        same = {p: v for p, v in twin.properties.items() if p != key_path("data", "meter_code")}
        for path, value in same.items():
            assert clone.get(path) == value


def test_copy_with_timestamp_shift_resorts(sensor_config):
    dataset = device_month(sensor_config, devices=("10",), slots=3)
    src = (
        'scenario "s"\ncopy things where meter_code="10" set timestamp += 450 '
        "from 0 to 999999999;"
    )
    out, _ = execute(parse(src), dataset)
    stamps = [r.timestamp(out.config) for r in out.records]
    assert stamps == sorted(stamps)
    assert len(stamps) == 6
    assert stamps[1] - stamps[0] == 450


def test_sequencing_delete_all_then_alter(sensor_config):
    dataset = device_month(sensor_config)
    src = (
        'scenario "s"\n'
        'delete things where meter_code="521" from 0 to 999999999;\n'
        'alter things where meter_code="521" set temperatureTC=50 from 0 to 999999999;\n'
    )
    out, report = execute(parse(src), dataset)
    assert report.actions[0].deleted_records > 0
    assert report.actions[1].matched == 0


def test_execute_rejects_invalid_scenarios(sensor_config):
    dataset = device_month(sensor_config)
    src = 'scenario "s"\ncreate things set t=1 from 0 to 4;'  # no ticker
    with pytest.raises(ScenarioInvalidError):
        execute(parse(src), dataset)


def test_execute_leaves_input_untouched_and_is_deterministic(sensor_config):
    dataset = device_month(sensor_config)
    snapshot = dataset.clone()
    src = 'scenario "s"\nalter things where meter_code="10" set temperatureTC=50 from 0 to 999999999;'
    out1, _ = execute(parse(src), dataset)
    out2, _ = execute(parse(src), dataset)
    assert dataset == snapshot
    assert out1 == out2


def test_altering_timestamps_resorts_dataset(sensor_config):
    dataset = device_month(sensor_config, devices=("10",), slots=4)
    src = (
        'scenario "s"\nalter things where timestamp = 622559700 '
        "set timestamp += 1800 from 0 to 999999999;"
    )
    out, _ = execute(parse(src), dataset)
    stamps = [r.timestamp(out.config) for r in out.records]
    assert stamps == sorted(stamps)


def test_user_functions_run_via_registry(sensor_config):
    from fdia.lang.registry import FunctionRegistry

    dataset = device_month(sensor_config, devices=("10",), slots=4)
    registry = FunctionRegistry()
    registry.register_selection(
        "is_even_slot",
        lambda record, args, ctx: record.timestamp(ctx.config) % 1800 == 0,
    )

    def double_temperature(record, args, ctx, index):
        path = key_path("data", "temperatureTC")
        old = record.get(path)
        record.properties[path] = Value.real(old.numeric * 2)
        return [path]

    registry.register_alteration("double_temperature", double_temperature)
    src = (
        'scenario "s"\nalter things where is_even_slot() '
        "set double_temperature() from 0 to 999999999;"
    )
    out, report = execute(parse(src), dataset, registry)
    assert report.actions[0].matched == 2
    assert report.actions[0].mutated_fields == 2
    touched = [r for r in out.records if r.tampered]
    assert len(touched) == 2
