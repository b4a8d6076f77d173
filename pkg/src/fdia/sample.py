"""Deterministic synthetic environmental-sensor dataset generator.

Produces messages shaped like a city sensor fleet: per-device fixed
locations spread ~200 m apart, a 15-minute (900 timestamp units) send
cadence, a diurnal temperature curve, humidity, noise readings and
particle counts. Values are synthetic fixtures; only the schema and the
cadence mirror the real systems this tool targets.
"""

from __future__ import annotations

import json
import random
from math import cos, pi, radians, sin

from fdia.engine.geo import EARTH_RADIUS_M

# Midnight two days before the windows exercised by canned scenarios.
BASE_TIMESTAMP = 622_559_700
CADENCE = 900
SLOTS_PER_DAY = 96

ANCHOR_LAT = 47.213865
ANCHOR_LON = 5.968195
DEVICE_SPACING_M = 200.0

_KNOWN_CODES = ("500", "515", "521")


def meter_code(device: int) -> str:
    if device < len(_KNOWN_CODES):
        return _KNOWN_CODES[device]
    return str(522 + device - len(_KNOWN_CODES))


def device_location(device: int) -> tuple[float, float]:
    """Fixed position per device, stepping east from the anchor point."""
    meters_per_deg_lon = radians(1.0) * EARTH_RADIUS_M * cos(radians(ANCHOR_LAT))
    lon = ANCHOR_LON + device * DEVICE_SPACING_M / meters_per_deg_lon
    return ANCHOR_LAT, lon


def generate_sample(devices: int, days: int, seed: int) -> list[dict]:
    """Build the message list; identical arguments give identical output.

    Messages are emitted in send order (each 15-minute slot, every device
    in turn), which is already the canonical (timestamp, seq) dataset
    ordering, so ingest -> export reproduces the file byte for byte.
    """
    if devices < 1:
        raise ValueError("devices must be at least 1")
    if days < 1:
        raise ValueError("days must be at least 1")
    rng = random.Random(seed)
    codes = [meter_code(d) for d in range(devices)]
    locations = ["{:.6f},{:.6f}".format(*device_location(d)) for d in range(devices)]
    messages: list[dict] = []
    for slot in range(days * SLOTS_PER_DAY):
        timestamp = BASE_TIMESTAMP + slot * CADENCE
        day_phase = 2 * pi * ((timestamp % 86_400) / 86_400)
        for device in range(devices):
            temperature = round(
                10.0 + 8.0 * sin(day_phase - 2.0) + rng.uniform(-1.5, 1.5), 2
            )
            humidity = round(
                min(100.0, max(20.0, 75.0 + 15.0 * sin(day_phase + 1.0) + rng.uniform(-5.0, 5.0))),
                2,
            )
            laeq = str(4500 + rng.randrange(0, 2001))
            no2 = str(rng.randint(5, 80))
            noise = [rng.randint(0, 60) for _ in range(8)]
            particles = int(
                18_000 + 2_500 * sin(day_phase + 0.5) + rng.uniform(-1_500, 1_500)
            )
            messages.append(
                {
                    "data": {
                        "meter_code": codes[device],
                        "temperatureTC": temperature,
                        "HumidityRH": humidity,
                        "LAeq": laeq,
                        "No2": no2,
                        "noise": noise,
                        "particles": particles,
                        "location": locations[device],
                        "timestamp": timestamp,
                    }
                }
            )
    return messages


def render_sample(devices: int, days: int, seed: int) -> str:
    return json.dumps(generate_sample(devices, days, seed), indent=2) + "\n"


def sample_config_dict() -> dict:
    """The dataset configuration matching generate_sample's schema."""
    return {
        "identifier_field": "data.meter_code",
        "timestamp_field": "data.timestamp",
        "location_field": "data.location",
        "location_format": "latCommaLon",
        "timeframe_mode": "relative",
        "source_format": "json",
    }
