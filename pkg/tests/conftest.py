"""Shared fixtures: canned scenarios and a canonical sensor message."""

from __future__ import annotations

import pytest

from fdia.model.dataset import DatasetConfig
from fdia.sample import sample_config_dict

# A sensor-failure attack: pin one device's temperature to 50 inside a
# two-week window.
FAILSENSOR_SRC = """scenario "failsensor"
ticker 2
alter things where meter_code="521" set temperatureTC=50 from 622732500 to 624066300;
"""

# A geospatial attack: every device within 500 m gets an evolving
# particle increase, attenuated by 10 per meter of distance.
ATTENUATION_SRC = """scenario "IncrementationAndAttenuation"
ticker 2
geolocation (47.213865,5.968195)
alter things where location isInsideCircle(47.213865,5.968195,500) set particles+=(0.0->99999.0,10.0) with attenuation of 10.0 from 0 to 999999999;
"""

# Declaration-plus-properties header written with explicit terminators.
HEADER_SNIPPET = """scenario "exampleScenario" ;
ticker 2 ;
geolocation (47.237829,6.0240539) ;
"""

# One environmental-sensor message; mixed types on purpose (LAeq and No2
# are numbers kept as strings by the emitting device).
SENSOR_MESSAGE_JSON = """{"data": {
      "meter_code": "10",
      "temperatureTC": 8.03,
      "HumidityRH": 94.77,
      "LAeq":"6500",
      "No2":"24",
      "noise":[0,2,23,26,44,33,22],
      "particles":18939,
      "location":"47.213865,5.968195",
      "timestamp": 637458300
    }
}
"""


@pytest.fixture
def sensor_config() -> DatasetConfig:
    return DatasetConfig.from_dict(sample_config_dict())


@pytest.fixture
def sensor_config_dict() -> dict:
    return sample_config_dict()
