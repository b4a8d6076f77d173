"""Great-circle distance against an independent formula."""

from __future__ import annotations

from math import acos, cos, radians, sin

from hypothesis import given
from hypothesis import strategies as st

from fdia.engine.geo import EARTH_RADIUS_M, haversine_m

# One degree of longitude along the equator, computed analytically:
# R * pi / 180.
ONE_DEGREE_EQUATOR_M = EARTH_RADIUS_M * radians(1.0)


def law_of_cosines_m(lat1, lon1, lat2, lon2) -> float:
    """Independent spherical distance (law of cosines form)."""
    phi1, phi2 = radians(lat1), radians(lat2)
    inner = sin(phi1) * sin(phi2) + cos(phi1) * cos(phi2) * cos(radians(lon2 - lon1))
    return EARTH_RADIUS_M * acos(max(-1.0, min(1.0, inner)))


def test_one_degree_on_the_equator():
    assert abs(haversine_m(0.0, 0.0, 0.0, 1.0) - ONE_DEGREE_EQUATOR_M) < 1.0
    assert abs(ONE_DEGREE_EQUATOR_M - 111_194.9266) < 0.001


def test_zero_distance_identity():
    assert haversine_m(47.213865, 5.968195, 47.213865, 5.968195) == 0.0


_lat = st.floats(min_value=-90, max_value=90, allow_nan=False)
_lon = st.floats(min_value=-180, max_value=180, allow_nan=False)


@given(lat1=_lat, lon1=_lon, lat2=_lat, lon2=_lon)
def test_symmetry_and_nonnegativity(lat1, lon1, lat2, lon2):
    d = haversine_m(lat1, lon1, lat2, lon2)
    assert d == haversine_m(lat2, lon2, lat1, lon1)
    assert d >= 0.0


@given(lat=_lat, lon=_lon)
def test_point_to_itself(lat, lon):
    assert haversine_m(lat, lon, lat, lon) == 0.0


@given(lat1=_lat, lon1=_lon, lat2=_lat, lon2=_lon)
def test_agrees_with_independent_formula(lat1, lon1, lat2, lon2):
    d = haversine_m(lat1, lon1, lat2, lon2)
    oracle = law_of_cosines_m(lat1, lon1, lat2, lon2)
    # the law-of-cosines form is ill-conditioned near antipodes; a meter
    # of slack is far beyond both formulas' true disagreement elsewhere
    assert abs(d - oracle) < 1.0
