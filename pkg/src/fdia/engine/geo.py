"""Great-circle distance on the standard spherical Earth model."""

from __future__ import annotations

from math import asin, cos, radians, sin, sqrt

EARTH_RADIUS_M = 6_371_000.0


def haversine_m(lat1: float, lon1: float, lat2: float, lon2: float) -> float:
    """Distance in meters between two (lat, lon) points in degrees.

    Symmetric and non-negative; zero for identical points.
    """
    phi1 = radians(lat1)
    phi2 = radians(lat2)
    half_dphi = radians(lat2 - lat1) / 2.0
    half_dlambda = radians(lon2 - lon1) / 2.0
    a = sin(half_dphi) ** 2 + cos(phi1) * cos(phi2) * sin(half_dlambda) ** 2
    return 2.0 * EARTH_RADIUS_M * asin(min(1.0, sqrt(a)))
