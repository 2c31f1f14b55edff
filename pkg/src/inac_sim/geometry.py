"""ECEF geometry primitives: distances, line-of-sight rows, elevation angles."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

SPEED_OF_LIGHT = 299792458.0  # m/s


class DegenerateGeometryError(ValueError):
    """Two points coincide (or the user sits at the origin); no direction exists."""


@dataclass(frozen=True)
class EcefPoint:
    """A point in the Earth-centered Earth-fixed frame, in meters."""

    x: float
    y: float
    z: float

    def __post_init__(self) -> None:
        for v in (self.x, self.y, self.z):
            if not math.isfinite(v):
                raise ValueError(f"non-finite ECEF component: {v!r}")

    def as_array(self) -> np.ndarray:
        return np.array([self.x, self.y, self.z], dtype=float)

    @classmethod
    def from_array(cls, arr) -> "EcefPoint":
        return cls(float(arr[0]), float(arr[1]), float(arr[2]))


def distance(a: EcefPoint, b: EcefPoint) -> float:
    """Euclidean distance between two ECEF points, meters."""
    return float(np.linalg.norm(a.as_array() - b.as_array()))


def los_unit_row(
    anchor: EcefPoint, estimate: EcefPoint, clock_column: float = 1.0
) -> np.ndarray:
    """Unit direction from `estimate` toward `anchor`, plus the clock column.

    The first three components are (anchor - estimate) / ||anchor - estimate||;
    the fourth is `clock_column` (1.0 when the clock unknown is carried in
    meters, or the speed of light when carried in seconds).
    """
    delta = anchor.as_array() - estimate.as_array()
    norm = float(np.linalg.norm(delta))
    if norm == 0.0:
        raise DegenerateGeometryError("anchor coincides with the estimate")
    return np.concatenate([delta / norm, [clock_column]])


def elevation_angle(user: EcefPoint, sat: EcefPoint) -> float:
    """Elevation of the satellite above the user's local horizontal, radians.

    Local "up" is the geocentric radial at the user. Result lies in
    [-pi/2, pi/2].
    """
    up = user.as_array()
    up_norm = float(np.linalg.norm(up))
    if up_norm == 0.0:
        raise DegenerateGeometryError("user at the Earth center has no local up")
    los = sat.as_array() - up
    los_norm = float(np.linalg.norm(los))
    if los_norm == 0.0:
        raise DegenerateGeometryError("satellite coincides with the user")
    sin_el = float(np.dot(los, up)) / (los_norm * up_norm)
    return math.asin(max(-1.0, min(1.0, sin_el)))
