"""World state: satellites, users, STAR-RIS, visibility sets, physics constants.

The default scenario reproduces the reference constellation used throughout
the experiments: ten MEO satellites, one STAR-RIS mounted on a building
window, one outdoor user on the reflect side of the surface and one indoor
user on the transmit side.
"""
from __future__ import annotations

import enum
import json
import math
from dataclasses import dataclass, field, replace

import numpy as np

from .geometry import SPEED_OF_LIGHT, EcefPoint, distance
from .star_ris import StarRisConfig


class ScenarioError(ValueError):
    """A scenario document violates an invariant."""


class Placement(enum.Enum):
    OUTDOOR_REFLECT_SIDE = "outdoor_reflect_side"
    INDOOR_TRANSMIT_SIDE = "indoor_transmit_side"


def db_to_linear(db: float) -> float:
    return 10.0 ** (db / 10.0)


def dbm_to_watts(dbm: float) -> float:
    return 10.0 ** ((dbm - 30.0) / 10.0)


@dataclass(frozen=True)
class PhysicsParams:
    """Carrier, bandwidth, antenna gains and path loss exponents.

    The receive gain applies at the RIS-assisted cascade; the noise power is
    thermal: -174 dBm/Hz + 10*log10(bandwidth).
    """

    carrier_frequency_hz: float = 1e9
    bandwidth_hz: float = 1e7
    rx_gain: float = 1000.0  # linear; 30 dB
    pathloss_exponents: tuple[float, float, float] = (2.0, 2.0, 2.2)
    speed_of_light: float = SPEED_OF_LIGHT

    def __post_init__(self) -> None:
        if self.carrier_frequency_hz <= 0 or self.bandwidth_hz <= 0:
            raise ScenarioError("carrier frequency and bandwidth must be positive")
        if any(e <= 0 for e in self.pathloss_exponents):
            raise ScenarioError("path loss exponents must be positive")

    @property
    def wavelength_m(self) -> float:
        return self.speed_of_light / self.carrier_frequency_hz

    @property
    def noise_power_w(self) -> float:
        noise_dbm = -174.0 + 10.0 * math.log10(self.bandwidth_hz)
        return dbm_to_watts(noise_dbm)


@dataclass(frozen=True)
class ShadowedRicianParams:
    """Shadowed Rician fading: half multipath power b, Nakagami shape m, LoS power omega."""

    b: float = 0.279
    m: float = 2.0
    omega: float = 0.251

    def __post_init__(self) -> None:
        if self.b <= 0 or self.m <= 0 or self.omega < 0:
            raise ScenarioError("shadowed Rician parameters must satisfy b>0, m>0, omega>=0")

    @property
    def mean_power(self) -> float:
        return 2.0 * self.b + self.omega


@dataclass(frozen=True)
class FadingParams:
    """Fading models for satellite legs (shadowed Rician) and RIS-user legs (Rician)."""

    shadowed_rician: ShadowedRicianParams = field(default_factory=ShadowedRicianParams)
    ris_user_rician_k: float = 10.0  # linear K-factor; not pinned by the channel model

    def __post_init__(self) -> None:
        if self.ris_user_rician_k < 0:
            raise ScenarioError("Rician K-factor must be nonnegative")


@dataclass(frozen=True)
class SatelliteConfig:
    position: EcefPoint
    transmit_power_w: float = 40.0
    antenna_count: int = 1  # informational; gains are collapsed to a scalar
    transmit_gain: float = 1000.0  # linear; 30 dB

    def __post_init__(self) -> None:
        if self.transmit_power_w <= 0:
            raise ScenarioError("satellite transmit power must be positive")
        if self.transmit_gain <= 0:
            raise ScenarioError("satellite transmit gain must be positive")


@dataclass(frozen=True)
class UserConfig:
    position: EcefPoint
    placement: Placement
    clock_bias_s: float = 0.0


@dataclass(frozen=True)
class Scenario:
    """Full world state. Satellite ids are 1-based everywhere."""

    satellites: tuple[SatelliteConfig, ...]
    users: tuple[UserConfig, ...]
    ris_position: EcefPoint
    ris: StarRisConfig
    visible_sets: tuple[frozenset[int], ...]
    invisible_sets: tuple[frozenset[int], ...]
    physics: PhysicsParams = field(default_factory=PhysicsParams)
    fading: FadingParams = field(default_factory=FadingParams)

    def __post_init__(self) -> None:
        if not self.satellites:
            raise ScenarioError("scenario needs at least one satellite")
        if not self.users:
            raise ScenarioError("scenario needs at least one user")
        if len(self.visible_sets) != len(self.users) or len(self.invisible_sets) != len(self.users):
            raise ScenarioError("one visible and one invisible set required per user")
        ids = set(self.satellite_ids)
        for u, (vis, invis) in enumerate(zip(self.visible_sets, self.invisible_sets)):
            if vis & invis:
                raise ScenarioError(
                    f"user {u}: visible and invisible sets overlap: {sorted(vis & invis)}"
                )
            if not (vis | invis) <= ids:
                raise ScenarioError(f"user {u}: visibility references unknown satellites")

    @property
    def satellite_ids(self) -> tuple[int, ...]:
        return tuple(range(1, len(self.satellites) + 1))

    def satellite(self, sat_id: int) -> SatelliteConfig:
        return self.satellites[sat_id - 1]

    def user_index(self, placement: Placement) -> int | None:
        for i, u in enumerate(self.users):
            if u.placement is placement:
                return i
        return None

    def sat_ris_distance(self, sat_id: int) -> float:
        return distance(self.satellite(sat_id).position, self.ris_position)

    def ris_user_distance(self, user_index: int) -> float:
        return distance(self.ris_position, self.users[user_index].position)

    def sat_user_distance(self, sat_id: int, user_index: int) -> float:
        return distance(self.satellite(sat_id).position, self.users[user_index].position)


# Reference constellation: STAR-RIS, one indoor and one outdoor user, ten
# MEO satellites. Coordinates in meters, ECEF.
RIS_POSITION = EcefPoint(2451473.43334794, 2940007.18127632, 5084877.94326077)
INDOOR_USER_POSITION = EcefPoint(2451523.43334794, 2940057.18127632, 5084857.94326077)
OUTDOOR_USER_POSITION = EcefPoint(2451423.43334794, 2939957.18127632, 5084827.94326077)
SATELLITE_POSITIONS = (
    EcefPoint(2384140.77986545, 26292387.6749704, -1752765.80294385),
    EcefPoint(-7688937.22670325, 13088957.6457098, 21791665.4813813),
    EcefPoint(7694983.70804847, -12857727.5493792, 22058611.9934355),
    EcefPoint(21593131.9113028, 14858836.7899355, -4809198.45852993),
    EcefPoint(14735759.3485476, 3642752.94843750, 21710269.2023414),
    EcefPoint(10822949.9268744, 17448224.4300194, 16861015.1148962),
    EcefPoint(22983405.0752494, -2550895.23789826, 13042468.3643485),
    EcefPoint(15960648.1354986, -4443134.15738840, 20811348.4358723),
    EcefPoint(23113652.8643512, 1123278.14965420, 6871538.15438270),
    EcefPoint(16937593.1345824, -14466934.1345798, -14539112.5683248),
)

# Visibility split for the defaults: the outdoor user sees satellites 1-3
# directly; the indoor user sees none. Configurable via the JSON document.
DEFAULT_OUTDOOR_VISIBLE = frozenset({1, 2, 3})


def default_scenario(n_elements: int = 50) -> Scenario:
    n_sats = len(SATELLITE_POSITIONS)
    all_ids = frozenset(range(1, n_sats + 1))
    return Scenario(
        satellites=tuple(SatelliteConfig(position=p) for p in SATELLITE_POSITIONS),
        users=(
            UserConfig(OUTDOOR_USER_POSITION, Placement.OUTDOOR_REFLECT_SIDE),
            UserConfig(INDOOR_USER_POSITION, Placement.INDOOR_TRANSMIT_SIDE),
        ),
        ris_position=RIS_POSITION,
        ris=StarRisConfig.uniform(n_elements),
        visible_sets=(DEFAULT_OUTDOOR_VISIBLE, frozenset()),
        invisible_sets=(all_ids - DEFAULT_OUTDOOR_VISIBLE, all_ids),
    )


def _point_from_dict(d: dict, where: str) -> EcefPoint:
    try:
        return EcefPoint(float(d["x"]), float(d["y"]), float(d["z"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise ScenarioError(f"bad coordinates in {where}: {exc}") from exc


def scenario_to_dict(sc: Scenario) -> dict:
    """Serialize to the JSON config schema (inverse of load_scenario)."""
    ris = sc.ris
    return {
        "satellites": [
            {
                "x": s.position.x,
                "y": s.position.y,
                "z": s.position.z,
                "power_w": s.transmit_power_w,
                "gain_db": 10.0 * math.log10(s.transmit_gain),
                "antenna_count": s.antenna_count,
            }
            for s in sc.satellites
        ],
        "users": [
            {
                "x": u.position.x,
                "y": u.position.y,
                "z": u.position.z,
                "placement": u.placement.value,
                "clock_bias_s": u.clock_bias_s,
            }
            for u in sc.users
        ],
        "ris": {
            "x": sc.ris_position.x,
            "y": sc.ris_position.y,
            "z": sc.ris_position.z,
            "n_elements": ris.n_elements,
            "beta_reflect": list(np.asarray(ris.beta_reflect)),
            "beta_transmit": list(np.asarray(ris.beta_transmit)),
            "theta_reflect": list(np.asarray(ris.theta_reflect)),
            "theta_transmit": list(np.asarray(ris.theta_transmit)),
            "energy_conserving": ris.energy_conserving,
        },
        "visibility": [
            {"visible": sorted(v), "invisible": sorted(n)}
            for v, n in zip(sc.visible_sets, sc.invisible_sets)
        ],
        "physics": {
            "carrier_frequency_hz": sc.physics.carrier_frequency_hz,
            "bandwidth_hz": sc.physics.bandwidth_hz,
            "rx_gain_db": 10.0 * math.log10(sc.physics.rx_gain),
            "pathloss_exponents": list(sc.physics.pathloss_exponents),
        },
        "fading": {
            "shadowed_rician": {
                "b": sc.fading.shadowed_rician.b,
                "m": sc.fading.shadowed_rician.m,
                "omega": sc.fading.shadowed_rician.omega,
            },
            "ris_user_rician_k": sc.fading.ris_user_rician_k,
        },
    }


def load_scenario(document=None) -> Scenario:
    """Build a Scenario from a JSON document (path, string, or dict).

    With no document the reference default scenario is returned. Documents
    may be partial: omitted sections fall back to the defaults.
    """
    if document is None:
        return default_scenario()
    if isinstance(document, (str, bytes)):
        text = document
        try:
            import os

            if isinstance(document, str) and os.path.exists(document):
                with open(document, "r", encoding="utf-8") as fh:
                    text = fh.read()
        except OSError as exc:
            raise ScenarioError(f"cannot read scenario file: {exc}") from exc
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ScenarioError(f"scenario document does not parse: {exc}") from exc
    elif isinstance(document, dict):
        doc = document
    else:
        raise ScenarioError(f"unsupported scenario document type: {type(document)!r}")

    base = default_scenario()

    satellites = base.satellites
    if "satellites" in doc:
        if not doc["satellites"]:
            raise ScenarioError("satellite list is empty")
        satellites = tuple(
            SatelliteConfig(
                position=_point_from_dict(d, f"satellites[{i}]"),
                transmit_power_w=float(d.get("power_w", 40.0)),
                antenna_count=int(d.get("antenna_count", 1)),
                transmit_gain=db_to_linear(float(d.get("gain_db", 30.0))),
            )
            for i, d in enumerate(doc["satellites"])
        )

    users = base.users
    if "users" in doc:
        users = tuple(
            UserConfig(
                position=_point_from_dict(d, f"users[{i}]"),
                placement=Placement(d.get("placement", "outdoor_reflect_side")),
                clock_bias_s=float(d.get("clock_bias_s", 0.0)),
            )
            for i, d in enumerate(doc["users"])
        )

    ris_position = base.ris_position
    ris = base.ris
    if "ris" in doc:
        d = doc["ris"]
        if d is None:
            raise ScenarioError("scenario is missing the RIS section")
        if not {"x", "y", "z"} <= set(d):
            raise ScenarioError("ris section must carry x, y, z coordinates")
        ris_position = _point_from_dict(d, "ris")
        ris = StarRisConfig.uniform(
            n_elements=int(d.get("n_elements", 50)),
            beta_reflect=d.get("beta_reflect", 0.5),
            beta_transmit=d.get("beta_transmit", 0.5),
            theta_reflect=d.get("theta_reflect", 0.0),
            theta_transmit=d.get("theta_transmit", 0.0),
            energy_conserving=bool(d.get("energy_conserving", False)),
        )

    all_ids = frozenset(range(1, len(satellites) + 1))
    if "visibility" in doc:
        vis_doc = doc["visibility"]
        if len(vis_doc) != len(users):
            raise ScenarioError("visibility must list one entry per user")
        visible = tuple(frozenset(int(i) for i in d.get("visible", [])) for d in vis_doc)
        invisible = tuple(
            frozenset(int(i) for i in d["invisible"])
            if "invisible" in d
            else all_ids - v
            for d, v in zip(vis_doc, visible)
        )
    elif len(users) == len(base.users) and len(satellites) == len(base.satellites):
        visible, invisible = base.visible_sets, base.invisible_sets
    else:
        visible = tuple(frozenset() for _ in users)
        invisible = tuple(all_ids for _ in users)

    physics = base.physics
    if "physics" in doc:
        d = doc["physics"]
        physics = PhysicsParams(
            carrier_frequency_hz=float(d.get("carrier_frequency_hz", 1e9)),
            bandwidth_hz=float(d.get("bandwidth_hz", 1e7)),
            rx_gain=db_to_linear(float(d.get("rx_gain_db", 30.0))),
            pathloss_exponents=tuple(
                float(e) for e in d.get("pathloss_exponents", (2.0, 2.0, 2.2))
            ),
        )

    fading = base.fading
    if "fading" in doc:
        d = doc["fading"]
        sr = d.get("shadowed_rician", {})
        fading = FadingParams(
            shadowed_rician=ShadowedRicianParams(
                b=float(sr.get("b", 0.279)),
                m=float(sr.get("m", 2.0)),
                omega=float(sr.get("omega", 0.251)),
            ),
            ris_user_rician_k=float(d.get("ris_user_rician_k", 10.0)),
        )

    return Scenario(
        satellites=satellites,
        users=users,
        ris_position=ris_position,
        ris=ris,
        visible_sets=visible,
        invisible_sets=invisible,
        physics=physics,
        fading=fading,
    )


def with_users_at_ris_distance(sc: Scenario, dist_m: float) -> Scenario:
    """Move every user along its RIS offset direction to `dist_m` meters."""
    if dist_m <= 0:
        raise ScenarioError("RIS-user distance must be positive")
    users = []
    ris = sc.ris_position.as_array()
    for u in sc.users:
        offset = u.position.as_array() - ris
        norm = np.linalg.norm(offset)
        if norm == 0.0:
            raise ScenarioError("user coincides with the RIS")
        users.append(replace(u, position=EcefPoint.from_array(ris + offset * dist_m / norm)))
    return replace(sc, users=tuple(users))
