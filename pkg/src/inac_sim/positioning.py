"""Pseudo-range simulation, iterative least-squares positioning, and PDoP.

Via-RIS observations use the RIS as a virtual anchor: the satellite-RIS leg
is a known constant subtracted from the corrected pseudo-range, so only the
RIS-user segment is linearized. The clock unknown is carried in
range-equivalent meters by default (clock column 1); the literal
speed-of-light column is supported and yields identical PDoP.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numpy.random import Generator

from .geometry import DegenerateGeometryError, EcefPoint, distance, los_unit_row
from .scenario import Scenario

DEFAULT_EPSILON_M = 0.1
DEFAULT_MAX_ITERS = 2000
_COND_LIMIT = 1e6  # cond(A) threshold; cond(A^T A) = cond(A)^2 = 1e12


class PdopUndefinedError(Exception):
    """The normal matrix is singular; PDoP does not exist for this geometry."""


@dataclass(frozen=True)
class Anchor:
    """A positioning anchor: a satellite seen directly, or via the RIS."""

    satellite_id: int
    via_ris: bool = False

    @classmethod
    def direct(cls, satellite_id: int) -> "Anchor":
        return cls(satellite_id, via_ris=False)

    @classmethod
    def via(cls, satellite_id: int) -> "Anchor":
        return cls(satellite_id, via_ris=True)


@dataclass(frozen=True)
class PseudorangeObs:
    """One corrected pseudo-range against an effective anchor position.

    For via-RIS observations the anchor position is the RIS itself and
    `ris_leg_offset_m` carries the known satellite-RIS Euclidean distance.
    """

    anchor: Anchor
    anchor_position: EcefPoint
    rho_c_m: float
    ris_leg_offset_m: float = 0.0
    sigma_ure_m: float = 0.0

    def __post_init__(self) -> None:
        if self.rho_c_m <= 0:
            raise ValueError("corrected pseudo-range must be positive")
        if not self.anchor.via_ris and self.ris_leg_offset_m != 0.0:
            raise ValueError("direct observations carry no RIS leg offset")


@dataclass(frozen=True)
class PositionSolution:
    estimate: EcefPoint
    clock_m: float  # receiver clock bias in range-equivalent meters
    iterations: int
    converged: bool
    degenerate: bool
    pdop: float  # NaN when the geometry leaves PDoP undefined
    residual_norm_m: float

    @property
    def pdop_defined(self) -> bool:
        return math.isfinite(self.pdop)


def simulate_pseudoranges(
    sc: Scenario,
    user_index: int,
    anchors: list[Anchor],
    sigma_ure_m: float,
    rng: Generator,
) -> list[PseudorangeObs]:
    """Corrected pseudo-ranges: geometry + clock bias + Gaussian URE noise.

    Atmospheric and satellite-clock corrections are already applied (held at
    zero), so the only systematic term left is the receiver clock bias.
    """
    if not anchors:
        raise ValueError("at least one anchor is required")
    user = sc.users[user_index]
    clock_m = sc.physics.speed_of_light * user.clock_bias_s
    obs = []
    for anchor in anchors:
        sat = sc.satellite(anchor.satellite_id)
        noise = float(rng.normal(0.0, sigma_ure_m)) if sigma_ure_m > 0 else 0.0
        if anchor.via_ris:
            offset = distance(sat.position, sc.ris_position)
            rho = offset + distance(sc.ris_position, user.position) + clock_m + noise
            obs.append(
                PseudorangeObs(anchor, sc.ris_position, rho, offset, sigma_ure_m)
            )
        else:
            rho = distance(sat.position, user.position) + clock_m + noise
            obs.append(PseudorangeObs(anchor, sat.position, rho, 0.0, sigma_ure_m))
    return obs


def build_design_matrix(
    obs: list[PseudorangeObs], estimate: EcefPoint, clock_column: float = 1.0
) -> np.ndarray:
    """One row per observation: unit vector toward the effective anchor plus
    the clock column. Via-RIS rows point at the RIS."""
    return np.array(
        [los_unit_row(o.anchor_position, estimate, clock_column) for o in obs]
    )


def pdop(design: np.ndarray, allow_degenerate: bool = False) -> float:
    """sqrt of the position block trace of (A^T A)^{-1}.

    Invariant to the clock column scale. Raises PdopUndefinedError for a
    singular normal matrix unless `allow_degenerate`, in which case the
    minimum-norm pseudo-inverse value is returned.
    """
    a = np.asarray(design, dtype=float).copy()
    # The position block of (A^T A)^{-1} is invariant to the clock-column
    # scale, so equilibrate it before the rank check and inversion.
    clock_norm = np.linalg.norm(a[:, 3])
    if clock_norm > 0:
        a[:, 3] /= clock_norm
    singular = a.shape[0] < 4
    if not singular:
        s = np.linalg.svd(a, compute_uv=False)
        singular = s[-1] == 0.0 or s[0] / s[-1] > _COND_LIMIT
    if singular and not allow_degenerate:
        raise PdopUndefinedError(
            f"normal matrix singular for {a.shape[0]} rows; PDoP does not exist"
        )
    f = np.linalg.pinv(a.T @ a)
    return float(np.sqrt(f[0, 0] + f[1, 1] + f[2, 2]))


def _effective_ranges(obs: list[PseudorangeObs]) -> np.ndarray:
    """Known RIS-leg offsets subtracted up front, leaving anchor-user ranges.

    Subtracting the ~1e7 m satellite-RIS leg once (instead of inside every
    residual) keeps the iteration's rounding noise at the anchor-user range
    scale.
    """
    return np.array([o.rho_c_m - o.ris_leg_offset_m for o in obs])


def lsm_solve(
    obs: list[PseudorangeObs],
    initial_guess: EcefPoint = EcefPoint(0.0, 0.0, 0.0),
    epsilon_m: float = DEFAULT_EPSILON_M,
    max_iters: int = DEFAULT_MAX_ITERS,
    clock_column: float = 1.0,
) -> PositionSolution:
    """Iterative linearized least squares over (x, y, z, clock).

    Rank-deficient geometries (e.g. every anchor behind one RIS) fall back to
    the minimum-norm pseudo-inverse step and are flagged `degenerate`. Each
    Gauss-Newton step is damped by a backtracking line search on the residual
    norm, which keeps the iteration stable when an anchor sits within the
    noise scale of the user.
    """
    if not obs:
        raise ValueError("no observations to solve")
    estimate = initial_guess.as_array().copy()
    clock_q = 0.0  # clock unknown in units set by clock_column
    degenerate = False
    converged = False
    iterations = 0
    ranges = _effective_ranges(obs)
    anchor_positions = np.array([o.anchor_position.as_array() for o in obs])

    def residual_vector(est: np.ndarray, clk_q: float) -> np.ndarray:
        predicted = np.linalg.norm(anchor_positions - est, axis=1) + clk_q * clock_column
        return ranges - predicted

    for iterations in range(1, max_iters + 1):
        est_point = EcefPoint.from_array(estimate)
        try:
            rows = build_design_matrix(obs, est_point, clock_column)
        except DegenerateGeometryError:
            estimate += 1.0  # nudge off a coincident anchor
            continue
        residuals = residual_vector(estimate, clock_q)

        # Position partials carry the opposite sign of the stored LoS rows.
        jac = rows.copy()
        jac[:, :3] *= -1.0

        scaled = jac.copy()
        scaled[:, 3] /= np.linalg.norm(scaled[:, 3])
        s = np.linalg.svd(scaled, compute_uv=False)
        if jac.shape[0] < 4 or s[-1] == 0.0 or s[0] / s[-1] > _COND_LIMIT:
            degenerate = True
        correction, *_ = np.linalg.lstsq(jac, residuals, rcond=None)

        base_cost = float(np.linalg.norm(residuals))
        alpha = 1.0
        for _ in range(30):
            cand_est = estimate + alpha * correction[:3]
            cand_clk = clock_q + alpha * float(correction[3])
            if float(np.linalg.norm(residual_vector(cand_est, cand_clk))) <= base_cost:
                break
            alpha *= 0.5
        estimate = estimate + alpha * correction[:3]
        clock_q += alpha * float(correction[3])
        step = alpha * math.hypot(
            float(np.linalg.norm(correction[:3])), float(correction[3]) * clock_column
        )
        if step < epsilon_m:
            converged = True
            break

    est_point = EcefPoint.from_array(estimate)
    final_rows = build_design_matrix(obs, est_point, clock_column)
    try:
        final_pdop = pdop(final_rows)
    except PdopUndefinedError:
        final_pdop = math.nan
    clock_m = clock_q * clock_column
    residual_norm = float(np.linalg.norm(residual_vector(estimate, clock_q)))
    return PositionSolution(
        estimate=est_point,
        clock_m=clock_m,
        iterations=iterations,
        converged=converged,
        degenerate=degenerate,
        pdop=final_pdop,
        residual_norm_m=residual_norm,
    )


def position_error(solution: PositionSolution, truth: EcefPoint) -> float:
    """Euclidean distance between the estimate and the true position."""
    return distance(solution.estimate, truth)
