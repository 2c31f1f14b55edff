"""NOMA superposition link math for the two INAC operating modes.

NO-INAC decodes communication first (navigation is interference); CO-INAC
decodes navigation first. The first-decoded signal is interference limited,
with a hard SINR ceiling given by the power-allocation ratio.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .channel import large_scale_direct, large_scale_ris, sample_rician, sample_shadowed_rician
from .scenario import Placement, Scenario
from .star_ris import StarRisConfig, align_phases, build_cascade, effective_gain_reflect, effective_gain_transmit


class Mode(enum.Enum):
    NO_INAC = "no-inac"
    CO_INAC = "co-inac"


class AllocationError(ValueError):
    """Power allocation factors violate the mode's constraints."""


class InfeasiblePowerError(Exception):
    """No finite power meets a rate threshold: the SINR ceiling is too low."""

    def __init__(self, signal: str, ceiling: float, target: float):
        self.signal = signal
        self.ceiling = ceiling
        self.target = target
        super().__init__(
            f"{signal} signal infeasible: SINR ceiling {ceiling:.6g} <= target {target:.6g}"
        )


@dataclass(frozen=True)
class PowerAllocation:
    """Amplitude allocation factors (omega_c, omega_n) under a decode mode.

    Strict mode enforces omega_n^2 + omega_c^2 = 1; `paper_literal` skips the
    sum constraint so published factor pairs like (0.65, 0.35) can be applied
    verbatim. The mode ordering constraint always holds.
    """

    omega_c: float
    omega_n: float
    mode: Mode
    paper_literal: bool = False

    def __post_init__(self) -> None:
        if self.omega_c <= 0 or self.omega_n <= 0:
            raise AllocationError("allocation factors must be positive")
        if not self.paper_literal:
            if abs(self.omega_c**2 + self.omega_n**2 - 1.0) > 1e-9:
                raise AllocationError(
                    "omega_c^2 + omega_n^2 must equal 1 (set paper_literal to bypass)"
                )
        if self.mode is Mode.NO_INAC and not self.omega_c > self.omega_n:
            raise AllocationError("NO-INAC requires omega_c > omega_n")
        if self.mode is Mode.CO_INAC and not self.omega_c < self.omega_n:
            raise AllocationError("CO-INAC requires omega_c < omega_n")

    def swapped(self) -> "PowerAllocation":
        """Same factors under the opposite mode (comm/nav roles exchanged)."""
        other = Mode.CO_INAC if self.mode is Mode.NO_INAC else Mode.NO_INAC
        return PowerAllocation(
            omega_c=self.omega_n, omega_n=self.omega_c, mode=other, paper_literal=self.paper_literal
        )


@dataclass(frozen=True)
class LinkBudget:
    effective_gain: float  # |h_tilde|^2, linear; zero for fully blocked links
    transmit_power_w: float
    noise_power_w: float

    def __post_init__(self) -> None:
        if self.effective_gain < 0:
            raise ValueError("effective gain cannot be negative")
        if self.transmit_power_w <= 0 or self.noise_power_w <= 0:
            raise ValueError("transmit power and noise power must be positive")

    @property
    def snr(self) -> float:
        return self.effective_gain * self.transmit_power_w / self.noise_power_w


def sinr_no_inac(budget: LinkBudget, alloc: PowerAllocation) -> tuple[float, float]:
    """(SINR_comm, SINR_nav): comm decoded first against nav interference."""
    if alloc.mode is not Mode.NO_INAC:
        raise AllocationError("sinr_no_inac needs a NO-INAC allocation")
    gp = budget.effective_gain * budget.transmit_power_w
    sinr_comm = alloc.omega_c**2 * gp / (alloc.omega_n**2 * gp + budget.noise_power_w)
    sinr_nav = alloc.omega_n**2 * gp / budget.noise_power_w
    return sinr_comm, sinr_nav


def sinr_co_inac(budget: LinkBudget, alloc: PowerAllocation) -> tuple[float, float]:
    """(SINR_nav, SINR_comm): nav decoded first against comm interference."""
    if alloc.mode is not Mode.CO_INAC:
        raise AllocationError("sinr_co_inac needs a CO-INAC allocation")
    gp = budget.effective_gain * budget.transmit_power_w
    sinr_nav = alloc.omega_n**2 * gp / (alloc.omega_c**2 * gp + budget.noise_power_w)
    sinr_comm = alloc.omega_c**2 * gp / budget.noise_power_w
    return sinr_nav, sinr_comm


def comm_nav_sinrs(budget: LinkBudget, alloc: PowerAllocation) -> tuple[float, float]:
    """(SINR_comm, SINR_nav) regardless of mode."""
    if alloc.mode is Mode.NO_INAC:
        return sinr_no_inac(budget, alloc)
    nav, comm = sinr_co_inac(budget, alloc)
    return comm, nav


def rate(sinr: float) -> float:
    """Shannon rate log2(1 + SINR), bits/s/Hz."""
    if sinr < 0:
        raise ValueError(f"SINR must be nonnegative, got {sinr}")
    return math.log2(1.0 + sinr)


def rates(sinrs) -> tuple[float, ...]:
    return tuple(rate(s) for s in sinrs)


def required_power(
    alloc: PowerAllocation, signal: str, rate_threshold: float, gain: float, noise_power_w: float
) -> float:
    """Smallest power putting one signal at its rate threshold under the
    mode's SIC order. Raises InfeasiblePowerError for an unreachable ceiling."""
    if rate_threshold <= 0:
        raise ValueError("rate threshold must be positive")
    if gain <= 0:
        raise ValueError("effective gain must be positive")
    gamma = 2.0**rate_threshold - 1.0
    wc2, wn2 = alloc.omega_c**2, alloc.omega_n**2
    if alloc.mode is Mode.NO_INAC:
        if signal == "comm":  # interference limited
            margin = wc2 - gamma * wn2
            if margin <= 0:
                raise InfeasiblePowerError("comm", wc2 / wn2, gamma)
            return gamma * noise_power_w / (gain * margin)
        if signal == "nav":  # post-SIC
            return gamma * noise_power_w / (gain * wn2)
    else:
        if signal == "nav":  # interference limited
            margin = wn2 - gamma * wc2
            if margin <= 0:
                raise InfeasiblePowerError("nav", wn2 / wc2, gamma)
            return gamma * noise_power_w / (gain * margin)
        if signal == "comm":  # post-SIC
            return gamma * noise_power_w / (gain * wc2)
    raise ValueError(f"unknown signal {signal!r}")


def min_transmit_power(
    alloc: PowerAllocation,
    rate_thresholds: tuple[float, float],
    gain: float,
    noise_power_w: float,
) -> float:
    """Smallest power meeting both (nav, comm) rate thresholds."""
    r_nav, r_comm = rate_thresholds
    p_nav = required_power(alloc, "nav", r_nav, gain, noise_power_w)
    p_comm = required_power(alloc, "comm", r_comm, gain, noise_power_w)
    return max(p_nav, p_comm)


@dataclass(frozen=True)
class AlignedGains:
    """Co-phased effective gains toward the reflect- and transmit-side users."""

    reflect: float
    transmit: float


def aligned_link_gains(
    sc: Scenario,
    satellite_id: int,
    seed_key,
    n_elements: int | None = None,
) -> AlignedGains:
    """One channel draw with phase-aligned RIS configuration for one satellite.

    Each fading vector gets its own child stream keyed on (seed_key, slot),
    so evaluations at different element counts share the same per-trial seeds
    (common random numbers). The aligned gain sums N co-phased positive
    magnitudes, so it grows with n_elements trial by trial in practice.
    """
    n = n_elements if n_elements is not None else sc.ris.n_elements
    config = StarRisConfig.uniform(
        n,
        beta_reflect=float(np.asarray(sc.ris.beta_reflect).flat[0]),
        beta_transmit=float(np.asarray(sc.ris.beta_transmit).flat[0]),
        energy_conserving=sc.ris.energy_conserving,
    )
    key = list(seed_key)
    rngs = [np.random.default_rng(key + [slot]) for slot in range(4)]
    sr = sc.fading.shadowed_rician
    k = sc.fading.ris_user_rician_k
    h_sat_ris = sample_shadowed_rician(sr, rngs[0], size=n)
    g_reflect = sample_rician(k, rngs[1], size=n)
    g_transmit = sample_rician(k, rngs[2], size=n)
    h_direct = complex(sample_shadowed_rician(sr, rngs[3]))

    sat = sc.satellite(satellite_id)
    phys = sc.physics
    lam = phys.wavelength_m
    e_sr, e_su, e_ru = phys.pathloss_exponents
    d_ir = sc.sat_ris_distance(satellite_id)

    out_idx = sc.user_index(Placement.OUTDOOR_REFLECT_SIDE)
    in_idx = sc.user_index(Placement.INDOOR_TRANSMIT_SIDE)

    gain_reflect = 0.0
    if out_idx is not None:
        l_cascade = large_scale_ris(
            sat.transmit_gain, phys.rx_gain, lam, d_ir, sc.ris_user_distance(out_idx), (e_sr, e_ru)
        )
        direct_gain = h_direct
        if satellite_id in sc.invisible_sets[out_idx]:
            direct_gain = 0.0
        l_direct = large_scale_direct(
            sat.transmit_gain, lam, sc.sat_user_distance(satellite_id, out_idx), e_su
        )
        cascade = build_cascade(g_reflect, h_sat_ris)
        phases = align_phases(cascade)
        gain_reflect = effective_gain_reflect(
            cascade, config, l_cascade, direct_gain, l_direct, phases=phases
        )

    gain_transmit = 0.0
    if in_idx is not None:
        l_cascade = large_scale_ris(
            sat.transmit_gain, phys.rx_gain, lam, d_ir, sc.ris_user_distance(in_idx), (e_sr, e_ru)
        )
        cascade = build_cascade(g_transmit, h_sat_ris)
        phases = align_phases(cascade)
        gain_transmit = effective_gain_transmit(cascade, config, l_cascade, phases=phases)

    return AlignedGains(reflect=gain_reflect, transmit=gain_transmit)


@dataclass(frozen=True)
class ErgodicRates:
    """Monte Carlo mean communication rates with standard errors, bits/s/Hz."""

    outdoor_mean: float
    indoor_mean: float
    outdoor_stderr: float
    indoor_stderr: float


def ergodic_rate(
    sc: Scenario,
    alloc: PowerAllocation,
    satellite_id: int,
    trials: int,
    seed: int,
    n_elements: int | None = None,
    transmit_power_w: float | None = None,
) -> ErgodicRates:
    """Mean communication rate for the outdoor and indoor users with
    CPA-aligned phases re-drawn each trial."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    p = (
        transmit_power_w
        if transmit_power_w is not None
        else sc.satellite(satellite_id).transmit_power_w
    )
    noise = sc.physics.noise_power_w
    r_out = np.empty(trials)
    r_in = np.empty(trials)
    for t in range(trials):
        gains = aligned_link_gains(sc, satellite_id, [seed, t], n_elements=n_elements)
        for arr, g in ((r_out, gains.reflect), (r_in, gains.transmit)):
            budget = LinkBudget(g, p, noise)
            sinr_comm, _ = comm_nav_sinrs(budget, alloc)
            arr[t] = rate(sinr_comm)
    se = lambda a: float(np.std(a, ddof=1) / np.sqrt(trials)) if trials > 1 else 0.0
    return ErgodicRates(
        outdoor_mean=float(np.mean(r_out)),
        indoor_mean=float(np.mean(r_in)),
        outdoor_stderr=se(r_out),
        indoor_stderr=se(r_in),
    )
