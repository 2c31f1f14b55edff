"""Large-scale path loss and small-scale fading for direct and RIS-cascaded links.

Large-scale gains are pure geometry; small-scale gains are drawn from
explicit `numpy.random.Generator` streams so Monte Carlo trials stay
reproducible and can run concurrently.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.random import Generator

from .scenario import Scenario, ShadowedRicianParams


def large_scale_direct(tx_gain: float, wavelength_m: float, dist_m: float, exponent: float) -> float:
    """Free-space style gain G * (lambda / 4 pi)^e * d^-e.

    With exponent 2 this is the standard Friis factor.
    """
    if dist_m <= 0:
        raise ValueError(f"distance must be positive, got {dist_m}")
    return float(tx_gain * (wavelength_m / (4.0 * np.pi)) ** exponent * dist_m ** (-exponent))


def large_scale_ris(
    tx_gain: float,
    rx_gain: float,
    wavelength_m: float,
    dist_sat_ris_m: float,
    dist_ris_user_m: float,
    exponents: tuple[float, float],
) -> float:
    """Cascade gain: per-segment factors for satellite-RIS and RIS-user legs."""
    return large_scale_direct(tx_gain, wavelength_m, dist_sat_ris_m, exponents[0]) * large_scale_direct(
        rx_gain, wavelength_m, dist_ris_user_m, exponents[1]
    )


def sample_shadowed_rician(params: ShadowedRicianParams, rng: Generator, size=None):
    """Shadowed Rician gain: Nakagami(m, omega) LoS amplitude at a uniform
    phase plus a complex Gaussian of total power 2b, so E|h|^2 = 2b + omega."""
    los_amplitude = np.sqrt(rng.gamma(params.m, params.omega / params.m, size=size))
    phase = rng.uniform(0.0, 2.0 * np.pi, size=size)
    scatter = np.sqrt(params.b) * (
        rng.standard_normal(size=size) + 1j * rng.standard_normal(size=size)
    )
    return los_amplitude * np.exp(1j * phase) + scatter


def sample_rician(k_factor: float, rng: Generator, size=None):
    """Unit mean-square Rician gain; K=0 degenerates to Rayleigh."""
    if k_factor < 0:
        raise ValueError(f"Rician K-factor must be nonnegative, got {k_factor}")
    los = np.sqrt(k_factor / (k_factor + 1.0))
    scatter = np.sqrt(1.0 / (2.0 * (k_factor + 1.0))) * (
        rng.standard_normal(size=size) + 1j * rng.standard_normal(size=size)
    )
    return los + scatter


@dataclass(frozen=True)
class ChannelRealization:
    """One Monte Carlo draw of every small-scale gain plus the large-scale map.

    Shapes: h_direct (I, U) with exact zeros for blocked links; h_sat_ris
    (I, N); g_reflect / g_transmit (U, N); l_direct / l_cascade (I, U).
    """

    h_direct: np.ndarray
    h_sat_ris: np.ndarray
    g_reflect: np.ndarray
    g_transmit: np.ndarray
    l_direct: np.ndarray
    l_cascade: np.ndarray


def large_scale_maps(sc: Scenario) -> tuple[np.ndarray, np.ndarray]:
    """(I, U) arrays of direct and RIS-cascade large-scale gains."""
    phys = sc.physics
    lam = phys.wavelength_m
    e_sat_ris, e_sat_user, e_ris_user = phys.pathloss_exponents
    n_sats, n_users = len(sc.satellites), len(sc.users)
    l_direct = np.empty((n_sats, n_users))
    l_cascade = np.empty((n_sats, n_users))
    for i, sat_id in enumerate(sc.satellite_ids):
        sat = sc.satellite(sat_id)
        d_ir = sc.sat_ris_distance(sat_id)
        for u in range(n_users):
            l_direct[i, u] = large_scale_direct(
                sat.transmit_gain, lam, sc.sat_user_distance(sat_id, u), e_sat_user
            )
            l_cascade[i, u] = large_scale_ris(
                sat.transmit_gain,
                phys.rx_gain,
                lam,
                d_ir,
                sc.ris_user_distance(u),
                (e_sat_ris, e_ris_user),
            )
    return l_direct, l_cascade


def realize_channels(sc: Scenario, rng: Generator) -> ChannelRealization:
    """Draw every small-scale gain; blocked direct entries are exactly zero."""
    n_sats, n_users, n = len(sc.satellites), len(sc.users), sc.ris.n_elements
    sr = sc.fading.shadowed_rician
    h_direct = sample_shadowed_rician(sr, rng, size=(n_sats, n_users)).astype(complex)
    for u, invisible in enumerate(sc.invisible_sets):
        for sat_id in invisible:
            h_direct[sat_id - 1, u] = 0.0
    h_sat_ris = sample_shadowed_rician(sr, rng, size=(n_sats, n))
    k = sc.fading.ris_user_rician_k
    g_reflect = sample_rician(k, rng, size=(n_users, n))
    g_transmit = sample_rician(k, rng, size=(n_users, n))
    l_direct, l_cascade = large_scale_maps(sc)
    return ChannelRealization(
        h_direct=h_direct,
        h_sat_ris=h_sat_ris,
        g_reflect=g_reflect,
        g_transmit=g_transmit,
        l_direct=l_direct,
        l_cascade=l_cascade,
    )
