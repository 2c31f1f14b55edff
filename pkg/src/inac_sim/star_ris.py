"""STAR-RIS configuration, phase alignment and effective end-to-end gains.

A STAR-RIS element splits the incident signal into a reflected and a
transmitted part with per-element amplitudes (beta_r, beta_t) and phases
(theta_r, theta_t). Energy conservation requires beta_r^2 + beta_t^2 = 1;
many published parameter sets instead use a literal 0.5/0.5 split, so the
constraint is only enforced when `energy_conserving` is set (in which case
the provided split is renormalized onto the constraint).
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

TWO_PI = 2.0 * np.pi


class RisConfigError(ValueError):
    """Invalid STAR-RIS amplitude/phase configuration."""


def _as_amplitude_array(value, n: int, name: str) -> np.ndarray:
    arr = np.broadcast_to(np.asarray(value, dtype=float), (n,)).copy()
    if np.any(arr <= 0.0) or np.any(arr > 1.0):
        raise RisConfigError(f"{name} must lie in (0, 1], got {value!r}")
    return arr


def _as_phase_array(value, n: int) -> np.ndarray:
    arr = np.broadcast_to(np.asarray(value, dtype=float), (n,)).copy()
    return np.mod(arr, TWO_PI)


@dataclass(frozen=True)
class StarRisConfig:
    """Element count plus per-element amplitude splits and phases."""

    n_elements: int
    beta_reflect: np.ndarray = field(repr=False)
    beta_transmit: np.ndarray = field(repr=False)
    theta_reflect: np.ndarray = field(repr=False)
    theta_transmit: np.ndarray = field(repr=False)
    energy_conserving: bool = False

    @classmethod
    def uniform(
        cls,
        n_elements: int,
        beta_reflect: float = 0.5,
        beta_transmit: float = 0.5,
        theta_reflect=0.0,
        theta_transmit=0.0,
        energy_conserving: bool = False,
    ) -> "StarRisConfig":
        if n_elements < 1:
            raise RisConfigError("n_elements must be >= 1")
        br = _as_amplitude_array(beta_reflect, n_elements, "beta_reflect")
        bt = _as_amplitude_array(beta_transmit, n_elements, "beta_transmit")
        if energy_conserving:
            scale = np.sqrt(br**2 + bt**2)
            br = br / scale
            bt = bt / scale
        return cls(
            n_elements=n_elements,
            beta_reflect=br,
            beta_transmit=bt,
            theta_reflect=_as_phase_array(theta_reflect, n_elements),
            theta_transmit=_as_phase_array(theta_transmit, n_elements),
            energy_conserving=energy_conserving,
        )

    def __post_init__(self) -> None:
        n = self.n_elements
        for name in ("beta_reflect", "beta_transmit", "theta_reflect", "theta_transmit"):
            arr = getattr(self, name)
            if np.asarray(arr).shape != (n,):
                raise RisConfigError(f"{name} must have shape ({n},)")
        if self.energy_conserving:
            residual = np.abs(self.beta_reflect**2 + self.beta_transmit**2 - 1.0)
            if np.any(residual > 1e-12):
                raise RisConfigError(
                    "energy-conserving config violates beta_r^2 + beta_t^2 = 1"
                )

    def with_phases(self, theta_reflect=None, theta_transmit=None) -> "StarRisConfig":
        return StarRisConfig(
            n_elements=self.n_elements,
            beta_reflect=self.beta_reflect,
            beta_transmit=self.beta_transmit,
            theta_reflect=(
                self.theta_reflect
                if theta_reflect is None
                else _as_phase_array(theta_reflect, self.n_elements)
            ),
            theta_transmit=(
                self.theta_transmit
                if theta_transmit is None
                else _as_phase_array(theta_transmit, self.n_elements)
            ),
            energy_conserving=self.energy_conserving,
        )


def build_cascade(g_u: np.ndarray, h_ri: np.ndarray) -> np.ndarray:
    """Elementwise cascade g_n * h_n of the RIS-user and satellite-RIS gains."""
    g = np.asarray(g_u)
    h = np.asarray(h_ri)
    if g.shape != h.shape:
        raise ValueError(f"cascade length mismatch: {g.shape} vs {h.shape}")
    return g * h


def align_phases(cascade: np.ndarray, theta_d: float = 0.0) -> np.ndarray:
    """Per-element phases that co-phase every cascade term at argument theta_d.

    Zero-magnitude entries get phase theta_d (their term vanishes anyway).
    """
    c = np.asarray(cascade)
    phases = theta_d - np.angle(c)
    phases = np.where(np.abs(c) == 0.0, theta_d, phases)
    return np.mod(phases, TWO_PI)


def _ris_sum(beta: np.ndarray, theta: np.ndarray, cascade: np.ndarray) -> complex:
    return complex(np.sum(beta * np.exp(1j * theta) * np.asarray(cascade)))


def effective_gain_reflect(
    cascade: np.ndarray,
    config: StarRisConfig,
    l_ris_user: float,
    h_direct: complex = 0.0,
    l_direct: float = 0.0,
    phases: np.ndarray | None = None,
) -> float:
    """Effective channel power |RIS reflect sum + direct term|^2.

    `phases` overrides the phases stored in `config` (e.g. after alignment).
    """
    theta = config.theta_reflect if phases is None else np.asarray(phases)
    term = _ris_sum(config.beta_reflect, theta, cascade) * np.sqrt(l_ris_user)
    term += h_direct * np.sqrt(l_direct)
    return float(np.abs(term) ** 2)


def effective_gain_transmit(
    cascade: np.ndarray,
    config: StarRisConfig,
    l_ris_user: float,
    phases: np.ndarray | None = None,
) -> float:
    """Effective channel power of the transmit-side RIS sum (no direct link)."""
    theta = config.theta_transmit if phases is None else np.asarray(phases)
    term = _ris_sum(config.beta_transmit, theta, cascade) * np.sqrt(l_ris_user)
    return float(np.abs(term) ** 2)
