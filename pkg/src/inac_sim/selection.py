"""Satellite selection: PDoP-minimizing NPA, rate-maximizing CPA, random RSA.

Candidate evaluations use per-candidate (NPA) or per-trial (CPA) seed keys
derived from the master seed, so results are deterministic and CPA compares
candidates on common random numbers.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .inac_noma import PowerAllocation, aligned_link_gains, rate
from .positioning import (
    DEFAULT_EPSILON_M,
    DEFAULT_MAX_ITERS,
    Anchor,
    lsm_solve,
    simulate_pseudoranges,
)
from .scenario import Scenario


class NoFeasibleSelectionError(Exception):
    """Every candidate yields an undefined score."""


@dataclass(frozen=True)
class SelectionResult:
    selected: int
    score: float | None
    per_candidate: dict[int, float] = field(default_factory=dict)
    tie_broken: bool = False
    algorithm: str = ""


def npa_select(
    sc: Scenario,
    user_index: int,
    sigma_ure_m: float = 5.0,
    epsilon_m: float = DEFAULT_EPSILON_M,
    max_iters: int = DEFAULT_MAX_ITERS,
    seed: int = 0,
    candidates=None,
) -> SelectionResult:
    """Pick the NLoS satellite whose via-RIS anchor minimizes PDoP.

    Each candidate is appended to the user's direct anchors and run through
    the full LSM loop; PDoP is read at the converged linearization point.
    Ties break to the lowest satellite id.
    """
    visible = sorted(sc.visible_sets[user_index])
    cands = sorted(candidates) if candidates is not None else sorted(sc.invisible_sets[user_index])
    if not cands:
        raise NoFeasibleSelectionError("no NLoS candidates to select from")
    direct = [Anchor.direct(i) for i in visible]
    scores: dict[int, float] = {}
    best_id = None
    best = math.inf
    tie = False
    for cand in cands:
        rng = np.random.default_rng([seed, cand])
        obs = simulate_pseudoranges(
            sc, user_index, direct + [Anchor.via(cand)], sigma_ure_m, rng
        )
        sol = lsm_solve(obs, epsilon_m=epsilon_m, max_iters=max_iters)
        score = sol.pdop if sol.pdop_defined else math.inf
        scores[cand] = score
        if score < best:
            best, best_id, tie = score, cand, False
        elif score == best and best_id is not None:
            tie = True
    if best_id is None or not math.isfinite(best):
        raise NoFeasibleSelectionError("PDoP undefined for every candidate")
    return SelectionResult(best_id, best, scores, tie, "npa")


def cpa_rate(
    sc: Scenario, satellite_id: int, trials: int, seed: int, n_elements: int | None = None
) -> float:
    """Mean summed rate of the reflect- and transmit-side users with aligned
    phases, averaged over `trials` channel draws."""
    p = sc.satellite(satellite_id).transmit_power_w
    noise = sc.physics.noise_power_w
    total = np.empty(trials)
    for t in range(trials):
        gains = aligned_link_gains(sc, satellite_id, [seed, t], n_elements=n_elements)
        total[t] = rate(gains.reflect * p / noise) + rate(gains.transmit * p / noise)
    return float(np.mean(total))


def cpa_select(
    sc: Scenario,
    trials: int = 200,
    seed: int = 0,
    candidates=None,
    n_elements: int | None = None,
) -> SelectionResult:
    """Pick the INAC satellite maximizing the summed ergodic rate.

    All candidates share per-trial seed keys (paired comparison). Ties break
    to the lowest satellite id.
    """
    cands = sorted(candidates) if candidates is not None else list(sc.satellite_ids)
    if not cands:
        raise NoFeasibleSelectionError("no candidate INAC satellites")
    scores = {c: cpa_rate(sc, c, trials, seed, n_elements) for c in cands}
    best_id = None
    best = -math.inf
    tie = False
    for cand in cands:
        if scores[cand] > best:
            best, best_id, tie = scores[cand], cand, False
        elif scores[cand] == best:
            tie = True
    return SelectionResult(best_id, best, scores, tie, "cpa")


def rsa_select(candidates, rng: np.random.Generator) -> SelectionResult:
    """Uniform random pick among the candidates."""
    cands = sorted(candidates)
    if not cands:
        raise NoFeasibleSelectionError("no candidates for random selection")
    pick = int(cands[rng.integers(len(cands))])
    return SelectionResult(pick, None, {}, False, "rsa")
