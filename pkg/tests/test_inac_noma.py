import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from inac_sim import (
    AllocationError,
    InfeasiblePowerError,
    LinkBudget,
    Mode,
    PowerAllocation,
    aligned_link_gains,
    comm_nav_sinrs,
    default_scenario,
    ergodic_rate,
    min_transmit_power,
    rate,
    rates,
    required_power,
    sinr_co_inac,
    sinr_no_inac,
    with_users_at_ris_distance,
)

SQ5 = math.sqrt(0.5)
NO = PowerAllocation(SQ5 + 1e-9, SQ5 - 1e-9, Mode.NO_INAC, paper_literal=True)


def _alloc(wc2, mode):
    return PowerAllocation(math.sqrt(wc2), math.sqrt(1.0 - wc2), mode)


def test_allocation_constraints():
    with pytest.raises(AllocationError):
        PowerAllocation(0.6, 0.8, Mode.NO_INAC)  # ordering violated
    with pytest.raises(AllocationError):
        PowerAllocation(0.8, 0.6, Mode.CO_INAC)
    with pytest.raises(AllocationError):
        PowerAllocation(0.65, 0.35, Mode.NO_INAC)  # sum constraint, strict mode
    PowerAllocation(0.65, 0.35, Mode.NO_INAC, paper_literal=True)
    with pytest.raises(AllocationError):
        PowerAllocation(-0.8, 0.6, Mode.NO_INAC)


def test_allocation_swapped():
    a = PowerAllocation(0.8, 0.6, Mode.NO_INAC)
    b = a.swapped()
    assert b.mode is Mode.CO_INAC and b.omega_c == 0.6 and b.omega_n == 0.8


def test_budget_validation():
    with pytest.raises(ValueError):
        LinkBudget(-1.0, 1.0, 1.0)
    with pytest.raises(ValueError):
        LinkBudget(1.0, 0.0, 1.0)
    assert LinkBudget(0.0, 1.0, 1.0).snr == 0.0  # blocked link is legal


def test_sinr_no_inac_blocked_link():
    assert sinr_no_inac(LinkBudget(0.0, 10.0, 1.0), _alloc(0.6, Mode.NO_INAC)) == (0.0, 0.0)


def test_sinr_no_inac_hand_substitution():
    # g p / sigma^2 = 1 with an even split: comm 1/3, nav 1/2
    budget = LinkBudget(1.0, 1.0, 1.0)
    # an exactly even split violates the strict ordering; nudge omega_c up
    alloc = PowerAllocation(SQ5 + 1e-12, SQ5, Mode.NO_INAC, paper_literal=True)
    sinr_comm, sinr_nav = sinr_no_inac(budget, alloc)
    assert sinr_comm == pytest.approx(1.0 / 3.0, rel=1e-9)
    assert sinr_nav == pytest.approx(0.5, rel=1e-9)


def test_sinr_co_inac_hand_substitution():
    # g p / sigma^2 = 1, omega_n^2 = 0.8: nav 0.8/1.2 = 2/3
    alloc = _alloc(0.2, Mode.CO_INAC)
    sinr_nav, sinr_comm = sinr_co_inac(LinkBudget(1.0, 1.0, 1.0), alloc)
    assert sinr_nav == pytest.approx(2.0 / 3.0, rel=1e-12)
    assert sinr_comm == pytest.approx(0.2, rel=1e-12)


def test_sinr_mode_mismatch():
    with pytest.raises(AllocationError):
        sinr_no_inac(LinkBudget(1, 1, 1), _alloc(0.2, Mode.CO_INAC))
    with pytest.raises(AllocationError):
        sinr_co_inac(LinkBudget(1, 1, 1), _alloc(0.8, Mode.NO_INAC))


@given(
    st.floats(min_value=0.05, max_value=0.45),
    st.floats(min_value=1e-3, max_value=1e9),
    st.floats(min_value=1e-12, max_value=1e3),
)
def test_swap_symmetry(wc2, p, gain):
    """CO-INAC with (wc, wn) equals NO-INAC with the factors swapped,
    outputs transposed."""
    co = _alloc(wc2, Mode.CO_INAC)
    no = _alloc(1.0 - wc2, Mode.NO_INAC)
    budget = LinkBudget(gain, p, 1e-2)
    nav_co, comm_co = sinr_co_inac(budget, co)
    comm_no, nav_no = sinr_no_inac(budget, no)
    assert nav_co == pytest.approx(comm_no, rel=1e-12)
    assert comm_co == pytest.approx(nav_no, rel=1e-12)


@given(
    st.floats(min_value=0.55, max_value=0.95),
    st.floats(min_value=1e-3, max_value=1e3),
    st.floats(min_value=1e-3, max_value=1e3),
)
def test_ceiling_holds_pathwise(wc2, p, gain):
    # g p / sigma^2 capped at ~1e6 so the strict gap stays representable
    alloc = _alloc(wc2, Mode.NO_INAC)
    comm, _ = sinr_no_inac(LinkBudget(gain, p, 1.0), alloc)
    assert rate(comm) < math.log2(1.0 + alloc.omega_c**2 / alloc.omega_n**2)
    co = alloc.swapped()
    nav, _ = sinr_co_inac(LinkBudget(gain, p, 1.0), co)
    assert rate(nav) < math.log2(1.0 + co.omega_n**2 / co.omega_c**2)


@given(
    st.floats(min_value=0.55, max_value=0.95),
    st.floats(min_value=1e-3, max_value=1e3),
    st.floats(min_value=1e-6, max_value=1e3),
)
def test_rates_monotone_in_power_and_gain(wc2, p, gain):
    alloc = _alloc(wc2, Mode.NO_INAC)
    lo = sinr_no_inac(LinkBudget(gain, p, 1.0), alloc)
    hi_p = sinr_no_inac(LinkBudget(gain, 2 * p, 1.0), alloc)
    hi_g = sinr_no_inac(LinkBudget(2 * gain, p, 1.0), alloc)
    for a, b in zip(lo, hi_p):
        assert rate(b) >= rate(a)
    for a, b in zip(lo, hi_g):
        assert rate(b) >= rate(a)


def test_rate_values():
    assert rate(0.0) == 0.0
    assert rate(1.0) == 1.0
    assert rate(3.0) == 2.0
    assert rates((0.0, 1.0, 3.0)) == (0.0, 1.0, 2.0)
    with pytest.raises(ValueError):
        rate(-0.5)


def test_required_power_nav_only_inversion():
    # gamma = 1, g = 1, sigma^2 = 1, omega_n^2 = 0.5 -> p = 2
    alloc = PowerAllocation(SQ5 + 1e-12, SQ5, Mode.NO_INAC, paper_literal=True)
    p = required_power(alloc, "nav", 1.0, 1.0, 1.0)
    assert p == pytest.approx(2.0, rel=1e-9)


def test_required_power_ceiling_equality_infeasible():
    # omega_c^2 / omega_n^2 = 4 exactly; SINR targets >= 4 are unreachable
    alloc = PowerAllocation(2.0, 1.0, Mode.NO_INAC, paper_literal=True)
    with pytest.raises(InfeasiblePowerError) as err:
        required_power(alloc, "comm", 3.0, 1.0, 1.0)  # gamma = 7
    assert err.value.ceiling == 4.0
    assert required_power(alloc, "comm", 2.0, 1.0, 1.0) > 0  # gamma = 3 feasible


def test_min_power_is_exact_infimum():
    alloc = _alloc(0.65**2 / (0.65**2 + 0.35**2), Mode.NO_INAC)
    gain, noise = 3e-13, 3.981e-14
    p = min_transmit_power(alloc, (1.0, 0.5), gain, noise)

    def meets(power):
        comm, nav = sinr_no_inac(LinkBudget(gain, power, noise), alloc)
        return rate(nav) >= 1.0 and rate(comm) >= 0.5

    assert meets(p * (1 + 1e-6))
    assert not meets(p * (1 - 1e-6))
    # binding threshold tight to 1e-9 rel
    comm, nav = sinr_no_inac(LinkBudget(gain, p, noise), alloc)
    slack = min(abs(rate(nav) - 1.0), abs(rate(comm) - 0.5))
    assert slack < 1e-9


def test_min_power_infeasible_exactly_at_ceiling():
    alloc = _alloc(0.55, Mode.NO_INAC)
    ceiling = alloc.omega_c**2 / alloc.omega_n**2
    r_at_ceiling = math.log2(1.0 + ceiling)
    with pytest.raises(InfeasiblePowerError):
        min_transmit_power(alloc, (0.1, r_at_ceiling), 1.0, 1.0)
    assert min_transmit_power(alloc, (0.1, r_at_ceiling * 0.99), 1.0, 1.0) > 0


def test_required_power_unknown_signal():
    with pytest.raises(ValueError):
        required_power(_alloc(0.8, Mode.NO_INAC), "bogus", 1.0, 1.0, 1.0)


def test_ergodic_rate_deterministic():
    sc = default_scenario(n_elements=16)
    a = ergodic_rate(sc, NO, 1, trials=3, seed=11)
    b = ergodic_rate(sc, NO, 1, trials=3, seed=11)
    assert a == b


def test_ergodic_rate_monotone_in_elements():
    # paired seeds: the 32-element draws extend the 16-element draws
    sc = with_users_at_ris_distance(default_scenario(), 5.0)
    lo = ergodic_rate(sc, NO, 1, trials=20, seed=5, n_elements=16)
    hi = ergodic_rate(sc, NO, 1, trials=20, seed=5, n_elements=32)
    assert hi.indoor_mean > lo.indoor_mean
    assert hi.outdoor_mean > lo.outdoor_mean


def test_ergodic_rate_respects_ceiling_every_trial():
    sc = with_users_at_ris_distance(default_scenario(), 5.0)
    alloc = PowerAllocation(0.8, 0.2, Mode.NO_INAC, paper_literal=True)
    ceiling = math.log2(1.0 + alloc.omega_c**2 / alloc.omega_n**2)
    for t in range(50):
        gains = aligned_link_gains(sc, 1, [3, t], n_elements=256)
        for g in (gains.reflect, gains.transmit):
            comm, _ = comm_nav_sinrs(LinkBudget(g, 1e6, 3.981e-14), alloc)
            assert rate(comm) < ceiling


def test_aligned_gains_blocked_direct_term():
    sc = default_scenario(n_elements=8)
    # satellite 1 is directly visible to the outdoor user; satellite 4 is not
    seen = aligned_link_gains(sc, 1, [0, 0])
    blocked = aligned_link_gains(sc, 4, [0, 0])
    assert seen.reflect > 0 and blocked.reflect > 0
    assert seen.transmit > 0 and blocked.transmit > 0


def test_aligned_gains_pathwise_prefix_monotone():
    sc = default_scenario()
    for t in range(10):
        g16 = aligned_link_gains(sc, 1, [9, t], n_elements=16)
        g64 = aligned_link_gains(sc, 1, [9, t], n_elements=64)
        assert g64.transmit > g16.transmit
