#!/usr/bin/env python3
"""Ergodic communication rate for both superposition-coding orders as the
STAR-RIS element count grows, for users 5 m from the surface."""

from inac_sim import (
    Mode,
    PowerAllocation,
    default_scenario,
    ergodic_rate,
    with_users_at_ris_distance,
)

sc = with_users_at_ris_distance(default_scenario(), 5.0)
allocs = {
    "NO-INAC": PowerAllocation(0.8, 0.2, Mode.NO_INAC, paper_literal=True),
    "CO-INAC": PowerAllocation(0.2, 0.8, Mode.CO_INAC, paper_literal=True),
}

print(f"{'N':>6}  {'mode':<8} {'outdoor rate':>13} {'indoor rate':>12}")
for n in (16, 64, 256, 1024):
    for name, alloc in allocs.items():
        r = ergodic_rate(sc, alloc, satellite_id=1, trials=100, seed=1, n_elements=n)
        print(f"{n:>6}  {name:<8} {r.outdoor_mean:>13.4f} {r.indoor_mean:>12.4f}")
