"""Monte Carlo experiment presets and a deterministic CSV result harness.

Every cell of a sweep derives its random streams from (seed, cell, trial)
keys, so tables are bit-identical across repeat runs and across worker
counts. Sweep cells fan out to a thread pool; results are reduced in
submission order.
"""
from __future__ import annotations

import csv
import io
import itertools
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np

from . import __version__
from .geometry import EcefPoint, elevation_angle
from .inac_noma import (
    InfeasiblePowerError,
    Mode,
    PowerAllocation,
    aligned_link_gains,
    comm_nav_sinrs,
    LinkBudget,
    rate,
    required_power,
)
from .positioning import (
    Anchor,
    PdopUndefinedError,
    build_design_matrix,
    lsm_solve,
    pdop,
    position_error,
    simulate_pseudoranges,
)
from .scenario import (
    Placement,
    SatelliteConfig,
    Scenario,
    dbm_to_watts,
    default_scenario,
    with_users_at_ris_distance,
)
from .selection import npa_select, rsa_select

DEFAULT_SEED = 12345

KINDS = (
    "error_vs_pdop",
    "error_vs_num_sats",
    "power_vs_elements",
    "pdop_vs_direct_sats",
    "rate_vs_elements",
    "rate_vs_alloc_factor",
    "tradeoff_vs_distance",
)


class ExperimentError(ValueError):
    """Unknown preset or malformed experiment specification."""


@dataclass(frozen=True)
class ExperimentSpec:
    kind: str
    sweep: dict
    trials: int = 500
    seed: int = DEFAULT_SEED
    overrides: dict = field(default_factory=dict)
    raw: bool = False
    notes: str = ""

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise ExperimentError(f"unknown experiment kind {self.kind!r}")
        if self.trials < 1:
            raise ExperimentError("trials must be >= 1")
        if not self.sweep:
            raise ExperimentError("sweep must be nonempty")


@dataclass
class ResultTable:
    columns: list[str]
    rows: list[tuple]
    metadata: dict
    raw_columns: list[str] = field(default_factory=list)
    raw_rows: list[tuple] = field(default_factory=list)

    def to_csv(self) -> str:
        buf = io.StringIO()
        for key in sorted(self.metadata):
            buf.write(f"# {key}={self.metadata[key]}\r\n")
        writer = csv.writer(buf, lineterminator="\r\n")
        writer.writerow(self.columns)
        for row in self.rows:
            writer.writerow([_fmt(v) for v in row])
        return buf.getvalue()

    def raw_to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\r\n")
        writer.writerow(self.raw_columns)
        for row in self.raw_rows:
            writer.writerow([_fmt(v) for v in row])
        return buf.getvalue()

    def write(self, path: str) -> None:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(self.to_csv())
        if self.raw_rows:
            with open(_raw_path(path), "w", encoding="utf-8", newline="") as fh:
                fh.write(self.raw_to_csv())


def _raw_path(path: str) -> str:
    return path[:-4] + ".raw.csv" if path.endswith(".csv") else path + ".raw"


def _fmt(v) -> str:
    if isinstance(v, float):
        if math.isnan(v):
            return "nan"
        if math.isinf(v):
            return "inf"
        return repr(v)
    return str(v)


def _stderr(values: np.ndarray) -> float:
    if len(values) < 2:
        return 0.0
    return float(np.std(values, ddof=1) / np.sqrt(len(values)))


def _run_cells(cells, workers: int) -> list:
    if workers <= 1:
        return [c() for c in cells]
    with ThreadPoolExecutor(max_workers=workers) as ex:
        return list(ex.map(lambda c: c(), cells))


def indoor_initial_guess(sc: Scenario) -> EcefPoint:
    """One meter above the RIS along the geocentric radial; a receiver served
    through the RIS knows the surface position, which anchors the otherwise
    rank-deficient solve."""
    ris = sc.ris_position.as_array()
    return EcefPoint.from_array(ris + ris / np.linalg.norm(ris))


def _mc_position_cell(
    sc: Scenario,
    user_index: int,
    anchors: list[Anchor],
    sigma_ure_m: float,
    trials: int,
    seed_key: list[int],
    initial_guess: EcefPoint | None = None,
):
    """Monte Carlo positioning for one anchor set: per-trial error plus a
    representative PDoP (minimum-norm value when the geometry is singular)."""
    truth = sc.users[user_index].position
    guess = initial_guess if initial_guess is not None else EcefPoint(0.0, 0.0, 0.0)
    errors = np.empty(trials)
    degenerate = False
    pdop_value = math.nan
    for t in range(trials):
        rng = np.random.default_rng(seed_key + [t])
        obs = simulate_pseudoranges(sc, user_index, anchors, sigma_ure_m, rng)
        sol = lsm_solve(obs, initial_guess=guess)
        errors[t] = position_error(sol, truth)
        degenerate = degenerate or sol.degenerate
        if t == 0:
            if sol.pdop_defined:
                pdop_value = sol.pdop
            else:
                rows = build_design_matrix(obs, sol.estimate)
                pdop_value = pdop(rows, allow_degenerate=True)
    return errors, pdop_value, degenerate


def _anchor_label(anchors: list[Anchor]) -> str:
    return "+".join(
        ("r" if a.via_ris else "d") + str(a.satellite_id) for a in anchors
    )


# ---------------------------------------------------------------------------
# experiment kinds


def _run_error_vs_pdop(spec: ExperimentSpec, workers: int) -> ResultTable:
    sc = default_scenario()
    sigma = float(spec.sweep.get("sigma_ure_m", 5.0))
    combo_count = int(spec.sweep.get("indoor_combo_count", 12))
    out_idx = sc.user_index(Placement.OUTDOOR_REFLECT_SIDE)
    in_idx = sc.user_index(Placement.INDOOR_TRANSMIT_SIDE)

    cells = []
    labels = []
    direct = [Anchor.direct(i) for i in sorted(sc.visible_sets[out_idx])]
    for cell, cand in enumerate(sorted(sc.invisible_sets[out_idx])):
        anchors = direct + [Anchor.via(cand)]
        labels.append(("outdoor", _anchor_label(anchors)))
        cells.append(
            lambda a=anchors, c=cell: _mc_position_cell(
                sc, out_idx, a, sigma, spec.trials, [spec.seed, 0, c]
            )
        )
    all_combos = list(itertools.combinations(sorted(sc.invisible_sets[in_idx]), 4))
    step = max(1, len(all_combos) // combo_count)
    combos = all_combos[::step][:combo_count]
    guess = indoor_initial_guess(sc)
    for cell, combo in enumerate(combos):
        anchors = [Anchor.via(i) for i in combo]
        labels.append(("indoor", _anchor_label(anchors)))
        cells.append(
            lambda a=anchors, c=cell: _mc_position_cell(
                sc, in_idx, a, sigma, spec.trials, [spec.seed, 1, c], initial_guess=guess
            )
        )

    results = _run_cells(cells, workers)
    rows = []
    raw_rows = []
    for (user_kind, label), (errors, pdop_value, degen) in zip(labels, results):
        rows.append(
            (user_kind, label, pdop_value, float(np.mean(errors)), _stderr(errors), degen)
        )
        if spec.raw:
            raw_rows.extend(
                (user_kind, label, t, float(e)) for t, e in enumerate(errors)
            )
    table = ResultTable(
        columns=["user_kind", "anchors", "pdop", "mean_error_m", "stderr_m", "degenerate"],
        rows=rows,
        metadata=_metadata(spec, sigma_ure_m=sigma),
    )
    if spec.raw:
        table.raw_columns = ["user_kind", "anchors", "trial", "error_m"]
        table.raw_rows = raw_rows
    return table


def _run_error_vs_num_sats(spec: ExperimentSpec, workers: int) -> ResultTable:
    dist = float(spec.sweep.get("ris_user_distance_m", 5.0))
    sigma = float(spec.sweep.get("sigma_ure_m", 5.0))
    counts = list(spec.sweep.get("anchor_counts", range(4, 11)))
    base = with_users_at_ris_distance(default_scenario(), dist)
    out_idx = base.user_index(Placement.OUTDOOR_REFLECT_SIDE)
    in_idx = base.user_index(Placement.INDOOR_TRANSMIT_SIDE)
    all_ids = set(base.satellite_ids)
    guess = indoor_initial_guess(base)

    def cell(k: int):
        visible = frozenset(range(1, k))  # k-1 direct satellites
        invisible = frozenset(all_ids - visible)
        sc = replace(
            base,
            visible_sets=(visible, frozenset()),
            invisible_sets=(invisible, frozenset(all_ids)),
        )
        direct = [Anchor.direct(i) for i in sorted(visible)]
        npa_pick = npa_select(
            sc, out_idx, sigma_ure_m=sigma, seed=spec.seed + 97 * k
        ).selected
        out_npa = np.empty(spec.trials)
        out_rsa = np.empty(spec.trials)
        in_npa = np.empty(spec.trials)
        in_rsa = np.empty(spec.trials)
        indoor_first_k = [Anchor.via(i) for i in sorted(all_ids)[:k]]
        for t in range(spec.trials):
            pick_rng = np.random.default_rng([spec.seed, k, 1, t])
            rsa_pick = rsa_select(sorted(invisible), pick_rng).selected
            rsa_subset = sorted(
                pick_rng.choice(sorted(all_ids), size=k, replace=False).tolist()
            )
            for arr, anchors, uidx, g in (
                (out_npa, direct + [Anchor.via(npa_pick)], out_idx, None),
                (out_rsa, direct + [Anchor.via(rsa_pick)], out_idx, None),
                (in_npa, indoor_first_k, in_idx, guess),
                (in_rsa, [Anchor.via(i) for i in rsa_subset], in_idx, guess),
            ):
                noise_rng = np.random.default_rng([spec.seed, k, 2, t])
                obs = simulate_pseudoranges(sc, uidx, anchors, sigma, noise_rng)
                sol = lsm_solve(obs, initial_guess=g if g is not None else EcefPoint(0.0, 0.0, 0.0))
                arr[t] = position_error(sol, sc.users[uidx].position)
        return [
            (k, "npa", "outdoor", float(np.mean(out_npa)), _stderr(out_npa)),
            (k, "rsa", "outdoor", float(np.mean(out_rsa)), _stderr(out_rsa)),
            (k, "npa", "indoor", float(np.mean(in_npa)), _stderr(in_npa)),
            (k, "rsa", "indoor", float(np.mean(in_rsa)), _stderr(in_rsa)),
        ]

    results = _run_cells([lambda k=k: cell(k) for k in counts], workers)
    rows = [r for cell_rows in results for r in cell_rows]
    return ResultTable(
        columns=["num_anchors", "algo", "user_kind", "mean_error_m", "stderr_m"],
        rows=rows,
        metadata=_metadata(spec, sigma_ure_m=sigma, ris_user_distance_m=dist),
    )


def _fig5_allocations(omega_c: float, omega_n: float) -> dict[str, PowerAllocation]:
    """Published factor pairs are quoted with the larger factor on the
    communication signal; the CO-INAC branch swaps them so the mode ordering
    constraint holds."""
    return {
        "no-inac": PowerAllocation(omega_c, omega_n, Mode.NO_INAC, paper_literal=True),
        "co-inac": PowerAllocation(omega_n, omega_c, Mode.CO_INAC, paper_literal=True),
    }


def _run_power_vs_elements(spec: ExperimentSpec, workers: int) -> ResultTable:
    sc = with_users_at_ris_distance(
        default_scenario(), float(spec.sweep.get("ris_user_distance_m", 5.0))
    )
    n_list = list(spec.sweep.get("n_elements", (16, 32, 64, 128, 256)))
    r_nav, r_comm = spec.sweep.get("rate_thresholds", (1.0, 2.0))
    omega_c = float(spec.sweep.get("omega_c", 0.65))
    omega_n = float(spec.sweep.get("omega_n", 0.35))
    sat_id = int(spec.sweep.get("satellite_id", 1))
    allocations = _fig5_allocations(omega_c, omega_n)
    noise = sc.physics.noise_power_w

    def cell(n: int):
        reflect = np.empty(spec.trials)
        transmit = np.empty(spec.trials)
        for t in range(spec.trials):
            gains = aligned_link_gains(sc, sat_id, [spec.seed, t], n_elements=n)
            reflect[t] = gains.reflect
            transmit[t] = gains.transmit
        gain_comm = float(np.mean(reflect))  # outdoor user carries the comm demand
        gain_nav = float(np.mean(transmit))  # indoor user carries the nav demand
        rows = []
        for mode_name, alloc in allocations.items():
            for signal, gain, threshold in (
                ("nav", gain_nav, r_nav),
                ("comm", gain_comm, r_comm),
            ):
                try:
                    p = required_power(alloc, signal, threshold, gain, noise)
                except InfeasiblePowerError:
                    p = math.inf
                rows.append((n, mode_name, signal, p))
        return rows

    results = _run_cells([lambda n=n: cell(n) for n in n_list], workers)
    return ResultTable(
        columns=["n_elements", "mode", "signal", "power_w"],
        rows=[r for cell_rows in results for r in cell_rows],
        metadata=_metadata(
            spec,
            rate_threshold_nav=r_nav,
            rate_threshold_comm=r_comm,
            omega_c=omega_c,
            omega_n=omega_n,
        ),
    )


def _run_pdop_vs_direct_sats(spec: ExperimentSpec, workers: int) -> ResultTable:
    sc = default_scenario()
    counts = list(spec.sweep.get("direct_counts", range(3, 11)))
    out_idx = sc.user_index(Placement.OUTDOOR_REFLECT_SIDE)
    truth = sc.users[out_idx].position
    rng = np.random.default_rng([spec.seed])
    rows = []
    for k in counts:
        direct_ids = sorted(sc.satellite_ids)[:k]
        direct = [Anchor.direct(i) for i in direct_ids]
        obs = simulate_pseudoranges(sc, out_idx, direct, 0.0, rng)
        try:
            value = pdop(build_design_matrix(obs, truth))
            rows.append((k, "no_ris", value, True))
        except PdopUndefinedError:
            rows.append((k, "no_ris", math.nan, False))
        remaining = [i for i in sc.satellite_ids if i not in direct_ids]
        if remaining:
            best = math.inf
            for cand in remaining:
                obs_r = simulate_pseudoranges(
                    sc, out_idx, direct + [Anchor.via(cand)], 0.0, rng
                )
                try:
                    best = min(best, pdop(build_design_matrix(obs_r, truth)))
                except PdopUndefinedError:
                    continue
            if math.isfinite(best):
                rows.append((k, "with_ris", best, True))
            else:
                rows.append((k, "with_ris", math.nan, False))
    return ResultTable(
        columns=["num_direct", "variant", "pdop", "pdop_defined"],
        rows=rows,
        metadata=_metadata(spec),
    )


def _run_rate_vs_elements(spec: ExperimentSpec, workers: int) -> ResultTable:
    sc = with_users_at_ris_distance(
        default_scenario(), float(spec.sweep.get("ris_user_distance_m", 5.0))
    )
    n_list = list(spec.sweep.get("n_elements", (8, 16, 32, 64, 128, 256, 512, 1024, 2048, 4096)))
    omega_c = float(spec.sweep.get("omega_c", 0.8))
    omega_n = float(spec.sweep.get("omega_n", 0.2))
    sat_id = int(spec.sweep.get("satellite_id", 1))
    allocations = _fig5_allocations(omega_c, omega_n)
    noise = sc.physics.noise_power_w
    p = sc.satellite(sat_id).transmit_power_w

    def cell(n: int):
        per_mode = {name: (np.empty(spec.trials), np.empty(spec.trials)) for name in allocations}
        for t in range(spec.trials):
            gains = aligned_link_gains(sc, sat_id, [spec.seed, t], n_elements=n)
            for name, alloc in allocations.items():
                out_arr, in_arr = per_mode[name]
                for arr, g in ((out_arr, gains.reflect), (in_arr, gains.transmit)):
                    sinr_comm, _ = comm_nav_sinrs(LinkBudget(g, p, noise), alloc)
                    arr[t] = rate(sinr_comm)
        rows = []
        for name, (out_arr, in_arr) in per_mode.items():
            rows.append((n, name, "outdoor", float(np.mean(out_arr)), _stderr(out_arr)))
            rows.append((n, name, "indoor", float(np.mean(in_arr)), _stderr(in_arr)))
        return rows

    results = _run_cells([lambda n=n: cell(n) for n in n_list], workers)
    return ResultTable(
        columns=["n_elements", "mode", "user_kind", "mean_rate", "stderr"],
        rows=[r for cell_rows in results for r in cell_rows],
        metadata=_metadata(spec, omega_c=omega_c, omega_n=omega_n),
    )


def _run_rate_vs_alloc_factor(spec: ExperimentSpec, workers: int) -> ResultTable:
    sc = with_users_at_ris_distance(
        default_scenario(), float(spec.sweep.get("ris_user_distance_m", 5.0))
    )
    grid = list(spec.sweep.get("omega_c_grid", [round(0.05 * i, 2) for i in range(1, 20)]))
    n = int(spec.sweep.get("n_elements", 50))
    p = dbm_to_watts(float(spec.sweep.get("transmit_power_dbm", 46.0)))
    sat_id = int(spec.sweep.get("satellite_id", 1))
    noise = sc.physics.noise_power_w

    def cell(omega_c: float):
        omega_n = math.sqrt(1.0 - omega_c**2)
        allocs = {}
        if omega_c > omega_n:
            allocs["no-inac"] = PowerAllocation(omega_c, omega_n, Mode.NO_INAC)
        if omega_c < omega_n:
            allocs["co-inac"] = PowerAllocation(omega_c, omega_n, Mode.CO_INAC)
        acc = {
            (name, signal, kind): np.empty(spec.trials)
            for name in allocs
            for signal in ("comm", "nav")
            for kind in ("outdoor", "indoor")
        }
        for t in range(spec.trials):
            gains = aligned_link_gains(sc, sat_id, [spec.seed, t], n_elements=n)
            for name, alloc in allocs.items():
                for kind, g in (("outdoor", gains.reflect), ("indoor", gains.transmit)):
                    sinr_comm, sinr_nav = comm_nav_sinrs(LinkBudget(g, p, noise), alloc)
                    acc[(name, "comm", kind)][t] = rate(sinr_comm)
                    acc[(name, "nav", kind)][t] = rate(sinr_nav)
        return [
            (omega_c, name, signal, kind, float(np.mean(arr)), _stderr(arr))
            for (name, signal, kind), arr in acc.items()
        ]

    results = _run_cells([lambda w=w: cell(w) for w in grid], workers)
    return ResultTable(
        columns=["omega_c", "mode", "signal", "user_kind", "mean_rate", "stderr"],
        rows=[r for cell_rows in results for r in cell_rows],
        metadata=_metadata(spec, n_elements=n, transmit_power_w=p),
    )


def _perpendicular_unit(u: np.ndarray) -> np.ndarray:
    v = np.cross(u, np.array([0.0, 0.0, 1.0]))
    if np.linalg.norm(v) < 1e-9:
        v = np.cross(u, np.array([1.0, 0.0, 0.0]))
    return v / np.linalg.norm(v)


def _run_tradeoff_vs_distance(spec: ExperimentSpec, workers: int) -> ResultTable:
    base = default_scenario()
    angles = list(spec.sweep.get("angles_deg", range(5, 65, 5)))
    sigma = float(spec.sweep.get("sigma_ure_m", 5.0))
    radius = float(spec.sweep.get("orbit_radius_m", 2.656e7))
    out_idx = base.user_index(Placement.OUTDOOR_REFLECT_SIDE)
    ris = base.ris_position.as_array()
    u_hat = ris / np.linalg.norm(ris)
    v_hat = _perpendicular_unit(u_hat)
    nav_sats = base.satellites[:3]
    noise = base.physics.noise_power_w

    def cell(angle_deg: float):
        alpha = math.radians(angle_deg)
        pos = EcefPoint.from_array(radius * (math.cos(alpha) * u_hat + math.sin(alpha) * v_hat))
        inac = SatelliteConfig(position=pos)
        sc = replace(
            base,
            satellites=(*nav_sats, inac),
            visible_sets=(frozenset({1, 2, 3}), frozenset()),
            invisible_sets=(frozenset({4}), frozenset({1, 2, 3, 4})),
        )
        dist = sc.sat_ris_distance(4)
        elev = math.degrees(elevation_angle(sc.users[out_idx].position, pos))
        anchors = [Anchor.direct(i) for i in (1, 2, 3)] + [Anchor.via(4)]
        errors = np.empty(spec.trials)
        rates_sum = np.empty(spec.trials)
        p = inac.transmit_power_w
        for t in range(spec.trials):
            rng = np.random.default_rng([spec.seed, 0, t])
            obs = simulate_pseudoranges(sc, out_idx, anchors, sigma, rng)
            sol = lsm_solve(obs)
            errors[t] = position_error(sol, sc.users[out_idx].position)
            gains = aligned_link_gains(sc, 4, [spec.seed, 1, t])
            rates_sum[t] = rate(gains.reflect * p / noise) + rate(gains.transmit * p / noise)
        return (
            dist,
            elev,
            float(np.mean(errors)),
            _stderr(errors),
            float(np.mean(rates_sum)),
            _stderr(rates_sum),
        )

    results = _run_cells([lambda a=a: cell(a) for a in angles], workers)
    return ResultTable(
        columns=[
            "distance_m",
            "elevation_deg",
            "mean_error_m",
            "stderr_error",
            "mean_rate",
            "stderr_rate",
        ],
        rows=results,
        metadata=_metadata(spec, sigma_ure_m=sigma, orbit_radius_m=radius),
    )


def _metadata(spec: ExperimentSpec, **extra) -> dict:
    md = {
        "kind": spec.kind,
        "seed": spec.seed,
        "trials": spec.trials,
        "version": __version__,
    }
    if spec.notes:
        md["notes"] = spec.notes
    md.update(extra)
    return md


_RUNNERS = {
    "error_vs_pdop": _run_error_vs_pdop,
    "error_vs_num_sats": _run_error_vs_num_sats,
    "power_vs_elements": _run_power_vs_elements,
    "pdop_vs_direct_sats": _run_pdop_vs_direct_sats,
    "rate_vs_elements": _run_rate_vs_elements,
    "rate_vs_alloc_factor": _run_rate_vs_alloc_factor,
    "tradeoff_vs_distance": _run_tradeoff_vs_distance,
}


def run_experiment(spec: ExperimentSpec, workers: int = 1) -> ResultTable:
    """Execute one experiment; output is bit-identical for any worker count."""
    return _RUNNERS[spec.kind](spec, max(1, workers))


_PRESETS = {
    "fig3": lambda: ExperimentSpec(
        kind="error_vs_pdop",
        sweep={"sigma_ure_m": 5.0, "indoor_combo_count": 12},
        trials=500,
        notes=(
            "positioning error vs PDoP; outdoor = 3 direct + each NLoS candidate "
            "via RIS, indoor = sampled 4-subsets of NLoS satellites via RIS"
        ),
    ),
    "fig4": lambda: ExperimentSpec(
        kind="error_vs_num_sats",
        sweep={
            "sigma_ure_m": 5.0,
            "ris_user_distance_m": 5.0,
            "anchor_counts": list(range(4, 11)),
        },
        trials=500,
        notes="NPA vs RSA over anchor counts; users 5 m from the RIS",
    ),
    "fig5": lambda: ExperimentSpec(
        kind="power_vs_elements",
        sweep={
            "n_elements": [16, 32, 64, 128, 256],
            "rate_thresholds": (1.0, 2.0),
            "omega_c": 0.65,
            "omega_n": 0.35,
            "ris_user_distance_m": 5.0,
        },
        trials=200,
        notes="minimum transmit power vs element count; thresholds 1 and 2 bits",
    ),
    "fig6": lambda: ExperimentSpec(
        kind="pdop_vs_direct_sats",
        sweep={"direct_counts": list(range(3, 11))},
        trials=1,
        notes="PDoP vs direct satellite count, with and without the RIS",
    ),
    "fig7": lambda: ExperimentSpec(
        kind="rate_vs_elements",
        sweep={
            "n_elements": [8, 16, 32, 64, 128, 256, 512, 1024, 2048, 4096],
            "omega_c": 0.8,
            "omega_n": 0.2,
            "ris_user_distance_m": 5.0,
        },
        trials=1000,
        notes="ergodic communication rate vs element count, both modes",
    ),
    "fig8": lambda: ExperimentSpec(
        kind="rate_vs_alloc_factor",
        sweep={
            "omega_c_grid": [round(0.05 * i, 2) for i in range(1, 20)],
            "transmit_power_dbm": 46.0,
            "n_elements": 50,
            "ris_user_distance_m": 5.0,
        },
        trials=500,
        notes="ergodic rate vs allocation factor at 46 dBm, N = 50",
    ),
    "fig9": lambda: ExperimentSpec(
        kind="tradeoff_vs_distance",
        sweep={
            "angles_deg": list(range(5, 65, 5)),
            "sigma_ure_m": 5.0,
            "orbit_radius_m": 2.656e7,
        },
        trials=500,
        notes="positioning error and rate vs INAC satellite-RIS distance",
    ),
}

PRESET_NAMES = tuple(sorted(_PRESETS))


def preset(name: str, trials: int | None = None, seed: int | None = None) -> ExperimentSpec:
    """Named experiment spec with reference parameters baked in."""
    if name not in _PRESETS:
        raise ExperimentError(f"unknown preset {name!r}; choose from {PRESET_NAMES}")
    spec = _PRESETS[name]()
    if trials is not None:
        spec = replace(spec, trials=trials)
    if seed is not None:
        spec = replace(spec, seed=seed)
    return spec
