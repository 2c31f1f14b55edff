"""Command line front end: simulate, position, select, experiment, scenario.

Every randomized subcommand prints its effective seed to standard error so
any run can be replayed. Exit codes: 0 success, 1 validation error, 2
infeasible or degenerate result (partial output is still written).
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys

import numpy as np

from . import __version__
from .experiments import DEFAULT_SEED, KINDS, PRESET_NAMES, ExperimentError, ExperimentSpec, indoor_initial_guess, preset, run_experiment
from .geometry import EcefPoint
from .inac_noma import AllocationError, InfeasiblePowerError, Mode, PowerAllocation, ergodic_rate
from .positioning import Anchor, lsm_solve, position_error, simulate_pseudoranges
from .scenario import Placement, ScenarioError, load_scenario
from .selection import NoFeasibleSelectionError, cpa_select, npa_select, rsa_select

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_DEGENERATE = 2


class _Parser(argparse.ArgumentParser):
    """argparse variant whose usage errors exit 1 (2 means degenerate here)."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_VALIDATION, f"{self.prog}: error: {message}\n")


def _effective_seed(args) -> int:
    if args.seed is not None:
        return args.seed
    env = os.environ.get("INAC_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError as exc:
            raise ScenarioError(f"INAC_SEED is not an integer: {env!r}") from exc
    return DEFAULT_SEED


def _announce_seed(seed: int) -> None:
    print(f"seed: {seed}", file=sys.stderr)


def _write_output(payload, out: str | None, columns=None, rows=None) -> None:
    """JSON to stdout by default; `.json`/`.csv` files by extension."""
    if out is None:
        json.dump(payload, sys.stdout, indent=2)
        sys.stdout.write("\n")
        return
    if out.endswith(".json"):
        with open(out, "w", encoding="utf-8") as fh:
            json.dump(payload, fh, indent=2)
            fh.write("\n")
        return
    if out.endswith(".csv"):
        if columns is None:
            raise ScenarioError("no tabular form for this result; use a .json path")
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\r\n")
        writer.writerow(columns)
        writer.writerows(rows)
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(buf.getvalue())
        return
    raise ScenarioError(f"unknown output extension on {out!r}; use .csv or .json")


def _parse_anchors(text: str) -> list[Anchor]:
    """'d1,d2,d3,r7' -> direct satellites 1-3 plus satellite 7 via the RIS."""
    anchors = []
    for token in text.split(","):
        token = token.strip().lower()
        if len(token) < 2 or token[0] not in "dr" or not token[1:].isdigit():
            raise ScenarioError(
                f"bad anchor token {token!r}: use d<sat_id> (direct) or r<sat_id> (via RIS)"
            )
        sat_id = int(token[1:])
        anchors.append(Anchor.via(sat_id) if token[0] == "r" else Anchor.direct(sat_id))
    if not anchors:
        raise ScenarioError("anchor list is empty")
    return anchors


_PLACEMENTS = {
    "outdoor": Placement.OUTDOOR_REFLECT_SIDE,
    "indoor": Placement.INDOOR_TRANSMIT_SIDE,
}


def _user_index(sc, name: str) -> int:
    idx = sc.user_index(_PLACEMENTS[name])
    if idx is None:
        raise ScenarioError(f"scenario has no {name} user")
    return idx


def _cmd_simulate(args) -> int:
    seed = _effective_seed(args)
    _announce_seed(seed)
    sc = load_scenario(args.config)
    mode = Mode(args.mode)
    omega_c, omega_n = args.omega_c, args.omega_n
    if omega_c is None or omega_n is None:
        omega_c, omega_n = (0.8, 0.6) if mode is Mode.NO_INAC else (0.6, 0.8)
    alloc = PowerAllocation(omega_c, omega_n, mode, paper_literal=args.paper_literal)
    result = ergodic_rate(
        sc,
        alloc,
        args.satellite,
        args.trials,
        seed,
        n_elements=args.elements,
        transmit_power_w=args.power_w,
    )
    payload = {
        "mode": mode.value,
        "omega_c": omega_c,
        "omega_n": omega_n,
        "satellite": args.satellite,
        "trials": args.trials,
        "seed": seed,
        "outdoor_rate": result.outdoor_mean,
        "outdoor_stderr": result.outdoor_stderr,
        "indoor_rate": result.indoor_mean,
        "indoor_stderr": result.indoor_stderr,
    }
    rows = [
        ("outdoor", result.outdoor_mean, result.outdoor_stderr),
        ("indoor", result.indoor_mean, result.indoor_stderr),
    ]
    _write_output(payload, args.out, ["user_kind", "mean_rate", "stderr"], rows)
    return EXIT_OK


def _cmd_position(args) -> int:
    seed = _effective_seed(args)
    _announce_seed(seed)
    sc = load_scenario(args.config)
    anchors = _parse_anchors(args.anchors)
    unknown = [a.satellite_id for a in anchors if a.satellite_id not in sc.satellite_ids]
    if unknown:
        raise ScenarioError(f"anchors reference unknown satellites: {unknown}")
    user_index = _user_index(sc, args.user)
    truth = sc.users[user_index].position
    guess = (
        indoor_initial_guess(sc)
        if all(a.via_ris for a in anchors)
        else EcefPoint(0.0, 0.0, 0.0)
    )
    rows = []
    any_degenerate = False
    for t in range(args.trials):
        rng = np.random.default_rng([seed, t])
        obs = simulate_pseudoranges(sc, user_index, anchors, args.sigma_ure, rng)
        sol = lsm_solve(
            obs, initial_guess=guess, epsilon_m=args.epsilon, max_iters=args.max_iters
        )
        any_degenerate = any_degenerate or sol.degenerate or not sol.pdop_defined
        rows.append(
            (
                t,
                repr(sol.estimate.x),
                repr(sol.estimate.y),
                repr(sol.estimate.z),
                repr(sol.clock_m),
                sol.iterations,
                sol.converged,
                "nan" if not sol.pdop_defined else repr(sol.pdop),
                repr(position_error(sol, truth)),
            )
        )
    columns = [
        "trial", "est_x", "est_y", "est_z", "clock_m", "iters", "converged", "pdop", "error_m",
    ]
    payload = {
        "columns": columns,
        "rows": rows,
        "seed": seed,
        "degenerate": any_degenerate,
    }
    _write_output(payload, args.out, columns, rows)
    if any_degenerate:
        print("warning: PDoP undefined or degenerate geometry", file=sys.stderr)
        return EXIT_DEGENERATE
    return EXIT_OK


def _cmd_select(args) -> int:
    seed = _effective_seed(args)
    _announce_seed(seed)
    sc = load_scenario(args.config)
    if args.algo == "npa":
        user_index = _user_index(sc, args.user)
        result = npa_select(
            sc, user_index, sigma_ure_m=args.sigma_ure, seed=seed
        )
    elif args.algo == "cpa":
        result = cpa_select(sc, trials=args.trials, seed=seed)
    else:
        user_index = _user_index(sc, args.user)
        candidates = sorted(sc.invisible_sets[user_index])
        result = rsa_select(candidates, np.random.default_rng([seed]))
    payload = {
        "algorithm": result.algorithm,
        "selected": result.selected,
        "score": result.score,
        "per_candidate": [
            {"satellite_id": sid, "score": score}
            for sid, score in sorted(result.per_candidate.items())
        ],
        "tie_broken": result.tie_broken,
        "seed": seed,
    }
    _write_output(payload, args.out)
    return EXIT_OK


def _cmd_experiment(args) -> int:
    seed = _effective_seed(args)
    _announce_seed(seed)
    if args.preset is not None:
        spec = preset(args.preset, trials=args.trials, seed=seed)
    else:
        spec = ExperimentSpec(
            kind=args.kind,
            sweep=json.loads(args.sweep) if args.sweep else {"default": True},
            trials=args.trials if args.trials is not None else 500,
            seed=seed,
        )
    if args.raw:
        from dataclasses import replace

        spec = replace(spec, raw=True)
    table = run_experiment(spec, workers=args.workers)
    if args.out:
        table.write(args.out)
    else:
        sys.stdout.write(table.to_csv())
    return EXIT_OK


def _cmd_scenario(args) -> int:
    if args.action != "validate":
        raise ScenarioError(f"unknown scenario action {args.action!r}")
    load_scenario(args.path)
    print(f"{args.path}: valid", file=sys.stderr)
    return EXIT_OK


def build_parser() -> _Parser:
    parser = _Parser(prog="inac", description=__doc__)
    parser.add_argument("--version", action="version", version=f"inac-sim {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--config", help="scenario JSON path (default: reference scenario)")
        p.add_argument("--seed", type=int, help=f"RNG seed (default {DEFAULT_SEED}, or INAC_SEED)")
        p.add_argument("--out", help="output path; .csv for tables, .json for single results")

    p = sub.add_parser("simulate", help="ergodic NOMA rates for both users")
    common(p)
    p.add_argument("--mode", choices=[m.value for m in Mode], default="no-inac",
                   help="SIC decode order")
    p.add_argument("--omega-c", type=float, help="communication amplitude factor (unitless)")
    p.add_argument("--omega-n", type=float, help="navigation amplitude factor (unitless)")
    p.add_argument("--paper-literal", action="store_true",
                   help="skip the omega_c^2 + omega_n^2 = 1 constraint")
    p.add_argument("--trials", type=int, default=500, help="Monte Carlo trials")
    p.add_argument("--satellite", type=int, default=1, help="INAC satellite id (1-based)")
    p.add_argument("--elements", type=int, help="override RIS element count")
    p.add_argument("--power-w", type=float, help="override transmit power, watts")
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser("position", help="Monte Carlo pseudo-range positioning")
    common(p)
    p.add_argument("--anchors", required=True,
                   help="comma list like d1,d2,d3,r7 (d=direct, r=via RIS; ids 1-based)")
    p.add_argument("--sigma-ure", type=float, default=5.0, help="range noise sigma, meters")
    p.add_argument("--epsilon", type=float, default=0.1, help="convergence step threshold, meters")
    p.add_argument("--max-iters", type=int, default=2000, help="iteration cap")
    p.add_argument("--trials", type=int, default=1, help="Monte Carlo trials")
    p.add_argument("--user", choices=sorted(_PLACEMENTS), default="outdoor",
                   help="which user to position")
    p.set_defaults(func=_cmd_position)

    p = sub.add_parser("select", help="satellite selection (NPA / CPA / RSA)")
    common(p)
    p.add_argument("--algo", choices=["npa", "cpa", "rsa"], required=True)
    p.add_argument("--mode", choices=[m.value for m in Mode], default="no-inac",
                   help="recorded for provenance; selection scores are mode-free")
    p.add_argument("--trials", type=int, default=200, help="CPA Monte Carlo trials")
    p.add_argument("--sigma-ure", type=float, default=5.0, help="NPA range noise sigma, meters")
    p.add_argument("--user", choices=sorted(_PLACEMENTS), default="outdoor",
                   help="user whose NLoS candidates are ranked")
    p.set_defaults(func=_cmd_select)

    p = sub.add_parser("experiment", help="run a Monte Carlo experiment preset")
    common(p)
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--preset", choices=PRESET_NAMES, help="named figure-style preset")
    group.add_argument("--kind", choices=KINDS, help="raw experiment kind")
    p.add_argument("--sweep", help="JSON sweep overrides for --kind")
    p.add_argument("--trials", type=int, help="override trial count")
    p.add_argument("--workers", type=int, default=os.cpu_count() or 1,
                   help="parallel sweep cells; output identical for any value")
    p.add_argument("--raw", action="store_true", help="also write per-trial rows (*.raw.csv)")
    p.set_defaults(func=_cmd_experiment)

    p = sub.add_parser("scenario", help="scenario file utilities")
    p.add_argument("action", choices=["validate"])
    p.add_argument("path", help="scenario JSON path")
    p.set_defaults(func=_cmd_scenario)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ScenarioError, AllocationError, ExperimentError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except (InfeasiblePowerError, NoFeasibleSelectionError) as exc:
        print(f"infeasible: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE


if __name__ == "__main__":
    sys.exit(main())
