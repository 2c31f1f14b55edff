import json

import pytest

from inac_sim.cli import main
from inac_sim.scenario import default_scenario, scenario_to_dict


def _write_scenario(tmp_path, mutate=None):
    doc = scenario_to_dict(default_scenario())
    if mutate:
        mutate(doc)
    path = tmp_path / "scenario.json"
    path.write_text(json.dumps(doc))
    return str(path)


def test_help_lists_subcommands(capsys):
    with pytest.raises(SystemExit):
        main(["--help"])
    out = capsys.readouterr().out
    for name in ("simulate", "position", "select", "experiment", "scenario"):
        assert name in out


def test_subcommand_help_lists_units(capsys):
    with pytest.raises(SystemExit):
        main(["position", "--help"])
    out = capsys.readouterr().out
    assert "meters" in out
    assert "--sigma-ure" in out and "--max-iters" in out and "--anchors" in out


def test_unknown_flag_exits_1(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["simulate", "--bogus"])
    assert exc.value.code == 1
    assert "usage" in capsys.readouterr().err


def test_experiment_preset_writes_csv(tmp_path, capsys):
    out = tmp_path / "fig5.csv"
    code = main(["experiment", "--preset", "fig5", "--trials", "5", "--out", str(out)])
    assert code == 0
    text = out.read_text()
    assert text.startswith("# kind=power_vs_elements")
    assert "n_elements,mode,signal,power_w" in text
    assert "seed: 12345" in capsys.readouterr().err


def test_experiment_worker_counts_identical(tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    main(["experiment", "--preset", "fig6", "--workers", "1", "--out", str(a)])
    main(["experiment", "--preset", "fig6", "--workers", "4", "--out", str(b)])
    assert a.read_bytes() == b.read_bytes()


def test_position_three_anchors_exits_2(tmp_path, capsys):
    out = tmp_path / "pos.csv"
    code = main(["position", "--anchors", "d1,d2,d3", "--sigma-ure", "0", "--out", str(out)])
    assert code == 2
    assert out.exists()  # partial output still written
    err = capsys.readouterr().err
    assert "PDoP" in err or "degenerate" in err


def test_position_four_anchors_ok(tmp_path):
    out = tmp_path / "pos.csv"
    code = main(
        ["position", "--anchors", "d1,d2,d3,d4", "--sigma-ure", "0", "--out", str(out)]
    )
    assert code == 0
    header, row = out.read_text().strip().split("\n")
    assert header.split(",")[:3] == ["trial", "est_x", "est_y"]
    assert row.split(",")[6] == "True"  # converged


def test_position_bad_anchor_token(capsys):
    assert main(["position", "--anchors", "x9"]) == 1
    assert "anchor" in capsys.readouterr().err


def test_scenario_validate_good(tmp_path, capsys):
    path = _write_scenario(tmp_path)
    assert main(["scenario", "validate", path]) == 0
    assert "valid" in capsys.readouterr().err


def test_scenario_validate_overlap_names_invariant(tmp_path, capsys):
    path = _write_scenario(
        tmp_path, lambda d: d["visibility"].__setitem__(0, {"visible": [1, 2], "invisible": [2]})
    )
    assert main(["scenario", "validate", path]) == 1
    assert "overlap" in capsys.readouterr().err


def test_select_json_output(tmp_path):
    out = tmp_path / "sel.json"
    code = main(["select", "--algo", "npa", "--seed", "3", "--out", str(out)])
    assert code == 0
    doc = json.loads(out.read_text())
    assert doc["algorithm"] == "npa"
    assert doc["selected"] in range(4, 11)
    assert len(doc["per_candidate"]) == 7


def test_select_rsa_deterministic(capsys):
    main(["select", "--algo", "rsa", "--seed", "5"])
    first = capsys.readouterr().out
    main(["select", "--algo", "rsa", "--seed", "5"])
    assert capsys.readouterr().out == first


def test_simulate_deterministic_given_seed(capsys):
    argv = ["simulate", "--trials", "5", "--seed", "8"]
    assert main(argv) == 0
    first = capsys.readouterr().out
    assert main(argv) == 0
    assert capsys.readouterr().out == first


def test_simulate_infeasible_allocation_exits_1(capsys):
    code = main(["simulate", "--omega-c", "0.3", "--omega-n", "0.6", "--trials", "1"])
    assert code == 1
    assert "omega" in capsys.readouterr().err


def test_seed_env_fallback(monkeypatch, capsys):
    monkeypatch.setenv("INAC_SEED", "777")
    main(["select", "--algo", "rsa"])
    assert "seed: 777" in capsys.readouterr().err


def test_explicit_seed_beats_env(monkeypatch, capsys):
    monkeypatch.setenv("INAC_SEED", "777")
    main(["select", "--algo", "rsa", "--seed", "9"])
    assert "seed: 9" in capsys.readouterr().err
