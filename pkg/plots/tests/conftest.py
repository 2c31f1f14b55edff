import pytest

from inac_sim.experiments import PRESET_NAMES, preset, run_experiment

# small trial counts: figures only need a plottable table, not tight statistics
_TRIALS = {
    "fig3": 10,
    "fig4": 5,
    "fig5": 10,
    "fig6": 1,
    "fig7": 10,
    "fig8": 10,
    "fig9": 10,
}


@pytest.fixture(scope="session")
def results_dir(tmp_path_factory):
    """A directory holding one small CSV per experiment preset."""
    path = tmp_path_factory.mktemp("results")
    for name in sorted(PRESET_NAMES):
        table = run_experiment(preset(name, trials=_TRIALS[name]), workers=4)
        table.write(str(path / f"{name}.csv"))
    return path
