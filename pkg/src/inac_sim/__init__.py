"""STAR-RIS-aided integrated navigation and communication simulator.

A numpy library plus a small CLI covering satellite downlink channel models,
NOMA superposition link math, pseudo-range positioning with RIS virtual
anchors, PDoP, satellite selection, and a deterministic Monte Carlo
experiment harness.
"""

__version__ = "0.1.0"

from .geometry import (
    SPEED_OF_LIGHT,
    DegenerateGeometryError,
    EcefPoint,
    distance,
    elevation_angle,
    los_unit_row,
)
from .scenario import (
    FadingParams,
    PhysicsParams,
    Placement,
    SatelliteConfig,
    Scenario,
    ScenarioError,
    ShadowedRicianParams,
    UserConfig,
    db_to_linear,
    dbm_to_watts,
    default_scenario,
    load_scenario,
    scenario_to_dict,
    with_users_at_ris_distance,
)
from .star_ris import (
    RisConfigError,
    StarRisConfig,
    align_phases,
    build_cascade,
    effective_gain_reflect,
    effective_gain_transmit,
)
from .channel import (
    ChannelRealization,
    large_scale_direct,
    large_scale_maps,
    large_scale_ris,
    realize_channels,
    sample_rician,
    sample_shadowed_rician,
)
from .inac_noma import (
    AllocationError,
    AlignedGains,
    ErgodicRates,
    InfeasiblePowerError,
    LinkBudget,
    Mode,
    PowerAllocation,
    aligned_link_gains,
    comm_nav_sinrs,
    ergodic_rate,
    min_transmit_power,
    rate,
    rates,
    required_power,
    sinr_co_inac,
    sinr_no_inac,
)
from .positioning import (
    DEFAULT_EPSILON_M,
    DEFAULT_MAX_ITERS,
    Anchor,
    PdopUndefinedError,
    PositionSolution,
    PseudorangeObs,
    build_design_matrix,
    lsm_solve,
    pdop,
    position_error,
    simulate_pseudoranges,
)
from .selection import (
    NoFeasibleSelectionError,
    SelectionResult,
    cpa_rate,
    cpa_select,
    npa_select,
    rsa_select,
)
from .experiments import (
    DEFAULT_SEED,
    KINDS,
    PRESET_NAMES,
    ExperimentError,
    ExperimentSpec,
    ResultTable,
    preset,
    run_experiment,
)

__all__ = [name for name in dir() if not name.startswith("_")]
