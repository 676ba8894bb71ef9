"""Meta-game analysis: heuristic payoff tables, replicator dynamics,
Nash equilibria via counterpart decomposition, and Hoeffding sample bounds."""

import os as _os
from pathlib import Path as _Path

# Point the fixture loader at the packaged data when nothing else is set.
_pkg_fixtures = _Path(__file__).resolve().parent / "data" / "fixtures"
if "EGTA_FIXTURES" not in _os.environ and _pkg_fixtures.is_dir():
    _os.environ["EGTA_FIXTURES"] = str(_pkg_fixtures)

from ._core import (  # noqa: F401,E402
    AsymmetricMetaTable,
    BimatrixGame,
    ConfidenceReport,
    DirectionalField,
    DiscreteProfile,
    EquilibriumCandidate,
    MetaPayoffTable,
    NormalFormGame,
    Trajectory,
    VectorField,
    batch_confidence,
    blotto_meta_table,
    build_from_bimatrix,
    build_symmetric_table,
    certify_two_epsilon,
    classify,
    counterpart_games,
    counterpart_nash_filter,
    directional_field,
    enumerate_profiles,
    estimate_game,
    expected_payoff,
    exploitability,
    fixture_bimatrix,
    fixture_game,
    fixture_table,
    fixtures_dir,
    integrate,
    is_symmetric,
    load_fixture,
    match_payoff,
    meta_expected_payoff,
    profile_probability,
    pure_equilibria,
    required_samples,
    single_population_equilibria,
    single_population_field,
    single_population_field_from_table,
    strategy_count,
    support_enumeration_2p,
    table_from_matrix,
    two_population_field,
    uniform_cell_count,
    uniform_confidence,
)

__version__ = "0.1.0"
