import numpy as np
import pytest

from gapdescent.game import (
    GameInputError,
    MixedStrategy,
    PayoffMatrix,
    StrategyProfile,
    best_responses,
    duality_gap,
    is_delta_ne,
    load_matrix_csv,
    load_matrix_json,
    normalize_payoffs,
    regret_col,
    regret_row,
    save_matrix_csv,
    save_matrix_json,
)
from gapdescent.direction import full_game_lp

from conftest import random_profile


def test_normalize_rescales():
    R = normalize_payoffs([[2.0, 0.0], [0.0, 2.0]])
    assert np.array_equal(R.entries, [[1.0, 0.0], [0.0, 1.0]])


def test_normalize_constant_matrix():
    R = normalize_payoffs([[5.0, 5.0], [5.0, 5.0]])
    assert np.array_equal(R.entries, [[0.5, 0.5], [0.5, 0.5]])


def test_normalize_identity_on_unit_range():
    R = normalize_payoffs([[1.0, 0.0], [0.0, 1.0]])
    assert np.array_equal(R.entries, [[1.0, 0.0], [0.0, 1.0]])


def test_normalize_rejects_non_finite():
    with pytest.raises(GameInputError):
        normalize_payoffs([[1.0, float("nan")], [0.0, 0.5]])


def test_payoff_matrix_rejects_out_of_range():
    with pytest.raises(GameInputError):
        PayoffMatrix(np.array([[1.5, 0.0], [0.0, 1.0]]))


def test_mixed_strategy_validation():
    with pytest.raises(GameInputError):
        MixedStrategy([0.5, -0.5, 1.0])
    with pytest.raises(GameInputError):
        MixedStrategy([0.6, 0.6])
    s = MixedStrategy([0.5 + 2e-7, 0.5])  # small drift renormalizes
    assert abs(s.probs.sum() - 1.0) < 1e-12


def test_duality_gap_pennies(pennies):
    ne = StrategyProfile.from_arrays([0.5, 0.5], [0.5, 0.5])
    assert duality_gap(pennies, ne) == pytest.approx(0.0, abs=1e-12)
    corner = StrategyProfile.pure_first(2, 2)
    assert duality_gap(pennies, corner) == pytest.approx(1.0)


def test_gap_zero_at_lp_equilibrium(rng):
    for _ in range(5):
        R = PayoffMatrix(rng.random((12, 12)))
        z = full_game_lp(R)
        assert duality_gap(R, z) <= 1e-8


def test_regrets_pennies(pennies):
    corner = StrategyProfile.pure_first(2, 2)
    assert regret_row(pennies, corner) == pytest.approx(0.0)
    assert regret_col(pennies, corner) == pytest.approx(1.0)


def test_regret_decomposition(rng):
    for _ in range(50):
        R = PayoffMatrix(rng.random((8, 11)))
        z = random_profile(rng, 8, 11)
        v = duality_gap(R, z)
        assert 0.0 <= v <= 2.0
        assert abs(regret_row(R, z) + regret_col(R, z) - v) <= 1e-12
        assert 0.0 <= regret_row(R, z) <= 1.0
        assert 0.0 <= regret_col(R, z) <= 1.0


def test_best_responses_pennies(pennies):
    e1 = MixedStrategy([1.0, 0.0])
    assert best_responses(pennies, "row", e1, 0.0).indices == (0,)
    assert best_responses(pennies, "row", e1, 1.0).indices == (0, 1)
    assert best_responses(pennies, "col", e1, 0.0).indices == (1,)


def test_best_response_monotonicity(rng):
    for _ in range(30):
        R = PayoffMatrix(rng.random((9, 9)))
        y = MixedStrategy(np.full(9, 1.0 / 9.0))
        r1, r2 = sorted(rng.random(2))
        small = set(best_responses(R, "row", y, r1).indices)
        large = set(best_responses(R, "row", y, r2).indices)
        assert small <= large


def test_best_responses_scale_invariant(rng):
    raw = rng.random((7, 7)) * 3.0 + 2.0
    R = normalize_payoffs(raw)
    y = MixedStrategy(np.full(7, 1.0 / 7.0))
    span = raw.max() - raw.min()
    raw_unit = PayoffMatrix((raw - raw.min()) / span)
    assert (
        best_responses(raw_unit, "row", y, 0.0).indices
        == best_responses(R, "row", y, 0.0).indices
    )


def test_is_delta_ne(pennies):
    ne = StrategyProfile.from_arrays([0.5, 0.5], [0.5, 0.5])
    assert is_delta_ne(pennies, ne, 0.0)
    corner = StrategyProfile.pure_first(2, 2)
    assert not is_delta_ne(pennies, corner, 0.5)


def test_gap_bound_implies_delta_ne(rng):
    for _ in range(30):
        R = PayoffMatrix(rng.random((6, 6)))
        z = random_profile(rng, 6, 6)
        delta = duality_gap(R, z)
        assert is_delta_ne(R, z, delta)


def test_convexity_of_gap(rng):
    R = PayoffMatrix(rng.random((20, 20)))
    for _ in range(1000):
        z1 = random_profile(rng, 20, 20)
        z2 = random_profile(rng, 20, 20)
        p = rng.random()
        mix = StrategyProfile.from_arrays(
            p * z1.row.probs + (1 - p) * z2.row.probs,
            p * z1.col.probs + (1 - p) * z2.col.probs,
        )
        bound = p * duality_gap(R, z1) + (1 - p) * duality_gap(R, z2)
        assert duality_gap(R, mix) <= bound + 1e-9


def test_dimension_mismatch_rejected(pennies):
    z = StrategyProfile.uniform(3, 2)
    with pytest.raises(GameInputError):
        duality_gap(pennies, z)


def test_matrix_csv_roundtrip(tmp_path, rng):
    R = PayoffMatrix(rng.random((5, 7)))
    path = tmp_path / "m.csv"
    save_matrix_csv(R, path)
    back = load_matrix_csv(path)
    assert np.array_equal(R.entries, back.entries)


def test_matrix_json_roundtrip(tmp_path, rng):
    R = PayoffMatrix(rng.random((4, 3)))
    path = tmp_path / "m.json"
    save_matrix_json(R, path)
    back = load_matrix_json(path)
    assert np.array_equal(R.entries, back.entries)


def test_ragged_csv_rejected(tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text("0.1,0.2\n0.3\n")
    with pytest.raises(GameInputError):
        load_matrix_csv(path)
