"""Random game generators: determinism, ranges, rank structure."""

import numpy as np
import pytest

from gapdescent.game import GameInputError
from gapdescent.generators import GameSpec, generate


def test_same_spec_same_matrix():
    a = generate(GameSpec(family="uniform", rows=12, cols=9, seed=3))
    b = generate(GameSpec(family="uniform", rows=12, cols=9, seed=3))
    assert np.array_equal(a.entries, b.entries)


def test_seed_changes_matrix():
    a = generate(GameSpec(family="gaussian", rows=10, cols=10, seed=0))
    b = generate(GameSpec(family="gaussian", rows=10, cols=10, seed=1))
    assert not np.array_equal(a.entries, b.entries)


def test_families_draw_independent_streams():
    a = generate(GameSpec(family="uniform", rows=10, cols=10, seed=5))
    b = generate(GameSpec(family="gaussian", rows=10, cols=10, seed=5))
    assert not np.array_equal(a.entries, b.entries)


def test_uniform_range():
    R = generate(GameSpec(family="uniform", rows=40, cols=40, seed=2))
    assert R.entries.min() >= 0.0
    assert R.entries.max() < 1.0


@pytest.mark.parametrize(
    "spec",
    [
        GameSpec(family="gaussian", rows=30, cols=20, seed=4),
        GameSpec(family="lowrank", rows=25, cols=35, rank=5, seed=4),
    ],
)
def test_normalized_families_span_unit_interval(spec):
    R = generate(spec)
    assert R.entries.min() == pytest.approx(0.0, abs=1e-15)
    assert R.entries.max() == pytest.approx(1.0, abs=1e-15)


def test_lowrank_rank_bound():
    spec = GameSpec(family="lowrank", rows=50, cols=40, rank=4, seed=9)
    R = generate(spec)
    s = np.linalg.svd(R.entries, compute_uv=False)
    # The affine rescale into [0, 1] can add at most one to the factor rank.
    assert (s > 1e-10).sum() <= spec.rank + 1


def test_spec_json_roundtrip():
    spec = GameSpec(family="lowrank", rows=8, cols=7, rank=3, seed=11)
    assert GameSpec.from_json(spec.to_json()) == spec


def test_with_seed_replaces_only_seed():
    spec = GameSpec(family="uniform", rows=8, cols=7, seed=1)
    shifted = spec.with_seed(6)
    assert shifted.seed == 6
    assert (shifted.family, shifted.rows, shifted.cols) == ("uniform", 8, 7)


@pytest.mark.parametrize(
    "kwargs",
    [
        dict(family="cauchy", rows=5, cols=5, seed=0),
        dict(family="uniform", rows=0, cols=5, seed=0),
        dict(family="uniform", rows=5, cols=5, seed=-1),
        dict(family="lowrank", rows=5, cols=5, seed=0),
        dict(family="lowrank", rows=5, cols=5, rank=9, seed=0),
        dict(family="uniform", rows=5, cols=5, rank=2, seed=0),
    ],
)
def test_invalid_specs_rejected(kwargs):
    with pytest.raises(GameInputError):
        GameSpec(**kwargs)
