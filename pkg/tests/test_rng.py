import numpy as np
import pytest

from haarlab import RngStream


def test_same_stream_replays_identical_draws():
    a = RngStream(12345, 7).generator().standard_normal(64)
    b = RngStream(12345, 7).generator().standard_normal(64)
    assert np.array_equal(a, b)


def test_distinct_stream_indices_differ():
    a = RngStream(12345, 0).generator().standard_normal(64)
    b = RngStream(12345, 1).generator().standard_normal(64)
    assert not np.array_equal(a, b)


def test_distinct_seeds_differ():
    a = RngStream(1, 0).generator().standard_normal(16)
    b = RngStream(2, 0).generator().standard_normal(16)
    assert not np.array_equal(a, b)


def test_substream_matches_direct_construction():
    root = RngStream(99)
    assert root.substream(5) == RngStream(99, 5)


def test_substream_only_from_root():
    with pytest.raises(ValueError):
        RngStream(99, 3).substream(1)


@pytest.mark.parametrize("seed", [-1, 2**64])
def test_seed_must_fit_64_bits(seed):
    with pytest.raises(ValueError):
        RngStream(seed)


def test_stream_index_must_be_nonnegative():
    with pytest.raises(ValueError):
        RngStream(0, -1)


def test_streams_look_independent():
    # crude correlation check across neighbouring streams
    draws = np.stack([RngStream(5, i).generator().standard_normal(2000) for i in range(8)])
    corr = np.corrcoef(draws)
    off_diag = corr[~np.eye(8, dtype=bool)]
    assert np.max(np.abs(off_diag)) < 0.1
