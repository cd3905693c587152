"""Reproducible random number streams.

Every Monte Carlo replica in this package draws from its own stream,
identified by a (seed, stream_index) pair. Streams built from the same
pair replay the same draws; distinct stream indices give statistically
independent generators (numpy ``SeedSequence`` hashing), so ensembles can
be evaluated serially or in parallel with identical results.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = ["RngStream"]

_U64_MAX = 2**64 - 1


@dataclass(frozen=True)
class RngStream:
    """A named position in the package's reproducible randomness space."""

    seed: int
    stream_index: int = 0

    def __post_init__(self) -> None:
        if not 0 <= int(self.seed) <= _U64_MAX:
            raise ValueError(f"seed must be a 64-bit unsigned integer, got {self.seed}")
        if self.stream_index < 0:
            raise ValueError(f"stream_index must be nonnegative, got {self.stream_index}")

    def generator(self) -> np.random.Generator:
        """Fresh generator positioned at the start of this stream."""
        return np.random.default_rng(
            np.random.SeedSequence(entropy=int(self.seed), spawn_key=(int(self.stream_index),))
        )

    def substream(self, index: int) -> "RngStream":
        """Stream for replica `index` under this stream's seed."""
        if self.stream_index != 0:
            raise ValueError("substreams are only spawned from the root stream (stream_index 0)")
        return RngStream(self.seed, index)
