"""Counter-based random streams for reproducible simulation.

Scheme "philox4x64-v1": every stream is a numpy Philox generator keyed
by (master seed, realization index, role), so realizations can run in
any order or in parallel with identical results, and the channel stream
can be replayed on its own without touching the encoder stream.  Role 0
is the erasure channel (one draw of K uniforms per slot), role 1 is the
encoder (consumed only by schemes that randomize).
"""

from __future__ import annotations

import numpy as np

STREAM_SCHEME = "philox4x64-v1"

ROLE_CHANNEL = 0
ROLE_ENCODER = 1

_MASK64 = (1 << 64) - 1


def stream(seed: int, realization: int, role: int) -> np.random.Generator:
    if realization < 0:
        raise ValueError("realization index must be nonnegative")
    key = [seed & _MASK64, ((realization << 1) | role) & _MASK64]
    return np.random.Generator(np.random.Philox(key=key))


def channel_stream(seed: int, realization: int) -> np.random.Generator:
    return stream(seed, realization, ROLE_CHANNEL)


def encoder_stream(seed: int, realization: int) -> np.random.Generator:
    return stream(seed, realization, ROLE_ENCODER)


def erasure_draw(rng: np.random.Generator, n_users: int, erasure_prob: float) -> int:
    """One slot's reception bitmask: bit i set iff user i receives,
    independently with probability 1 - erasure_prob."""
    got = rng.random(n_users) < (1.0 - erasure_prob)
    mask = 0
    for i in range(n_users):
        if got[i]:
            mask |= 1 << i
    return mask
