"""Named, order-independent random streams derived from one master seed.

Every consumer (env, each agent, eval, ...) owns a stream keyed by name, so
running or skipping one consumer never shifts another's randomness.
"""

from __future__ import annotations

import zlib

import numpy as np


def named_stream(master_seed: int, name: str) -> np.random.Generator:
    """Derive an independent PCG64 stream for `name` from the master seed."""
    key = zlib.crc32(name.encode("utf-8"))
    return np.random.default_rng(np.random.SeedSequence(entropy=master_seed, spawn_key=(key,)))


def stream_state(gen: np.random.Generator) -> dict:
    """JSON-serializable snapshot of a generator's position."""
    state = gen.bit_generator.state
    return {
        "bit_generator": state["bit_generator"],
        "state": {"state": str(state["state"]["state"]), "inc": str(state["state"]["inc"])},
        "has_uint32": state["has_uint32"],
        "uinteger": state["uinteger"],
    }


def restore_stream(gen: np.random.Generator, snapshot: dict) -> None:
    gen.bit_generator.state = {
        "bit_generator": snapshot["bit_generator"],
        "state": {"state": int(snapshot["state"]["state"]), "inc": int(snapshot["state"]["inc"])},
        "has_uint32": snapshot["has_uint32"],
        "uinteger": snapshot["uinteger"],
    }
