"""Query algorithms with advice: statevector simulation, parity pads,
iterate tables and permutation compression."""

from ._core import (
    collision_in_window,
    compress_roundtrip,
    grover_closed_form,
    grover_invert,
    hellman_build,
    hellman_invert,
    parity_answer,
    parity_preprocess,
    rank_perm,
    rank_set,
    run_command,
    unrank_perm,
    unrank_set,
)

__all__ = [
    "collision_in_window",
    "compress_roundtrip",
    "grover_closed_form",
    "grover_invert",
    "hellman_build",
    "hellman_invert",
    "parity_answer",
    "parity_preprocess",
    "rank_perm",
    "rank_set",
    "run_command",
    "unrank_perm",
    "unrank_set",
]
