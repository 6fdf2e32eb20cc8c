"""Counting and growing the P-positions of k-pile Nim."""

from .nim_core import (
    Mode,
    Position,
    complete_to_p,
    is_p_position,
    max_pile,
    nim_sum,
    oracle_count_by_max,
    oracle_count_by_total,
    oracle_enumerate_by_total,
    total_counters,
)
from .sequences import (
    Family,
    MaxDecomposition,
    SequenceEngine,
    SequenceQuery,
    A_total,
    D_total,
    a_max,
    binary_weight,
    d_max,
    decompose_max_index,
    sequence_prefix,
)

__version__ = "0.1.0"
