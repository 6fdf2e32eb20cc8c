"""Nim positions, nim-sums, and brute-force P-position counters.

A position is an ordered tuple of pile sizes.  Permutations are distinct
positions, so ``(1, 1, 0)`` and ``(0, 1, 1)`` are counted separately.

The ``oracle_*`` functions count P-positions by explicit enumeration: the
first ``k - 1`` piles run over a box and the last pile is forced to their
nim-sum.  They use no closed form and exist to cross-check the formulas in
:mod:`nimseq.sequences`.
"""

from __future__ import annotations

from collections.abc import Iterable, Iterator, Sequence
from enum import Enum
from functools import reduce
from operator import xor

import numpy as np

Position = tuple[int, ...]


class Mode(str, Enum):
    AT_MOST = "at_most"
    EXACTLY = "exactly"


def position(piles: Iterable[int]) -> Position:
    """Validate ``piles`` and return them as a position tuple."""
    p = tuple(int(x) for x in piles)
    if not p:
        raise ValueError("a position needs at least one pile")
    if any(x < 0 for x in p):
        raise ValueError(f"pile sizes must be non-negative: {p}")
    return p


def nim_sum(values: Iterable[int]) -> int:
    return reduce(xor, values, 0)


def is_p_position(p: Sequence[int]) -> bool:
    return nim_sum(p) == 0


def complete_to_p(prefix: Sequence[int]) -> Position:
    """Append the unique last pile that makes ``prefix`` a P-position."""
    return (*prefix, nim_sum(prefix))


def total_counters(p: Sequence[int]) -> int:
    return sum(p)


def max_pile(p: Sequence[int]) -> int:
    return max(p)


def _check_k(k: int) -> None:
    if k < 1:
        raise ValueError(f"pile count k must be at least 1, got {k}")


def _check_n(n: int) -> None:
    if n < 0:
        raise ValueError(f"index must be non-negative, got {n}")


def box_slices(k: int, bound: int) -> Iterator[tuple[np.ndarray, np.ndarray]]:
    """Yield ``(max_pile, total)`` arrays over every P-position whose first
    ``k - 1`` piles lie in ``[0, bound]``.

    The box is partitioned by the first pile; each slice is one numpy
    broadcast over the remaining ``k - 2`` free piles.
    """
    if k == 1:
        yield np.zeros(1, dtype=np.int64), np.zeros(1, dtype=np.int64)
        return
    axis = np.arange(bound + 1, dtype=np.int64)
    for first in range(bound + 1):
        acc_xor = np.array(first, dtype=np.int64)
        acc_sum = np.array(first, dtype=np.int64)
        acc_max = np.array(first, dtype=np.int64)
        for _ in range(k - 2):
            acc_xor = np.bitwise_xor(acc_xor[..., None], axis)
            acc_sum = acc_sum[..., None] + axis
            acc_max = np.maximum(acc_max[..., None], axis)
        last = acc_xor
        yield np.maximum(acc_max, last).ravel(), (acc_sum + last).ravel()


def oracle_max_histogram(k: int, bound: int) -> list[int]:
    """Number of P-positions with largest pile exactly ``m``, for ``m = 0..bound``."""
    _check_k(k)
    _check_n(bound)
    hist = np.zeros(bound + 1, dtype=np.int64)
    for mx, _ in box_slices(k, bound):
        mx = mx[mx <= bound]
        hist += np.bincount(mx, minlength=bound + 1)
    return [int(v) for v in hist]


def oracle_total_histogram(k: int, n: int) -> list[int]:
    """Number of P-positions with exactly ``2m`` counters, for ``m = 0..n``.

    No pile can exceed the total, so the first ``k - 1`` piles range over
    ``[0, 2n]`` and nothing is missed.
    """
    _check_k(k)
    _check_n(n)
    cap = 2 * n
    hist = np.zeros(cap + 1, dtype=np.int64)
    for _, tot in box_slices(k, cap):
        tot = tot[tot <= cap]
        hist += np.bincount(tot, minlength=cap + 1)
    if np.any(hist[1::2]):
        raise AssertionError("found a P-position with an odd number of counters")
    return [int(v) for v in hist[::2]]


def oracle_count_by_max(k: int, n: int, mode: Mode | str = Mode.AT_MOST) -> int:
    mode = Mode(mode)
    hist = oracle_max_histogram(k, n)
    return hist[n] if mode is Mode.EXACTLY else sum(hist)


def oracle_count_by_total(k: int, n: int, mode: Mode | str = Mode.AT_MOST) -> int:
    mode = Mode(mode)
    hist = oracle_total_histogram(k, n)
    return hist[n] if mode is Mode.EXACTLY else sum(hist)


def iter_p_positions_by_total(k: int, n: int) -> Iterator[Position]:
    """Yield the P-positions with ``2n`` counters in lexicographic order."""
    _check_k(k)
    _check_n(n)
    total = 2 * n

    def walk(prefix: list[int], used: int, acc: int) -> Iterator[Position]:
        if len(prefix) == k - 1:
            if used + acc == total:
                yield (*prefix, acc)
            return
        for v in range(total - used + 1):
            prefix.append(v)
            yield from walk(prefix, used + v, acc ^ v)
            prefix.pop()

    yield from walk([], 0, 0)


def oracle_enumerate_by_total(k: int, n: int) -> list[Position]:
    return list(iter_p_positions_by_total(k, n))


def iter_p_positions_by_max(k: int, n: int) -> Iterator[Position]:
    """Yield the P-positions with every pile at most ``n``, lexicographically."""
    _check_k(k)
    _check_n(n)

    def walk(prefix: list[int], acc: int) -> Iterator[Position]:
        if len(prefix) == k - 1:
            if acc <= n:
                yield (*prefix, acc)
            return
        for v in range(n + 1):
            prefix.append(v)
            yield from walk(prefix, acc ^ v)
            prefix.pop()

    yield from walk([], 0)
