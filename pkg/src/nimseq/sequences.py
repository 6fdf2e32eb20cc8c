"""Exact P-position counts of k-pile Nim.

Four families, all indexed from 0:

``a``  P-positions with every pile at most ``n``
``d``  P-positions whose largest pile is exactly ``n``
``A``  P-positions with at most ``2n`` counters in total
``D``  P-positions with exactly ``2n`` counters in total

The indexed-by-maximum families use the closed forms in terms of
``n = 2**b - 1 + c``; the indexed-by-total families use the doubling
recursions, which split a position by its number of odd piles.

Note on ``D`` for three piles: the count is ``3**wt(n)``, which satisfies
``D(2n+1) = 3 D(n)`` and ``D(2n+2) = D(n+1)``.  A variant with the parities
swapped (``D(2n) = 3 D(n)``) circulates but fails already at ``D(2) = 3``;
it is not used here.
"""

from __future__ import annotations

import pickle
from dataclasses import dataclass
from enum import Enum
from math import comb
from pathlib import Path
from typing import NamedTuple

MEMO_FORMAT_VERSION = 1


class Family(str, Enum):
    a = "a"
    d = "d"
    A = "A"
    D = "D"


class MaxDecomposition(NamedTuple):
    b: int
    c: int


@dataclass(frozen=True)
class SequenceQuery:
    family: Family
    k: int
    index: int


def decompose_max_index(n: int) -> MaxDecomposition:
    """Split ``n >= 1`` as ``2**b - 1 + c`` with ``1 <= c <= 2**b``."""
    if n < 1:
        raise ValueError(f"decomposition needs n >= 1, got {n}")
    b = n.bit_length() - 1
    return MaxDecomposition(b, n + 1 - (1 << b))


def binary_weight(n: int) -> int:
    if n < 0:
        raise ValueError(f"binary weight needs n >= 0, got {n}")
    return bin(n).count("1")


def _exact_div(num: int, shift: int) -> int:
    q, r = divmod(num, 1 << shift)
    if r:
        raise ArithmeticError(f"{num} is not divisible by 2**{shift}")
    return q


def _check(k: int, n: int) -> None:
    if k < 1:
        raise ValueError(f"pile count k must be at least 1, got {k}")
    if n < 0:
        raise ValueError(f"index must be non-negative, got {n}")


class SequenceEngine:
    """Evaluates the four families with a private memo table.

    One engine should be driven by one thread at a time.  Recursions
    halve the index, so memo size and stack depth grow like ``log n``.
    """

    def __init__(self) -> None:
        self.memo: dict[tuple[str, int, int], int] = {}

    # -- indexed by maximum -------------------------------------------------

    def a_max(self, k: int, n: int) -> int:
        _check(k, n)
        if k == 1:
            return 1
        if k == 2:
            return n + 1
        return self.a_max_general(k, n)

    def a_max_general(self, k: int, n: int) -> int:
        """Closed form for any ``k``, without the one/two pile shortcuts."""
        _check(k, n)
        if n == 0:
            return 1
        key = ("a", k, n)
        if key in self.memo:
            return self.memo[key]
        b, c = decompose_max_index(n)
        hi, lo = (1 << b) + c, (1 << b) - c
        if k % 2:
            value = _exact_div(hi**k + lo**k, b + 1)
        else:
            value = _exact_div(hi**k + lo**k - 2 * c**k, b + 1)
            value += self.a_max_general(k, c - 1)
        self.memo[key] = value
        return value

    def d_max(self, k: int, n: int) -> int:
        _check(k, n)
        if n == 0:
            return 1
        if k == 1:
            return 0
        if k == 2:
            return 1
        if k == 3:
            return 6 * decompose_max_index(n).c - 3
        if k == 4:
            key = ("d4", 4, n)
            if key not in self.memo:
                b, c = decompose_max_index(n)
                self.memo[key] = (12 * c - 6) * (1 << b) + self.d_max(4, c - 1)
            return self.memo[key]
        return self.d_max_general(k, n)

    def d_max_general(self, k: int, n: int) -> int:
        """Closed form for any ``k``, without small-``k`` shortcuts."""
        _check(k, n)
        if n == 0:
            return 1
        key = ("d", k, n)
        if key in self.memo:
            return self.memo[key]
        b, c = decompose_max_index(n)
        p = 1 << b
        num = (p + c) ** k + (p - c) ** k - (p + c - 1) ** k - (p - c + 1) ** k
        if k % 2:
            value = _exact_div(num, b + 1)
        else:
            num += 2 * (c - 1) ** k - 2 * c**k
            value = _exact_div(num, b + 1) + self.d_max_general(k, c - 1)
        self.memo[key] = value
        return value

    # -- indexed by total ---------------------------------------------------

    def D_total(self, k: int, n: int) -> int:
        _check(k, n)
        if k == 1:
            return 1 if n == 0 else 0
        if k == 2:
            return 1
        if k == 3:
            return 3 ** binary_weight(n)
        return self.D_total_recursive(k, n)

    def D_total_recursive(self, k: int, n: int) -> int:
        """Doubling recursion, valid for every ``k``.

        D(2m+1) = sum_i C(k, 4i+2) D(m-i)
        D(2m+2) = sum_i C(k, 4i)   D(m+1-i)
        """
        if k < 1:
            raise ValueError(f"pile count k must be at least 1, got {k}")
        if n < 0:
            return 0
        if n == 0:
            return 1
        key = ("D", k, n)
        if key in self.memo:
            return self.memo[key]
        if n % 2:
            m, base, shift = (n - 1) // 2, 2, 0
        else:
            m, base, shift = (n - 2) // 2, 0, 1
        value = 0
        i = 0
        while base + 4 * i <= k and m + shift - i >= 0:
            value += comb(k, base + 4 * i) * self.D_total_recursive(k, m + shift - i)
            i += 1
        self.memo[key] = value
        return value

    def A_total(self, k: int, n: int) -> int:
        _check(k, n)
        if k == 1:
            return 1
        if k == 2:
            return n + 1
        return self.A_total_recursive(k, n)

    def A_total_recursive(self, k: int, n: int) -> int:
        """Doubling recursion for the partial sums of ``D``.

        A(2m+1) = sum_i (C(k, 4i+2) + C(k, 4i))   A(m-i)
        A(2m+2) = A(m+1) + sum_i (C(k, 4i+2) + C(k, 4i+4)) A(m-i)
        """
        if k < 1:
            raise ValueError(f"pile count k must be at least 1, got {k}")
        if n < 0:
            return 0
        if n == 0:
            return 1
        key = ("A", k, n)
        if key in self.memo:
            return self.memo[key]
        if n % 2:
            m, value, extra = (n - 1) // 2, 0, 0
        else:
            m, value, extra = (n - 2) // 2, self.A_total_recursive(k, n // 2), 4
        i = 0
        while 4 * i <= k and m - i >= 0:
            coeff = comb(k, 4 * i + 2) + comb(k, 4 * i + extra)
            value += coeff * self.A_total_recursive(k, m - i)
            i += 1
        self.memo[key] = value
        return value

    def A_total_partial_sums(self, k: int, n: int) -> int:
        """``A`` as an explicit running sum of ``D``; linear in ``n``."""
        _check(k, n)
        return sum(self.D_total(k, m) for m in range(n + 1))

    # -- dispatch -----------------------------------------------------------

    def term(self, family: Family | str, k: int, n: int) -> int:
        fn = {
            Family.a: self.a_max,
            Family.d: self.d_max,
            Family.A: self.A_total,
            Family.D: self.D_total,
        }[Family(family)]
        return fn(k, n)

    def query(self, q: SequenceQuery) -> int:
        return self.term(q.family, q.k, q.index)

    def prefix(self, family: Family | str, k: int, length: int) -> list[int]:
        if length < 1:
            raise ValueError(f"prefix length must be positive, got {length}")
        return [self.term(family, k, n) for n in range(length)]

    # -- persistence --------------------------------------------------------

    def save(self, path: str | Path) -> None:
        with open(path, "wb") as f:
            pickle.dump({"version": MEMO_FORMAT_VERSION, "memo": self.memo}, f)

    def load(self, path: str | Path) -> None:
        """Merge a memo file written by :meth:`save`; other versions are ignored."""
        with open(path, "rb") as f:
            blob = pickle.load(f)
        if isinstance(blob, dict) and blob.get("version") == MEMO_FORMAT_VERSION:
            self.memo.update(blob["memo"])


_default = SequenceEngine()


def a_max(k: int, n: int) -> int:
    return _default.a_max(k, n)


def d_max(k: int, n: int) -> int:
    return _default.d_max(k, n)


def A_total(k: int, n: int) -> int:
    return _default.A_total(k, n)


def D_total(k: int, n: int) -> int:
    return _default.D_total(k, n)


def sequence_prefix(family: Family | str, k: int, length: int) -> list[int]:
    return _default.prefix(family, k, length)
