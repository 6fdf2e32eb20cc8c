"""Nim as a growth process on P-positions.

A P-position ``q`` is a child of ``p`` when ``q`` has two more counters,
split one each over two different piles.  Starting from the zero position
and repeatedly taking all children gives one generation per step; the
generation of a P-position is half its number of counters.

The same layering exists for any finite impartial game:
:func:`stratify_p_positions` peels off P-positions step by step starting
from the terminal positions.
"""

from __future__ import annotations

from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass, field
from itertools import combinations, product
from typing import Hashable, Protocol

from .nim_core import Position, is_p_position, nim_sum, total_counters


@dataclass(frozen=True)
class GenerationRecord:
    generation: int
    born: int
    cumulative: int
    positions: frozenset | None = field(default=None, compare=False, repr=False)


def records_from_counts(born: Iterable[int]) -> list[GenerationRecord]:
    out = []
    running = 0
    for g, b in enumerate(born):
        running += b
        out.append(GenerationRecord(g, b, running))
    return out


def trailing_zeros(x: int) -> int:
    if x <= 0:
        raise ValueError("trailing zeros are only defined for positive piles")
    return (x & -x).bit_length() - 1


def trailing_ones(x: int) -> int:
    return trailing_zeros(x + 1)


def _require_p(p: Sequence[int]) -> None:
    if not is_p_position(p):
        raise ValueError(f"{tuple(p)} is not a P-position (nim-sum {nim_sum(p)})")


def parent_pairs(p: Sequence[int]) -> list[tuple[int, int]]:
    """Index pairs ``(i, j)`` whose decrement gives a parent of ``p``."""
    return [
        (i, j)
        for i, j in combinations(range(len(p)), 2)
        if p[i] and p[j] and trailing_zeros(p[i]) == trailing_zeros(p[j])
    ]


def child_pairs(p: Sequence[int]) -> list[tuple[int, int]]:
    """Index pairs ``(i, j)`` whose increment gives a child of ``p``."""
    return [
        (i, j)
        for i, j in combinations(range(len(p)), 2)
        if trailing_ones(p[i]) == trailing_ones(p[j])
    ]


def _bump(p: Sequence[int], i: int, j: int, delta: int) -> Position:
    q = list(p)
    q[i] += delta
    q[j] += delta
    return tuple(q)


def parents(p: Sequence[int]) -> set[Position]:
    _require_p(p)
    return {_bump(p, i, j, -1) for i, j in parent_pairs(p)}


def children(p: Sequence[int]) -> set[Position]:
    _require_p(p)
    return {_bump(p, i, j, 1) for i, j in child_pairs(p)}


def generation_of(p: Sequence[int]) -> int:
    total = total_counters(p)
    if total % 2:
        raise ValueError(f"{tuple(p)} has an odd total and cannot be a P-position")
    _require_p(p)
    return total // 2


def evolve_nim(k: int, max_generation: int, keep_positions: bool = False) -> list[GenerationRecord]:
    """Grow k-pile Nim from the zero position for ``max_generation`` steps.

    Only the current frontier is held in memory unless ``keep_positions``
    is set, in which case each record carries its generation's positions.
    """
    if k < 1:
        raise ValueError(f"pile count k must be at least 1, got {k}")
    if max_generation < 0:
        raise ValueError("max_generation must be non-negative")
    frontier: set[Position] = {(0,) * k}
    records = []
    cumulative = 0
    for g in range(max_generation + 1):
        cumulative += len(frontier)
        records.append(
            GenerationRecord(
                g, len(frontier), cumulative, frozenset(frontier) if keep_positions else None
            )
        )
        if g == max_generation:
            break
        frontier = {
            _bump(p, i, j, 1) for p in frontier for i, j in child_pairs(p)
        }
    return records


# -- generic impartial games --------------------------------------------------


class GameRules(Protocol):
    def moves(self, p) -> Iterable[Hashable]: ...

    def universe(self) -> Iterable[Hashable]: ...


@dataclass(frozen=True)
class NimRules:
    """Nim with ``k`` piles of at most ``max_pile`` counters each."""

    k: int
    max_pile: int

    def moves(self, p: Position) -> Iterator[Position]:
        for i, size in enumerate(p):
            for smaller in range(size):
                yield (*p[:i], smaller, *p[i + 1 :])

    def universe(self) -> Iterator[Position]:
        return product(range(self.max_pile + 1), repeat=self.k)


@dataclass
class StratifiedPPositions:
    strata: list[set]
    n_positions: set = field(default_factory=set)

    def step_of(self) -> dict:
        return {p: i for i, layer in enumerate(self.strata) for p in layer}

    @property
    def p_positions(self) -> set:
        return set().union(*self.strata)


def stratify_p_positions(rules: GameRules, max_step: int | None = None) -> StratifiedPPositions:
    """Find P-positions layer by layer.

    Layer 0 holds the terminal positions.  With ``P`` the positions found
    so far and ``N`` every position one move away from ``P``, the next layer
    is each position outside ``P`` whose moves all land in ``N``.  Stops when
    a layer comes out empty or after ``max_step`` layers past the first.
    """
    universe = list(rules.universe())
    members = set(universe)
    moves = {}
    for p in universe:
        targets = list(rules.moves(p))
        stray = [q for q in targets if q not in members]
        if stray:
            raise ValueError(f"universe is not closed under moves: {p} -> {stray[0]}")
        moves[p] = targets

    layer = {p for p in universe if not moves[p]}
    strata = [layer]
    found = set(layer)
    n_side: set = set()
    undecided = [p for p in universe if p not in found]
    while layer and (max_step is None or len(strata) <= max_step):
        n_side.update(p for p in undecided if any(q in layer for q in moves[p]))
        undecided = [p for p in undecided if p not in n_side]
        layer = {p for p in undecided if all(q in n_side for q in moves[p])}
        if not layer:
            break
        strata.append(layer)
        found |= layer
        undecided = [p for p in undecided if p not in layer]
    return StratifiedPPositions(strata, n_side)


def satisfies_partition(rules: GameRules, a_side: set) -> bool:
    """Check the three conditions that characterise the P-positions.

    Every move from ``a_side`` leaves it, everything else has a move into
    it, and all terminal positions belong to it.
    """
    for p in rules.universe():
        targets = list(rules.moves(p))
        if p in a_side:
            if any(q in a_side for q in targets):
                return False
        elif not any(q in a_side for q in targets):
            return False
    return True
