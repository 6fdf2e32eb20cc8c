"""Three-branch Ulam-Warburton automaton and its match with 3-pile Nim.

The grid automaton starts with the origin alive.  At every step each dead
cell with exactly one live orthogonal neighbour is born, except in the
south wedge ``y < 0, y <= -|x|`` where nothing may grow.  Generation ``n``
then holds ``3**wt(n)`` cells, the same count as 3-pile P-positions with
``2n`` counters.

The explicit matching walks the binary digits of ``n`` from the top.  Each
power of two sits in exactly two of the three piles; that pile pair picks
a heading for a straight run of ``2**r`` steps:

* the first pair fixes the heading: (1,1,0) east, (1,0,1) north,
  (0,1,1) west;
* a repeated pair keeps going straight;
* a pair change (0,1,1) -> (1,1,0) -> (1,0,1) -> (0,1,1) turns clockwise,
  the opposite change turns counter-clockwise.

The pair labels attached to these headings elsewhere (``(1,0,1)`` as
"east", ``(0,1,1)`` as "west") do not agree with compass directions on the
grid; coordinates are authoritative here.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from typing import NamedTuple
from xml.sax.saxutils import quoteattr

from .nim_core import Position, nim_sum

NEIGHBOURS = ((1, 0), (0, 1), (-1, 0), (0, -1))


class Cell(NamedTuple):
    x: int
    y: int


ORIGIN = Cell(0, 0)

PairDirection = tuple[int, int, int]
Heading = tuple[int, int]

PAIRS: tuple[PairDirection, ...] = ((0, 1, 1), (1, 1, 0), (1, 0, 1))
FIRST_HEADING: dict[PairDirection, Heading] = {
    (1, 1, 0): (1, 0),
    (1, 0, 1): (0, 1),
    (0, 1, 1): (-1, 0),
}
HEADING_TO_FIRST_PAIR = {h: d for d, h in FIRST_HEADING.items()}
# cyclic order in which each step to the next entry is a clockwise turn
_CLOCKWISE_CYCLE = PAIRS


def rotate_cw(h: Heading) -> Heading:
    return (h[1], -h[0])


def rotate_ccw(h: Heading) -> Heading:
    return (-h[1], h[0])


def is_forbidden(c: tuple[int, int]) -> bool:
    x, y = c
    return y < 0 and y <= -abs(x)


@dataclass(frozen=True)
class Birth:
    generation: int
    parent: Cell | None


@dataclass
class BirthMap:
    entries: dict[Cell, Birth] = field(default_factory=dict)

    def __contains__(self, c) -> bool:
        return c in self.entries

    def __len__(self) -> int:
        return len(self.entries)

    def __getitem__(self, c) -> Birth:
        return self.entries[c]

    @property
    def max_generation(self) -> int:
        return max((b.generation for b in self.entries.values()), default=-1)

    def generation(self, g: int) -> set[Cell]:
        return {c for c, b in self.entries.items() if b.generation == g}

    def born_counts(self) -> list[int]:
        counts = [0] * (self.max_generation + 1)
        for b in self.entries.values():
            counts[b.generation] += 1
        return counts

    def edges(self) -> list[tuple[Cell, Cell]]:
        return [(b.parent, c) for c, b in self.entries.items() if b.parent is not None]

    def path_to(self, c: Cell) -> list[Cell]:
        """Cells from the origin to ``c`` along parent links."""
        if c not in self.entries:
            raise KeyError(f"cell {tuple(c)} is not alive in this map")
        chain = [Cell(*c)]
        while (parent := self.entries[chain[-1]].parent) is not None:
            chain.append(parent)
        chain.reverse()
        return chain


def evolve_uw(max_generation: int) -> BirthMap:
    if max_generation < 0:
        raise ValueError("max_generation must be non-negative")
    births = BirthMap({ORIGIN: Birth(0, None)})
    alive = births.entries
    frontier = [ORIGIN]
    for g in range(1, max_generation + 1):
        candidates = {
            Cell(x + dx, y + dy) for x, y in frontier for dx, dy in NEIGHBOURS
        }
        newborn = []
        for c in sorted(candidates):
            if c in alive or is_forbidden(c):
                continue
            live = [n for dx, dy in NEIGHBOURS if (n := Cell(c.x + dx, c.y + dy)) in alive]
            if len(live) == 1:
                newborn.append((c, live[0]))
        # births within one step are simultaneous
        for c, parent in newborn:
            alive[c] = Birth(g, parent)
        frontier = [c for c, _ in newborn]
    return births


def binary_powers(n: int) -> list[int]:
    """Exponents of the binary digits of ``n``, largest first."""
    return [r for r in range(n.bit_length() - 1, -1, -1) if n >> r & 1]


def cells_from_formula(n: int) -> set[Cell]:
    """Generation ``n`` as sums of ``2**r`` steps over non-reversing headings."""
    if n < 1:
        raise ValueError("the formula describes generations n >= 1")
    runs = [1 << r for r in binary_powers(n)]
    points: set[Cell] = set()

    def walk(j: int, x: int, y: int, prev: Heading | None) -> None:
        if j == len(runs):
            points.add(Cell(x, y))
            return
        for h in NEIGHBOURS:
            if prev is None and h == (0, -1):
                continue
            if prev is not None and h == (-prev[0], -prev[1]):
                continue
            walk(j + 1, x + runs[j] * h[0], y + runs[j] * h[1], h)

    walk(0, 0, 0, None)
    return points


class Segment(NamedTuple):
    pair: PairDirection
    heading: Heading
    length: int
    end: Cell


def _turn(prev: PairDirection, cur: PairDirection) -> str:
    if prev == cur:
        return "straight"
    i = _CLOCKWISE_CYCLE.index(prev)
    return "cw" if _CLOCKWISE_CYCLE[(i + 1) % 3] == cur else "ccw"


def position_segments(p: Sequence[int]) -> list[Segment]:
    """The straight runs that lead from the origin to the cell of ``p``."""
    p = tuple(p)
    if len(p) != 3:
        raise ValueError(f"the grid matching is for three piles, got {len(p)}")
    if any(v < 0 for v in p):
        raise ValueError(f"pile sizes must be non-negative: {p}")
    if nim_sum(p):
        raise ValueError(f"{p} is not a P-position (nim-sum {nim_sum(p)})")
    n = sum(p) // 2
    segments: list[Segment] = []
    x = y = 0
    heading: Heading | None = None
    pair: PairDirection | None = None
    for r in binary_powers(n):
        cur = tuple(v >> r & 1 for v in p)
        if sum(cur) != 2:
            raise AssertionError(f"bit {r} of {p} is not shared by exactly two piles")
        if pair is None:
            heading = FIRST_HEADING[cur]
        else:
            turn = _turn(pair, cur)
            if turn == "cw":
                heading = rotate_cw(heading)
            elif turn == "ccw":
                heading = rotate_ccw(heading)
        pair = cur
        x += heading[0] << r
        y += heading[1] << r
        segments.append(Segment(cur, heading, 1 << r, Cell(x, y)))
    return segments


def position_to_cell(p: Sequence[int]) -> Cell:
    """Grid cell of a 3-pile P-position; the zero position sits at the origin."""
    segments = position_segments(p)
    return segments[-1].end if segments else ORIGIN


def cell_segments(c: Cell, births: BirthMap) -> list[Segment]:
    """Recover the pile-pair runs of a live cell from its parent chain."""
    c = Cell(*c)
    path = births.path_to(c)
    n = births[c].generation
    steps = [(b.x - a.x, b.y - a.y) for a, b in zip(path, path[1:])]
    segments: list[Segment] = []
    offset = 0
    pair: PairDirection | None = None
    heading: Heading | None = None
    for r in binary_powers(n):
        run = steps[offset : offset + (1 << r)]
        h = run[0]
        if any(s != h for s in run):
            raise ValueError(f"parent chain of {tuple(c)} bends inside a run of {1 << r}")
        if pair is None:
            if h not in HEADING_TO_FIRST_PAIR:
                raise ValueError(f"cell {tuple(c)} starts southwards")
            pair = HEADING_TO_FIRST_PAIR[h]
        elif h == heading:
            pass
        elif h == rotate_cw(heading):
            pair = _CLOCKWISE_CYCLE[(_CLOCKWISE_CYCLE.index(pair) + 1) % 3]
        elif h == rotate_ccw(heading):
            pair = _CLOCKWISE_CYCLE[(_CLOCKWISE_CYCLE.index(pair) - 1) % 3]
        else:
            raise ValueError(f"parent chain of {tuple(c)} reverses direction")
        heading = h
        offset += 1 << r
        segments.append(Segment(pair, h, 1 << r, path[offset]))
    return segments


def cell_to_position(c: Cell, births: BirthMap) -> Position:
    piles = [0, 0, 0]
    for seg in cell_segments(c, births):
        for i, bit in enumerate(seg.pair):
            piles[i] += bit * seg.length
    return tuple(piles)


# -- rendering ----------------------------------------------------------------


@dataclass(frozen=True)
class RenderOptions:
    spacing: float = 12.0
    dot_radius: float = 3.0
    margin: float = 10.0
    stroke_width: float = 1.5
    color_by_generation: bool = True
    background: str = "#ffffff"
    dot_color: str = "#1f2933"
    edge_color: str = "#7b8794"


def _generation_color(g: int, top: int) -> str:
    # fixed ramp from deep blue to orange, integer arithmetic only
    t = 0 if top <= 0 else g * 1000 // top
    r = 30 + (225 * t) // 1000
    gg = 80 + (60 * t) // 1000
    b = 200 - (170 * t) // 1000
    return f"#{r:02x}{gg:02x}{b:02x}"


def _fmt(v: float) -> str:
    return f"{v:.2f}".rstrip("0").rstrip(".")


def render(births: BirthMap, options: RenderOptions | None = None) -> str:
    """SVG drawing with one circle per cell and one line per parent link.

    Output is a pure function of its inputs; y grows upwards on the page.
    """
    opt = options or RenderOptions()
    cells = sorted(births.entries) or [ORIGIN]
    xs = [c.x for c in cells]
    ys = [c.y for c in cells]
    min_x, max_x, min_y, max_y = min(xs), max(xs), min(ys), max(ys)
    width = (max_x - min_x) * opt.spacing + 2 * opt.margin
    height = (max_y - min_y) * opt.spacing + 2 * opt.margin

    def px(c: Cell) -> tuple[str, str]:
        return (
            _fmt(opt.margin + (c.x - min_x) * opt.spacing),
            _fmt(opt.margin + (max_y - c.y) * opt.spacing),
        )

    top = births.max_generation
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{_fmt(width)}" height="{_fmt(height)}" '
        f'viewBox="0 0 {_fmt(width)} {_fmt(height)}">',
        f'<rect x="0" y="0" width="{_fmt(width)}" height="{_fmt(height)}" '
        f"fill={quoteattr(opt.background)}/>",
        f'<g id="edges" stroke={quoteattr(opt.edge_color)} '
        f'stroke-width="{_fmt(opt.stroke_width)}" stroke-linecap="round">',
    ]
    for parent, child in sorted(births.edges(), key=lambda e: (e[1], e[0])):
        (x1, y1), (x2, y2) = px(parent), px(child)
        lines.append(f'<line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}"/>')
    lines.append("</g>")
    lines.append('<g id="cells">')
    for c in cells:
        g = births[c].generation if c in births else 0
        color = _generation_color(g, top) if opt.color_by_generation else opt.dot_color
        cx, cy = px(c)
        lines.append(
            f'<circle cx="{cx}" cy="{cy}" r="{_fmt(opt.dot_radius)}" '
            f'fill="{color}" data-gen="{g}"/>'
        )
    lines.append("</g>")
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def write_svg(births: BirthMap, path, options: RenderOptions | None = None) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write(render(births, options))


def births_by_generation(births: BirthMap) -> list[set[Cell]]:
    slices: list[set[Cell]] = [set() for _ in range(births.max_generation + 1)]
    for c, b in births.entries.items():
        slices[b.generation].add(c)
    return slices


def positions_to_cells(positions: Iterable[Sequence[int]]) -> dict[Position, Cell]:
    return {tuple(p): position_to_cell(p) for p in positions}
