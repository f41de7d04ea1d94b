"""Staircase shapes, their corner posets and shape <-> poset conversions.

A staircase shape is a Young diagram drawn as columns of weakly increasing
heights; cell (i, j) sits in row i (1 = top) of column j.  Corner cells form
a rook placement whose "down-left is bigger" order is arborescent.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from functools import lru_cache

from .dominant import AntilinearizedPoset, LinearizedPoset
from .poset import FinitePoset, transitive_reduce

Cell = tuple[int, int]


@dataclass(frozen=True)
class StaircaseShape:
    """Weakly increasing column heights; zero heights may pad the left edge."""

    heights: tuple[int, ...]

    def __post_init__(self):
        heights = tuple(int(h) for h in self.heights)
        object.__setattr__(self, "heights", heights)
        if any(h < 0 for h in heights):
            raise ValueError(f"column heights must be nonnegative: {heights}")
        if any(a > b for a, b in zip(heights, heights[1:])):
            raise ValueError(f"column heights must be weakly increasing: {heights}")

    @property
    def m(self) -> int:
        return len(self.heights)

    @property
    def n(self) -> int:
        return self.heights[-1] if self.heights else 0

    @property
    def area(self) -> int:
        return sum(self.heights)

    def cells(self):
        for j, h in enumerate(self.heights, start=1):
            for i in range(1, h + 1):
                yield (i, j)

    def __contains__(self, cell: Cell) -> bool:
        i, j = cell
        return 1 <= j <= self.m and 1 <= i <= self.heights[j - 1]

    def __str__(self) -> str:
        return ",".join(str(h) for h in self.heights)

    def to_json(self) -> str:
        return json.dumps({"heights": list(self.heights)})


def shape(heights) -> StaircaseShape:
    return StaircaseShape(tuple(heights))


def cell_leq(a: Cell, b: Cell) -> bool:
    """Corner order: b is bigger when it sits weakly down and left of a."""
    return b[0] >= a[0] and b[1] <= a[1]


@dataclass(frozen=True)
class CornerPoset:
    """The rook placement of staircase corners with the down-left order."""

    corners: tuple[Cell, ...]  # sorted by column
    covers: tuple[tuple[Cell, Cell], ...]  # (lower, upper) Hasse edges

    def __len__(self) -> int:
        return len(self.corners)

    def poset(self) -> FinitePoset:
        return FinitePoset(self.corners, self.covers)

    def hor(self, corner: Cell) -> int:
        return corner[0]

    def vrt(self, corner: Cell) -> int:
        return corner[1]

    def corner_in_row(self, i: int) -> Cell | None:
        for c in self.corners:
            if c[0] == i:
                return c
        return None

    def corner_in_col(self, j: int) -> Cell | None:
        for c in self.corners:
            if c[1] == j:
                return c
        return None

    def to_json(self) -> str:
        return json.dumps(
            {
                "corners": [list(c) for c in self.corners],
                "hasse": [[list(x), list(y)] for x, y in self.covers],
            }
        )


@lru_cache(maxsize=None)
def _corners_of(heights: tuple[int, ...]) -> tuple[Cell, ...]:
    rows = list(range(1, (heights[-1] if heights else 0) + 1))
    cols = list(range(1, len(heights) + 1))
    corners: list[Cell] = []
    while cols:
        reduced = [sum(1 for r in rows if r <= heights[c - 1]) for c in cols]
        fresh: list[Cell] = []
        prev = 0
        for t, h in enumerate(reduced):
            if h > prev:
                fresh.append((rows[h - 1], cols[t]))
            prev = h
        if not fresh:
            break
        corners.extend(fresh)
        done_rows = {c[0] for c in fresh}
        done_cols = {c[1] for c in fresh}
        rows = [r for r in rows if r not in done_rows]
        cols = [c for c in cols if c not in done_cols]
    return tuple(sorted(corners, key=lambda c: c[1]))


def staircase_corners(s: StaircaseShape) -> CornerPoset:
    """Extract the corner poset, removing corner hooks column-ascending."""
    corners = _corners_of(s.heights)
    relation = [
        (a, b) for a in corners for b in corners if a != b and cell_leq(a, b)
    ]
    poset = transitive_reduce(relation, corners)
    return CornerPoset(corners, tuple(sorted(poset.covers)))


def erase_row_col(s: StaircaseShape, cell: Cell) -> StaircaseShape:
    """Remove the row and the column through a cell of the diagram."""
    if cell not in s:
        raise ValueError(f"cell {cell} is outside the shape {s.heights}")
    i, j = cell
    out = []
    for k in range(1, s.m):
        if k < j:
            h = s.heights[k - 1]
            out.append(h if h < i else h - 1)
        else:
            out.append(s.heights[k] - 1)
    return StaircaseShape(tuple(out))


def drop_empty_rows_cols(s: StaircaseShape) -> StaircaseShape:
    """Delete every row and column that carries no staircase corner."""
    cp = staircase_corners(s)
    used_rows = sorted(c[0] for c in cp.corners)
    used_cols = sorted(c[1] for c in cp.corners)
    heights = tuple(
        sum(1 for r in used_rows if r <= s.heights[j - 1]) for j in used_cols
    )
    return StaircaseShape(heights)


def vrt_base(s: StaircaseShape) -> AntilinearizedPoset:
    """Corners as an anti-linearized poset on column positions in [1, m]."""
    cp = staircase_corners(s)
    elements = tuple(c[1] for c in cp.corners)
    covers = tuple((x[1], y[1]) for x, y in cp.covers)
    return AntilinearizedPoset(s.m, elements, covers)


def hor_base(s: StaircaseShape) -> LinearizedPoset:
    """Corners as a linearized poset on row positions in [1, n]."""
    cp = staircase_corners(s)
    elements = tuple(sorted(c[0] for c in cp.corners))
    covers = tuple((x[0], y[0]) for x, y in cp.covers)
    return LinearizedPoset(s.n, elements, covers)


def shape_from_antilinearized_poset(
    base: AntilinearizedPoset,
) -> tuple[StaircaseShape, dict[int, Cell]]:
    """Reconstruct a staircase shape whose corner poset realizes the base.

    Returns the shape together with the order isomorphism position -> corner
    (satisfying vrt(iso[p]) = p).  The base's connected components must occupy
    intervals of [1, m]; other inputs admit no staircase realization.
    """
    _check_components_on_intervals(base)
    heights = []
    for k in range(1, base.m + 1):
        before = sum(1 for t in base.elements if t < k)
        if k in base._element_set:
            heights.append(before + 1 + len(base.below[k]))
        else:
            heights.append(before)
    s = StaircaseShape(tuple(heights))
    cp = staircase_corners(s)
    iso: dict[int, Cell] = {}
    for p in base.elements:
        corner = cp.corner_in_col(p)
        if corner is None:
            raise AssertionError(f"no corner in column {p} of the rebuilt shape")
        iso[p] = corner
    for p in base.elements:
        for q in base.elements:
            expect = q in base.above[p] or p == q
            got = cell_leq(iso[p], iso[q])
            if expect != got:
                raise AssertionError("rebuilt corner poset is not order-isomorphic")
    return s, iso


def _check_components_on_intervals(base: AntilinearizedPoset) -> None:
    parent: dict[int, int] = {p: p for p in base.elements}

    def find(p):
        while parent[p] != p:
            parent[p] = parent[parent[p]]
            p = parent[p]
        return p

    for x, y in base.covers:
        parent[find(x)] = find(y)
    comps: dict[int, list[int]] = {}
    for p in base.elements:
        comps.setdefault(find(p), []).append(p)
    for members in comps.values():
        members.sort()
        span = set(range(members[0], members[-1] + 1))
        missing = sorted(span - set(members))
        if missing:
            raise ValueError(
                f"component {members} skips positions {missing}; "
                "components must cover intervals of [1, m]"
            )
