"""Certificate search driven by tile colors alone.

This module rebuilds tiling certificates knowing nothing about Turing
machines: its only inputs are a tiling system and a starting edge map.  It
must stay importable without the machine modules; a test walks its import
closure to keep it that way.

The search works row by row.  A pending row is the list of north colors the
placements so far have exposed at some height; the next row of tiles must
cancel it exactly, which pins each tile through its south color and the
west color shared with its left neighbour.  The outer loop tries each row
width in turn, because the starting map does not determine how far the
bottom row extends.  Within one width the deduction is forced up to local
backtracking: wherever two tiles fit the same (south, west) pair, the dead
branch dies within a step or two, so the first completed stack of rows is
the unique one and the search is deterministic.
"""

from __future__ import annotations

from typing import Optional

from .edges import EdgeMap
from .tiling import (ARROW_D, ARROW_R, C0, Certificate, Color, Placement,
                     TilingSystem, sort_placements)


class MalformedInput(ValueError):
    """The starting edge map does not look like a rendered input word."""


def parse_initial_shape(f0: EdgeMap) -> tuple[int, list[Color], Color]:
    """Check that ``f0`` is a rendered input word and take it apart.

    Returns ``(n, row, arrow)``: the word length, the colors at row height 1
    for positions ``0..n``, and the color of the single vertical edge.
    """
    horiz: dict[int, Color] = {}
    vert = None
    for ((x, y, orient), color), value in f0.support():
        if value != 1:
            raise MalformedInput(f"entry value {value} at ({x},{y},{orient})")
        if orient == "H":
            if y != 1 or x in horiz:
                raise MalformedInput(f"unexpected horizontal entry at ({x},{y})")
            horiz[x] = color
        else:
            if vert is not None:
                raise MalformedInput("more than one vertical entry")
            vert = ((x, y), color)
    if vert is None:
        raise MalformedInput("missing vertical entry")
    (vx, vy), arrow = vert
    n = vx - 1
    if n < 1 or vy != 0:
        raise MalformedInput(f"vertical entry at ({vx},{vy})")
    if sorted(horiz) != list(range(n + 1)):
        raise MalformedInput("row positions not contiguous from 0")
    if horiz[0] != ARROW_D or arrow != ARROW_R:
        raise MalformedInput("missing start or end arrow")
    row = [horiz[x] for x in range(n + 1)]
    return n, row, arrow


def _assignments(by_sw: dict, souths: list[Color], west_seed: Color,
                 distinguished: Color):
    """Yield every tile row matching the given south colors.

    A row assignment is a list with one tile or None per position.  The west
    side of each tile must repeat the east side of its left neighbour (seeded
    with ``west_seed``), the final east side must be the distinguished color,
    and a position may stay empty only where the south color and the incoming
    west color are both distinguished.
    """
    count = len(souths)
    chosen: list = [None] * count

    def extend(i: int, west: Color):
        if i == count:
            if west == distinguished:
                yield list(chosen)
            return
        for tile in by_sw.get((souths[i], west), ()):
            chosen[i] = tile
            yield from extend(i + 1, tile.e)
            chosen[i] = None
        if souths[i] == distinguished and west == distinguished:
            chosen[i] = None
            yield from extend(i + 1, distinguished)

    yield from extend(0, west_seed)


def forced_search(ts: TilingSystem, f0: EdgeMap, max_m: int,
                  max_rows: int) -> Optional[Certificate]:
    """Search for a certificate cancelling ``f0`` by forced row deduction.

    Widths ``n+1..max_m`` are tried in order; within each width rows are
    deduced upwards until they become empty (success) or ``max_rows`` is
    exceeded.  Returns the first certificate found, or None when every
    width fails within the bounds.  A None is a bounded verdict, not a
    proof that no certificate exists.
    """
    n, row0, arrow = parse_initial_shape(f0)
    c0 = ts.distinguished

    by_sw: dict[tuple[Color, Color], list] = {}
    for tile in ts.tiles:
        by_sw.setdefault((tile.s, tile.w), []).append(tile)

    def solve_rows(pending: list[Color], y: int):
        if all(color == c0 for color in pending):
            return [], y - 1
        if y > max_rows:
            return None
        for assignment in _assignments(by_sw, pending, c0, c0):
            norths = [tile.n if tile else c0 for tile in assignment]
            sub = solve_rows(norths, y + 1)
            if sub is not None:
                rows, top = sub
                placed = [Placement(tile, x, y)
                          for x, tile in enumerate(assignment) if tile]
                return [placed] + rows, top
        return None

    for m in range(n + 1, max_m + 1):
        for bottom in _assignments(by_sw, [c0] * (m - n), arrow, c0):
            pending = row0 + [tile.n if tile else c0 for tile in bottom]
            sub = solve_rows(pending, 1)
            if sub is None:
                continue
            rows, top = sub
            placements = [Placement(tile, n + 1 + i, 0)
                          for i, tile in enumerate(bottom) if tile]
            for placed in rows:
                placements.extend(placed)
            return Certificate(sort_placements(placements), m, top)
    return None
