"""Finitely supported maps from (edge, color) pairs of the grid to a ring.

Edges live on the integer lattice: a horizontal edge with base ``(x, y)``
joins ``(x, y)`` to ``(x+1, y)``, a vertical one joins ``(x, y)`` to
``(x, y+1)``.  An edge is identified by ``(x, y, "H"|"V")``.

Evaluating a tile placed at the origin gives the map with

    -1 on the south edge  (0, 0, H)   at the south color,
    +1 on the east edge   (1, 0, V)   at the east color,
    +1 on the north edge  (0, 1, H)   at the north color,
    -1 on the west edge   (0, 0, V)   at the west color,

where any side carrying the distinguished color contributes nothing.  Two
adjacent tiles agreeing on a shared edge color therefore cancel there, and a
certificate is valid exactly when its translated tile maps sum to the negation
of the starting map.

Coefficients are exact: integers, or integers mod n.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Optional

from .tiling import C0, Color, Tile, TilingSystem, color_from_str, color_to_str


class RingMismatch(ValueError):
    """Two maps with different coefficient rings were combined."""


class UnknownTile(ValueError):
    """A placement references a tile outside the tiling system."""


@dataclass(frozen=True)
class Ring:
    """Z when ``modulus`` is None, otherwise Z mod ``modulus``."""

    modulus: Optional[int] = None

    def __post_init__(self):
        if self.modulus is not None and self.modulus < 2:
            raise ValueError("modulus must be at least 2")

    def canon(self, value: int) -> int:
        if self.modulus is None:
            return value
        return value % self.modulus

    @property
    def name(self) -> str:
        return "Z" if self.modulus is None else f"Zmod:{self.modulus}"


Z = Ring(None)


def ring_from_name(name: str) -> Ring:
    if name == "Z":
        return Z
    if name.startswith("Zmod:"):
        return Ring(int(name.split(":", 1)[1]))
    raise ValueError(f"unknown ring {name!r}")


EdgeKey = tuple[int, int, str]          # (x, y, "H"|"V")
EntryKey = tuple[EdgeKey, Color]


def _canon_entries(ring: Ring, items: Iterable[tuple[EntryKey, int]]) -> dict:
    out: dict[EntryKey, int] = {}
    for key, value in items:
        value = ring.canon(out.get(key, 0) + value)
        if value:
            out[key] = value
        elif key in out:
            del out[key]
    return out


def _support_key(entry: EntryKey):
    (x, y, orient), color = entry
    return (y, x, orient, color_to_str(color))


class EdgeMap:
    """Immutable finitely supported (edge, color) -> ring map."""

    __slots__ = ("ring", "_entries")

    def __init__(self, ring: Ring, entries: Iterable[tuple[EntryKey, int]] = ()):
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "_entries", _canon_entries(ring, entries))

    def __setattr__(self, *_):
        raise AttributeError("EdgeMap is immutable")

    def value(self, edge: EdgeKey, color: Color) -> int:
        return self._entries.get((edge, color), 0)

    def support(self) -> tuple[tuple[EntryKey, int], ...]:
        """Entries sorted by (y, x, orientation, color)."""
        items = sorted(self._entries.items(), key=lambda kv: _support_key(kv[0]))
        return tuple(items)

    def is_zero(self) -> bool:
        return not self._entries

    def __len__(self):
        return len(self._entries)

    def __eq__(self, other):
        return (isinstance(other, EdgeMap) and self.ring == other.ring
                and self._entries == other._entries)

    def __add__(self, other: "EdgeMap") -> "EdgeMap":
        if self.ring != other.ring:
            raise RingMismatch(f"{self.ring.name} vs {other.ring.name}")
        merged = dict(self._entries)
        for key, value in other._entries.items():
            merged[key] = merged.get(key, 0) + value
        return EdgeMap(self.ring, merged.items())

    def __neg__(self) -> "EdgeMap":
        return EdgeMap(self.ring, ((k, -v) for k, v in self._entries.items()))

    def translate(self, dx: int, dy: int) -> "EdgeMap":
        return EdgeMap(self.ring, (
            (((x + dx, y + dy, orient), color), value)
            for ((x, y, orient), color), value in self._entries.items()
        ))

    def scale(self, factor: int) -> "EdgeMap":
        return EdgeMap(self.ring, ((k, v * factor) for k, v in self._entries.items()))

    def __repr__(self):
        body = ", ".join(
            f"({x},{y},{o},{color_to_str(c)})={v}"
            for ((x, y, o), c), v in self.support()
        )
        return f"EdgeMap[{self.ring.name}]({body})"


_SIDE_EDGES = (
    ("s", (0, 0, "H"), -1),
    ("e", (1, 0, "V"), +1),
    ("n", (0, 1, "H"), +1),
    ("w", (0, 0, "V"), -1),
)


def tile_eval(tile: Tile, ring: Ring = Z, distinguished: Color = C0) -> EdgeMap:
    """The edge map of a tile placed with its southwest corner at the origin."""
    entries = []
    for attr, edge, sign in _SIDE_EDGES:
        color = getattr(tile, attr)
        if color != distinguished:
            entries.append(((edge, color), sign))
    return EdgeMap(ring, entries)


def evaluate_placements(ts: TilingSystem, placements, ring: Ring = Z) -> EdgeMap:
    """Sum of the translated tile maps of a placement list.

    Every placed tile must belong to the system; repeats are allowed and add.
    """
    tileset = set(ts.tiles)
    total: dict[EntryKey, int] = {}
    for placement in placements:
        tile = placement.tile
        if tile not in tileset:
            raise UnknownTile(repr(tile))
        for attr, (ex, ey, orient), sign in _SIDE_EDGES:
            color = getattr(tile, attr)
            if color == ts.distinguished:
                continue
            key = ((placement.x + ex, placement.y + ey, orient), color)
            total[key] = total.get(key, 0) + sign
    return EdgeMap(ring, total.items())


# -- JSON -------------------------------------------------------------------

def edgemap_to_dict(f: EdgeMap) -> dict:
    return {
        "ring": f.ring.name,
        "entries": [
            {"x": x, "y": y, "orient": orient, "color": color_to_str(color), "value": v}
            for ((x, y, orient), color), v in f.support()
        ],
    }


def edgemap_from_dict(data: dict) -> EdgeMap:
    unknown = set(data) - {"ring", "entries"}
    if unknown:
        raise ValueError(f"unknown edge map fields: {sorted(unknown)}")
    ring = ring_from_name(data["ring"])
    entries = []
    for row in data["entries"]:
        unknown = set(row) - {"x", "y", "orient", "color", "value"}
        if unknown:
            raise ValueError(f"unknown entry fields: {sorted(unknown)}")
        if row["orient"] not in ("H", "V"):
            raise ValueError(f"bad orientation {row['orient']!r}")
        key = ((row["x"], row["y"], row["orient"]), color_from_str(row["color"]))
        entries.append((key, row["value"]))
    return EdgeMap(ring, entries)


def dump_edgemap(f: EdgeMap) -> str:
    return json.dumps(edgemap_to_dict(f), indent=2) + "\n"


def load_edgemap(text: str) -> EdgeMap:
    return edgemap_from_dict(json.loads(text))
