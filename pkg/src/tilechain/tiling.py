"""Edge colors, square tiles and tiling certificates.

A tile is a unit square whose four sides carry colors.  Placing a tile at
``(x, y)`` puts its corners on the integer lattice points ``(x, y)`` through
``(x+1, y+1)``.  Colors form a tagged union: machine states, tape letters,
state-letter pairs for the cell under the head, seven special marker colors,
and the distinguished color ``c0`` whose sides contribute nothing when a tile
is evaluated as an edge map.

A certificate is a finite multiset of tile placements together with the
width and height of the region it is supposed to fill.  Nothing here knows
about Turing machines; certificates are checked purely through colors.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import NamedTuple, Optional


class Color(NamedTuple):
    kind: str
    a: str = ""
    b: str = ""


C0 = Color("c0")
ARROW_R = Color("arrow", "R")
ARROW_U = Color("arrow", "U")
ARROW_L = Color("arrow", "L")
ARROW_D = Color("arrow", "D")
DIAG = Color("diag")
TRI_L = Color("tri", "l")
TRI_R = Color("tri", "r")


def state(name: str) -> Color:
    return Color("state", name)


def letter(symbol: str) -> Color:
    return Color("letter", symbol)


def head(state_name: str, symbol: str) -> Color:
    return Color("head", state_name, symbol)


_KIND_RANK = {"letter": 0, "state": 1, "head": 2, "arrow": 3, "diag": 4,
              "tri": 5, "c0": 6}
_ARROW_RANK = {"R": 0, "U": 1, "L": 2, "D": 3}


def color_sort_key(color: Color):
    if color.kind == "arrow":
        return (_KIND_RANK["arrow"], _ARROW_RANK[color.a], "")
    return (_KIND_RANK[color.kind], color.a, color.b)


_ARROW_STR = {"R": "R-arrow", "U": "U-arrow", "L": "L-arrow", "D": "D-arrow"}
_STR_ARROW = {v: k for k, v in _ARROW_STR.items()}


def color_to_str(color: Color) -> str:
    kind = color.kind
    if kind == "c0":
        return "c0"
    if kind == "arrow":
        return _ARROW_STR[color.a]
    if kind == "diag":
        return "diag"
    if kind == "tri":
        return "tri-" + color.a
    if kind == "state":
        return "q:" + color.a
    if kind == "letter":
        return "a:" + color.a
    if kind == "head":
        return f"qa:{color.a},{color.b}"
    raise ValueError(f"unknown color kind {kind!r}")


def color_from_str(text: str) -> Color:
    if text == "c0":
        return C0
    if text == "diag":
        return DIAG
    if text in _STR_ARROW:
        return Color("arrow", _STR_ARROW[text])
    if text in ("tri-l", "tri-r"):
        return Color("tri", text[-1])
    if text.startswith("q:"):
        return state(text[2:])
    if text.startswith("a:"):
        return letter(text[2:])
    if text.startswith("qa:"):
        payload = text[3:]
        state_name, _, symbol = payload.partition(",")
        if not _:
            raise ValueError(f"malformed head color {text!r}")
        return head(state_name, symbol)
    raise ValueError(f"unknown color string {text!r}")


_GLYPH = {"c0": ".", "diag": "%"}


def color_glyph(color: Color) -> str:
    """Short printable form used by the text renderer."""
    if color.kind == "arrow":
        return {"R": ">", "U": "^", "L": "<", "D": "v"}[color.a]
    if color.kind == "tri":
        return "|>" if color.a == "r" else "<|"
    if color.kind == "state":
        return color.a
    if color.kind == "letter":
        return color.a
    if color.kind == "head":
        return color.a + "." + color.b
    return _GLYPH[color.kind]


@dataclass(frozen=True)
class Tile:
    """Side colors in (north, east, south, west) order plus an optional label.

    Equality and hashing ignore the label: a tile is its colors.
    """

    n: Color
    e: Color
    s: Color
    w: Color
    name: str = field(default="", compare=False)

    def sides(self) -> tuple[Color, Color, Color, Color]:
        return (self.n, self.e, self.s, self.w)


class Placement(NamedTuple):
    tile: Tile
    x: int
    y: int


@dataclass(frozen=True)
class TilingSystem:
    """A finite color set with its distinguished color and a finite tile set.

    Tiles are kept in a fixed order; several operations treat the position of
    a tile in this tuple as its generator index.
    """

    colors: tuple[Color, ...]
    tiles: tuple[Tile, ...]
    distinguished: Color = C0

    def __post_init__(self):
        colorset = set(self.colors)
        if len(colorset) != len(self.colors):
            raise ValueError("duplicate colors")
        if self.distinguished not in colorset:
            raise ValueError("distinguished color missing from color set")
        seen = set()
        for tile in self.tiles:
            for side in tile.sides():
                if side not in colorset:
                    raise ValueError(f"tile side color {side} not in color set")
            if tile.sides() in seen:
                raise ValueError(f"duplicate tile {tile.sides()}")
            seen.add(tile.sides())

    def tile_named(self, name: str) -> Tile:
        for tile in self.tiles:
            if tile.name == name:
                return tile
        raise KeyError(name)

    def index_of(self, tile: Tile) -> int:
        return self.tiles.index(tile)


@dataclass(frozen=True)
class Certificate:
    """Tile placements claimed to cancel an initial edge map.

    ``width_m`` is the x coordinate of the rightmost column, ``rows`` the y
    coordinate of the top (cap) row.  Placements are stored row-major,
    bottom row first.
    """

    placements: tuple[Placement, ...]
    width_m: int
    rows: int


def sort_placements(placements) -> tuple[Placement, ...]:
    return tuple(sorted(placements, key=lambda p: (p.y, p.x)))


# -- JSON -------------------------------------------------------------------

def tile_to_dict(tile: Tile) -> dict:
    data = {
        "n": color_to_str(tile.n),
        "e": color_to_str(tile.e),
        "s": color_to_str(tile.s),
        "w": color_to_str(tile.w),
    }
    if tile.name:
        data["name"] = tile.name
    return data


def tile_from_dict(data: dict) -> Tile:
    unknown = set(data) - {"n", "e", "s", "w", "name"}
    if unknown:
        raise ValueError(f"unknown tile fields: {sorted(unknown)}")
    return Tile(
        n=color_from_str(data["n"]),
        e=color_from_str(data["e"]),
        s=color_from_str(data["s"]),
        w=color_from_str(data["w"]),
        name=data.get("name", ""),
    )


def system_to_dict(ts: TilingSystem) -> dict:
    return {
        "colors": [color_to_str(c) for c in ts.colors],
        "distinguished": color_to_str(ts.distinguished),
        "tiles": [tile_to_dict(t) for t in ts.tiles],
    }


def system_from_dict(data: dict) -> TilingSystem:
    unknown = set(data) - {"colors", "distinguished", "tiles"}
    if unknown:
        raise ValueError(f"unknown tiling system fields: {sorted(unknown)}")
    return TilingSystem(
        colors=tuple(color_from_str(c) for c in data["colors"]),
        tiles=tuple(tile_from_dict(t) for t in data["tiles"]),
        distinguished=color_from_str(data.get("distinguished", "c0")),
    )


def certificate_to_dict(cert: Certificate) -> dict:
    rows = []
    for placement in sort_placements(cert.placements):
        rows.append({
            "tile": tile_to_dict(placement.tile),
            "x": placement.x,
            "y": placement.y,
        })
    return {"m": cert.width_m, "rows": cert.rows, "placements": rows}


def certificate_from_dict(data: dict, ts: Optional[TilingSystem] = None) -> Certificate:
    unknown = set(data) - {"m", "rows", "placements"}
    if unknown:
        raise ValueError(f"unknown certificate fields: {sorted(unknown)}")
    placements = []
    for row in data["placements"]:
        ref = row["tile"]
        if isinstance(ref, str):
            if ts is None:
                raise ValueError("tile referenced by name but no tiling system given")
            tile = ts.tile_named(ref)
        else:
            tile = tile_from_dict(ref)
        placements.append(Placement(tile, row["x"], row["y"]))
    return Certificate(tuple(placements), data["m"], data["rows"])


def dump_system(ts: TilingSystem) -> str:
    return json.dumps(system_to_dict(ts), indent=2) + "\n"


def load_system(text: str) -> TilingSystem:
    return system_from_dict(json.loads(text))


def dump_certificate(cert: Certificate) -> str:
    return json.dumps(certificate_to_dict(cert), indent=2) + "\n"


def load_certificate(text: str, ts: Optional[TilingSystem] = None) -> Certificate:
    return certificate_from_dict(json.loads(text), ts)
