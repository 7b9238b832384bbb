"""Text and SVG renderings of edge maps and tiling certificates.

ASCII grids list rows top line first but bottom row of the grid last-to-
first, i.e. the printed page matches the plane (higher y printed higher).
SVG output uses exactly one rectangle per placed tile, with the four side
colors as small labels, so rectangle count equals placement count.
"""

from __future__ import annotations

from .edges import EdgeMap
from .tiling import Certificate, color_glyph, color_sort_key

_MAX_SPAN = 10_000


class UnboundedSupport(ValueError):
    """The object spans too large a region to lay out on a grid."""


def _check_span(xmin: int, xmax: int, ymin: int, ymax: int) -> None:
    if xmax - xmin > _MAX_SPAN or ymax - ymin > _MAX_SPAN:
        raise UnboundedSupport(
            f"span {xmax - xmin} x {ymax - ymin} exceeds {_MAX_SPAN}")


def render_edgemap_ascii(f: EdgeMap) -> str:
    """One line per grid height and orientation, one cell per x position;
    each cell lists the signed colors on that edge."""
    if f.is_zero():
        return ""
    cells: dict[tuple[int, int, str], list] = {}
    for ((x, y, orient), color), value in f.support():
        cells.setdefault((x, y, orient), []).append(
            (color_sort_key(color), f"{value:+d}" + color_glyph(color)))
    rendered: dict[tuple[int, int, str], str] = {}
    for key, parts in cells.items():
        rendered[key] = ",".join(text for _, text in sorted(parts))
    xs = [x for x, _, _ in rendered]
    ys = [y for _, y, _ in rendered]
    xmin, xmax, ymin, ymax = min(xs), max(xs), min(ys), max(ys)
    _check_span(xmin, xmax, ymin, ymax)
    width = max(max(len(t) for t in rendered.values()) + 1, 6)
    lines = []
    header = " " * 8 + "".join(f"x={x}".ljust(width)
                               for x in range(xmin, xmax + 1))
    lines.append(header.rstrip())
    for y in range(ymax, ymin - 1, -1):
        for orient in ("V", "H"):
            row = f"y={y} {orient}".ljust(8)
            row += "".join(rendered.get((x, y, orient), "").ljust(width)
                           for x in range(xmin, xmax + 1))
            lines.append(row.rstrip())
    return "\n".join(lines) + "\n"


def render_certificate_ascii(cert: Certificate) -> str:
    """Draw each placed tile as a bordered box with its four side colors
    (north and south on the borders, west and east inside)."""
    if not cert.placements:
        return ""
    grid = {(p.x, p.y): p.tile for p in cert.placements}
    xs = [x for x, _ in grid]
    ys = [y for _, y in grid]
    xmin, xmax, ymin, ymax = min(xs), max(xs), min(ys), max(ys)
    _check_span(xmin, xmax, ymin, ymax)
    glyphs = {pos: tuple(color_glyph(c) for c in tile.sides())
              for pos, tile in grid.items()}
    inner = max(max(len(n) for g in glyphs.values() for n in g) * 2 + 2, 8)
    blank = " " * (inner + 2)
    lines: list[str] = []
    for y in range(ymax, ymin - 1, -1):
        band = [[] for _ in range(5)]
        for x in range(xmin, xmax + 1):
            if (x, y) not in glyphs:
                for part in band:
                    part.append(blank)
                continue
            n, e, s, w = glyphs[(x, y)]
            band[0].append("+" + n.center(inner, "-") + "+")
            band[1].append("|" + " " * inner + "|")
            pad = " " * (inner - len(w) - len(e))
            band[2].append("|" + w + pad + e + "|")
            band[3].append("|" + " " * inner + "|")
            band[4].append("+" + s.center(inner, "-") + "+")
        labels = ["", "", f"y={y} ", "", ""]
        margin = max(len(lab) for lab in labels)
        for lab, part in zip(labels, band):
            lines.append((lab.ljust(margin) + "".join(part)).rstrip())
    return "\n".join(lines) + "\n"


_SVG_UNIT = 60


def _svg_header(xmin: int, ymin: int, xmax: int, ymax: int,
                pad: int = 1) -> tuple[list[str], int]:
    width = (xmax - xmin + 2 * pad) * _SVG_UNIT
    height = (ymax - ymin + 2 * pad) * _SVG_UNIT
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" '
        f'viewBox="0 0 {width} {height}" '
        f'font-family="monospace" font-size="11">',
    ]
    return lines, pad


def _svg_x(x: int, xmin: int, pad: int) -> int:
    return (x - xmin + pad) * _SVG_UNIT


def _svg_y(y: int, ymax: int, pad: int) -> int:
    # SVG's y axis points down; flip so larger grid y is drawn higher.
    return (ymax - y + pad) * _SVG_UNIT


def render_certificate_svg(cert: Certificate) -> str:
    """One rectangle per placement, side colors as labels."""
    if not cert.placements:
        return ('<?xml version="1.0" encoding="UTF-8"?>\n'
                '<svg xmlns="http://www.w3.org/2000/svg" '
                'viewBox="0 0 60 60"></svg>\n')
    xs = [p.x for p in cert.placements]
    ys = [p.y for p in cert.placements]
    xmin, xmax, ymin, ymax = min(xs), max(xs), min(ys), max(ys)
    _check_span(xmin, xmax, ymin, ymax)
    lines, pad = _svg_header(xmin, ymin, xmax, ymax)
    u = _SVG_UNIT
    for p in cert.placements:
        left = _svg_x(p.x, xmin, pad)
        top = _svg_y(p.y, ymax, pad) - u
        n, e, s, w = (color_glyph(c) for c in p.tile.sides())
        lines.append(f'<rect x="{left}" y="{top}" width="{u}" height="{u}" '
                     f'fill="none" stroke="black"/>')
        cx = left + u // 2
        lines.append(f'<text x="{cx}" y="{top + 12}" '
                     f'text-anchor="middle">{n}</text>')
        lines.append(f'<text x="{cx}" y="{top + u - 4}" '
                     f'text-anchor="middle">{s}</text>')
        lines.append(f'<text x="{left + 4}" y="{top + u // 2}">{w}</text>')
        lines.append(f'<text x="{left + u - 4}" y="{top + u // 2}" '
                     f'text-anchor="end">{e}</text>')
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def render_edgemap_svg(f: EdgeMap) -> str:
    """One line segment per colored edge with a signed label."""
    if f.is_zero():
        return ('<?xml version="1.0" encoding="UTF-8"?>\n'
                '<svg xmlns="http://www.w3.org/2000/svg" '
                'viewBox="0 0 60 60"></svg>\n')
    keys = [key for key, _ in f.support()]
    xs = [x for (x, _, _), _ in keys]
    ys = [y for (_, y, _), _ in keys]
    xmin, xmax, ymin, ymax = min(xs), max(xs), min(ys), max(ys)
    _check_span(xmin, xmax, ymin, ymax)
    lines, pad = _svg_header(xmin, ymin, xmax, ymax)
    u = _SVG_UNIT
    for ((x, y, orient), color), value in f.support():
        x1 = _svg_x(x, xmin, pad)
        y1 = _svg_y(y, ymax, pad)
        x2, y2 = (x1 + u, y1) if orient == "H" else (x1, y1 - u)
        lines.append(f'<line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" '
                     f'stroke="black"/>')
        label = f"{value:+d}{color_glyph(color)}"
        lx = (x1 + x2) // 2 + 3
        ly = (y1 + y2) // 2 - 3
        lines.append(f'<text x="{lx}" y="{ly}">{label}</text>')
    lines.append("</svg>")
    return "\n".join(lines) + "\n"
