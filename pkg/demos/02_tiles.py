"""Compile a machine into an edge-colored tile set and build the input row.

Each tile is a unit square whose four edges carry colors; a machine step
becomes a vertical color hand-off, so whole runs become tilings.  The
input word itself becomes a finitely supported map from colored edges to
integers whose negation a valid tiling must cancel.

Run with:  python3 demos/02_tiles.py
"""

from tilechain.compiler import compile_tiles, initial_map, machine_colors
from tilechain.machines import corpus
from tilechain.render import render_edgemap_ascii

tm = corpus()["unary-eraser"]

print("=== Colors derived from the machine ===")
colors = machine_colors(tm)
by_kind = {}
for color in colors:
    by_kind.setdefault(color.kind, []).append(color)
for kind, group in sorted(by_kind.items()):
    names = ", ".join(str(c) for c in group[:6])
    more = f", … ({len(group)} total)" if len(group) > 6 else ""
    print(f"  {kind:>7s}: {names}{more}")

print()
print("=== The compiled tile set ===")
ts = compile_tiles(tm)
print(f"  {len(ts.tiles)} tiles over {len(ts.colors)} colors")
for tile in ts.tiles[:8]:
    print(f"  {tile.name:>24s}  N={tile.n} E={tile.e} "
          f"S={tile.s} W={tile.w}")
print(f"  … and {len(ts.tiles) - 8} more")

print()
print("=== The input row for 'aa' as an edge map ===")
f0 = initial_map(tm, "aa")
support = f0.support()
print(f"  {len(support)} supported (edge, color) pairs:")
for key, value in support[:10]:
    print(f"    {key} -> {value}")
print()
print(render_edgemap_ascii(f0))
