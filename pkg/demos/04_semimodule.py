"""Recast tiling questions as membership questions in sparse modules.

Tiling sums live in a free module over the grid-translation ring: each
tile contributes a vector, translations act by shifting supports, and
"does a zero-sum tiling exist" becomes "is a target vector a combination
of the generators".  Over modular rings the combination becomes a subset
sum with pairwise-distinct translates.

Run with:  python3 demos/04_semimodule.py
"""

from tilechain.compiler import compile_tiles, initial_map
from tilechain.edges import Ring
from tilechain.engine import build_accepting_tiling, default_window
from tilechain.machines import corpus, mini_eraser
from tilechain.modules import (
    certificate_to_witness,
    eval_member_witness,
    eval_subset_witness,
    member_bounded,
    subset_sum_bounded,
    tiling_to_instance,
    tiling_to_subset_sum,
)

print("=== A small membership instance over the integers ===")
mini = mini_eraser()
ts = compile_tiles(mini)
f0 = initial_map(mini, "a")
inst = tiling_to_instance(ts, f0)
print(f"  rank {inst.rank} module, {len(inst.generators)} generators, "
      f"target support {len(inst.target.support())}")

witness = member_bounded(inst, (0, 0, 3, 3))
print(f"  bounded search found {len(witness)} terms")
print(f"  witness evaluates to target: "
      f"{eval_member_witness(inst, witness) == inst.target}")

print()
print("=== Certificates translate directly into witnesses ===")
tm = corpus()["unary-eraser"]
ts = compile_tiles(tm)
word = "aa"
cert = build_accepting_tiling(tm, word, fuel=500)
picks = certificate_to_witness(cert, ts)
print(f"  {len(cert.placements)} placements -> {len(picks)} witness terms")
f0 = initial_map(tm, word)
inst = tiling_to_instance(ts, f0)
print(f"  evaluates to target over Z: "
      f"{eval_subset_witness(inst, picks) == inst.target}")

print()
print("=== Over Z/2 the same question is a subset sum ===")
ring = Ring(2)
f2 = initial_map(tm, word, ring)
sub = tiling_to_subset_sum(ts, f2)
found = subset_sum_bounded(sub, default_window(cert))
print(f"  subset-sum search window {default_window(cert)}: "
      f"{len(found)} picks")
print(f"  identical to the certificate's own witness: {found == picks}")

print()
print("=== Negative instances stay negative ===")
walker = corpus()["right-walker"]
walker_sub = tiling_to_subset_sum(compile_tiles(walker),
                                  initial_map(walker, "a", ring))
print(f"  right-walker 'a' subset sum in (0, 0, 6, 8): "
      f"{subset_sum_bounded(walker_sub, (0, 0, 6, 8))}")
