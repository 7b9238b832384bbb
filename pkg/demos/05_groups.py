"""Carry module membership into word products in two ambient groups.

Module elements embed as lamp configurations of a walker on the grid
(values spread along x with a stride), so membership questions become
"is this element a product of generator words".  A second ambient group
tracks signed edge flows of closed walks; commutators paint unit grid
cells, which is exactly the module picture again after a change of
coordinates.

Run with:  python3 demos/05_groups.py
"""

from tilechain.compiler import compile_tiles, initial_map
from tilechain.groups import (
    METABELIAN,
    WREATH,
    cells_to_flow,
    embed_module,
    flow_decompose,
    make_submonoid_instance,
    metabelian_eval,
    module_to_word,
    unembed_module,
    verify_submonoid_certificate,
    witness_to_submonoid_certificate,
    wreath_bindings,
    wreath_eval,
)
from tilechain.machines import mini_eraser
from tilechain.modules import (
    certificate_to_witness,
    tiling_to_instance,
    unit,
)
from tilechain.edges import Ring, Z
from tilechain.engine import build_accepting_tiling

print("=== Words with moving lamps ===")
bindings = wreath_bindings(Z)
word = "g x g X".split()
elem = wreath_eval(word, bindings, Z)
print(f"  '{' '.join(word)}' lights lamps {dict(elem.fun())} "
      f"and returns to {elem.pos}")

print()
print("=== A rank-2 module element as lamps ===")
e = unit(Z, 2, 0, 0, 0) + unit(Z, 2, 1, 0, 1).scale(3)
lamps = embed_module(e, stride=2)
print(f"  element {dict(e.items())}")
print(f"  stride-2 lamps {lamps}")
back = unembed_module(lamps, 2, 2, Z)
print(f"  unembedding recovers it: {back == e}")
word = module_to_word(e, stride=2)
print(f"  as a word: '{word}'")
evaluated = wreath_eval(word, bindings, Z)
print(f"  word evaluates to the embedding: "
      f"{dict(evaluated.fun()) == lamps and evaluated.pos == (0, 0)}")

print()
print("=== Closed walks and the cells they enclose ===")
square = "x y X Y".split()
m = metabelian_eval(square)
print(f"  unit square walk: displacement {m.ab}, flow {dict(m.flow())}")
big = "x x y y X X Y Y".split()
flow = metabelian_eval(big).flow()
cells = flow_decompose(flow)
print(f"  2x2 square walk covers cells {dict(cells)}")
print(f"  cells rebuild the flow: {cells_to_flow(cells) == flow}")

print()
print("=== Tiling membership as a word-product certificate ===")
mini = mini_eraser()
ts = compile_tiles(mini)
cert = build_accepting_tiling(mini, "a", fuel=500)
sem = tiling_to_instance(ts, initial_map(mini, "a"))
picks = certificate_to_witness(cert, ts)
for flavor in (WREATH, METABELIAN):
    inst = make_submonoid_instance(sem, flavor)
    indices = witness_to_submonoid_certificate(picks, inst)
    ok = verify_submonoid_certificate(inst, indices)
    print(f"  {flavor:>10s}: {len(inst.generators)} generator words, "
          f"certificate of {len(indices)} indices verifies: {ok}")

print()
print("=== Tampered certificates fail ===")
inst = make_submonoid_instance(sem, WREATH)
indices = witness_to_submonoid_certificate(picks, inst)
broken = indices[:-1]
print(f"  drop the last index: "
      f"{verify_submonoid_certificate(inst, broken)}")
