"""Describe all subset-sum witnesses at once with one regular expression.

Witnesses with distinct translates can be ordered bottom-to-top, left-to-
right, so every witness is spelled by a single sweep word: walk the grid
in that order, planting generator lamps along the way, and return home.
The set of all such sweeps is a regular language, making "is the target
a subset sum" the same as "does some accepted word evaluate to the
target".

Run with:  python3 demos/06_rational.py
"""

from tilechain.compiler import compile_tiles, initial_map
from tilechain.edges import Ring
from tilechain.engine import build_accepting_tiling
from tilechain.groups import unembed_module, wreath_eval
from tilechain.machines import mini_eraser
from tilechain.modules import (
    SemimoduleInstance,
    certificate_to_witness,
    subset_sum_bounded,
    tiling_to_subset_sum,
    unit,
)
from tilechain.rational import (
    build_L,
    certificate_to_word,
    enumerate_zero_position_hits,
    expr_to_text,
    make_rational_instance,
    nfa_accepts,
    rational_member_bounded,
    regex_to_nfa,
)

print("=== The sweep language for two generators ===")
expr = build_L(2)
print(f"  {expr_to_text(expr)}")
nfa = regex_to_nfa(expr)
print(f"  compiles to an automaton with {nfa.state_count} states")
for word in ("", "g0 x y X Y", "g1 y g0 x y X Y Y", "x g0"):
    shown = word if word else "(empty)"
    print(f"  accepts {shown!r}: {nfa_accepts(nfa, word)}")

print()
print("=== A tiling certificate becomes one accepted word ===")
mini = mini_eraser()
ts = compile_tiles(mini)
ring = Ring(2)
cert = build_accepting_tiling(mini, "a", fuel=500)
picks = certificate_to_witness(cert, ts)
word = certificate_to_word(picks)
language = regex_to_nfa(build_L(len(ts.tiles)))
print(f"  {len(picks)} picks -> sweep word of {len(word.split())} tokens")
print(f"  accepted by the {len(ts.tiles)}-generator language: "
      f"{nfa_accepts(language, word)}")

sub = tiling_to_subset_sum(ts, initial_map(mini, "a", ring))
rat = make_rational_instance(sub)
print(f"  evaluates to the instance target: "
      f"{wreath_eval(word, rat.bindings, ring) == rat.target}")

print()
print("=== Searching the language directly ===")
f = unit(ring, 1, 0, 0, 0)
toy = SemimoduleInstance(ring, 1, (f,), f + f.translate(1, 0),
                         mode="subset-sum")
toy_rat = make_rational_instance(toy)
found = rational_member_bounded(toy_rat.expr, toy_rat.bindings,
                                toy_rat.target, 8, ring)
print(f"  shortest witness word for a two-lamp target: '{found}'")

print()
print("=== Exhaustive enumeration cross-checks the subset sums ===")
hits = enumerate_zero_position_hits(toy_rat.expr, toy_rat.bindings, ring, 8)
print(f"  {len(hits)} distinct zero-displacement values from words of "
      f"length <= 8")
reachable = 0
for hit in hits:
    element = unembed_module(dict(hit.fun()), toy_rat.stride, 1, ring)
    check = SemimoduleInstance(ring, 1, toy.generators, element,
                               mode="subset-sum")
    if subset_sum_bounded(check, (-4, -4, 4, 4), fuel=50_000) is not None:
        reachable += 1
print(f"  reachable as distinct-translate subset sums: "
      f"{reachable}/{len(hits)}")
