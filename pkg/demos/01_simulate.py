"""Simulate the bundled machines and inspect their traces.

Run with:  python3 demos/01_simulate.py
"""

from tilechain.machines import corpus, mini_eraser
from tilechain.tm import normalize, run, validate

print("=== The bundled machine corpus ===")
for name, tm in corpus().items():
    print(f"  {name}: {len(tm.states)} states, "
          f"input alphabet {sorted(tm.input_alphabet)}, "
          f"{len(tm.transitions)} transitions")

print()
print("=== Validation catches malformed machines ===")
tm = corpus()["unary-eraser"]
print(f"  unary-eraser problems: {validate(tm) or 'none'}")
mini = mini_eraser()
print(f"  mini-eraser (deliberately partial) problems:")
for problem in validate(mini):
    print(f"    - {problem}")

print()
print("=== Normalization completes the partial machine ===")
fixed = normalize(mini)
print(f"  after normalize: problems = {validate(fixed) or 'none'}")
print(f"  states grew from {len(mini.states)} to {len(fixed.states)}")

print()
print("=== Running the unary eraser on 'aaa' ===")
tm = corpus()["unary-eraser"]
trace = run(tm, list("aaa"), fuel=500)
for i, config in enumerate(trace.configs):
    tape = " ".join(config.tape)
    print(f"  {i:3d}  {config.state:>8s} @ {config.head}  [{tape}]")
print(f"  accepted in {trace.steps} steps using {trace.space} cells")

print()
print("=== The right-walker never halts ===")
walker = corpus()["right-walker"]
print(f"  run('aa', fuel=500) -> {run(walker, list('aa'), fuel=500)}")
