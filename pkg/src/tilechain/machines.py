"""A small corpus of concrete machines used by tests, demos and docs.

All four machines share the blank symbol "_" and accept (when they accept
at all) in the configuration the tiling builder requires: head on cell 0,
tape all blank.  The first three have total transition tables off the
accepting state; the mini eraser is deliberately partial, for exercising
validation and normalization.
"""

from __future__ import annotations

from .tm import TuringMachine

BLANK = "_"


def _walker_loop(states: tuple[str, str],
                 symbols: tuple[str, ...]) -> dict:
    """A two-state rightward walk that never halts: the reject sink."""
    first, second = states
    table = {}
    for symbol in symbols:
        table[(first, symbol)] = (second, symbol, "R")
        table[(second, symbol)] = (first, symbol, "R")
    return table


def unary_eraser() -> TuringMachine:
    """Accepts every nonempty word over {a} by erasing it.

    Skips the first letter, sweeps right erasing the rest, walks back to
    erase cell 0, then confirms the next cell is blank and parks on
    cell 0.  Undefined situations fall into the rightward reject walk.
    """
    delta = {
        ("q0", "a"): ("qs", "a", "R"),
        ("q0", BLANK): ("lp0", BLANK, "R"),
        ("qs", "a"): ("qs", BLANK, "R"),
        ("qs", BLANK): ("qb", BLANK, "L"),
        ("qb", BLANK): ("qb", BLANK, "L"),
        ("qb", "a"): ("qe", BLANK, "R"),
        ("qe", BLANK): ("qf", BLANK, "L"),
        ("qe", "a"): ("lp0", "a", "R"),
    }
    delta.update(_walker_loop(("lp0", "lp1"), ("a", BLANK)))
    return TuringMachine(
        states=("q0", "qs", "qb", "qe", "lp0", "lp1", "qf"),
        tape_alphabet=("a", BLANK),
        input_alphabet=("a",),
        blank=BLANK,
        initial="q0",
        accepting="qf",
        transitions=delta,
    )


def two_symbol_eraser() -> TuringMachine:
    """Accepts words over {a, b} that start with a, by marking cell 0
    with # and erasing everything.

    The first letter must be a (replaced by the # marker); the sweep
    erases letters rightwards to the first blank, walks back to the
    marker, erases it, and parks on cell 0.  Words starting with b walk
    right forever.
    """
    symbols = ("a", "b", "#", BLANK)
    delta = {
        ("q0", "a"): ("qs", "#", "R"),
        ("q0", "b"): ("lp0", "b", "R"),
        ("q0", "#"): ("lp0", "#", "R"),
        ("q0", BLANK): ("lp0", BLANK, "R"),
        ("qs", "a"): ("qs", BLANK, "R"),
        ("qs", "b"): ("qs", BLANK, "R"),
        ("qs", "#"): ("lp0", "#", "R"),
        ("qs", BLANK): ("qb", BLANK, "L"),
        ("qb", BLANK): ("qb", BLANK, "L"),
        ("qb", "#"): ("qe", BLANK, "R"),
        ("qb", "a"): ("lp0", "a", "R"),
        ("qb", "b"): ("lp0", "b", "R"),
        ("qe", BLANK): ("qf", BLANK, "L"),
        ("qe", "a"): ("lp0", "a", "R"),
        ("qe", "b"): ("lp0", "b", "R"),
        ("qe", "#"): ("lp0", "#", "R"),
    }
    delta.update(_walker_loop(("lp0", "lp1"), symbols))
    return TuringMachine(
        states=("q0", "qs", "qb", "qe", "lp0", "lp1", "qf"),
        tape_alphabet=symbols,
        input_alphabet=("a", "b"),
        blank=BLANK,
        initial="q0",
        accepting="qf",
        transitions=delta,
    )


def right_walker() -> TuringMachine:
    """Never accepts: walks right forever on any input."""
    return TuringMachine(
        states=("q0", "qf"),
        tape_alphabet=("a", BLANK),
        input_alphabet=("a",),
        blank=BLANK,
        initial="q0",
        accepting="qf",
        transitions={
            ("q0", "a"): ("q0", "a", "R"),
            ("q0", BLANK): ("q0", BLANK, "R"),
        },
    )


def mini_eraser() -> TuringMachine:
    """Three states, two rules, accepts exactly "a"; deliberately partial
    (for example, reading a in state q1 is undefined)."""
    return TuringMachine(
        states=("q0", "q1", "qf"),
        tape_alphabet=("a", BLANK),
        input_alphabet=("a",),
        blank=BLANK,
        initial="q0",
        accepting="qf",
        transitions={
            ("q0", "a"): ("q1", BLANK, "R"),
            ("q1", BLANK): ("qf", BLANK, "L"),
        },
    )


def corpus() -> dict[str, TuringMachine]:
    """The three total machines used by the end-to-end tests."""
    return {
        "unary-eraser": unary_eraser(),
        "two-symbol-eraser": two_symbol_eraser(),
        "right-walker": right_walker(),
    }
