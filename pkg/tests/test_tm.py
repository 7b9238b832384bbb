"""Machine model: validation, stepping, runs, normalization, JSON."""

import dataclasses

import pytest

from tilechain import (Configuration, LeftEdgeViolation, MissingTransition,
                       TuringMachine, dump_tm, initial_config, load_tm,
                       normalize, run, step, tape_extent, validate)
from tilechain.machines import (BLANK, corpus, mini_eraser, right_walker,
                                two_symbol_eraser, unary_eraser)
from tilechain.tm import make_config, tm_from_dict, tm_to_dict

from conftest import RUN_FUEL


def tiny(**overrides) -> TuringMachine:
    """A well-formed two-state machine to mutate in validation tests."""
    fields = dict(
        states=("q0", "qf"),
        tape_alphabet=("a", BLANK),
        input_alphabet=("a",),
        blank=BLANK,
        initial="q0",
        accepting="qf",
        transitions={
            ("q0", "a"): ("qf", BLANK, "L"),
            ("q0", BLANK): ("qf", BLANK, "L"),
        },
    )
    fields.update(overrides)
    return TuringMachine(**fields)


class TestValidate:
    def test_corpus_machines_are_well_formed(self):
        for tm in corpus().values():
            assert validate(tm) == []

    def test_bad_state_name(self):
        # Commas are reserved by the head-pair color encoding.
        tm = tiny(states=("q0", "qf", "q,1"))
        assert "bad state name 'q,1'" in validate(tm)
        assert "bad state name ''" in validate(tiny(states=("q0", "qf", "")))

    def test_empty_tape_symbol(self):
        tm = tiny(tape_alphabet=("a", BLANK, ""))
        assert "empty tape symbol" in validate(tm)

    def test_duplicates(self):
        assert "duplicate state names" in validate(
            tiny(states=("q0", "qf", "q0")))
        assert "duplicate tape symbols" in validate(
            tiny(tape_alphabet=("a", BLANK, "a")))

    def test_blank_rules(self):
        assert any("not in tape alphabet" in p
                   for p in validate(tiny(blank="z")))
        assert any("must not be an input symbol" in p
                   for p in validate(tiny(input_alphabet=("a", BLANK))))

    def test_input_subset_of_tape(self):
        tm = tiny(input_alphabet=("a", "z"))
        assert any("input symbol 'z' not in tape alphabet" == p
                   for p in validate(tm))

    def test_endpoint_states(self):
        assert any("initial state" in p for p in validate(tiny(initial="zz")))
        assert any("accepting state 'zz' not in states" == p
                   for p in validate(tiny(accepting="zz")))

    def test_transition_references(self):
        base = tiny().transitions
        cases = [
            ({("zz", "a"): ("qf", "a", "L")}, "transition from unknown state"),
            ({("q0", "z"): ("qf", "a", "L")}, "transition reads unknown"),
            ({("q0", "a"): ("zz", "a", "L")}, "transition to unknown state"),
            ({("q0", "a"): ("qf", "z", "L")}, "transition writes unknown"),
            ({("q0", "a"): ("qf", "a", "U")}, "is not L or R"),
        ]
        for patch, needle in cases:
            tm = tiny(transitions={**base, **patch})
            assert any(needle in p for p in validate(tm)), needle

    def test_accepting_state_must_be_terminal(self):
        tm = tiny(transitions={**tiny().transitions,
                               ("qf", "a"): ("q0", "a", "R")})
        assert any("accepting state has outgoing transition" in p
                   for p in validate(tm))

    def test_partial_table_is_reported(self):
        problems = validate(mini_eraser())
        assert any(p.startswith("missing transition for") for p in problems)


class TestStepping:
    def test_make_config_pads_to_head(self):
        config = make_config("q0", ["a"], 3, BLANK)
        assert config.tape == ("a", BLANK, BLANK, BLANK)
        assert config.head == 3

    def test_make_config_rejects_negative_head(self):
        with pytest.raises(LeftEdgeViolation):
            make_config("q0", ["a"], -1, BLANK)

    def test_step_applies_table_entry(self):
        tm = unary_eraser()
        config = initial_config(tm, "aa")
        after = step(tm, config)
        assert after == Configuration("qs", ("a", "a"), 1)

    def test_step_on_accepting_returns_none(self):
        tm = tiny()
        assert step(tm, Configuration("qf", (BLANK,), 0)) is None

    def test_step_missing_transition(self):
        tm = mini_eraser()
        with pytest.raises(MissingTransition, match=r"\('q1', 'a'\)"):
            step(tm, Configuration("q1", ("a",), 0))

    def test_step_left_edge(self):
        tm = tiny()
        with pytest.raises(LeftEdgeViolation, match="cell 0"):
            step(tm, initial_config(tm, "a"))

    def test_initial_config_rejects_foreign_symbols(self):
        with pytest.raises(ValueError, match="not in input alphabet"):
            initial_config(unary_eraser(), "ab")


class TestRun:
    def test_accepting_trace_shape(self):
        trace = run(unary_eraser(), "aaa", RUN_FUEL)
        assert trace is not None
        first, last = trace.configs[0], trace.configs[-1]
        assert first.state == "q0" and first.tape == ("a", "a", "a")
        assert last.state == "qf" and last.head == 0
        assert all(s == BLANK for s in last.tape)
        assert trace.steps == len(trace.configs) - 1
        assert trace.space == max(c.head for c in trace.configs) + 1

    def test_fuel_exhaustion_is_not_rejection(self):
        assert run(right_walker(), "a", 50) is None

    def test_too_little_fuel(self):
        full = run(unary_eraser(), "aaa", RUN_FUEL)
        assert run(unary_eraser(), "aaa", full.steps - 1) is None
        assert run(unary_eraser(), "aaa", full.steps) is not None

    def test_two_symbol_language(self):
        tm = two_symbol_eraser()
        assert run(tm, "abab", RUN_FUEL) is not None
        assert run(tm, "ba", RUN_FUEL) is None

    def test_tape_extent(self):
        assert tape_extent(Configuration("q", (BLANK, "a", BLANK), 0),
                           BLANK) == 2
        assert tape_extent(Configuration("q", (BLANK,) * 3, 2), BLANK) == 3


class TestNormalize:
    def test_total_machine_unchanged(self):
        tm = unary_eraser()
        assert normalize(tm) is tm

    def test_partial_machine_becomes_total(self):
        norm = normalize(mini_eraser())
        assert validate(norm) == []
        assert norm.input_alphabet == ("a",)

    def test_normalized_accepts_clean(self):
        """Acceptance parks the head on cell 0 with the tape erased."""
        trace = run(normalize(mini_eraser()), "a", RUN_FUEL)
        assert trace is not None
        last = trace.configs[-1]
        assert last.head == 0
        assert all(s == BLANK for s in last.tape)

    def test_language_preserved_up_to_length_five(self):
        raw = mini_eraser()
        norm = normalize(raw)

        def raw_accepts(word: str) -> bool:
            try:
                return run(raw, word, RUN_FUEL) is not None
            except MissingTransition:
                return False

        for n in range(1, 6):
            word = "a" * n
            assert raw_accepts(word) == (run(norm, word, RUN_FUEL) is not None)

    def test_total_corpus_trivially_normalized(self):
        for tm in corpus().values():
            assert normalize(tm) is tm


class TestJson:
    def test_round_trip(self):
        for tm in [*corpus().values(), mini_eraser()]:
            assert load_tm(dump_tm(tm)) == tm

    def test_dump_is_deterministic(self):
        assert dump_tm(unary_eraser()) == dump_tm(unary_eraser())

    def test_unknown_fields_rejected(self):
        data = tm_to_dict(unary_eraser())
        data["color"] = "blue"
        with pytest.raises(ValueError, match="unknown machine fields"):
            tm_from_dict(data)

    def test_missing_fields_rejected(self):
        data = tm_to_dict(unary_eraser())
        del data["blank"]
        with pytest.raises(ValueError, match="missing machine fields"):
            tm_from_dict(data)

    def test_duplicate_transitions_rejected(self):
        data = tm_to_dict(unary_eraser())
        data["transitions"].append(dict(data["transitions"][0]))
        with pytest.raises(ValueError, match="duplicate transition"):
            tm_from_dict(data)

    def test_transition_field_strictness(self):
        data = tm_to_dict(unary_eraser())
        data["transitions"][0]["speed"] = 9
        with pytest.raises(ValueError, match="unknown transition fields"):
            tm_from_dict(data)

    def test_not_an_object(self):
        with pytest.raises(ValueError, match="JSON object"):
            tm_from_dict([1, 2])


def test_machine_is_immutable():
    tm = unary_eraser()
    with pytest.raises(dataclasses.FrozenInstanceError):
        tm.blank = "x"
