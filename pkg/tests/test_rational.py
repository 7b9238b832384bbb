"""Tests for the regular-language layer: the sweep expression, its
automaton, witness-to-word compilation, and the bounded membership
search over (automaton state, group element) pairs."""

import random

import pytest

from tilechain.edges import Ring, Z
from tilechain.groups import UnboundSymbol, wreath_eval, wreath_identity
from tilechain.modules import DuplicateShift, SemimoduleInstance, unit
from tilechain.rational import (
    Concat,
    Lit,
    Nfa,
    RationalInstance,
    Star,
    Union,
    build_L,
    certificate_to_word,
    dump_nfa,
    enumerate_zero_position_hits,
    expr_from_text,
    expr_letters,
    expr_to_text,
    load_nfa,
    make_rational_instance,
    nfa_accepts,
    nfa_from_dict,
    nfa_to_dict,
    rational_bindings,
    rational_from_dict,
    rational_member_bounded,
    rational_to_dict,
    regex_to_nfa,
    word_plants,
)


def subset_instance(ring, target, gens=None):
    gens = gens if gens is not None else (unit(ring, 1, 0, 0, 0),)
    return SemimoduleInstance(ring, 1, gens, target, mode="subset-sum")


# ---------------------------------------------------------------------------
# expressions


class TestExpressions:
    def test_sweep_expression_shape(self):
        expr = build_L(2)
        assert isinstance(expr, Concat) and len(expr.parts) == 3
        free, middle, free2 = expr.parts
        assert free == free2 == Star(Union((Lit("x"), Lit("X"),
                                            Lit("y"), Lit("Y"))))
        assert isinstance(middle, Star)
        inner = middle.inner
        assert isinstance(inner, Concat)
        plant, climb, realign = inner.parts
        assert plant == Star(Union((Lit("x"),
                                    Concat((Lit("g0"), Lit("x"))),
                                    Concat((Lit("g1"), Lit("x"))))))
        assert climb == Lit("y")
        assert realign == Star(Lit("X"))

    def test_sweep_needs_a_generator(self):
        with pytest.raises(ValueError, match="at least one generator"):
            build_L(0)

    def test_letters_in_first_appearance_order(self):
        assert expr_letters(build_L(2)) == ["x", "X", "y", "Y", "g0", "g1"]

    def test_text_round_trip(self):
        for expr in (Lit("x"),
                     Union((Lit("a"), Concat((Lit("b"), Lit("c"))))),
                     Star(Concat((Lit("a"), Star(Lit("b"))))),
                     build_L(1),
                     build_L(3)):
            assert expr_from_text(expr_to_text(expr)) == expr

    def test_parse_errors(self):
        with pytest.raises(ValueError, match="unbalanced parenthesis"):
            expr_from_text("( a b")
        with pytest.raises(ValueError, match="trailing tokens"):
            expr_from_text("a ) b")
        with pytest.raises(ValueError, match="unexpected token"):
            expr_from_text("a | *")


# ---------------------------------------------------------------------------
# automaton


class TestAutomaton:
    def test_state_count_is_stable(self):
        assert regex_to_nfa(build_L(1)).state_count == 45

    @pytest.mark.parametrize("word,expected", [
        ("", True),
        ("y X", True),
        ("x y X Y", True),
        ("g0 x y X Y", True),
        ("g0 x x g0 x y X X X Y", True),
        ("g0", False),
        ("g0 g0", False),
        ("g0 x", False),
        ("x g0 y", False),
    ])
    def test_sweep_acceptance(self, word, expected):
        assert nfa_accepts(regex_to_nfa(build_L(1)), word) is expected

    def test_token_stream_accepted(self):
        nfa = regex_to_nfa(build_L(1))
        assert nfa_accepts(nfa, ["g0", "x", "y", "X", "Y"])

    def test_alphabet(self):
        assert set(regex_to_nfa(build_L(2)).alphabet()) == \
            {"x", "X", "y", "Y", "g0", "g1"}


# ---------------------------------------------------------------------------
# witnesses as words


class TestWitnessWords:
    def test_empty_witness(self):
        assert certificate_to_word(()) == ""

    def test_single_pick(self):
        assert certificate_to_word(((0, 0, 0),)) == "g0 x y X Y"

    def test_two_picks_in_one_row(self):
        word = certificate_to_word(((0, 0, 0), (0, 2, 0)))
        assert word == "g0 x x g0 x y X X X Y"
        assert "g0 x x g0 x" in word

    def test_left_realignment_between_rows(self):
        word = certificate_to_word(((0, 2, 0), (0, 0, 1)))
        assert word == "x x g0 x y X X X g0 x y X Y Y"

    def test_empty_middle_row(self):
        word = certificate_to_word(((0, 0, 0), (0, 0, 2)))
        assert word == "g0 x y X y g0 x y X Y Y Y"

    def test_repeated_translation_rejected(self):
        with pytest.raises(DuplicateShift, match=r"\(1, 1\) used twice"):
            certificate_to_word(((0, 1, 1), (1, 1, 1)))

    def test_random_witnesses_compile_to_accepted_words(self):
        rng = random.Random(13)
        nfa = regex_to_nfa(build_L(3))
        for _ in range(100):
            positions = {(rng.randint(-3, 3), rng.randint(-3, 3))
                         for _ in range(rng.randint(0, 6))}
            picks = tuple((rng.randint(0, 2), dx, dy)
                          for dx, dy in positions)
            word = certificate_to_word(picks)
            assert nfa_accepts(nfa, word)
            assert sorted(word_plants(word)) == \
                sorted((g, dx, dy) for g, dx, dy in picks)

    def test_word_plants_tracks_position(self):
        assert word_plants("x x g1 X g0 y Y y g12") == \
            [(1, 2, 0), (0, 1, 0), (12, 1, 1)]
        assert word_plants("") == []

    def test_word_plants_rejects_foreign_tokens(self):
        with pytest.raises(UnboundSymbol, match="unexpected token 'z'"):
            word_plants("x z")


# ---------------------------------------------------------------------------
# instances and bounded search


class TestRationalInstances:
    def test_bindings_move_and_plant(self):
        ring = Ring(2)
        f = unit(ring, 1, 0, 0, 0)
        inst = subset_instance(ring, f)
        bindings = rational_bindings(inst)
        assert bindings["x"].pos == (1, 0)
        assert bindings["X"] == bindings["x"].inv()
        assert bindings["y"].pos == (0, 1)
        assert bindings["g0"].pos == (0, 0)
        assert bindings["g0"].fun() == {(0, 0): 1}

    def test_stride_spreads_higher_rank(self):
        ring = Ring(2)
        g = unit(ring, 3, 0, 0, 2)
        inst = SemimoduleInstance(ring, 3, (g,), g, mode="subset-sum")
        bindings = rational_bindings(inst)
        assert bindings["x"].pos == (3, 0)
        assert bindings["g0"].fun() == {(2, 0): 1}

    def test_instance_fields(self):
        ring = Ring(2)
        f = unit(ring, 1, 0, 0, 0)
        rat = make_rational_instance(subset_instance(ring, f))
        assert rat.ring == ring and rat.rank == 1 and rat.stride == 1
        assert rat.expr == build_L(1)
        assert rat.target.fun() == {(0, 0): 1}
        assert rat.target.pos == (0, 0)

    def test_requires_subset_sum_mode(self):
        f = unit(Z, 1, 0, 0, 0)
        with pytest.raises(ValueError, match="subset-sum"):
            make_rational_instance(SemimoduleInstance(Z, 1, (f,), f))


class TestBoundedSearch:
    def test_identity_target_is_empty_word(self):
        ring = Ring(2)
        rat = make_rational_instance(
            subset_instance(ring, unit(ring, 1, 0, 0, 0).scale(0)))
        assert rational_member_bounded(rat.expr, rat.bindings, rat.target,
                                       5, ring) == ""

    def test_finds_shortest_planting_word(self):
        ring = Ring(2)
        f = unit(ring, 1, 0, 0, 0)
        rat = make_rational_instance(subset_instance(ring, f))
        word = rational_member_bounded(rat.expr, rat.bindings, rat.target,
                                       5, ring)
        assert word is not None and len(word.split()) == 5
        assert nfa_accepts(regex_to_nfa(rat.expr), word)
        assert wreath_eval(word, rat.bindings, ring) == rat.target

    def test_budget_too_small(self):
        ring = Ring(2)
        f = unit(ring, 1, 0, 0, 0)
        rat = make_rational_instance(subset_instance(ring, f))
        assert rational_member_bounded(rat.expr, rat.bindings, rat.target,
                                       4, ring) is None

    def test_doubled_lamp_unreachable(self):
        # The sweep can visit each position at most once, so a lamp value
        # of 2 at one point is out of reach regardless of word length.
        ring = Ring(3)
        f = unit(ring, 1, 0, 0, 0)
        rat = make_rational_instance(subset_instance(ring, f.scale(2)))
        assert rational_member_bounded(rat.expr, rat.bindings, rat.target,
                                       8, ring) is None

    def test_missing_binding(self):
        ring = Ring(2)
        f = unit(ring, 1, 0, 0, 0)
        rat = make_rational_instance(subset_instance(ring, f))
        bindings = dict(rat.bindings)
        del bindings["g0"]
        with pytest.raises(UnboundSymbol, match="no binding for 'g0'"):
            rational_member_bounded(rat.expr, bindings, rat.target, 3, ring)


class TestEnumeration:
    def test_short_words_only_reach_identity(self):
        ring = Ring(2)
        f = unit(ring, 1, 0, 0, 0)
        rat = make_rational_instance(subset_instance(ring, f + f.translate(1, 0)))
        hits = enumerate_zero_position_hits(rat.expr, rat.bindings, ring, 4)
        assert hits == {wreath_identity(ring)}

    def test_target_appears_at_sufficient_length(self):
        ring = Ring(2)
        f = unit(ring, 1, 0, 0, 0)
        rat = make_rational_instance(subset_instance(ring, f + f.translate(1, 0)))
        hits = enumerate_zero_position_hits(rat.expr, rat.bindings, ring, 8)
        assert rat.target in hits
        assert wreath_eval("g0 x y X Y", rat.bindings, ring) in hits
        assert all(h.pos == (0, 0) for h in hits)

    def test_missing_binding(self):
        ring = Ring(2)
        f = unit(ring, 1, 0, 0, 0)
        rat = make_rational_instance(subset_instance(ring, f))
        bindings = {k: v for k, v in rat.bindings.items() if k != "y"}
        with pytest.raises(UnboundSymbol, match="no binding for 'y'"):
            enumerate_zero_position_hits(rat.expr, bindings, ring, 3)


# ---------------------------------------------------------------------------
# serialization


class TestRationalSerialization:
    def test_nfa_round_trip(self):
        nfa = regex_to_nfa(build_L(2))
        assert load_nfa(dump_nfa(nfa)) == nfa
        loaded = load_nfa(dump_nfa(nfa))
        for word, expected in (("g1 x y X Y", True), ("g1 g0", False)):
            assert nfa_accepts(loaded, word) is expected

    def test_nfa_strictness(self):
        data = nfa_to_dict(regex_to_nfa(Lit("x")))
        data["comment"] = "x"
        with pytest.raises(ValueError, match="unexpected fields"):
            nfa_from_dict(data)

    def test_instance_round_trip(self):
        ring = Ring(2)
        f = unit(ring, 1, 0, 0, 0)
        rat = make_rational_instance(subset_instance(ring, f + f.translate(2, 1)))
        loaded = rational_from_dict(rational_to_dict(rat))
        assert loaded == rat
        assert loaded.bindings == rat.bindings
        assert loaded.target == rat.target

    def test_instance_strictness(self):
        ring = Ring(2)
        rat = make_rational_instance(
            subset_instance(ring, unit(ring, 1, 0, 0, 0)))
        data = rational_to_dict(rat)
        data["extra"] = 1
        with pytest.raises(ValueError, match="unexpected fields"):
            rational_from_dict(data)
        bad = rational_to_dict(rat)
        bad["target"]["note"] = "x"
        with pytest.raises(ValueError, match="unexpected fields"):
            rational_from_dict(bad)
