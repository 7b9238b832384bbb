"""Colors, tiles, tiling systems, certificates, and the machine compiler."""

import pytest

from tilechain import (C0, Certificate, Color, EmptyInput, Placement, Tile,
                       TilingSystem, color_from_str, color_glyph,
                       color_sort_key, color_to_str, compile_tiles,
                       dump_certificate, dump_system, head, initial_map,
                       letter, load_certificate, load_system, machine_colors,
                       normalize, sort_placements, state)
from tilechain.compiler import boundary_tiles
from tilechain.machines import corpus, mini_eraser, unary_eraser
from tilechain.tiling import (ARROW_D, ARROW_L, ARROW_R, ARROW_U, DIAG,
                              TRI_L, TRI_R, certificate_from_dict,
                              certificate_to_dict, system_from_dict,
                              tile_from_dict, tile_to_dict)


def all_machines():
    return {**corpus(), "mini-eraser": normalize(mini_eraser())}


class TestColors:
    def test_str_round_trip_every_kind(self):
        samples = [C0, DIAG, ARROW_R, ARROW_U, ARROW_L, ARROW_D, TRI_L,
                   TRI_R, state("q0"), letter("_"), head("q0", "a")]
        for color in samples:
            assert color_from_str(color_to_str(color)) == color

    def test_str_forms(self):
        assert color_to_str(state("q0")) == "q:q0"
        assert color_to_str(letter("a")) == "a:a"
        assert color_to_str(head("q0", "a")) == "qa:q0,a"
        assert color_to_str(ARROW_L) == "L-arrow"

    def test_unknown_string_rejected(self):
        with pytest.raises(ValueError, match="unknown color string"):
            color_from_str("purple")

    def test_malformed_head_rejected(self):
        with pytest.raises(ValueError, match="malformed head color"):
            color_from_str("qa:q0")

    def test_sort_key_kind_order(self):
        ordered = [letter("a"), state("q"), head("q", "a"), ARROW_R,
                   ARROW_U, ARROW_L, ARROW_D, DIAG, TRI_L, TRI_R, C0]
        keys = [color_sort_key(c) for c in ordered]
        assert keys == sorted(keys)

    def test_glyphs(self):
        assert color_glyph(C0) == "."
        assert color_glyph(ARROW_R) == ">"
        assert color_glyph(TRI_R) == "|>"
        assert color_glyph(TRI_L) == "<|"
        assert color_glyph(head("q0", "a")) == "q0.a"


class TestTile:
    def test_equality_ignores_name(self):
        a = Tile(C0, C0, C0, C0, name="one")
        b = Tile(C0, C0, C0, C0, name="two")
        assert a == b and hash(a) == hash(b)

    def test_sides_order(self):
        t = Tile(n=letter("a"), e=TRI_R, s=letter("b"), w=TRI_L)
        assert t.sides() == (letter("a"), TRI_R, letter("b"), TRI_L)

    def test_json_round_trip(self):
        t = Tile(head("q", "a"), state("q"), letter("a"), TRI_L, name="x")
        assert tile_from_dict(tile_to_dict(t)) == t
        assert tile_from_dict(tile_to_dict(t)).name == "x"

    def test_unknown_tile_fields_rejected(self):
        with pytest.raises(ValueError, match="unknown tile fields"):
            tile_from_dict({"n": "c0", "e": "c0", "s": "c0", "w": "c0",
                            "weight": 3})


class TestTilingSystem:
    def test_duplicate_colors_rejected(self):
        with pytest.raises(ValueError, match="duplicate colors"):
            TilingSystem(colors=(C0, C0), tiles=())

    def test_distinguished_must_be_present(self):
        with pytest.raises(ValueError, match="distinguished color missing"):
            TilingSystem(colors=(letter("a"),), tiles=())

    def test_tile_sides_must_be_in_color_set(self):
        with pytest.raises(ValueError, match="not in color set"):
            TilingSystem(colors=(C0,),
                         tiles=(Tile(letter("a"), C0, C0, C0),))

    def test_duplicate_tiles_rejected(self):
        with pytest.raises(ValueError, match="duplicate tile"):
            TilingSystem(colors=(C0,),
                         tiles=(Tile(C0, C0, C0, C0, name="p"),
                                Tile(C0, C0, C0, C0, name="q")))

    def test_tile_named(self):
        ts = compile_tiles(unary_eraser())
        assert ts.tile_named("b0").w == ARROW_R
        with pytest.raises(KeyError):
            ts.tile_named("nope")

    def test_index_of_matches_tuple_position(self):
        ts = compile_tiles(unary_eraser())
        for i, tile in enumerate(ts.tiles):
            assert ts.index_of(tile) == i


class TestCompiler:
    def test_tile_count_formula(self):
        for tm in all_machines().values():
            ts = compile_tiles(tm)
            gamma = len(tm.tape_alphabet)
            states_n = len(tm.states)
            expected = 2 * gamma + 2 * gamma * states_n \
                + len(tm.transitions) + 8
            assert len(ts.tiles) == expected

    def test_color_set_contents(self):
        tm = unary_eraser()
        colors = machine_colors(tm)
        assert set(colors) == (
            {letter(a) for a in tm.tape_alphabet}
            | {state(q) for q in tm.states}
            | {head(q, a) for q in tm.states for a in tm.tape_alphabet}
            | {ARROW_R, ARROW_U, ARROW_L, ARROW_D, DIAG, TRI_L, TRI_R, C0})
        keys = [color_sort_key(c) for c in colors]
        assert keys == sorted(keys)

    def test_boundary_tiles_are_named_b0_to_b7(self):
        names = [t.name for t in boundary_tiles(unary_eraser())]
        assert names == [f"b{i}" for i in range(8)]

    def test_tile_names_are_unique(self):
        for tm in all_machines().values():
            names = [t.name for t in compile_tiles(tm).tiles]
            assert len(names) == len(set(names))

    def test_action_tile_shape(self):
        tm = unary_eraser()
        ts = compile_tiles(tm)
        # (q0, a) -> (qs, a, R): right mover emits the successor east.
        tile = ts.tile_named("act[q0,a]")
        assert tile.s == head("q0", "a")
        assert tile.n == letter("a")
        assert tile.e == state("qs") and tile.w == TRI_L

    def test_initial_map_shape(self):
        tm = unary_eraser()
        f0 = initial_map(tm, "aa")
        entries = dict(f0.support())
        assert entries == {
            (((0, 1, "H"), ARROW_D)): 1,
            (((1, 1, "H"), head("q0", "a"))): 1,
            (((2, 1, "H"), letter("a"))): 1,
            (((3, 0, "V"), ARROW_R)): 1,
        }

    def test_initial_map_rejects_empty_word(self):
        with pytest.raises(EmptyInput):
            initial_map(unary_eraser(), "")

    def test_initial_map_rejects_foreign_symbols(self):
        with pytest.raises(ValueError, match="not in input alphabet"):
            initial_map(unary_eraser(), "ab")


class TestSerialization:
    def test_system_round_trip(self):
        ts = compile_tiles(unary_eraser())
        again = load_system(dump_system(ts))
        assert again == ts
        assert [t.name for t in again.tiles] == [t.name for t in ts.tiles]

    def test_system_unknown_fields_rejected(self):
        with pytest.raises(ValueError, match="unknown tiling system fields"):
            system_from_dict({"colors": [], "tiles": [], "mood": "glad"})

    def test_certificate_round_trip_inline_tiles(self):
        ts = compile_tiles(unary_eraser())
        cert = Certificate(
            sort_placements([Placement(ts.tile_named("b0"), 2, 0),
                             Placement(ts.tile_named("b1"), 3, 0)]), 3, 0)
        again = load_certificate(dump_certificate(cert))
        assert again == cert

    def test_certificate_named_tiles_need_a_system(self):
        ts = compile_tiles(unary_eraser())
        data = {"m": 3, "rows": 0,
                "placements": [{"tile": "b0", "x": 2, "y": 0}]}
        cert = certificate_from_dict(data, ts)
        assert cert.placements[0].tile == ts.tile_named("b0")
        with pytest.raises(ValueError, match="no tiling system given"):
            certificate_from_dict(data)

    def test_certificate_unknown_fields_rejected(self):
        with pytest.raises(ValueError, match="unknown certificate fields"):
            certificate_from_dict({"m": 1, "rows": 1, "placements": [],
                                   "z": 0})

    def test_sort_placements_is_row_major(self):
        t = Tile(C0, C0, C0, C0)
        placements = [Placement(t, 1, 1), Placement(t, 0, 0),
                      Placement(t, 0, 1), Placement(t, 1, 0)]
        sorted_ = sort_placements(placements)
        assert [(p.x, p.y) for p in sorted_] == [(0, 0), (1, 0),
                                                 (0, 1), (1, 1)]

    def test_certificate_to_dict_orders_placements(self):
        t = Tile(C0, C0, C0, C0)
        cert = Certificate((Placement(t, 1, 1), Placement(t, 0, 0)), 1, 1)
        data = certificate_to_dict(cert)
        assert [(row["x"], row["y"]) for row in data["placements"]] \
            == [(0, 0), (1, 1)]
