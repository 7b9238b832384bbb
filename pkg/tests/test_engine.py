"""Certificate construction, verification, audit, and color-only search."""

import pytest

from tilechain import (Certificate, EdgeMap, EmptyInput, MalformedInput,
                       Placement, Ring, TuringMachine, Z,
                       build_accepting_tiling, builder_width, claims_audit,
                       compile_tiles, default_window, forced_search,
                       initial_map, parse_initial_shape, run, verify_zero)
from tilechain.machines import (BLANK, mini_eraser, right_walker,
                                unary_eraser)
from tilechain.tiling import ARROW_D, ARROW_R, head, letter

from conftest import RUN_FUEL


@pytest.fixture(scope="module")
def unary_a(artifacts):
    return artifacts.pipeline("unary-eraser", "a")


class TestBuilder:
    def test_certificate_dimensions_follow_the_trace(self, unary_a):
        tm, ts, f0, cert = unary_a
        trace = run(tm, "a", RUN_FUEL)
        assert cert.width_m == builder_width(trace, 1)
        assert cert.rows == len(trace.configs)
        xs = {p.x for p in cert.placements}
        ys = {p.y for p in cert.placements}
        assert min(xs) == 0 and max(xs) == cert.width_m
        assert min(ys) == 0 and max(ys) == cert.rows

    def test_one_tile_per_position(self, unary_a):
        positions = [(p.x, p.y) for p in unary_a.cert.placements]
        assert len(positions) == len(set(positions))

    def test_verifies_over_several_rings(self, unary_a):
        tm, ts, _, cert = unary_a
        for ring in (Z, Ring(2), Ring(3)):
            f0 = initial_map(tm, "a", ring)
            assert verify_zero(f0, cert, ts)

    def test_fuel_exhaustion_returns_none(self):
        assert build_accepting_tiling(right_walker(), "a", 50) is None

    def test_empty_input_rejected(self):
        with pytest.raises(EmptyInput):
            build_accepting_tiling(unary_eraser(), "", RUN_FUEL)

    def test_unnormalized_accepting_configuration_rejected(self):
        # Accepts with the head parked on cell 1 and an 'a' left on tape.
        tm = TuringMachine(
            states=("q0", "qf"),
            tape_alphabet=("a", BLANK),
            input_alphabet=("a",),
            blank=BLANK,
            initial="q0",
            accepting="qf",
            transitions={("q0", "a"): ("qf", "a", "R"),
                         ("q0", BLANK): ("qf", BLANK, "R")},
        )
        with pytest.raises(ValueError, match="not all-blank at cell 0"):
            build_accepting_tiling(tm, "a", RUN_FUEL)

    def test_partial_mini_eraser_accepts_cleanly(self, artifacts):
        """The tiny two-rule machine happens to halt blank-at-zero, so the
        builder takes it without normalization."""
        tm, ts, f0, cert = artifacts.pipeline("mini-raw", "a")
        assert verify_zero(f0, cert, ts)


class TestVerify:
    def test_mutations_break_the_sum(self, unary_a):
        tm, ts, f0, cert = unary_a
        dropped = Certificate(cert.placements[1:], cert.width_m, cert.rows)
        assert not verify_zero(f0, dropped, ts)
        moved = Certificate(
            (Placement(cert.placements[0].tile,
                       cert.placements[0].x + 1,
                       cert.placements[0].y),) + cert.placements[1:],
            cert.width_m, cert.rows)
        assert not verify_zero(f0, moved, ts)

    def test_wrong_word_rejected(self, unary_a):
        tm, ts, _, cert = unary_a
        assert not verify_zero(initial_map(tm, "aa", Z), cert, ts)


class TestAudit:
    def test_clean_certificate_has_no_flags(self, unary_a):
        report = claims_audit(unary_a.cert, unary_a.f0)
        assert report.ok and report.flags == ()

    def test_flag_kinds(self, unary_a):
        _, ts, f0, cert = unary_a
        some = cert.placements[5]

        def with_extra(placement):
            return Certificate(cert.placements + (placement,),
                               cert.width_m, cert.rows)

        below = with_extra(Placement(some.tile, 1, -1))
        kinds = {f.kind for f in claims_audit(below, f0).flags}
        assert "outside-region" in kinds

        floor_gap = with_extra(Placement(some.tile, 1, 0))
        kinds = {f.kind for f in claims_audit(floor_gap, f0).flags}
        assert "outside-region" in kinds  # floor cells left of the word's end

        raised = with_extra(Placement(ts.tile_named("b0"), 1, 2))
        kinds = {f.kind for f in claims_audit(raised, f0).flags}
        assert "floor-tile-raised" in kinds

        far = with_extra(Placement(some.tile, cert.width_m + 1, 1))
        kinds = {f.kind for f in claims_audit(far, f0).flags}
        assert "outside-columns" in kinds

        stacked = with_extra(some)
        flags = claims_audit(stacked, f0).flags
        assert any(f.kind == "stacked" and (f.x, f.y) == (some.x, some.y)
                   for f in flags)

    def test_malformed_input_short_circuits(self, unary_a):
        bad = EdgeMap(Z, [(((0, 1, "H"), ARROW_D), 2)])
        report = claims_audit(unary_a.cert, bad)
        assert [f.kind for f in report.flags] == ["malformed-input"]

    def test_default_window(self, unary_a):
        cert = unary_a.cert
        assert default_window(cert) == (0, 0, cert.width_m, cert.rows)


class TestParseInitialShape:
    def test_reads_back_the_rendered_word(self):
        tm = unary_eraser()
        n, row, arrow = parse_initial_shape(initial_map(tm, "aaa"))
        assert n == 3
        assert arrow == ARROW_R
        assert row == [ARROW_D, head("q0", "a"), letter("a"), letter("a")]

    def test_rejections(self):
        tm = unary_eraser()
        good = initial_map(tm, "aa")
        entries = list(good.support())

        with pytest.raises(MalformedInput, match="entry value"):
            parse_initial_shape(EdgeMap(Z, [(entries[0][0], 2)]))
        with pytest.raises(MalformedInput, match="missing vertical entry"):
            parse_initial_shape(EdgeMap(Z, [e for e in entries
                                            if e[0][0][2] == "H"]))
        doubled = entries + [((((5, 0, "V")), ARROW_R), 1)]
        with pytest.raises(MalformedInput, match="more than one vertical"):
            parse_initial_shape(EdgeMap(Z, doubled))
        shifted = [(((x + 1, y, o), c), v)
                   for (((x, y, o), c), v) in entries]
        with pytest.raises(MalformedInput):
            parse_initial_shape(EdgeMap(Z, shifted))


class TestForcedSearch:
    def test_reproduces_the_builder_exactly(self, artifacts):
        for name, word in [("mini-raw", "a"), ("unary-eraser", "aa")]:
            cert = artifacts.pipeline(name, word).cert
            found = artifacts.forced(name, word, cert.width_m, cert.rows)
            assert found is not None
            assert found.placements == cert.placements
            assert (found.width_m, found.rows) == (cert.width_m, cert.rows)

    def test_negative_within_bounds(self, artifacts):
        assert artifacts.forced("right-walker", "a", 8, 12) is None

    def test_bounds_too_tight_miss_the_certificate(self, artifacts):
        cert = artifacts.pipeline("unary-eraser", "a").cert
        assert artifacts.forced("unary-eraser", "a",
                                cert.width_m, cert.rows - 1) is None
