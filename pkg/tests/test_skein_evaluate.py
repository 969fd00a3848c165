"""
Tests for the closed-diagram evaluator
Symbolic skein evaluation against the dense oracle, the d^C law, rewrites
"""
import random
from fractions import Fraction

import pytest

from skeinlab.dsl.parser import parse
from skeinlab.errors import (
    ArityMismatchError,
    BindingError,
    DiagramError,
    GuardExceededError,
    NonClosedDiagramError,
    TermBudgetExceededError,
    UnsupportedBoxError,
)
from skeinlab.skein.diagram import BoxKind, summarize_components
from skeinlab.skein.evaluate import evaluate_closed, evaluate_dense
from skeinlab.skein.rewrite import (
    closed_diagrams,
    expand_molecule_pair,
    insert_crossing_pair,
    slide_past_crossing,
    split_ghz,
    twist_ghz_legs,
)

ORACLE_GROUPS = ["trivial:3", "cyclic:3", "cyclic:4", "sym:3", "sym:4"]
ORACLE_GUARD = 32


def _dense_value(ctx, diag) -> Fraction:
    return evaluate_dense(ctx, diag, guard=ORACLE_GUARD).value


class TestSymbolicEvaluation:
    """Test suite for evaluate_closed on hand-made diagrams"""

    @pytest.mark.parametrize("source,expected", [
        ("box c = ghz:2; wire c.1 c.2;", 3),
        ("box r = R; wire r.1 r.2; wire r.3 r.4;", 3),
        ("box s = S; cap s.*;", 6),
        ("box s = S; box y = ghz:3; wire s.1 y.1; wire s.2 y.2; unit y.3; cap s.3;", 0),
        ("box a = S; box b = S; wire a.1 b.1; wire a.2 b.2; wire a.3 b.3;", 6),
        ("", 1),
    ])
    def test_small_values(self, small_contexts, source, expected):
        ctx = small_contexts["sym:3"]
        result = evaluate_closed(ctx, parse(source, ctx.d))
        print(f"\n{source!r} -> {result.value}")
        assert result.value == expected
        assert result.value == _dense_value(ctx, parse(source, ctx.d))

    def test_result_dict(self, small_contexts):
        ctx = small_contexts["cyclic:3"]
        result = evaluate_closed(ctx, parse("box s = S; cap s.*;", ctx.d))
        assert result.to_dict() == {"value": "3", "s_boxes": 1, "components": 3, "terms_expanded": 1}

    def test_open_diagram_rejected(self, small_contexts):
        ctx = small_contexts["sym:3"]
        with pytest.raises(NonClosedDiagramError):
            evaluate_closed(ctx, parse("box a = ghz:2; open a.1; open a.2;", ctx.d))

    def test_custom_box_rejected(self, small_contexts):
        ctx = small_contexts["sym:3"]
        with pytest.raises(UnsupportedBoxError):
            evaluate_closed(ctx, parse("box x = tensor X:2; wire x.1 x.2;", ctx.d))

    def test_term_budget(self, small_contexts):
        ctx = small_contexts["sym:3"]
        diag = parse("box a = S; box b = S; wire a.1 b.1; wire a.2 b.2; wire a.3 b.3;", ctx.d)
        with pytest.raises(TermBudgetExceededError) as info:
            evaluate_closed(ctx, diag, budget=5)
        assert info.value.budget == 5

    def test_dense_guard(self, small_contexts):
        ctx = small_contexts["sym:3"]
        with pytest.raises(GuardExceededError):
            evaluate_dense(ctx, parse("box c = ghz:2; wire c.1 c.2;", ctx.d), guard=0)

    def test_unbound_custom_box(self, small_contexts):
        ctx = small_contexts["sym:3"]
        with pytest.raises(BindingError):
            evaluate_dense(ctx, parse("box x = tensor X:2; wire x.1 x.2;", ctx.d))


class TestOracleEquivalence:
    """Test suite comparing symbolic evaluation with dense contraction"""

    def test_random_closed_diagrams(self, small_contexts):
        """Test ≥200 seeded random closed diagrams with up to 3 S boxes"""
        print("\n" + "=" * 80)
        print("ORACLE TEST: evaluate_closed vs evaluate_dense")
        print("=" * 80)
        total = 0
        for k, name in enumerate(ORACLE_GROUPS):
            ctx = small_contexts[name]
            diagrams = closed_diagrams(seed=100 + k, count=40, ctx=ctx, max_s=3)
            for i, diag in enumerate(diagrams):
                symbolic = evaluate_closed(ctx, diag).value
                dense = _dense_value(ctx, diag)
                assert symbolic == dense, f"{name} diagram {i}: {symbolic} != {dense}"
                total += 1
            print(f"   ✓ {name}: {len(diagrams)} diagrams")
        assert total >= 200

    def test_loop_law(self, small_contexts):
        """Test d^C for ≥100 random GHZ/R diagrams"""
        total = 0
        for name in ("trivial:3", "cyclic:4", "sym:3"):
            ctx = small_contexts[name]
            for diag in closed_diagrams(seed=7, count=40, ctx=ctx, with_s=False):
                closed = summarize_components(diag).closed_components
                assert evaluate_closed(ctx, diag).value == ctx.d ** closed
                assert _dense_value(ctx, diag) == ctx.d ** closed
                total += 1
        assert total >= 100


class TestRewrites:
    """Test suite for value-preserving diagram rewrites"""

    def test_crossing_pair_and_ghz_moves(self, small_contexts):
        ctx = small_contexts["cyclic:4"]
        rng = random.Random(5)
        for diag in closed_diagrams(seed=21, count=20, ctx=ctx, max_s=2):
            value = evaluate_closed(ctx, diag).value
            if len(diag.wires) >= 2:
                first, second = rng.sample(range(len(diag.wires)), 2)
                assert evaluate_closed(ctx, insert_crossing_pair(diag, first, second)).value == value
            for box in diag.boxes_of(BoxKind.GHZ):
                if box.arity >= 2:
                    assert evaluate_closed(ctx, split_ghz(diag, box.id, 1)).value == value
                    assert evaluate_closed(ctx, twist_ghz_legs(diag, box.id, 1)).value == value

    def test_group_sum_expansion(self, small_contexts):
        """Test that the |G| single-fewer-S diagrams sum to the original value"""
        for name in ("cyclic:3", "sym:3"):
            ctx = small_contexts[name]
            checked = 0
            for diag in closed_diagrams(seed=3, count=30, ctx=ctx, max_s=3):
                if len(diag.boxes_of(BoxKind.S)) < 2:
                    continue
                terms = expand_molecule_pair(ctx, diag)
                assert len(terms) == ctx.order
                assert all(len(t.boxes_of(BoxKind.S)) == len(diag.boxes_of(BoxKind.S)) - 1 for t in terms)
                total = sum((_dense_value(ctx, t) for t in terms), Fraction(0))
                assert total == _dense_value(ctx, diag), f"{name}: expansion disagrees with the dense value"
                assert total == evaluate_closed(ctx, diag).value
                checked += 1
            print(f"\n{name}: {checked} two-S diagrams expanded")
            assert checked > 0

    def test_slide_past_crossing(self, small_contexts):
        """Test that sliding a box through a crossing keeps the value"""
        slid = 0
        for name in ("cyclic:3", "sym:3", "cyclic:4"):
            ctx = small_contexts[name]
            for diag in closed_diagrams(seed=11, count=40, ctx=ctx, max_s=2, max_r=3):
                value = evaluate_closed(ctx, diag).value
                for r in diag.boxes_of(BoxKind.R):
                    for leg in range(1, 5):
                        try:
                            moved = slide_past_crossing(diag, r.id, leg)
                        except DiagramError:
                            continue
                        assert r.id not in {b.id for b in moved.boxes}
                        assert evaluate_closed(ctx, moved).value == value, f"{name}: {r.id}.{leg}"
                        assert _dense_value(ctx, moved) == value
                        slid += 1
            print(f"   ✓ {name}: value kept")
        print(f"\n{slid} slides checked")
        assert slid > 0

    def test_slide_on_hand_made_diagram(self, small_contexts):
        """An S box on one strand moves through the crossing; the other strand now crosses its legs"""
        ctx = small_contexts["sym:3"]
        source = """
        box s = S; box r = R; box t = S; box g = ghz:2;
        wire s.1 r.1; wire r.3 t.1; wire s.2 t.2;
        wire t.3 r.2; wire r.4 g.1; wire g.2 s.3;
        """
        diag = parse(source, ctx.d)
        moved = slide_past_crossing(diag, "r", 1)
        assert len(moved.boxes_of(BoxKind.R)) == 2
        assert evaluate_closed(ctx, moved).value == evaluate_closed(ctx, diag).value

    def test_slide_rejects_bad_input(self, small_contexts):
        ctx = small_contexts["sym:3"]
        diag = parse("box r = R; box g = ghz:4; wire r.1 g.1; wire r.3 g.2; wire r.2 g.3; wire r.4 g.4;", ctx.d)
        with pytest.raises(DiagramError):
            slide_past_crossing(diag, "r", 1)
        with pytest.raises(ArityMismatchError):
            slide_past_crossing(diag, "g", 1)
        with pytest.raises(ArityMismatchError):
            slide_past_crossing(diag, "r", 5)
