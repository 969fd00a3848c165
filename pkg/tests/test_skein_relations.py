"""
Tests for the skein relation suite
Every relation row must pass for each builtin group
"""
import pytest

from skeinlab.skein.relations import REPORT_COLUMNS, verify_relations

EXPECTED_RELATIONS = {
    "circle", "reidemeister I", "reidemeister II", "reidemeister III", "flatness",
    "GHZ H-I", "GHZ bubble", "GHZ unit", "invariance",
    "capped scalar", "Y-uncappable", "group symmetrizing",
}


def _show(name, frame):
    print("\n" + "=" * 80)
    print(f"RELATIONS TEST: {name}")
    print("=" * 80)
    print(frame.to_string(index=False))


class TestRelationSuite:
    """Test suite for verify_relations on the small builtin groups"""

    @pytest.mark.parametrize("name", ["sym:3", "cyclic:3", "cyclic:4", "sym:4"])
    def test_all_relations_pass(self, small_contexts, name):
        frame = verify_relations(small_contexts[name], seed=0, random_trials=20)
        _show(name, frame)

        assert list(frame.columns) == REPORT_COLUMNS
        assert set(frame["relation"]) == EXPECTED_RELATIONS
        failed = frame[~frame["passed"]]
        assert failed.empty, f"failed relations: {failed.to_dict(orient='records')}"
        assert (frame["cases"] > 0).all(), "every relation should check at least one case"

    def test_oracle_row(self, small_contexts):
        frame = verify_relations(small_contexts["cyclic:3"], seed=4, random_trials=5, oracle=15)
        row = frame[frame["relation"] == "symbolic = dense"]
        assert len(row) == 1
        assert bool(row["passed"].iloc[0])
        assert int(row["cases"].iloc[0]) == 15

    def test_deterministic(self, small_contexts):
        """Test that the same seed gives the same report"""
        a = verify_relations(small_contexts["sym:3"], seed=9, random_trials=10)
        b = verify_relations(small_contexts["sym:3"], seed=9, random_trials=10)
        assert a.equals(b)


class TestPetersenRelations:
    """Test suite for the relation suite on the Petersen model"""

    def test_petersen_suite(self, petersen_ctx):
        frame = verify_relations(petersen_ctx, seed=0, random_trials=20, invariant_samples=1)
        _show("petersen", frame)
        failed = frame[~frame["passed"]]
        assert failed.empty, f"failed relations: {failed.to_dict(orient='records')}"
        capped = frame[frame["relation"] == "capped scalar"]["detail"].iloc[0]
        assert capped == "capped S = 120"
