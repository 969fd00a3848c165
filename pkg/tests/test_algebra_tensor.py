"""
Tests for exact sparse tensors and rational linear algebra
"""
import random
from fractions import Fraction

import pytest

from skeinlab.algebra.permgroup import Permutation, cyclic_group, symmetric_group
from skeinlab.algebra.tensor import (
    RationalMatrix,
    SparseTensor,
    contract,
    gauss_jordan_rank,
    inner_product,
    permute_legs,
    permute_swap,
    rank_of_span,
    tensor_product,
    tensordot,
)
from skeinlab.errors import IndexRangeError, ShapeMismatchError


def _random_tensor(rng: random.Random, rank: int, dim: int, nnz: int = 6) -> SparseTensor:
    entries = {}
    for _ in range(nnz):
        key = tuple(rng.randrange(dim) for _ in range(rank))
        entries[key] = Fraction(rng.randint(-4, 4), rng.randint(1, 3))
    return SparseTensor(rank, dim, entries)


class TestSparseTensor:
    """Test suite for construction and arithmetic"""

    def test_zero_entries_dropped(self):
        t = SparseTensor(2, 3, {(0, 1): 0, (1, 1): "1/2"})
        assert t.nnz == 1
        assert t.get((1, 1)) == Fraction(1, 2)
        assert t.get((2, 2)) == 0

    def test_validation(self):
        """Test that wrong tuple lengths and indices are rejected"""
        with pytest.raises(ShapeMismatchError):
            SparseTensor(2, 3, {(0,): 1})
        with pytest.raises(IndexRangeError):
            SparseTensor(2, 3, {(0, 3): 1})
        with pytest.raises(ShapeMismatchError):
            SparseTensor(1, 3) + SparseTensor(1, 4)

    def test_linear_structure(self):
        a = SparseTensor(1, 2, {(0,): 1, (1,): 2})
        b = SparseTensor(1, 2, {(1,): -2})
        assert (a + b) == SparseTensor(1, 2, {(0,): 1})
        assert (a - a).is_zero()
        assert (3 * a).get((1,)) == 6

    def test_scalar_value(self):
        assert SparseTensor.scalar(Fraction(7, 3), 4).value == Fraction(7, 3)
        with pytest.raises(ShapeMismatchError):
            SparseTensor.basic((0, 1), 2).value

    def test_relabel(self):
        g = Permutation.from_cycles(3, [(0, 1, 2)])
        t = SparseTensor.basic((0, 2), 3)
        assert t.relabel(g) == SparseTensor.basic((1, 0), 3)

    def test_json_round_trip(self):
        t = SparseTensor(2, 3, {(0, 1): Fraction(-5, 7), (2, 2): 3})
        payload = t.to_dict()
        print(f"\n📤 payload: {payload}")
        assert payload["entries"] == [[[0, 1], "-5/7"], [[2, 2], "3"]]
        assert SparseTensor.from_dict(payload) == t

    def test_malformed_payload(self):
        with pytest.raises(ShapeMismatchError):
            SparseTensor.from_dict({"rank": 1})


class TestSpinModelOperations:
    """Test suite for product, contraction and leg permutations"""

    def test_contract_basic(self):
        """Test that contraction δ-pairs adjacent legs"""
        t = SparseTensor(3, 2, {(0, 0, 1): 2, (0, 1, 1): 5, (1, 1, 0): 3})
        c = contract(t, 1)
        assert c == SparseTensor(1, 2, {(1,): 2, (0,): 3})

    def test_position_checks(self):
        t = SparseTensor.basic((0, 0, 0), 2)
        with pytest.raises(IndexRangeError):
            contract(t, 3)
        with pytest.raises(ShapeMismatchError):
            permute_swap(SparseTensor.basic((0,), 2), 1)

    def test_swap_is_involution(self):
        rng = random.Random(1)
        t = _random_tensor(rng, 4, 3)
        for k in (1, 2, 3):
            assert permute_swap(permute_swap(t, k), k) == t

    def test_permute_legs_convention(self):
        """Test that old leg k moves to position sigma[k]"""
        t = SparseTensor.basic((0, 1, 2), 3)
        assert permute_legs(t, [2, 0, 1]) == SparseTensor.basic((1, 2, 0), 3)
        with pytest.raises(IndexRangeError):
            permute_legs(t, [0, 0, 1])

    def test_tensordot_matches_product_then_contract(self):
        """Test the fused product against product, swaps and contraction"""
        rng = random.Random(7)
        print("\n" + "=" * 80)
        print("TENSOR TEST: tensordot vs tensor_product + contract")
        print("=" * 80)
        for trial in range(20):
            a = _random_tensor(rng, 3, 3)
            b = _random_tensor(rng, 2, 3)
            fused = tensordot(a, b, [(3, 1)])
            slow = contract(tensor_product(a, b), 3)
            assert fused == slow, f"trial {trial}: fused product differs"
        print("   ✓ 20 random pairs agree")

    def test_tensordot_full_contraction_is_inner_product(self):
        rng = random.Random(3)
        a = _random_tensor(rng, 2, 3)
        b = _random_tensor(rng, 2, 3)
        assert tensordot(a, b, [(1, 1), (2, 2)]).value == inner_product(a, b)

    def test_tensordot_rejects_repeated_leg(self):
        a = SparseTensor.basic((0, 0), 2)
        with pytest.raises(IndexRangeError):
            tensordot(a, a, [(1, 1), (1, 2)])


class TestGroupEquivariance:
    """Test suite for the spin-model operations under the entrywise group action"""

    @pytest.mark.parametrize("action", [symmetric_group(3), cyclic_group(4)])
    def test_contract_and_swap_commute_with_action(self, action):
        rng = random.Random(17)
        for _ in range(25):
            t = _random_tensor(rng, 4, action.degree, nnz=10)
            g = rng.choice(action.elements)
            for k in (1, 2, 3):
                assert contract(t.relabel(g), k) == contract(t, k).relabel(g), f"contract at {k} under {g}"
                assert permute_swap(t.relabel(g), k) == permute_swap(t, k).relabel(g), f"swap at {k} under {g}"

    def test_product_is_associative(self):
        rng = random.Random(23)
        for _ in range(20):
            a, b, c = (_random_tensor(rng, rng.randint(0, 2), 3, nnz=4) for _ in range(3))
            assert tensor_product(tensor_product(a, b), c) == tensor_product(a, tensor_product(b, c))


class TestRationalMatrix:
    """Test suite for fraction-free elimination"""

    def test_incremental_rank(self):
        m = RationalMatrix()
        assert m.add({0: 1, 1: 2}) is True
        assert m.add({0: 2, 1: 4}) is False, "a multiple should not raise the rank"
        assert m.add({1: Fraction(1, 3)}) is True
        assert m.rank == 2
        assert m.contains({0: 5, 1: -7})
        assert not m.contains({2: 1})

    def test_rows_are_primitive(self):
        m = RationalMatrix([{0: 6, 3: -9}])
        (row,) = m.pivots.values()
        assert row == {0: 2, 3: -3}

    def test_against_gauss_jordan(self):
        """Test that both eliminations agree on random rational rows"""
        rng = random.Random(11)
        print("\n" + "=" * 80)
        print("RANK TEST: fraction-free vs Gauss-Jordan")
        print("=" * 80)
        for trial in range(30):
            rows = []
            for _ in range(rng.randint(1, 7)):
                rows.append({c: Fraction(rng.randint(-3, 3), rng.randint(1, 4)) for c in range(rng.randint(1, 6))})
            # a dependent row now and then
            if len(rows) > 1 and trial % 3 == 0:
                rows.append({c: rows[0].get(c, 0) - 2 * rows[1].get(c, 0) for c in range(6)})
            fast = RationalMatrix(rows).rank
            slow = gauss_jordan_rank(rows)
            assert fast == slow, f"trial {trial}: {fast} != {slow}"
        print("   ✓ 30 random matrices agree")

    def test_rank_of_span(self):
        a = SparseTensor.basic((0, 1), 2)
        b = SparseTensor.basic((1, 0), 2)
        assert rank_of_span([a, b, a + b]) == 2
