"""
Group-action model generators and invariant bases.

Orbit sums follow the group-sum convention [t] = Σ_{g∈G} basic(g·t): a
tuple whose stabilizer has order s carries coefficient s.
"""
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from skeinlab.errors import (
    EnumerationGuardError,
    IndexRangeError,
    RepresentativeError,
    ShapeMismatchError,
)
from skeinlab.settings import get_enumeration_guard
from .permgroup import GroupAction, Permutation, act_tuple
from .tensor import (
    SparseTensor,
    contract,
    permute_legs,
    permute_swap,
    tensor_product,
    tensordot,
)

IndexTuple = Tuple[int, ...]


@dataclass(frozen=True)
class ModelContext:
    action: GroupAction
    name: str = ""

    @property
    def d(self) -> int:
        return self.action.degree

    @property
    def order(self) -> int:
        return self.action.order


@dataclass(frozen=True)
class OrbitBasisElement:
    representative: IndexTuple
    tensor: SparseTensor
    orbit_size: int

    @property
    def stabilizer_order(self) -> int:
        return int(self.tensor.get(self.representative))


# --- generators ---

def ghz(ctx: ModelContext, k: int) -> SparseTensor:
    if k < 1:
        raise ShapeMismatchError(f"GHZ arity must be at least 1, got {k}")
    return SparseTensor(k, ctx.d, {(j,) * k: 1 for j in range(ctx.d)})


def unit(ctx: ModelContext) -> SparseTensor:
    return ghz(ctx, 1)


def cap(ctx: ModelContext) -> SparseTensor:
    return ghz(ctx, 2)


def transposition(ctx: ModelContext) -> SparseTensor:
    d = ctx.d
    return SparseTensor(4, d, {(i, j, i, j): 1 for i in range(d) for j in range(d)})


def molecule(ctx: ModelContext) -> SparseTensor:
    return SparseTensor(ctx.d, ctx.d, {g.images: 1 for g in ctx.action.elements})


def orbit_sum(ctx: ModelContext, t: Sequence[int]) -> SparseTensor:
    entries: Dict[IndexTuple, int] = {}
    for g in ctx.action.elements:
        key = act_tuple(g, t)
        entries[key] = entries.get(key, 0) + 1
    return SparseTensor(len(t), ctx.d, entries)


def _check_enumeration(ctx: ModelContext, n: int) -> None:
    if n < 0:
        raise IndexRangeError(f"rank must be nonnegative, got {n}")
    guard = get_enumeration_guard()
    if ctx.d ** n > guard:
        raise EnumerationGuardError(f"d^n = {ctx.d}^{n} exceeds the enumeration guard {guard}")


def orbit_basis(ctx: ModelContext, n: int) -> List[OrbitBasisElement]:
    """One orbit sum per G-orbit on n-tuples, ordered by lexicographically least representative."""
    _check_enumeration(ctx, n)
    seen = set()
    basis = []
    for t in product(range(ctx.d), repeat=n):
        if t in seen:
            continue
        tensor = orbit_sum(ctx, t)
        members = tensor.support()
        seen.update(members)
        basis.append(OrbitBasisElement(representative=t, tensor=tensor, orbit_size=len(members)))
    return basis


class OrbitCoordinates:
    """
    Coordinates of G-invariant rank-n tensors: an invariant tensor is fixed
    by its values at the orbit representatives.
    """

    def __init__(self, ctx: ModelContext, n: int):
        self.basis = orbit_basis(ctx, n)
        self.representatives = [b.representative for b in self.basis]

    def __len__(self) -> int:
        return len(self.representatives)

    def coordinates(self, t: SparseTensor) -> Dict[int, Fraction]:
        out = {}
        for idx, rep in enumerate(self.representatives):
            v = t.get(rep)
            if v != 0:
                out[idx] = v
        return out

    def decompose(self, t: SparseTensor) -> Dict[IndexTuple, Fraction]:
        """Coefficients c with t = Σ c[rep]·[rep]."""
        out = {}
        for b in self.basis:
            v = t.get(b.representative)
            if v != 0:
                out[b.representative] = v / b.tensor.get(b.representative)
        return out


def is_invariant(ctx: ModelContext, t: SparseTensor) -> bool:
    if t.dim != ctx.d:
        raise ShapeMismatchError(f"tensor dimension {t.dim} does not match d={ctx.d}")
    return all(t.relabel(g) == t for g in ctx.action.generators)


# --- symmetrizer ---

class Symmetrizer:
    """Formal sum of leg permutations, acting on rank-d tensors."""

    def __init__(self, degree: int, terms: Mapping[Permutation, int]):
        self.degree = degree
        self.terms = Counter({g: c for g, c in terms.items() if c != 0})

    def apply(self, t: SparseTensor) -> SparseTensor:
        if t.rank != self.degree:
            raise ShapeMismatchError(f"symmetrizer acts on rank {self.degree}, got rank {t.rank}")
        out = SparseTensor(t.rank, t.dim)
        for g, c in sorted(self.terms.items()):
            out = out + permute_legs(t, g.images) * c
        return out

    def compose(self, other: "Symmetrizer") -> "Symmetrizer":
        terms: Counter = Counter()
        for g, a in self.terms.items():
            for h, b in other.terms.items():
                terms[g.compose(h)] += a * b
        return Symmetrizer(self.degree, terms)

    def scaled(self, c: int) -> "Symmetrizer":
        return Symmetrizer(self.degree, {g: c * v for g, v in self.terms.items()})

    def __eq__(self, other) -> bool:
        if not isinstance(other, Symmetrizer):
            return NotImplemented
        return self.degree == other.degree and self.terms == other.terms

    __hash__ = None


def symmetrizer(ctx: ModelContext) -> Symmetrizer:
    return Symmetrizer(ctx.d, {g: 1 for g in ctx.action.elements})


# --- generation from the molecule ---

def _cap_leg(t: SparseTensor, k: int, unit_tensor: SparseTensor) -> SparseTensor:
    """Caps leg k (1-based) with the unit: product, swap the unit leftwards, contract."""
    t = tensor_product(t, unit_tensor)
    for j in range(t.rank - 1, k, -1):
        t = permute_swap(t, j)
    return contract(t, k)


def orbit_from_molecule(ctx: ModelContext, rep: Sequence[int],
                        s_tensor: Optional[SparseTensor] = None) -> SparseTensor:
    """
    The orbit sum [rep] built from S by capping every leg not listed in rep.
    `s_tensor` replaces S by another construction of it (the Petersen graph network).
    """
    rep = tuple(rep)
    if any(not 0 <= i < ctx.d for i in rep):
        raise IndexRangeError(f"representative {rep} has an index outside 0..{ctx.d - 1}")
    if any(a >= b for a, b in zip(rep, rep[1:])):
        raise RepresentativeError(f"representative {rep} is not strictly increasing")
    keep = set(rep)
    t = molecule(ctx) if s_tensor is None else s_tensor
    if t.rank != ctx.d or t.dim != ctx.d:
        raise ShapeMismatchError(f"molecule must have rank and dimension {ctx.d}")
    one = unit(ctx)
    for leg in range(ctx.d, 0, -1):
        if leg - 1 not in keep:
            t = _cap_leg(t, leg, one)
    return t


def orbit_from_generators(ctx: ModelContext, t: Sequence[int],
                          s_tensor: Optional[SparseTensor] = None) -> SparseTensor:
    """
    Any orbit sum [t] from S, GHZ and leg permutations: cap S down to the
    distinct values of t, split repeated values with GHZ, then braid legs into place.
    """
    t = tuple(t)
    values = sorted(set(t))
    x = orbit_from_molecule(ctx, values, s_tensor)
    labels = list(values)
    counts = Counter(t)
    for value in values:
        c = counts[value]
        if c < 2:
            continue
        pos = labels.index(value)
        x = tensordot(x, ghz(ctx, c + 1), [(pos + 1, 1)])
        labels = labels[:pos] + labels[pos + 1:] + [value] * c
    sigma = [0] * len(labels)
    free: Dict[int, List[int]] = {}
    for j, value in enumerate(t):
        free.setdefault(value, []).append(j)
    for leg, value in enumerate(labels):
        sigma[leg] = free[value].pop(0)
    return permute_legs(x, sigma) if x.rank > 1 else x
