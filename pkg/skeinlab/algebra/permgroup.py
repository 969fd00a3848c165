"""
Finite permutation groups on {0..d-1}: closure from generators,
componentwise action on index tuples, Burnside counting and stabilizers.
"""
from collections import deque
from dataclasses import dataclass
from itertools import product
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from skeinlab.errors import (
    DegreeMismatchError,
    GroupError,
    GroupTooLargeError,
    IndexRangeError,
)
from skeinlab.settings import get_group_cap
from .utils import UnionFind

IndexTuple = Tuple[int, ...]


@dataclass(frozen=True, order=True)
class Permutation:
    """images[i] is the image g·i; ordering is lexicographic on images."""
    images: Tuple[int, ...]

    def __post_init__(self):
        images = tuple(int(i) for i in self.images)
        if sorted(images) != list(range(len(images))):
            raise GroupError(f"not a permutation of 0..{len(images) - 1}: {list(images)}")
        object.__setattr__(self, "images", images)

    @property
    def degree(self) -> int:
        return len(self.images)

    @classmethod
    def identity(cls, degree: int) -> "Permutation":
        return cls(tuple(range(degree)))

    @classmethod
    def from_cycles(cls, degree: int, cycles: Iterable[Sequence[int]]) -> "Permutation":
        images = list(range(degree))
        for cycle in cycles:
            for k, point in enumerate(cycle):
                if not 0 <= point < degree:
                    raise IndexRangeError(f"cycle point {point} outside 0..{degree - 1}")
                images[point] = cycle[(k + 1) % len(cycle)]
        return cls(tuple(images))

    def __call__(self, point: int) -> int:
        return self.images[point]

    def compose(self, other: "Permutation") -> "Permutation":
        """(self ∘ other)(i) = self(other(i))."""
        if other.degree != self.degree:
            raise DegreeMismatchError(f"cannot compose degree {self.degree} with degree {other.degree}")
        return Permutation(tuple(self.images[j] for j in other.images))

    def inverse(self) -> "Permutation":
        inv = [0] * self.degree
        for i, j in enumerate(self.images):
            inv[j] = i
        return Permutation(tuple(inv))

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))

    def fixed_points(self) -> int:
        return sum(1 for i, j in enumerate(self.images) if i == j)

    def cycles(self) -> List[Tuple[int, ...]]:
        seen, out = set(), []
        for start in range(self.degree):
            if start in seen or self.images[start] == start:
                continue
            cycle, point = [], start
            while point not in seen:
                seen.add(point)
                cycle.append(point)
                point = self.images[point]
            out.append(tuple(cycle))
        return out

    def __str__(self) -> str:
        cycles = self.cycles()
        if not cycles:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cycles)


@dataclass(frozen=True)
class GroupAction:
    degree: int
    generators: Tuple[Permutation, ...]
    elements: Tuple[Permutation, ...]

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def d(self) -> int:
        return self.degree

    def orbit(self, point: int) -> List[int]:
        _check_point(self, point)
        return sorted({g(point) for g in self.elements})

    def __contains__(self, g: Permutation) -> bool:
        return g in set(self.elements)


def _check_point(action: GroupAction, point: int) -> None:
    if not 0 <= point < action.degree:
        raise IndexRangeError(f"point {point} outside 0..{action.degree - 1}")


def closure(generators: Sequence[Permutation], degree: Optional[int] = None,
            cap: Optional[int] = None) -> GroupAction:
    """
    Breadth-first closure of the generated group.
    Elements come back sorted lexicographically on their image sequences.
    """
    cap = get_group_cap() if cap is None else cap
    gens = list(generators)
    if degree is None:
        if not gens:
            raise GroupError("closure of an empty generator list needs an explicit degree")
        degree = gens[0].degree
    for g in gens:
        if g.degree != degree:
            raise DegreeMismatchError(f"generator {g} has degree {g.degree}, expected {degree}")

    identity = Permutation.identity(degree)
    seen = {identity}
    queue = deque([identity])
    while queue:
        h = queue.popleft()
        for g in gens:
            x = g.compose(h)
            if x not in seen:
                seen.add(x)
                if len(seen) > cap:
                    raise GroupTooLargeError(f"group order exceeds the cap of {cap}")
                queue.append(x)
    return GroupAction(degree=degree, generators=tuple(gens), elements=tuple(sorted(seen)))


def act_tuple(g: Permutation, t: Sequence[int]) -> IndexTuple:
    images = g.images
    d = len(images)
    out = []
    for i in t:
        if not 0 <= i < d:
            raise IndexRangeError(f"index {i} outside 0..{d - 1}")
        out.append(images[i])
    return tuple(out)


def orbit_count(action: GroupAction, n: int) -> int:
    """Burnside: number of G-orbits on n-tuples, i.e. dim of the invariant rank-n space."""
    if n < 0:
        raise IndexRangeError(f"rank must be nonnegative, got {n}")
    total = sum(g.fixed_points() ** n for g in action.elements)
    return total // action.order


def stabilizer(action: GroupAction, point: int) -> GroupAction:
    _check_point(action, point)
    elements = tuple(g for g in action.elements if g(point) == point)
    return GroupAction(degree=action.degree, generators=elements, elements=elements)


def tuple_orbits(action: GroupAction, n: int) -> Dict[IndexTuple, List[IndexTuple]]:
    """
    Orbits of G on n-tuples by union-find over the generators.
    Keys are the lexicographically least member of each orbit.
    """
    space = list(product(range(action.degree), repeat=n))
    uf = UnionFind(space)
    for g in action.generators:
        for t in space:
            uf.union(t, act_tuple(g, t))
    classes: Dict[IndexTuple, List[IndexTuple]] = {}
    for t in space:
        classes.setdefault(uf.find(t), []).append(t)
    return {min(members): sorted(members) for members in classes.values()}


# --- builtin groups ---

def trivial_group(d: int) -> GroupAction:
    return closure([], degree=d)


def symmetric_group(d: int) -> GroupAction:
    if d < 2:
        return trivial_group(d)
    gens = [Permutation.from_cycles(d, [(0, 1)])]
    if d > 2:
        gens.append(Permutation.from_cycles(d, [tuple(range(d))]))
    return closure(gens)


def cyclic_group(d: int) -> GroupAction:
    if d < 2:
        return trivial_group(d)
    return closure([Permutation.from_cycles(d, [tuple(range(d))])])
