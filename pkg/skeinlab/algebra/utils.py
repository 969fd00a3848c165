# shared helpers for the algebra modules
from fractions import Fraction
from typing import Hashable, Iterable, Union


class UnionFind:
    """Disjoint sets with union by rank and path compression."""

    def __init__(self, items: Iterable[Hashable] = ()):
        self.parent = {}
        self.rank = {}
        for x in items:
            self.add(x)

    def add(self, x: Hashable) -> None:
        if x not in self.parent:
            self.parent[x] = x
            self.rank[x] = 0

    def find(self, x: Hashable) -> Hashable:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x: Hashable, y: Hashable) -> bool:
        """Merges the classes of x and y; returns False when they were already joined."""
        x, y = self.find(x), self.find(y)
        if x == y:
            return False
        if self.rank[x] < self.rank[y]:
            x, y = y, x
        elif self.rank[x] == self.rank[y]:
            self.rank[x] += 1
        self.parent[y] = x
        return True

    def reps(self) -> set:
        return {x for x in self.parent if self.parent[x] == x}

    def copy(self) -> "UnionFind":
        other = UnionFind()
        other.parent = dict(self.parent)
        other.rank = dict(self.rank)
        return other

    def __len__(self) -> int:
        return len(self.reps())


def to_fraction(value: Union[int, str, Fraction]) -> Fraction:
    """Parses an int, a Fraction or a "p/q" string."""
    if isinstance(value, Fraction):
        return value
    return Fraction(value)


def format_scalar(value: Union[int, Fraction]) -> str:
    """Exact scalar as "p/q", or as a bare integer when the denominator is 1."""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"
