"""
Exact sparse tensors over the rationals.

A SparseTensor of rank n and dimension d maps index tuples (length n,
entries in 0..d-1) to nonzero Fractions. Positions are 1-based in the
public spin-model operations (contract, permute_swap, tensordot) and
0-based in permute_legs.
"""
from fractions import Fraction
from math import gcd
from typing import Dict, Hashable, Iterable, List, Mapping, Optional, Sequence, Tuple

from skeinlab.errors import IndexRangeError, ShapeMismatchError
from .permgroup import Permutation, act_tuple
from .utils import format_scalar, to_fraction

IndexTuple = Tuple[int, ...]


class SparseTensor:
    __slots__ = ("rank", "dim", "_entries")

    def __init__(self, rank: int, dim: int, entries: Optional[Mapping[IndexTuple, object]] = None,
                 check: bool = True):
        if rank < 0 or dim < 1:
            raise ShapeMismatchError(f"invalid shape rank={rank}, dim={dim}")
        self.rank = rank
        self.dim = dim
        clean: Dict[IndexTuple, Fraction] = {}
        for key, value in (entries or {}).items():
            value = to_fraction(value)
            if value == 0:
                continue
            key = tuple(key)
            if check:
                if len(key) != rank:
                    raise ShapeMismatchError(f"tuple {key} has length {len(key)}, rank is {rank}")
                if any(not 0 <= i < dim for i in key):
                    raise IndexRangeError(f"tuple {key} has an index outside 0..{dim - 1}")
            clean[key] = value
        self._entries = clean

    # --- constructors ---

    @classmethod
    def scalar(cls, value, dim: int) -> "SparseTensor":
        return cls(0, dim, {(): value})

    @classmethod
    def basic(cls, t: Sequence[int], dim: int) -> "SparseTensor":
        return cls(len(t), dim, {tuple(t): 1})

    @classmethod
    def _raw(cls, rank: int, dim: int, entries: Dict[IndexTuple, Fraction]) -> "SparseTensor":
        out = cls.__new__(cls)
        out.rank, out.dim = rank, dim
        out._entries = {k: v for k, v in entries.items() if v != 0}
        return out

    # --- access ---

    @property
    def nnz(self) -> int:
        return len(self._entries)

    @property
    def value(self) -> Fraction:
        """The scalar of a rank-0 tensor."""
        if self.rank != 0:
            raise ShapeMismatchError(f"tensor of rank {self.rank} is not a scalar")
        return self._entries.get((), Fraction(0))

    def get(self, t: Sequence[int]) -> Fraction:
        return self._entries.get(tuple(t), Fraction(0))

    def items(self) -> List[Tuple[IndexTuple, Fraction]]:
        return sorted(self._entries.items())

    def support(self) -> List[IndexTuple]:
        return sorted(self._entries)

    def is_zero(self) -> bool:
        return not self._entries

    # --- linear structure ---

    def _check_same_shape(self, other: "SparseTensor") -> None:
        if self.rank != other.rank or self.dim != other.dim:
            raise ShapeMismatchError(
                f"shape ({self.rank}, {self.dim}) does not match ({other.rank}, {other.dim})")

    def __add__(self, other: "SparseTensor") -> "SparseTensor":
        self._check_same_shape(other)
        out = dict(self._entries)
        for k, v in other._entries.items():
            out[k] = out.get(k, 0) + v
        return SparseTensor._raw(self.rank, self.dim, out)

    def __neg__(self) -> "SparseTensor":
        return SparseTensor._raw(self.rank, self.dim, {k: -v for k, v in self._entries.items()})

    def __sub__(self, other: "SparseTensor") -> "SparseTensor":
        return self + (-other)

    def __mul__(self, c) -> "SparseTensor":
        c = to_fraction(c)
        return SparseTensor._raw(self.rank, self.dim, {k: c * v for k, v in self._entries.items()})

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, SparseTensor):
            return NotImplemented
        return self.rank == other.rank and self.dim == other.dim and self._entries == other._entries

    __hash__ = None

    def relabel(self, g: Permutation) -> "SparseTensor":
        """Entrywise action g·t on every index tuple."""
        if g.degree != self.dim:
            raise ShapeMismatchError(f"permutation of degree {g.degree} acting on dimension {self.dim}")
        return SparseTensor._raw(self.rank, self.dim, {act_tuple(g, k): v for k, v in self._entries.items()})

    def __repr__(self) -> str:
        head = ", ".join(f"{k}: {format_scalar(v)}" for k, v in self.items()[:4])
        more = ", ..." if self.nnz > 4 else ""
        return f"SparseTensor(rank={self.rank}, dim={self.dim}, nnz={self.nnz}, {{{head}{more}}})"

    # --- serialization ---

    def to_dict(self) -> dict:
        return {
            "rank": self.rank,
            "dim": self.dim,
            "entries": [[list(k), format_scalar(v)] for k, v in self.items()],
        }

    @classmethod
    def from_dict(cls, payload: Mapping) -> "SparseTensor":
        try:
            rank, dim = int(payload["rank"]), int(payload["dim"])
            entries = {tuple(int(i) for i in k): Fraction(v) for k, v in payload["entries"]}
        except (KeyError, TypeError, ValueError) as e:
            raise ShapeMismatchError(f"malformed tensor payload: {e}") from None
        return cls(rank, dim, entries)


# --- spin-model operations ---

def _check_position(t: SparseTensor, k: int) -> None:
    if t.rank < 2:
        raise ShapeMismatchError(f"rank {t.rank} tensor has no adjacent legs")
    if not 1 <= k <= t.rank - 1:
        raise IndexRangeError(f"position {k} outside 1..{t.rank - 1}")


def tensor_product(a: SparseTensor, b: SparseTensor) -> SparseTensor:
    if a.dim != b.dim:
        raise ShapeMismatchError(f"dimension mismatch: {a.dim} vs {b.dim}")
    out = {}
    for ka, va in a._entries.items():
        for kb, vb in b._entries.items():
            out[ka + kb] = va * vb
    return SparseTensor._raw(a.rank + b.rank, a.dim, out)


def contract(t: SparseTensor, k: int) -> SparseTensor:
    """δ-pairs positions k and k+1 (1-based) and drops them."""
    _check_position(t, k)
    i = k - 1
    out: Dict[IndexTuple, Fraction] = {}
    for key, v in t._entries.items():
        if key[i] != key[i + 1]:
            continue
        rest = key[:i] + key[i + 2:]
        out[rest] = out.get(rest, 0) + v
    return SparseTensor._raw(t.rank - 2, t.dim, out)


def permute_swap(t: SparseTensor, k: int) -> SparseTensor:
    """Exchanges positions k and k+1 (1-based)."""
    _check_position(t, k)
    i = k - 1
    out = {key[:i] + (key[i + 1], key[i]) + key[i + 2:]: v for key, v in t._entries.items()}
    return SparseTensor._raw(t.rank, t.dim, out)


def permute_legs(t: SparseTensor, sigma: Sequence[int]) -> SparseTensor:
    """Moves old leg k to new position sigma[k] (both 0-based)."""
    if sorted(sigma) != list(range(t.rank)):
        raise IndexRangeError(f"{list(sigma)} is not a permutation of the {t.rank} legs")
    out = {}
    for key, v in t._entries.items():
        new = [0] * t.rank
        for k, pos in enumerate(sigma):
            new[pos] = key[k]
        out[tuple(new)] = v
    return SparseTensor._raw(t.rank, t.dim, out)


def tensordot(a: SparseTensor, b: SparseTensor, pairs: Sequence[Tuple[int, int]]) -> SparseTensor:
    """
    Product of a and b with each (i, j) in pairs δ-paired (1-based, i on a, j on b).
    Remaining legs keep their order, a's first. Equal to tensor_product followed by
    contractions, without materializing the product.
    """
    if a.dim != b.dim:
        raise ShapeMismatchError(f"dimension mismatch: {a.dim} vs {b.dim}")
    left = [i - 1 for i, _ in pairs]
    right = [j - 1 for _, j in pairs]
    for i in left:
        if not 0 <= i < a.rank:
            raise IndexRangeError(f"leg {i + 1} outside 1..{a.rank}")
    for j in right:
        if not 0 <= j < b.rank:
            raise IndexRangeError(f"leg {j + 1} outside 1..{b.rank}")
    if len(set(left)) != len(left) or len(set(right)) != len(right):
        raise IndexRangeError("a leg appears in more than one contracted pair")
    keep_a = [i for i in range(a.rank) if i not in set(left)]
    keep_b = [j for j in range(b.rank) if j not in set(right)]

    buckets: Dict[IndexTuple, List[Tuple[IndexTuple, Fraction]]] = {}
    for kb, vb in b._entries.items():
        buckets.setdefault(tuple(kb[j] for j in right), []).append((tuple(kb[j] for j in keep_b), vb))

    out: Dict[IndexTuple, Fraction] = {}
    for ka, va in a._entries.items():
        matches = buckets.get(tuple(ka[i] for i in left))
        if not matches:
            continue
        rest_a = tuple(ka[i] for i in keep_a)
        for rest_b, vb in matches:
            key = rest_a + rest_b
            out[key] = out.get(key, 0) + va * vb
    return SparseTensor._raw(len(keep_a) + len(keep_b), a.dim, out)


def inner_product(a: SparseTensor, b: SparseTensor) -> Fraction:
    a._check_same_shape(b)
    if a.nnz > b.nnz:
        a, b = b, a
    return sum((v * b._entries[k] for k, v in a._entries.items() if k in b._entries), Fraction(0))


def rank_of_span(tensors: Sequence[SparseTensor]) -> int:
    """Exact rank of the flattened tensors by fraction-free elimination."""
    tensors = list(tensors)
    for t in tensors[1:]:
        tensors[0]._check_same_shape(t)
    matrix = RationalMatrix()
    for t in tensors:
        matrix.add(t._entries)
    return matrix.rank


# --- exact linear algebra ---

Row = Dict[Hashable, int]


def _integer_row(row: Mapping[Hashable, object]) -> Row:
    """Scales a rational row to coprime integers with a positive leading entry."""
    values = {k: to_fraction(v) for k, v in row.items() if v != 0}
    if not values:
        return {}
    den = 1
    for v in values.values():
        den = den * v.denominator // gcd(den, v.denominator)
    ints = {k: int(v * den) for k, v in values.items()}
    return _normalize(ints)


def _normalize(row: Row) -> Row:
    if not row:
        return row
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            break
    if row[min(row)] < 0:
        g = -g
    if g != 1:
        row = {k: v // g for k, v in row.items()}
    return row


class RationalMatrix:
    """
    Incremental row echelon form over the rationals, fraction-free.

    Rows are sparse maps from comparable column keys to values. Every stored
    row is primitive (integer entries with gcd 1) and its pivot is its least key.
    """

    def __init__(self, rows: Iterable[Mapping[Hashable, object]] = ()):
        self.pivots: Dict[Hashable, Row] = {}
        for row in rows:
            self.add(row)

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def reduce(self, row: Mapping[Hashable, object]) -> Row:
        """The remainder of row after elimination against the stored pivots."""
        current = _integer_row(row)
        while current:
            hits = [c for c in current if c in self.pivots]
            if not hits:
                break
            col = min(hits)
            pivot = self.pivots[col]
            a, b = pivot[col], current[col]
            merged = {k: a * v for k, v in current.items()}
            for k, v in pivot.items():
                merged[k] = merged.get(k, 0) - b * v
            current = _normalize({k: v for k, v in merged.items() if v != 0})
        return current

    def add(self, row: Mapping[Hashable, object]) -> bool:
        """Inserts row; returns True when the rank grew."""
        rest = self.reduce(row)
        if not rest:
            return False
        self.pivots[min(rest)] = rest
        return True

    def contains(self, row: Mapping[Hashable, object]) -> bool:
        return not self.reduce(row)


def gauss_jordan_rank(rows: Sequence[Mapping[Hashable, object]]) -> int:
    """
    Rank by plain Gauss-Jordan over Fractions, pivoting from the last column
    backwards. Kept as an independent check of RationalMatrix.
    """
    columns = sorted({k for row in rows for k in row}, reverse=True)
    matrix = [[to_fraction(row.get(c, 0)) for c in columns] for row in rows]
    rank = 0
    for j in range(len(columns)):
        pivot = next((i for i in range(rank, len(matrix)) if matrix[i][j] != 0), None)
        if pivot is None:
            continue
        matrix[rank], matrix[pivot] = matrix[pivot], matrix[rank]
        lead = matrix[rank][j]
        matrix[rank] = [x / lead for x in matrix[rank]]
        for i in range(len(matrix)):
            if i != rank and matrix[i][j] != 0:
                f = matrix[i][j]
                matrix[i] = [x - f * y for x, y in zip(matrix[i], matrix[rank])]
        rank += 1
    return rank
