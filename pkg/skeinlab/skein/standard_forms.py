"""
Standard forms for the invariant space of rank n.

A standard form partitions the n outputs into blocks, each block joined by a
GHZ box. Blocks either float freely (a Temperley-Lieb-like GHZ graph, summed
over all values) or are attached to a distinct leg of one molecule S whose
other legs are capped. Leg permutations are covered because all set
partitions are enumerated, not only non-crossing ones.
"""
from dataclasses import dataclass
from itertools import combinations, permutations
from typing import Iterator, List, Optional, Sequence, Tuple

from skeinlab.algebra.model import ModelContext, OrbitCoordinates
from skeinlab.algebra.permgroup import act_tuple, orbit_count
from skeinlab.algebra.tensor import RationalMatrix, SparseTensor

Blocks = Tuple[Tuple[int, ...], ...]

DEFAULT_FORM_BUDGET = 100000


@dataclass(frozen=True)
class StandardForm:
    blocks: Blocks
    labels: Tuple[Optional[int], ...]  # S leg per block, None for a free block

    @property
    def uses_molecule(self) -> bool:
        return any(label is not None for label in self.labels)


@dataclass(frozen=True)
class StandardFormCount:
    rank: int
    examined: int
    dimension: int
    budget_exhausted: bool


def set_partitions(n: int) -> List[Blocks]:
    """All set partitions of 0..n-1 as restricted growth strings, fewest blocks first."""
    out: List[Blocks] = []

    def grow(prefix: List[int], top: int) -> None:
        if len(prefix) == n:
            blocks = [[] for _ in range(top)]
            for pos, b in enumerate(prefix):
                blocks[b].append(pos)
            out.append(tuple(tuple(b) for b in blocks))
            return
        for b in range(top + 1):
            grow(prefix + [b], max(top, b + 1))

    grow([], 0)
    return sorted(out, key=len)


def _canonical_labels(ctx: ModelContext, k: int) -> List[Tuple[int, ...]]:
    """Least representative of each G-orbit on k-tuples of distinct points."""
    seen, reps = set(), []
    for t in permutations(range(ctx.d), k):
        if t in seen:
            continue
        reps.append(t)
        seen.update(act_tuple(g, t) for g in ctx.action.elements)
    return reps


def enumerate_forms(ctx: ModelContext, n: int) -> Iterator[StandardForm]:
    """GHZ-only forms first, then molecule forms with the most attached blocks first."""
    partitions = set_partitions(n)
    for blocks in partitions:
        yield StandardForm(blocks, (None,) * len(blocks))
    label_cache = {}
    for attached in range(min(n, ctx.d), 0, -1):
        if attached not in label_cache:
            label_cache[attached] = _canonical_labels(ctx, attached)
        for blocks in partitions:
            if len(blocks) < attached:
                continue
            for chosen in combinations(range(len(blocks)), attached):
                for labels in label_cache[attached]:
                    full: List[Optional[int]] = [None] * len(blocks)
                    for b, leg in zip(chosen, labels):
                        full[b] = leg
                    yield StandardForm(blocks, tuple(full))


def standard_form_tensor(ctx: ModelContext, form: StandardForm, n: int) -> SparseTensor:
    """The tensor of a standard form, summed out explicitly (small d only)."""
    free = [b for b, label in zip(form.blocks, form.labels) if label is None]
    tied = [(b, label) for b, label in zip(form.blocks, form.labels) if label is not None]
    entries = {}
    sources = ctx.action.elements if form.uses_molecule else [None]
    for g in sources:
        base = [0] * n
        for block, label in tied:
            for pos in block:
                base[pos] = g(label)
        for values in _assignments(ctx.d, len(free)):
            t = list(base)
            for block, v in zip(free, values):
                for pos in block:
                    t[pos] = v
            key = tuple(t)
            entries[key] = entries.get(key, 0) + 1
    return SparseTensor(n, ctx.d, entries)


def _assignments(d: int, k: int) -> Iterator[Tuple[int, ...]]:
    if k == 0:
        yield ()
        return
    for head in range(d):
        for rest in _assignments(d, k - 1):
            yield (head,) + rest


def _form_coordinates(ctx: ModelContext, coords: OrbitCoordinates, form: StandardForm) -> dict:
    """Values of the form's tensor at the orbit representatives, without building it."""
    out = {}
    for idx, rep in enumerate(coords.representatives):
        values = []
        for block in form.blocks:
            v = rep[block[0]]
            if any(rep[p] != v for p in block):
                break
            values.append(v)
        else:
            tied = [(label, v) for label, v in zip(form.labels, values) if label is not None]
            if tied:
                count = sum(1 for g in ctx.action.elements if all(g(label) == v for label, v in tied))
            else:
                count = 1
            if count:
                out[idx] = count
    return out


def standard_form_count(ctx: ModelContext, n: int, budget: Optional[int] = None) -> StandardFormCount:
    """
    Rank of the span of enumerated standard forms. Stops as soon as the rank
    reaches the dimension of the invariant space, or when the budget of
    examined forms runs out (flagged).
    """
    budget = DEFAULT_FORM_BUDGET if budget is None else budget
    dimension = orbit_count(ctx.action, n)
    coords = OrbitCoordinates(ctx, n)
    matrix = RationalMatrix()
    examined = 0
    for form in enumerate_forms(ctx, n):
        if matrix.rank == dimension:
            break
        if examined >= budget:
            return StandardFormCount(matrix.rank, examined, dimension, True)
        examined += 1
        matrix.add(_form_coordinates(ctx, coords, form))
    return StandardFormCount(matrix.rank, examined, dimension, False)
