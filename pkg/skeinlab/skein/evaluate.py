"""
Evaluators for diagrams.

evaluate_closed reduces a closed {GHZ, R, S} diagram to a scalar without
building tensors: R is read as a crossing, GHZ boxes merge their legs, pairs of
S boxes are rewritten through the group sum, and a single S is resolved by
the partition of its legs. evaluate_dense realizes a diagram with explicit
tensor products, swaps and contractions and serves as the oracle.
"""
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Tuple

from skeinlab.algebra.model import ModelContext, ghz, molecule, transposition
from skeinlab.algebra.tensor import SparseTensor, contract, permute_swap, tensor_product
from skeinlab.algebra.utils import UnionFind, format_scalar
from skeinlab.errors import (
    ArityMismatchError,
    BindingError,
    GuardExceededError,
    NonClosedDiagramError,
    TermBudgetExceededError,
    UnsupportedBoxError,
)
from skeinlab.settings import get_guard, get_term_budget
from .diagram import Box, BoxKind, DiagramIR, Port, port_classes, summarize_components, validate


@dataclass(frozen=True)
class EvaluationResult:
    value: Fraction
    s_boxes: int
    components: int
    terms_expanded: int

    def to_dict(self) -> dict:
        return {
            "value": format_scalar(self.value),
            "s_boxes": self.s_boxes,
            "components": self.components,
            "terms_expanded": self.terms_expanded,
        }


def _check_s_arity(ctx: ModelContext, diag: DiagramIR) -> None:
    for b in diag.boxes_of(BoxKind.S):
        if b.arity != ctx.d:
            raise ArityMismatchError(f"S box '{b.id}' has {b.arity} legs but d = {ctx.d}", b.location)


def _classes_of(uf: UnionFind, box: Box) -> List:
    return [uf.find(p) for p in box.ports()]


def _has_repeat(uf: UnionFind, boxes: List[Box]) -> bool:
    for b in boxes:
        roots = _classes_of(uf, b)
        if len(set(roots)) != len(roots):
            return True
    return False


def _single_s_value(ctx: ModelContext, uf: UnionFind, s_box: Box) -> Fraction:
    roots = _classes_of(uf, s_box)
    if len(set(roots)) != len(roots):
        return Fraction(0)
    closed = len(uf) - len(roots)
    return Fraction(ctx.order * ctx.d ** closed)


def evaluate_closed(ctx: ModelContext, diag: DiagramIR, budget: Optional[int] = None) -> EvaluationResult:
    validate(diag)
    if diag.boundary:
        raise NonClosedDiagramError(f"diagram has {len(diag.boundary)} open ports")
    for b in diag.boxes:
        if b.kind == BoxKind.CUSTOM:
            raise UnsupportedBoxError(f"custom box '{b.id}' needs the dense evaluator", b.location)
    _check_s_arity(ctx, diag)

    budget = get_term_budget() if budget is None else budget
    s_boxes = diag.boxes_of(BoxKind.S)
    summary = summarize_components(diag)
    worst = ctx.order ** max(len(s_boxes) - 1, 0)
    if worst > budget:
        raise TermBudgetExceededError(
            f"{len(s_boxes)} S boxes expand to up to {worst} terms, budget is {budget}", worst, budget)

    uf = port_classes(diag)
    if not s_boxes:
        return EvaluationResult(Fraction(ctx.d ** len(uf)), 0, summary.closed_components, 1)

    terms = 0
    total = Fraction(0)
    # each entry: (port classes, S boxes still present)
    stack: List[Tuple[UnionFind, List[Box]]] = [(uf, s_boxes)]
    while stack:
        current, remaining = stack.pop()
        if _has_repeat(current, remaining):
            continue
        if len(remaining) == 1:
            terms += 1
            total += _single_s_value(ctx, current, remaining[0])
            continue
        first, second, rest = remaining[0], remaining[1], remaining[2:]
        # S_second leg k carries the value of S_first leg u(k)
        for u in reversed(ctx.action.elements):
            merged = current.copy()
            for k in range(ctx.d):
                merged.union((second.id, k + 1), (first.id, u(k) + 1))
            stack.append((merged, [first] + rest))
    return EvaluationResult(total, len(s_boxes), len(summary.components), terms)


# --- dense evaluation ---

def box_tensor(ctx: ModelContext, box: Box, bindings: Optional[Mapping[str, SparseTensor]] = None) -> SparseTensor:
    if box.kind == BoxKind.GHZ:
        return ghz(ctx, box.arity)
    if box.kind == BoxKind.R:
        return transposition(ctx)
    if box.kind == BoxKind.S:
        if box.arity != ctx.d:
            raise ArityMismatchError(f"S box '{box.id}' has {box.arity} legs but d = {ctx.d}", box.location)
        return molecule(ctx)
    bindings = bindings or {}
    if box.name not in bindings:
        raise BindingError(f"tensor '{box.name}' used by box '{box.id}' is not bound")
    t = bindings[box.name]
    if t.rank != box.arity or t.dim != ctx.d:
        raise BindingError(
            f"tensor '{box.name}' has shape (rank {t.rank}, dim {t.dim}), "
            f"box '{box.id}' needs (rank {box.arity}, dim {ctx.d})")
    return t


def _bring_adjacent(t: SparseTensor, labels: List[Port], i: int, j: int) -> Tuple[SparseTensor, List[Port], int]:
    """Swaps leg j leftwards until it sits right after leg i (i < j); returns the new position of i."""
    while j > i + 1:
        t = permute_swap(t, j)  # 1-based position j swaps legs j-1 and j (0-based)
        labels[j - 1], labels[j] = labels[j], labels[j - 1]
        j -= 1
    return t, labels, i


def evaluate_dense(ctx: ModelContext, diag: DiagramIR, guard: Optional[int] = None,
                   bindings: Optional[Mapping[str, SparseTensor]] = None) -> SparseTensor:
    """
    Absorbs boxes one at a time, preferring the box sharing most wires with the
    current tensor (ties by declaration order). The guard bounds the number of
    legs still waiting for a contraction; boundary legs do not count.
    """
    validate(diag)
    _check_s_arity(ctx, diag)
    guard = get_guard() if guard is None else guard
    if not diag.boxes:
        return SparseTensor.scalar(1, ctx.d)

    partner = diag.partner_map()
    boundary = set(diag.boundary)
    pending = list(diag.boxes)

    current: Optional[SparseTensor] = None
    labels: List[Port] = []
    while pending:
        present = {p[0] for p in labels}
        scores = [sum(1 for p in b.ports() if p in partner and partner[p][0] in present) for b in pending]
        pick = max(range(len(pending)), key=lambda i: (scores[i], -i))
        box = pending.pop(pick)
        tensor = box_tensor(ctx, box, bindings)
        if current is None:
            current, labels = tensor, box.ports()
        else:
            current = tensor_product(current, tensor)
            labels = labels + box.ports()
        bonds = sum(1 for p in labels if p not in boundary)
        if bonds > guard:
            raise GuardExceededError(
                f"intermediate tensor has {bonds} open bond legs, guard is {guard}", bonds, guard)
        current, labels = _contract_internal(current, labels, partner)

    return _reorder(current, labels, list(diag.boundary))


def _contract_internal(t: SparseTensor, labels: List[Port], partner: Dict[Port, Port]) -> Tuple[SparseTensor, List[Port]]:
    """Contracts every wire whose two ends are both legs of t."""
    while True:
        position = {p: k for k, p in enumerate(labels)}
        pair = next(((position[p], position[partner[p]]) for p in labels
                     if p in partner and partner[p] in position), None)
        if pair is None:
            return t, labels
        i, j = sorted(pair)
        t, labels, i = _bring_adjacent(t, labels, i, j)
        t = contract(t, i + 1)
        del labels[i:i + 2]


def _reorder(t: SparseTensor, labels: List[Port], target: List[Port]) -> SparseTensor:
    """Bubble-sorts the legs into boundary order with adjacent swaps."""
    rank = {p: k for k, p in enumerate(target)}
    order = [rank[p] for p in labels]
    n = len(order)
    for end in range(n - 1, 0, -1):
        for k in range(end):
            if order[k] > order[k + 1]:
                t = permute_swap(t, k + 1)
                order[k], order[k + 1] = order[k + 1], order[k]
    return t
