"""
Contraction plans: a fixed sequence of load / merge / contract / swap steps
over named intermediates, compiled once from a diagram and run against a
model context and custom tensor bindings.
"""
from dataclasses import dataclass
from typing import TYPE_CHECKING, Dict, List, Mapping, Optional, Tuple, Union

from skeinlab.algebra.model import ModelContext
from skeinlab.algebra.tensor import SparseTensor, contract, permute_swap, tensordot
from skeinlab.errors import GuardExceededError
from skeinlab.settings import get_guard
from skeinlab.skein.diagram import Box, DiagramIR, Port, validate
from skeinlab.skein.evaluate import box_tensor

if TYPE_CHECKING:
    import pandas as pd


@dataclass(frozen=True)
class LoadStep:
    target: str
    box: Box


@dataclass(frozen=True)
class MergeStep:
    """Fused product of left and right with the listed (left leg, right leg) pairs contracted."""
    target: str
    left: str
    right: str
    pairs: Tuple[Tuple[int, int], ...]


@dataclass(frozen=True)
class ContractStep:
    target: str
    source: str
    position: int


@dataclass(frozen=True)
class SwapStep:
    target: str
    source: str
    position: int


Step = Union[LoadStep, MergeStep, ContractStep, SwapStep]


@dataclass(frozen=True)
class ContractionPlan:
    steps: Tuple[Step, ...]
    output: Optional[str]
    peak_rank: int
    guard: int

    def to_frame(self) -> "pd.DataFrame":
        import pandas as pd

        rows = []
        for k, step in enumerate(self.steps, start=1):
            if isinstance(step, LoadStep):
                op, inputs, detail = "load", step.box.id, step.box.kind.value
            elif isinstance(step, MergeStep):
                op, inputs, detail = "merge", f"{step.left}, {step.right}", f"pairs={list(step.pairs)}"
            elif isinstance(step, ContractStep):
                op, inputs, detail = "contract", step.source, f"position={step.position}"
            else:
                op, inputs, detail = "swap", step.source, f"position={step.position}"
            rows.append({"step": k, "op": op, "target": step.target, "inputs": inputs, "detail": detail})
        return pd.DataFrame(rows, columns=["step", "op", "target", "inputs", "detail"])


class _Blob:
    def __init__(self, name: str, labels: List[Port], order: int):
        self.name = name
        self.labels = labels
        self.order = order


class _Compiler:
    def __init__(self, diag: DiagramIR, guard: int):
        self.diag = diag
        self.guard = guard
        self.partner = diag.partner_map()
        self.boundary = set(diag.boundary)
        self.steps: List[Step] = []
        self.counter = 0
        self.peak = 0

    def fresh(self) -> str:
        name = f"t{self.counter}"
        self.counter += 1
        return name

    def bonds(self, labels: List[Port]) -> int:
        return sum(1 for p in labels if p not in self.boundary)

    def record(self, labels: List[Port]) -> None:
        bonds = self.bonds(labels)
        if bonds > self.guard:
            raise GuardExceededError(
                f"greedy plan needs an intermediate with {bonds} bond legs, guard is {self.guard}",
                bonds, self.guard)
        self.peak = max(self.peak, bonds)

    def load(self, box: Box, order: int) -> _Blob:
        name = self.fresh()
        self.steps.append(LoadStep(name, box))
        labels = box.ports()
        # self-wires on a single box
        while True:
            position = {p: k for k, p in enumerate(labels)}
            pair = next(((position[p], position[self.partner[p]]) for p in labels
                         if p in self.partner and self.partner[p] in position), None)
            if pair is None:
                break
            i, j = sorted(pair)
            while j > i + 1:
                name = self.swap(name, labels, j)
                j -= 1
            target = self.fresh()
            self.steps.append(ContractStep(target, name, i + 1))
            del labels[i:i + 2]
            name = target
        return _Blob(name, labels, order)

    def swap(self, source: str, labels: List[Port], position: int) -> str:
        """Swaps 1-based legs position and position+1 in place in labels."""
        target = self.fresh()
        self.steps.append(SwapStep(target, source, position))
        labels[position - 1], labels[position] = labels[position], labels[position - 1]
        return target

    def shared(self, x: _Blob, y: _Blob) -> List[Tuple[int, int]]:
        where = {p: k for k, p in enumerate(y.labels)}
        pairs = []
        for i, p in enumerate(x.labels):
            q = self.partner.get(p)
            if q is not None and q in where:
                pairs.append((i + 1, where[q] + 1))
        return pairs

    def merge(self, x: _Blob, y: _Blob, pairs: List[Tuple[int, int]]) -> _Blob:
        target = self.fresh()
        self.steps.append(MergeStep(target, x.name, y.name, tuple(pairs)))
        drop_x = {i - 1 for i, _ in pairs}
        drop_y = {j - 1 for _, j in pairs}
        labels = [p for k, p in enumerate(x.labels) if k not in drop_x]
        labels += [p for k, p in enumerate(y.labels) if k not in drop_y]
        self.record(labels)
        return _Blob(target, labels, min(x.order, y.order))

    def run(self) -> ContractionPlan:
        if not self.diag.boxes:
            return ContractionPlan((), None, 0, self.guard)
        blobs = [self.load(b, k) for k, b in enumerate(self.diag.boxes)]
        while len(blobs) > 1:
            best = None
            for a in range(len(blobs)):
                for b in range(a + 1, len(blobs)):
                    x, y = blobs[a], blobs[b]
                    pairs = self.shared(x, y)
                    if not pairs:
                        continue
                    result = self.bonds(x.labels) + self.bonds(y.labels) - 2 * len(pairs)
                    key = (result, min(x.order, y.order), max(x.order, y.order))
                    if best is None or key < best[0]:
                        best = (key, a, b, pairs)
            if best is None:
                # disconnected pieces: plain product of the two earliest
                blobs.sort(key=lambda blob: blob.order)
                a, b, pairs = 0, 1, []
            else:
                _, a, b, pairs = best
            x, y = blobs[a], blobs[b]
            if y.order < x.order:
                x, y = y, x
                pairs = [(j, i) for i, j in pairs]
            merged = self.merge(x, y, pairs)
            blobs = [blob for k, blob in enumerate(blobs) if k not in (a, b)] + [merged]

        final = blobs[0]
        name, labels = final.name, list(final.labels)
        rank = {p: k for k, p in enumerate(self.diag.boundary)}
        for end in range(len(labels) - 1, 0, -1):
            for k in range(end):
                if rank[labels[k]] > rank[labels[k + 1]]:
                    name = self.swap(name, labels, k + 1)
        return ContractionPlan(tuple(self.steps), name, self.peak, self.guard)


def compile_plan(ir: DiagramIR, guard: Optional[int] = None) -> ContractionPlan:
    """
    Greedy pairwise elimination: repeatedly merge the two intermediates whose
    result keeps the fewest bond legs, ties broken by declaration order.
    """
    validate(ir)
    guard = get_guard() if guard is None else guard
    return _Compiler(ir, guard).run()


compile = compile_plan


def run(ctx: ModelContext, plan: ContractionPlan,
        bindings: Optional[Mapping[str, SparseTensor]] = None) -> SparseTensor:
    if plan.output is None:
        return SparseTensor.scalar(1, ctx.d)
    env: Dict[str, SparseTensor] = {}
    for step in plan.steps:
        if isinstance(step, LoadStep):
            env[step.target] = box_tensor(ctx, step.box, bindings)
        elif isinstance(step, MergeStep):
            env[step.target] = tensordot(env[step.left], env[step.right], step.pairs)
        elif isinstance(step, ContractStep):
            env[step.target] = contract(env[step.source], step.position)
        else:
            env[step.target] = permute_swap(env[step.source], step.position)
    return env[plan.output]
