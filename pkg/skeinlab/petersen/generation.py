"""
Generation of the Petersen rank-4 invariant space from 2-boxes and GHZ.

Candidates are dense numpy 4-boxes. Each one is recorded by its values at
the rank-4 orbit representatives (an invariant tensor is fixed by them),
and those integer rows go into an exact RationalMatrix.

Search, in breadth-first rounds:
  seeds     strand products of 2-boxes, GHZ(4), the spoke terms, B1, B2
  moves     rotate, compose with a seed on either side, a 2-box on one leg
Once the crossing R lies in the span, leg permutations are available, and
the graph-built molecule supplies the remaining orbit sums.
"""
import sys
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

import numpy as np
import pandas as pd

from skeinlab.algebra.model import OrbitCoordinates, orbit_from_generators
from skeinlab.algebra.permgroup import orbit_count
from skeinlab.algebra.tensor import RationalMatrix, SparseTensor
from skeinlab.settings import get_generation_budget
from .identities import REPORT_COLUMNS, b1_tensor, b2_tensor, spoke_terms
from .kneser import KneserModel, molecule_from_graph, two_box_basis

# rows are scaled by their gcd; anything still above this is dropped
MAGNITUDE_LIMIT = 2 ** 40


@dataclass
class GenerationReport:
    rank2: int
    planar_rank: int
    rank4: int
    target: int
    r_in_span: bool
    two_box_identity: bool
    crossing_identity: bool
    examined: int
    exhausted: bool
    from_molecule: int = 0
    history: List[Tuple[int, int, int]] = field(default_factory=list)

    def to_frame(self) -> pd.DataFrame:
        rounds = "; ".join(f"round {r}: {n} examined, rank {k}" for r, n, k in self.history)
        rows = [
            {"check": "J = 1 + A + Aᶜ", "cases": 1, "passed": self.two_box_identity, "detail": ""},
            {"check": "R = ghz4 + R_A + R_Aᶜ", "cases": 1, "passed": self.crossing_identity, "detail": ""},
            {"check": "rank-2 span", "cases": 3, "passed": self.rank2 == 3, "detail": f"rank {self.rank2}"},
            {"check": "R in generated span", "cases": 1, "passed": self.r_in_span, "detail": ""},
            {"check": "rank-4 generated span", "cases": self.examined, "passed": self.rank4 == self.target,
             "detail": (f"rank {self.rank4}/{self.target} (planar {self.planar_rank}, "
                        f"molecule {self.from_molecule})"
                        + (", budget exhausted" if self.exhausted else "")
                        + (f"; {rounds}" if rounds else ""))},
        ]
        return pd.DataFrame(rows, columns=REPORT_COLUMNS)


def _progress(message: str) -> None:
    print(f"[PETERSEN] {message}", file=sys.stderr)


def to_array(t: SparseTensor) -> np.ndarray:
    out = np.zeros((t.dim,) * t.rank, dtype=np.int64)
    for key, value in t.items():
        out[key] = int(value)
    return out


def rotate(x: np.ndarray) -> np.ndarray:
    return np.transpose(x, (1, 2, 3, 0))


def compose(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """x∘y: x.1 meets y.4 and x.2 meets y.3; legs (y.1, y.2, x.3, x.4)."""
    return np.einsum("abqp,pqce->abce", y, x)


def act_on_leg(x: np.ndarray, two_box: np.ndarray, leg: int) -> np.ndarray:
    return np.moveaxis(np.tensordot(two_box, x, axes=([1], [leg])), 0, leg)


def strand_product(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """x on the outer legs (1,4), y on the inner legs (2,3)."""
    return np.einsum("ae,bc->abce", x, y)


def _primitive(x: np.ndarray) -> Optional[np.ndarray]:
    g = int(np.gcd.reduce(np.abs(x).ravel()))
    if g == 0:
        return None
    if g > 1:
        x = x // g
    if int(np.abs(x).max()) > MAGNITUDE_LIMIT:
        return None
    return x


class _Span:
    def __init__(self, reps: List[Tuple[int, ...]]):
        self.index = tuple(np.array(c) for c in zip(*reps))
        self.matrix = RationalMatrix()

    def row(self, x: np.ndarray) -> Dict[int, int]:
        values = x[self.index]
        return {k: int(v) for k, v in enumerate(values) if v != 0}

    def add(self, x: np.ndarray) -> bool:
        row = self.row(x)
        return bool(row) and self.matrix.add(row)

    def contains(self, x: np.ndarray) -> bool:
        return self.matrix.contains(self.row(x))

    @property
    def rank(self) -> int:
        return self.matrix.rank


def seeds(model: KneserModel) -> List[np.ndarray]:
    basis = [to_array(t) for t in two_box_basis(model).as_list()]
    n = len(model.vertices)
    ghz4 = np.zeros((n,) * 4, dtype=np.int64)
    for j in range(n):
        ghz4[j, j, j, j] = 1
    t1, t2 = spoke_terms(model)
    out = [ghz4, to_array(t1), to_array(t2), to_array(b1_tensor(model)), to_array(b2_tensor(model))]
    for x in basis:
        for y in basis:
            out.append(strand_product(x, y))
    return out


def _rank2(model: KneserModel, pieces: List[np.ndarray]) -> int:
    coords = OrbitCoordinates(model.ctx, 2)
    index = tuple(np.array(c) for c in zip(*coords.representatives))
    matrix = RationalMatrix()
    for t in two_box_basis(model).as_list():
        matrix.add(coords.coordinates(t))
    for x in pieces:
        for traced in (np.einsum("abbc->ac", x), np.einsum("abca->bc", x)):
            values = traced[index]
            matrix.add({k: int(v) for k, v in enumerate(values) if v != 0})
    return matrix.rank


def verify_generation(model: KneserModel, budget: Optional[int] = None) -> GenerationReport:
    budget = get_generation_budget() if budget is None else budget
    ctx = model.ctx
    target = orbit_count(model.action, 4)
    coords = OrbitCoordinates(ctx, 4)
    basis = two_box_basis(model)

    identity, a, ac = (to_array(t) for t in basis.as_list())
    two_box_identity = bool(np.array_equal(identity + a + ac, np.ones_like(a)))

    start = seeds(model)
    n = len(model.vertices)
    crossing = np.einsum("ac,bd->abcd", np.eye(n, dtype=np.int64), np.eye(n, dtype=np.int64))
    ghz4, t1, t2, b1, b2 = start[:5]
    crossing_identity = bool(np.array_equal(ghz4 + (t1 + t2 - b1) + b2, crossing))

    span = _Span(coords.representatives)
    examined = 0
    frontier = []
    for x in start:
        examined += 1
        if span.add(x):
            frontier.append(x)
    history = [(0, examined, span.rank)]
    _progress(f"generation: seeds give rank {span.rank}/{target}")

    exhausted = False
    round_no = 0
    while frontier and span.rank < target and not exhausted:
        round_no += 1
        grown = []
        for x in frontier:
            moves = [rotate(x)]
            moves += [compose(x, s) for s in start]
            moves += [compose(s, x) for s in start]
            moves += [act_on_leg(x, box, leg) for box in (a, ac) for leg in range(4)]
            for y in moves:
                if examined >= budget:
                    exhausted = True
                    break
                examined += 1
                y = _primitive(y)
                if y is not None and span.add(y):
                    grown.append(y)
                    if span.rank == target:
                        break
            if exhausted or span.rank == target:
                break
        frontier = grown
        history.append((round_no, examined, span.rank))
        _progress(f"generation round {round_no}: {examined} examined, rank {span.rank}/{target}")

    planar_rank = span.rank
    r_in_span = span.contains(crossing)
    from_molecule = 0
    if r_in_span and span.rank < target:
        s_tilde = molecule_from_graph(model)
        for rep in coords.representatives:
            if span.rank == target:
                break
            t = orbit_from_generators(ctx, rep, s_tensor=s_tilde)
            if span.add(to_array(t)):
                from_molecule += 1
        _progress(f"generation: graph-built molecule adds {from_molecule}, rank {span.rank}/{target}")

    return GenerationReport(
        rank2=_rank2(model, start),
        planar_rank=planar_rank,
        rank4=span.rank,
        target=target,
        r_in_span=r_in_span,
        two_box_identity=two_box_identity,
        crossing_identity=crossing_identity,
        examined=examined,
        exhausted=exhausted,
        from_molecule=from_molecule,
        history=history,
    )
