"""
Box-and-wire diagrams over the generators {GHZ(k), R, S} and named custom tensors.

A port is (box id, leg) with 1-based legs numbered counterclockwise from the
marked first leg. R's legs 1,2 are the bottom inputs, crossing to 3,4
(leg 1 carries through to leg 3 and leg 2 to leg 4).
"""
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Optional, Sequence, Tuple

from skeinlab.algebra.utils import UnionFind
from skeinlab.errors import (
    ArityMismatchError,
    DanglingPortError,
    DuplicateBoxError,
    DuplicateWireError,
    SourceLocation,
    UnknownBoxError,
)

Port = Tuple[str, int]


class BoxKind(str, Enum):
    GHZ = "ghz"
    R = "R"
    S = "S"
    CUSTOM = "tensor"


@dataclass(frozen=True)
class Box:
    id: str
    kind: BoxKind
    arity: int
    name: Optional[str] = None  # bound tensor name for CUSTOM boxes
    location: Optional[SourceLocation] = field(default=None, compare=False)

    def ports(self) -> List[Port]:
        return [(self.id, leg) for leg in range(1, self.arity + 1)]


@dataclass(frozen=True)
class DiagramIR:
    boxes: Tuple[Box, ...] = ()
    wires: Tuple[Tuple[Port, Port], ...] = ()
    boundary: Tuple[Port, ...] = ()

    def box(self, box_id: str) -> Box:
        for b in self.boxes:
            if b.id == box_id:
                return b
        raise UnknownBoxError(f"unknown box '{box_id}'")

    @property
    def is_closed(self) -> bool:
        return not self.boundary

    def boxes_of(self, kind: BoxKind) -> List[Box]:
        return [b for b in self.boxes if b.kind == kind]

    def partner_map(self) -> Dict[Port, Port]:
        partner = {}
        for p, q in self.wires:
            partner[p] = q
            partner[q] = p
        return partner


@dataclass(frozen=True)
class WireComponentSummary:
    components: Tuple[frozenset, ...]
    s_count: int
    closed_components: int


def validate(diag: DiagramIR) -> None:
    """Every port of every box is used exactly once, by a wire or a boundary slot."""
    index: Dict[str, Box] = {}
    for b in diag.boxes:
        if b.id in index:
            raise DuplicateBoxError(f"box '{b.id}' declared twice", b.location)
        if b.arity < 1:
            raise ArityMismatchError(f"box '{b.id}' has arity {b.arity}", b.location)
        index[b.id] = b

    used: Dict[Port, str] = {}

    def claim(port: Port, how: str) -> None:
        box_id, leg = port
        if box_id not in index:
            raise UnknownBoxError(f"unknown box '{box_id}' in {how}")
        if not 1 <= leg <= index[box_id].arity:
            raise ArityMismatchError(
                f"box '{box_id}' has {index[box_id].arity} legs, leg {leg} does not exist",
                index[box_id].location)
        if port in used:
            raise DuplicateWireError(f"port {box_id}.{leg} used twice ({used[port]} and {how})")
        used[port] = how

    for p, q in diag.wires:
        claim(p, "wire")
        claim(q, "wire")
    for p in diag.boundary:
        claim(p, "open")
    for b in diag.boxes:
        for port in b.ports():
            if port not in used:
                raise DanglingPortError(f"port {port[0]}.{port[1]} is neither wired nor open", b.location)


def port_classes(diag: DiagramIR) -> UnionFind:
    """
    Union-find over all ports: wires join their two ends, a GHZ box joins all
    its legs and R joins legs 1~3 and 2~4. S and custom legs stay separate.
    """
    uf = UnionFind()
    for b in diag.boxes:
        for port in b.ports():
            uf.add(port)
    for p, q in diag.wires:
        uf.union(p, q)
    for b in diag.boxes:
        if b.kind == BoxKind.GHZ:
            for leg in range(2, b.arity + 1):
                uf.union((b.id, 1), (b.id, leg))
        elif b.kind == BoxKind.R:
            uf.union((b.id, 1), (b.id, 3))
            uf.union((b.id, 2), (b.id, 4))
    return uf


def summarize_components(diag: DiagramIR) -> WireComponentSummary:
    uf = port_classes(diag)
    classes: Dict[Port, set] = {}
    for port in uf.parent:
        classes.setdefault(uf.find(port), set()).add(port)
    terminal = {p for b in diag.boxes if b.kind in (BoxKind.S, BoxKind.CUSTOM) for p in b.ports()}
    terminal.update(diag.boundary)
    components = tuple(sorted((frozenset(c) for c in classes.values()), key=lambda c: min(c)))
    closed = sum(1 for c in components if not (c & terminal))
    return WireComponentSummary(
        components=components,
        s_count=len(diag.boxes_of(BoxKind.S)),
        closed_components=closed,
    )


def make_diagram(boxes: Sequence[Box], wires: Sequence[Tuple[Port, Port]],
                 boundary: Sequence[Port] = ()) -> DiagramIR:
    diag = DiagramIR(tuple(boxes), tuple(wires), tuple(boundary))
    validate(diag)
    return diag
