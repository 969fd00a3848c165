"""
Local rewrites on diagrams. Each rewrite returns a new, valid DiagramIR whose
value equals the original (or, for expand_molecule_pair, a list whose values
sum to it).
"""
import random
from typing import Dict, List, Optional, Sequence, Tuple

from skeinlab.algebra.model import ModelContext
from skeinlab.errors import ArityMismatchError, DiagramError
from .diagram import Box, BoxKind, DiagramIR, Port, make_diagram


def _fresh(diag: DiagramIR, prefix: str, taken: Optional[set] = None) -> str:
    used = {b.id for b in diag.boxes} | (taken or set())
    k = 0
    while f"_{prefix}{k}" in used:
        k += 1
    return f"_{prefix}{k}"


def _substitute(diag: DiagramIR, mapping: Dict[Port, Port]) -> Tuple[List[Tuple[Port, Port]], List[Port]]:
    wires = [(mapping.get(p, p), mapping.get(q, q)) for p, q in diag.wires]
    boundary = [mapping.get(p, p) for p in diag.boundary]
    return wires, boundary


def insert_crossing_pair(diag: DiagramIR, first: int, second: int) -> DiagramIR:
    """
    Routes wires number `first` and `second` through two stacked R boxes.
    The pair composes to the identity on two strands.
    """
    if first == second:
        raise DiagramError("a crossing pair needs two different wires")
    (p, q), (p2, q2) = diag.wires[first], diag.wires[second]
    lower = _fresh(diag, "x")
    upper = _fresh(diag, "x", {lower})
    boxes = list(diag.boxes) + [Box(lower, BoxKind.R, 4), Box(upper, BoxKind.R, 4)]
    wires = [w for k, w in enumerate(diag.wires) if k not in (first, second)]
    wires += [
        (p, (lower, 1)), (p2, (lower, 2)),
        ((lower, 4), (upper, 1)), ((lower, 3), (upper, 2)),
        ((upper, 4), q), ((upper, 3), q2),
    ]
    return make_diagram(boxes, wires, diag.boundary)


def split_ghz(diag: DiagramIR, box_id: str, at: int) -> DiagramIR:
    """GHZ(k) -> GHZ(at+1) joined to GHZ(k-at+1); legs 1..at stay on the first piece."""
    box = diag.box(box_id)
    if box.kind != BoxKind.GHZ or not 1 <= at < box.arity:
        raise ArityMismatchError(f"cannot split box '{box_id}' at leg {at}")
    left = _fresh(diag, "h")
    right = _fresh(diag, "h", {left})
    mapping = {}
    for leg in range(1, box.arity + 1):
        mapping[(box_id, leg)] = (left, leg) if leg <= at else (right, leg - at)
    boxes = [b for b in diag.boxes if b.id != box_id]
    boxes += [Box(left, BoxKind.GHZ, at + 1), Box(right, BoxKind.GHZ, box.arity - at + 1)]
    wires, boundary = _substitute(diag, mapping)
    wires.append(((left, at + 1), (right, box.arity - at + 1)))
    return make_diagram(boxes, wires, boundary)


def twist_ghz_legs(diag: DiagramIR, box_id: str, leg: int) -> DiagramIR:
    """Crosses legs `leg` and `leg+1` of a GHZ box through an R box."""
    box = diag.box(box_id)
    if box.kind != BoxKind.GHZ or not 1 <= leg < box.arity:
        raise ArityMismatchError(f"cannot twist legs {leg},{leg + 1} of box '{box_id}'")
    r = _fresh(diag, "t")
    mapping = {(box_id, leg): (r, 4), (box_id, leg + 1): (r, 3)}
    wires, boundary = _substitute(diag, mapping)
    wires += [((box_id, leg), (r, 1)), ((box_id, leg + 1), (r, 2))]
    return make_diagram(list(diag.boxes) + [Box(r, BoxKind.R, 4)], wires, boundary)


_STRAND = {1: 3, 3: 1, 2: 4, 4: 2}


def slide_past_crossing(diag: DiagramIR, crossing_id: str, leg: int) -> DiagramIR:
    """
    Slides the box wired to leg `leg` of R box `crossing_id` along its strand
    to the far side of the crossing. The other strand then crosses each of the
    box's remaining legs, one new R box per leg (a GHZ(2) strand if none).
    """
    r = diag.box(crossing_id)
    if r.kind != BoxKind.R or leg not in _STRAND:
        raise ArityMismatchError(f"box '{crossing_id}' has no crossing leg {leg}")
    partner = diag.partner_map()
    if any(partner.get((crossing_id, k), ("",))[0] == crossing_id for k in range(1, 5)):
        raise DiagramError(f"crossing '{crossing_id}' is wired to itself")
    attached = partner.get((crossing_id, leg))
    if attached is None:
        raise DiagramError(f"leg {leg} of '{crossing_id}' is on the boundary")
    box = diag.box(attached[0])
    others = [k for k in range(1, box.arity + 1) if k != attached[1]]
    if any(partner.get((box.id, k), ("",))[0] == crossing_id for k in others):
        raise DiagramError(f"box '{box.id}' meets '{crossing_id}' on more than one leg")

    far = _STRAND[leg]
    near_other = 2 if leg in (1, 3) else 1
    far_other = _STRAND[near_other]

    taken: set = set()
    carriers = []
    for _ in range(max(len(others), 1)):
        name = _fresh(diag, "c", taken)
        taken.add(name)
        carriers.append(name)

    mapping = {(crossing_id, far): attached}
    if others:
        new_boxes = [Box(c, BoxKind.R, 4) for c in carriers]
        mapping[(crossing_id, near_other)] = (carriers[0], 2)
        mapping[(crossing_id, far_other)] = (carriers[-1], 4)
        for c, k in zip(carriers, others):
            mapping[(box.id, k)] = (c, 1)
    else:
        new_boxes = [Box(carriers[0], BoxKind.GHZ, 2)]
        mapping[(crossing_id, near_other)] = (carriers[0], 1)
        mapping[(crossing_id, far_other)] = (carriers[0], 2)

    kept = DiagramIR(diag.boxes, tuple(w for w in diag.wires if (crossing_id, leg) not in w), diag.boundary)
    wires, boundary = _substitute(kept, mapping)
    if others:
        wires += [((c, 4), (n, 2)) for c, n in zip(carriers, carriers[1:])]
        wires += [((c, 3), (box.id, k)) for c, k in zip(carriers, others)]
    boxes = [b for b in diag.boxes if b.id != crossing_id] + new_boxes
    return make_diagram(boxes, wires, boundary)


def expand_molecule_pair(ctx: ModelContext, diag: DiagramIR) -> List[DiagramIR]:
    """
    Group-sum rewrite of the two earliest S boxes a, b: one diagram per u in G
    (canonical order) where b is removed and its leg k is attached, through a
    GHZ(3) splitter, to leg u(k) of a.
    """
    s_boxes = diag.boxes_of(BoxKind.S)
    if len(s_boxes) < 2:
        raise DiagramError("the group-sum rewrite needs at least two S boxes")
    a, b = s_boxes[0], s_boxes[1]
    d = ctx.d
    taken: set = set()
    splitters = []
    for _ in range(d):
        name = _fresh(diag, "y", taken)
        taken.add(name)
        splitters.append(name)
    boxes = [x for x in diag.boxes if x.id != b.id] + [Box(y, BoxKind.GHZ, 3) for y in splitters]

    terms = []
    for u in ctx.action.elements:
        mapping = {(a.id, k + 1): (splitters[k], 2) for k in range(d)}
        for k in range(d):
            mapping[(b.id, k + 1)] = (splitters[u(k)], 3)
        wires, boundary = _substitute(diag, mapping)
        wires += [((a.id, k + 1), (splitters[k], 1)) for k in range(d)]
        terms.append(make_diagram(boxes, wires, boundary))
    return terms


def random_closed_diagram(rng: random.Random, ctx: ModelContext, max_s: int = 3,
                          max_ghz: int = 3, max_r: int = 2, max_ghz_arity: int = 4,
                          with_s: bool = True) -> DiagramIR:
    """A closed diagram with random GHZ/R/S boxes and a uniformly random perfect matching of ports."""
    boxes: List[Box] = []
    for k in range(rng.randint(0, max_s) if with_s else 0):
        boxes.append(Box(f"s{k}", BoxKind.S, ctx.d))
    for k in range(rng.randint(0, max_r)):
        boxes.append(Box(f"r{k}", BoxKind.R, 4))
    for k in range(rng.randint(1, max_ghz)):
        boxes.append(Box(f"g{k}", BoxKind.GHZ, rng.randint(1, max_ghz_arity)))
    ports = [p for b in boxes for p in b.ports()]
    if len(ports) % 2:
        boxes.append(Box("g_odd", BoxKind.GHZ, 1))
        ports.append(("g_odd", 1))
    rng.shuffle(ports)
    wires = [(ports[i], ports[i + 1]) for i in range(0, len(ports), 2)]
    return make_diagram(boxes, wires)


def closed_diagrams(seed: int, count: int, ctx: ModelContext, **options) -> List[DiagramIR]:
    rng = random.Random(seed)
    return [random_closed_diagram(rng, ctx, **options) for _ in range(count)]
