"""
The Petersen graph as the Kneser graph KG(5,2): vertices are the 2-subsets of
{0..4} in lexicographic order, edges join disjoint subsets, and S5 acts by
relabeling the five points.
"""
from dataclasses import dataclass
from itertools import combinations, product
from typing import TYPE_CHECKING, Dict, FrozenSet, List, Tuple

import networkx as nx

if TYPE_CHECKING:
    import pandas as pd

from skeinlab.algebra.model import ModelContext
from skeinlab.algebra.permgroup import GroupAction, Permutation, closure
from skeinlab.algebra.tensor import SparseTensor


@dataclass(frozen=True)
class KneserModel:
    points: int
    vertices: Tuple[FrozenSet[int], ...]
    graph: nx.Graph
    action: GroupAction

    @property
    def edges(self) -> List[Tuple[int, int]]:
        return sorted(tuple(sorted(e)) for e in self.graph.edges())

    @property
    def ctx(self) -> ModelContext:
        return ModelContext(self.action, name="petersen")

    def adjacent(self, u: int, v: int) -> bool:
        return self.graph.has_edge(u, v)

    def label(self, v: int) -> str:
        return "{" + ",".join(map(str, sorted(self.vertices[v]))) + "}"


@dataclass(frozen=True)
class TwoBoxBasis:
    identity: SparseTensor
    a_gamma: SparseTensor
    a_gamma_c: SparseTensor

    def as_list(self) -> List[SparseTensor]:
        return [self.identity, self.a_gamma, self.a_gamma_c]

    def by_name(self) -> Dict[str, SparseTensor]:
        return {"I": self.identity, "A": self.a_gamma, "Ac": self.a_gamma_c}


def _induced(index: Dict[FrozenSet[int], int], vertices, images: List[int]) -> Permutation:
    return Permutation(tuple(index[frozenset(images[i] for i in v)] for v in vertices))


def build_kneser(points: int = 5, size: int = 2) -> KneserModel:
    vertices = tuple(frozenset(c) for c in combinations(range(points), size))
    index = {v: k for k, v in enumerate(vertices)}
    graph = nx.Graph()
    graph.add_nodes_from(range(len(vertices)))
    for u, v in combinations(range(len(vertices)), 2):
        if not vertices[u] & vertices[v]:
            graph.add_edge(u, v)

    swap = list(range(points))
    swap[0], swap[1] = 1, 0
    cycle = [(i + 1) % points for i in range(points)]
    generators = [_induced(index, vertices, swap), _induced(index, vertices, cycle)]
    action = closure(generators, degree=len(vertices))
    return KneserModel(points=points, vertices=vertices, graph=graph, action=action)


def has_four_cycle(graph: nx.Graph) -> bool:
    """True when two distinct vertices share two or more neighbors."""
    for u, v in combinations(graph.nodes(), 2):
        if len(set(graph[u]) & set(graph[v])) >= 2:
            return True
    return False


def graph_invariants(model: KneserModel) -> "pd.DataFrame":
    import pandas as pd

    g = model.graph
    degrees = sorted({deg for _, deg in g.degree()})
    automorphisms_ok = all(
        all(g.has_edge(p(u), p(v)) for u, v in g.edges()) for p in model.action.generators)
    rows = [
        {"check": "vertices", "value": g.number_of_nodes(), "passed": g.number_of_nodes() == 10},
        {"check": "edges", "value": g.number_of_edges(), "passed": g.number_of_edges() == 15},
        {"check": "3-regular", "value": degrees, "passed": degrees == [3]},
        {"check": "triangle-free", "value": sum(nx.triangles(g).values()) // 3,
         "passed": sum(nx.triangles(g).values()) == 0},
        {"check": "square-free", "value": not has_four_cycle(g), "passed": not has_four_cycle(g)},
        {"check": "isomorphic to networkx petersen_graph", "value": nx.is_isomorphic(g, nx.petersen_graph()),
         "passed": nx.is_isomorphic(g, nx.petersen_graph())},
        {"check": "generators are automorphisms", "value": automorphisms_ok, "passed": automorphisms_ok},
        {"check": "|action|", "value": model.action.order, "passed": model.action.order == 120},
    ]
    return pd.DataFrame(rows, columns=["check", "value", "passed"])


def two_box_basis(model: KneserModel) -> TwoBoxBasis:
    n = len(model.vertices)
    identity, a, ac = {}, {}, {}
    for u in range(n):
        for v in range(n):
            if u == v:
                identity[(u, v)] = 1
            elif model.adjacent(u, v):
                a[(u, v)] = 1
            else:
                ac[(u, v)] = 1
    return TwoBoxBasis(SparseTensor(2, n, identity), SparseTensor(2, n, a), SparseTensor(2, n, ac))


def all_ones(dim: int, rank: int = 2) -> SparseTensor:
    return SparseTensor(rank, dim, {t: 1 for t in product(range(dim), repeat=rank)})


def bfs_order(model: KneserModel) -> List[int]:
    order = [0]
    for _, v in nx.bfs_edges(model.graph, 0, sort_neighbors=sorted):
        order.append(v)
    return order


def homomorphism_search(model: KneserModel) -> Tuple[SparseTensor, int]:
    """
    Graph homomorphisms Γ -> Γ by depth-first search, assigning vertices in
    BFS order and pruning on the first violated edge. Returns the tensor
    Σ_f basic(f(0), ..., f(9)) and the number of search nodes visited.
    """
    g = model.graph
    n = g.number_of_nodes()
    order = bfs_order(model)
    earlier = {v: [w for w in g[v] if order.index(w) < order.index(v)] for v in order}
    neighbors = {v: set(g[v]) for v in g.nodes()}
    assignment: Dict[int, int] = {}
    entries = {}
    visited = 0

    def extend(depth: int) -> None:
        nonlocal visited
        if depth == n:
            entries[tuple(assignment[v] for v in range(n))] = 1
            return
        v = order[depth]
        for image in range(n):
            visited += 1
            if all(image in neighbors[assignment[w]] for w in earlier[v]):
                assignment[v] = image
                extend(depth + 1)
                del assignment[v]

    extend(0)
    return SparseTensor(n, n, entries), visited


def molecule_from_graph(model: KneserModel) -> SparseTensor:
    """S̃: a GHZ(4) per vertex and an adjacency 2-box per edge, summed by homomorphism search."""
    tensor, _ = homomorphism_search(model)
    return tensor


def molecule_program(model: KneserModel) -> str:
    """The same network as a .skein program; bind `A` to the adjacency 2-box."""
    lines = [f"box v{v} = ghz:4;" for v in range(len(model.vertices))]
    edges = model.edges
    lines += [f"box e{k} = tensor A:2;" for k in range(len(edges))]
    next_leg = {v: 2 for v in range(len(model.vertices))}
    for k, (u, v) in enumerate(edges):
        lines.append(f"wire v{u}.{next_leg[u]} e{k}.1;")
        lines.append(f"wire e{k}.2 v{v}.{next_leg[v]};")
        next_leg[u] += 1
        next_leg[v] += 1
    lines += [f"open v{v}.1;" for v in range(len(model.vertices))]
    return "\n".join(lines) + "\n"
