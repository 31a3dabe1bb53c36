"""Exact counters for labeled tree copies, tree homomorphisms, and walks.

All counts are exact unbounded integers; nothing here touches floating
point.  The copy counter backtracks along a good labeling, extending each
new tree vertex to an unused neighbor of its parent's image, and charges
one unit of work per visited search node against a configurable cap
(default 10^8 nodes).  Counters are pure functions; results do not depend
on which good labeling drives the search.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Iterator

from .errors import WorkCapExceeded
from .graphs import Graph, GoodLabeling, Tree, good_labeling, path_tree

__all__ = [
    "DEFAULT_WORK_CAP",
    "CountResult",
    "iter_copies",
    "iter_hom_maps",
    "count_copies",
    "count_star_formula",
    "count_homomorphisms",
    "count_homomorphisms_bruteforce",
    "count_walks",
    "path_walk_ratio",
    "max_induced_copy_degree",
]

DEFAULT_WORK_CAP = 100_000_000


@dataclass(frozen=True)
class CountResult:
    """An exact count plus the method that produced it."""

    value: int
    method: str  # enumeration | dp | formula | brute


class _Budget:
    """Search-node budget; spend() raises WorkCapExceeded when drained."""

    __slots__ = ("cap", "remaining")

    def __init__(self, cap: int | None):
        self.cap = DEFAULT_WORK_CAP if cap is None else cap
        self.remaining = self.cap

    def spend(self, units: int = 1) -> None:
        self.remaining -= units
        if self.remaining < 0:
            raise WorkCapExceeded(f"search exceeded work cap of {self.cap} nodes")


def _check_map_space(graph: Graph, k: int, work_cap: int | None) -> None:
    cap = DEFAULT_WORK_CAP if work_cap is None else work_cap
    if graph.n**k > cap:
        raise WorkCapExceeded(
            f"map space n^(t+1) = {graph.n}^{k} exceeds work cap of {cap}"
        )


def iter_copies(
    graph: Graph, labeling: GoodLabeling, work_cap: int | None = None
) -> Iterator[tuple[int, ...]]:
    """Yield every injective embedding of the labeled tree into the graph.

    An embedding is a vertex tuple (omega_1..omega_{t+1}); slot j >= 2 must
    be a graph neighbor of the slot holding its parent f(j), and all slots
    are distinct.  Yields in lexicographic order of the tuple.
    """
    budget = _Budget(work_cap)
    k = len(labeling.order)
    parent_pos = labeling.parent_positions()
    adjacency = graph.adjacency
    omega = [0] * k
    used = bytearray(graph.n)

    def extend(pos: int) -> Iterator[tuple[int, ...]]:
        budget.spend()
        if pos == k:
            yield tuple(omega)
            return
        candidates = range(graph.n) if pos == 0 else adjacency[omega[parent_pos[pos]]]
        for v in candidates:
            if not used[v]:
                used[v] = 1
                omega[pos] = v
                yield from extend(pos + 1)
                used[v] = 0

    return extend(0)


def iter_hom_maps(
    graph: Graph, labeling: GoodLabeling, work_cap: int | None = None
) -> Iterator[tuple[int, ...]]:
    """Yield every homomorphic embedding (repeats allowed) of the labeled tree.

    The full map space has n^{t+1} elements; that size is charged against
    the work cap up front before any enumeration starts.
    """
    k = len(labeling.order)
    _check_map_space(graph, k, work_cap)
    parent_pos = labeling.parent_positions()
    adjacency = graph.adjacency
    omega = [0] * k

    def extend(pos: int) -> Iterator[tuple[int, ...]]:
        if pos == k:
            yield tuple(omega)
            return
        candidates = range(graph.n) if pos == 0 else adjacency[omega[parent_pos[pos]]]
        for v in candidates:
            omega[pos] = v
            yield from extend(pos + 1)

    return extend(0)


def count_copies(
    graph: Graph,
    tree: Tree,
    labeling: GoodLabeling | None = None,
    work_cap: int | None = None,
) -> CountResult:
    """Exact number of injective maps of the tree into the graph.

    Counts injections phi with phi(u)phi(v) an edge of the graph for every
    tree edge uv.  No minimum-degree hypothesis is needed; the count is
    defined (possibly 0) for any graph.
    """
    if labeling is None:
        labeling = good_labeling(tree)
    else:
        labeling.validate(tree)
    total = sum(1 for _ in iter_copies(graph, labeling, work_cap))
    return CountResult(total, "enumeration")


def count_star_formula(graph: Graph, t: int) -> CountResult:
    """Closed form sum_v t! * C(d(v), t): the copy count of the t-edge star."""
    if t < 1:
        raise ValueError(f"star size must be >= 1, got {t}")
    factorial = math.factorial(t)
    total = sum(factorial * math.comb(graph.degree(v), t) for v in range(graph.n))
    return CountResult(total, "formula")


def count_homomorphisms(graph: Graph, tree: Tree) -> CountResult:
    """Exact number of maps (injective or not) carrying tree edges to edges.

    Dynamic programming over the default good labeling: each vertex passes
    its parent the per-image product of neighbor-summed child messages,
    h_x(v) = prod_c sum_{u in N(v)} h_c(u); the answer is sum_v h_root(v).
    """
    labeling = good_labeling(tree)
    k = len(labeling.order)
    children: list[list[int]] = [[] for _ in range(k)]
    for pos in range(1, k):
        children[labeling.parents[pos] - 1].append(pos)
    adjacency = graph.adjacency
    messages: list[list[int] | None] = [None] * k
    for pos in range(k - 1, -1, -1):
        vec = [1] * graph.n
        for child in children[pos]:
            child_vec = messages[child]
            messages[child] = None
            for v in range(graph.n):
                vec[v] *= sum(child_vec[u] for u in adjacency[v])
        messages[pos] = vec
    return CountResult(sum(messages[0]), "dp")


def count_homomorphisms_bruteforce(
    graph: Graph, tree: Tree, work_cap: int | None = None
) -> CountResult:
    """Oracle twin of count_homomorphisms: test all n^{t+1} maps directly."""
    k = tree.t + 1
    _check_map_space(graph, k, work_cap)
    edges = [(a - 1, b - 1) for a, b in tree.edges]
    total = 0
    for phi in product(range(graph.n), repeat=k):
        if all(graph.has_edge(phi[a], phi[b]) for a, b in edges):
            total += 1
    return CountResult(total, "brute")


def count_walks(graph: Graph, t: int) -> CountResult:
    """Number of walks with t edges: t rounds of neighbor-sum DP."""
    if t < 0:
        raise ValueError(f"walk length must be >= 0, got {t}")
    vec = [1] * graph.n
    for _ in range(t):
        vec = [sum(vec[u] for u in graph.adjacency[v]) for v in range(graph.n)]
    return CountResult(sum(vec), "dp")


def path_walk_ratio(graph: Graph, t: int, work_cap: int | None = None) -> float:
    """Fraction of t-edge walks that are injective, i.e. genuine paths."""
    walks = count_walks(graph, t).value
    if walks == 0:
        raise ValueError("no walks of this length; ratio undefined")
    paths = count_copies(graph, path_tree(t), work_cap=work_cap).value
    return float(Fraction(paths, walks))


def max_induced_copy_degree(
    graph: Graph, tree: Tree, work_cap: int | None = None
) -> int:
    """Largest maximum degree of the graph restricted to any copy's image.

    Scans every copy of the tree; for each image set S reports the degree of
    the subgraph induced on S, and returns the overall maximum.  Raises
    ValueError when the graph contains no copy at all.
    """
    labeling = good_labeling(tree)
    best = -1
    seen: dict[frozenset[int], int] = {}
    for omega in iter_copies(graph, labeling, work_cap):
        image = frozenset(omega)
        deg = seen.get(image)
        if deg is None:
            deg = max(sum(1 for u in graph.neighbors(v) if u in image) for v in image)
            seen[image] = deg
        if deg > best:
            best = deg
    if best < 0:
        raise ValueError("graph contains no copy of the tree")
    return best
