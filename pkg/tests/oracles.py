"""Independent brute-force references the library implementations are checked
against.  Nothing here shares an algorithm with the package: copies are
counted by filtering raw permutations, homomorphisms by filtering the full
map space, walks via adjacency-matrix powers in exact integer arithmetic.
"""

from __future__ import annotations

import random
from itertools import permutations, product

import numpy as np

from treebound.graphs import Graph, Tree


def copies_by_permutations(graph: Graph, tree: Tree) -> int:
    """Count injective tree copies by testing every ordered vertex tuple."""
    k = tree.t + 1
    edges = [(a - 1, b - 1) for a, b in tree.edges]
    total = 0
    for phi in permutations(range(graph.n), k):
        if all(graph.has_edge(phi[a], phi[b]) for a, b in edges):
            total += 1
    return total


def homs_by_exhaustion(graph: Graph, tree: Tree) -> int:
    """Count homomorphisms by testing every map, repeats allowed."""
    k = tree.t + 1
    edges = [(a - 1, b - 1) for a, b in tree.edges]
    total = 0
    for phi in product(range(graph.n), repeat=k):
        if all(graph.has_edge(phi[a], phi[b]) for a, b in edges):
            total += 1
    return total


def walks_by_matrix_power(graph: Graph, t: int) -> int:
    """Sum of the entries of the t-th adjacency-matrix power, exact."""
    a = np.zeros((graph.n, graph.n), dtype=object)
    for u, v in graph.edges:
        a[u, v] = 1
        a[v, u] = 1
    power = np.eye(graph.n, dtype=object)
    for _ in range(t):
        power = power @ a
    return int(power.sum())


def random_tree(rng: random.Random, t: int) -> Tree:
    """Uniform-ish random recursive tree: vertex j hangs off an earlier one."""
    return Tree.from_edges((rng.randint(1, j - 1), j) for j in range(2, t + 2))
