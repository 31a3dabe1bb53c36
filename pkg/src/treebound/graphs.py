"""Simple undirected graphs, trees with leaf-first labelings, and generators.

Graph vertices are 0-indexed; tree vertices are 1-indexed (1..t+1 for a tree
with t edges), which keeps tree files and test fixtures aligned with the
usual x_1..x_{t+1} naming.  Both file formats share one shape: optional '#'
comment lines, a header line "n m", then m whitespace-separated edge lines.

All types are frozen dataclasses, immutable after construction and safe to
share across threads.  Generators are pure functions of their arguments,
including the seed.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass
from fractions import Fraction

from .errors import FormatError, RetryLimitExceeded

__all__ = [
    "Graph",
    "Tree",
    "GoodLabeling",
    "Embedding",
    "parse_graph",
    "serialize_graph",
    "parse_tree",
    "serialize_tree",
    "good_labeling",
    "good_labeling_between",
    "path_tree",
    "star_tree",
    "gen_disjoint_cliques",
    "gen_cycle",
    "gen_complete_bipartite",
    "gen_random_min_degree",
]


def _norm_edge(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices 0..n-1.

    ``edges`` holds each edge once as (u, v) with u < v, sorted; adjacency
    lists are sorted ascending.  No loops, no parallel edges.
    """

    n: int
    edges: tuple[tuple[int, int], ...]
    adjacency: tuple[tuple[int, ...], ...]

    @classmethod
    def from_edges(cls, n: int, edges) -> "Graph":
        """Build and validate a graph from an edge iterable."""
        if n < 1:
            raise ValueError(f"vertex count must be >= 1, got {n}")
        seen: set[tuple[int, int]] = set()
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"vertex out of range 0..{n - 1}: ({u}, {v})")
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            e = _norm_edge(u, v)
            if e in seen:
                raise ValueError(f"duplicate edge ({e[0]}, {e[1]})")
            seen.add(e)
        ordered = tuple(sorted(seen))
        neigh: list[list[int]] = [[] for _ in range(n)]
        for u, v in ordered:
            neigh[u].append(v)
            neigh[v].append(u)
        return cls(n, ordered, tuple(tuple(sorted(a)) for a in neigh))

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adjacency[v]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adjacency[u]

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    @property
    def degree_sum(self) -> int:
        """Sum of all degrees: 2|E|, equal to n times the average degree."""
        return 2 * len(self.edges)

    @property
    def average_degree(self) -> Fraction:
        return Fraction(2 * len(self.edges), self.n)

    @property
    def min_degree(self) -> int:
        return min(len(a) for a in self.adjacency)

    @property
    def max_degree(self) -> int:
        return max(len(a) for a in self.adjacency)

    def degrees(self) -> tuple[int, ...]:
        return tuple(len(a) for a in self.adjacency)


@dataclass(frozen=True)
class Tree:
    """A tree with t edges on vertices 1..t+1.

    ``adjacency`` is indexed by vertex (slot 0 unused); neighbor lists are
    sorted ascending.
    """

    t: int
    edges: tuple[tuple[int, int], ...]
    adjacency: tuple[tuple[int, ...], ...]

    @classmethod
    def from_edges(cls, edges) -> "Tree":
        """Build a tree from its edge list; vertices must be exactly 1..t+1."""
        edge_list = [tuple(e) for e in edges]
        t = len(edge_list)
        if t < 1:
            raise ValueError("a tree needs at least one edge")
        n = t + 1
        seen: set[tuple[int, int]] = set()
        for u, v in edge_list:
            if not (1 <= u <= n and 1 <= v <= n):
                raise ValueError(f"tree vertex out of range 1..{n}: ({u}, {v})")
            if u == v:
                raise ValueError(f"self-loop at tree vertex {u}")
            e = _norm_edge(u, v)
            if e in seen:
                raise ValueError(f"duplicate tree edge ({e[0]}, {e[1]})")
            seen.add(e)
        ordered = tuple(sorted(seen))
        neigh: list[list[int]] = [[] for _ in range(n + 1)]
        for u, v in ordered:
            neigh[u].append(v)
            neigh[v].append(u)
        tree = cls(t, ordered, tuple(tuple(sorted(a)) for a in neigh))
        if not tree._is_connected():
            raise ValueError("edge list does not form a tree: disconnected")
        return tree

    def _is_connected(self) -> bool:
        # t edges on t+1 vertices: connected iff acyclic iff a tree.
        seen = {1}
        queue = deque([1])
        while queue:
            u = queue.popleft()
            for w in self.adjacency[u]:
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
        return len(seen) == self.t + 1

    @property
    def vertex_count(self) -> int:
        return self.t + 1

    @property
    def vertices(self) -> range:
        return range(1, self.t + 2)

    def tree_degree(self, x: int) -> int:
        return len(self.adjacency[x])

    def neighbors(self, x: int) -> tuple[int, ...]:
        return self.adjacency[x]

    @property
    def leaves(self) -> tuple[int, ...]:
        return tuple(x for x in self.vertices if len(self.adjacency[x]) == 1)


@dataclass(frozen=True)
class GoodLabeling:
    """A leaf-first ordering x_1..x_{t+1} of a tree's vertices.

    ``order[j-1]`` is the tree vertex x_j.  ``parents[j-1]`` is f(j), the
    1-based index of the unique earlier-placed neighbor of x_j (0 for j=1,
    which has none).  x_1 is a leaf, and x_{t+1} is forced to be one.
    """

    order: tuple[int, ...]
    parents: tuple[int, ...]

    @property
    def t(self) -> int:
        return len(self.order) - 1

    def vertex(self, j: int) -> int:
        """Tree vertex at 1-based index j."""
        return self.order[j - 1]

    def f(self, j: int) -> int:
        """Parent index f(j) < j for 2 <= j <= t+1."""
        if not 2 <= j <= len(self.order):
            raise ValueError(f"f(j) is defined for 2 <= j <= {len(self.order)}, got {j}")
        return self.parents[j - 1]

    def parent_positions(self) -> tuple[int, ...]:
        """0-based parent positions per 0-based slot; -1 for slot 0."""
        return tuple(p - 1 for p in self.parents)

    def validate(self, tree: Tree) -> None:
        """Check this is a good labeling of ``tree``; raise ValueError if not."""
        k = tree.t + 1
        if len(self.order) != k or sorted(self.order) != list(tree.vertices):
            raise ValueError("order is not a permutation of the tree's vertices")
        if tree.tree_degree(self.order[0]) != 1:
            raise ValueError(f"first vertex {self.order[0]} is not a leaf")
        if len(self.parents) != k or self.parents[0] != 0:
            raise ValueError("parents must have one entry per index, 0 first")
        claimed = []
        for j in range(2, k + 1):
            fj = self.parents[j - 1]
            if not 1 <= fj < j:
                raise ValueError(f"f({j}) = {fj} must satisfy 1 <= f(j) < j")
            earlier = [i for i in range(1, j) if self.order[i - 1] in tree.neighbors(self.order[j - 1])]
            if earlier != [fj]:
                raise ValueError(f"x_{j} must have exactly one earlier neighbor, its parent")
            claimed.append(_norm_edge(self.order[j - 1], self.order[fj - 1]))
        if sorted(claimed) != list(tree.edges):
            raise ValueError("labeling edges do not match the tree's edges")


@dataclass(frozen=True)
class Embedding:
    """A vertex sequence omega_1..omega_{t+1} realizing a tree copy in a graph."""

    vertices: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.vertices)

    def __getitem__(self, i: int) -> int:
        return self.vertices[i]

    def __iter__(self):
        return iter(self.vertices)


# ---------------------------------------------------------------------------
# File format


def _data_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        yield lineno, line


def _parse_header(lineno: int, line: str) -> tuple[int, int]:
    parts = line.split()
    if len(parts) != 2:
        raise FormatError(f"header must be 'n m', got {line!r}", lineno)
    try:
        n, m = int(parts[0]), int(parts[1])
    except ValueError:
        raise FormatError(f"header must be two integers, got {line!r}", lineno) from None
    return n, m


def _parse_edge_line(lineno: int, line: str) -> tuple[int, int]:
    parts = line.split()
    if len(parts) != 2:
        raise FormatError(f"edge line must be 'u v', got {line!r}", lineno)
    try:
        return int(parts[0]), int(parts[1])
    except ValueError:
        raise FormatError(f"edge line must be two integers, got {line!r}", lineno) from None


def parse_graph(text: str) -> Graph:
    """Parse 0-indexed graph file content; reject loops and duplicate edges."""
    lines = _data_lines(text)
    try:
        lineno, header = next(lines)
    except StopIteration:
        raise FormatError("empty input: expected 'n m' header") from None
    n, m = _parse_header(lineno, header)
    if n < 1:
        raise FormatError(f"vertex count must be >= 1, got {n}", lineno)
    if m < 0:
        raise FormatError(f"edge count must be >= 0, got {m}", lineno)
    edges: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    for lineno, line in lines:
        if len(edges) == m:
            raise FormatError(f"expected {m} edge lines, found extra data {line!r}", lineno)
        u, v = _parse_edge_line(lineno, line)
        if not (0 <= u < n and 0 <= v < n):
            raise FormatError(f"vertex index out of range 0..{n - 1}: ({u}, {v})", lineno)
        if u == v:
            raise FormatError(f"self-loop at vertex {u}", lineno)
        e = _norm_edge(u, v)
        if e in seen:
            raise FormatError(f"duplicate edge ({e[0]}, {e[1]})", lineno)
        seen.add(e)
        edges.append(e)
    if len(edges) != m:
        raise FormatError(f"expected {m} edge lines, found {len(edges)}")
    return Graph.from_edges(n, edges)


def serialize_graph(graph: Graph) -> str:
    """Inverse of parse_graph; edges emitted sorted lexicographically."""
    lines = [f"{graph.n} {graph.edge_count}"]
    lines.extend(f"{u} {v}" for u, v in graph.edges)
    return "\n".join(lines) + "\n"


def parse_tree(text: str) -> Tree:
    """Parse 1-indexed tree file content: t+1 vertices, t edges, connected."""
    lines = _data_lines(text)
    try:
        lineno, header = next(lines)
    except StopIteration:
        raise FormatError("empty input: expected 'n m' header") from None
    n, m = _parse_header(lineno, header)
    if n < 2:
        raise FormatError(f"a tree needs at least 2 vertices, got {n}", lineno)
    if m != n - 1:
        kind = "cyclic" if m > n - 1 else "disconnected"
        raise FormatError(
            f"a tree on {n} vertices needs {n - 1} edges, got {m} ({kind})", lineno
        )
    edges: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    for lineno, line in lines:
        if len(edges) == m:
            raise FormatError(f"expected {m} edge lines, found extra data {line!r}", lineno)
        u, v = _parse_edge_line(lineno, line)
        if not (1 <= u <= n and 1 <= v <= n):
            raise FormatError(f"vertex index out of range 1..{n}: ({u}, {v})", lineno)
        if u == v:
            raise FormatError(f"self-loop at vertex {u}", lineno)
        e = _norm_edge(u, v)
        if e in seen:
            raise FormatError(f"duplicate edge ({e[0]}, {e[1]})", lineno)
        seen.add(e)
        edges.append(e)
    if len(edges) != m:
        raise FormatError(f"expected {m} edge lines, found {len(edges)}")
    try:
        return Tree.from_edges(edges)
    except ValueError as exc:
        raise FormatError(str(exc)) from None


def serialize_tree(tree: Tree) -> str:
    """Inverse of parse_tree; edges emitted sorted lexicographically."""
    lines = [f"{tree.t + 1} {tree.t}"]
    lines.extend(f"{u} {v}" for u, v in tree.edges)
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Good labelings


def good_labeling(tree: Tree, start_leaf: int | None = None) -> GoodLabeling:
    """Breadth-first good labeling rooted at a leaf.

    Defaults to the lowest-numbered leaf; children are visited in ascending
    vertex order, so the result is deterministic.  Every later vertex has
    exactly one earlier neighbor (its parent), and the last vertex is a leaf.
    """
    if start_leaf is None:
        start_leaf = tree.leaves[0]
    elif tree.tree_degree(start_leaf) != 1:
        raise ValueError(f"start vertex {start_leaf} is not a leaf")
    order = [start_leaf]
    parents = [0]
    position = {start_leaf: 1}
    queue = deque([start_leaf])
    while queue:
        u = queue.popleft()
        for w in tree.neighbors(u):
            if w not in position:
                order.append(w)
                position[w] = len(order)
                parents.append(position[u])
                queue.append(w)
    return GoodLabeling(tuple(order), tuple(parents))


def _labeling_from_order(tree: Tree, order: list[int]) -> GoodLabeling:
    """Recover the parent function from an ordering, checking goodness."""
    position = {v: j for j, v in enumerate(order, 1)}
    parents = [0]
    for j, v in enumerate(order[1:], 2):
        earlier = [position[w] for w in tree.neighbors(v) if position[w] < j]
        if len(earlier) != 1:
            raise ValueError(f"vertex {v} at index {j} has {len(earlier)} earlier neighbors, need 1")
        parents.append(earlier[0])
    return GoodLabeling(tuple(order), tuple(parents))


def good_labeling_between(tree: Tree, first_leaf: int, last_leaf: int) -> GoodLabeling:
    """Good labeling with x_1 = first_leaf and x_{t+1} = last_leaf.

    Builds the breadth-first labeling from first_leaf and moves last_leaf to
    the final slot; a leaf's only constraint is that its parent comes earlier,
    so the move preserves goodness.
    """
    if first_leaf == last_leaf:
        raise ValueError("first and last leaves must be distinct")
    for leaf in (first_leaf, last_leaf):
        if tree.tree_degree(leaf) != 1:
            raise ValueError(f"vertex {leaf} is not a leaf")
    base = good_labeling(tree, first_leaf)
    order = [v for v in base.order if v != last_leaf] + [last_leaf]
    return _labeling_from_order(tree, order)


# ---------------------------------------------------------------------------
# Tree and graph families


def path_tree(t: int) -> Tree:
    """Path with t edges: vertices 1..t+1 in a line."""
    if t < 1:
        raise ValueError(f"path needs t >= 1, got {t}")
    return Tree.from_edges((i, i + 1) for i in range(1, t + 1))


def star_tree(t: int) -> Tree:
    """Star with t edges: center 1, leaves 2..t+1."""
    if t < 1:
        raise ValueError(f"star needs t >= 1, got {t}")
    return Tree.from_edges((1, j) for j in range(2, t + 2))


def gen_disjoint_cliques(c: int, q: int) -> Graph:
    """c disjoint complete graphs of order q; every degree is q-1."""
    if c < 1:
        raise ValueError(f"component count must be >= 1, got {c}")
    if q < 2:
        raise ValueError(f"clique order must be >= 2, got {q}")
    edges = []
    for block in range(c):
        base = block * q
        edges.extend((base + i, base + j) for i in range(q) for j in range(i + 1, q))
    return Graph.from_edges(c * q, edges)


def gen_cycle(n: int) -> Graph:
    """Cycle on n >= 3 vertices."""
    if n < 3:
        raise ValueError(f"cycle needs n >= 3, got {n}")
    return Graph.from_edges(n, (_norm_edge(i, (i + 1) % n) for i in range(n)))


def gen_complete_bipartite(a: int, b: int) -> Graph:
    """Complete bipartite graph with sides 0..a-1 and a..a+b-1."""
    if a < 1 or b < 1:
        raise ValueError(f"both sides must be >= 1, got ({a}, {b})")
    return Graph.from_edges(a + b, ((i, a + j) for i in range(a) for j in range(b)))


def gen_random_min_degree(
    n: int, p: float, min_degree: int, seed: int, max_tries: int = 1000
) -> Graph:
    """Binomial random graph conditioned on minimum degree >= min_degree.

    Draws G(n, p) from one seeded stream until the degree floor holds, so the
    result is a pure function of (n, p, min_degree, seed).  Raises
    RetryLimitExceeded after max_tries draws (infeasible parameters).
    """
    if not 0 < p <= 1:
        raise ValueError(f"edge probability must be in (0, 1], got {p}")
    if not 0 <= min_degree < n:
        raise ValueError(f"degree floor must be in 0..{n - 1}, got {min_degree}")
    rng = random.Random(seed)
    for _ in range(max_tries):
        edges = [
            (u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p
        ]
        graph = Graph.from_edges(n, edges)
        if graph.min_degree >= min_degree:
            return graph
    raise RetryLimitExceeded(
        f"no graph with min degree >= {min_degree} in {max_tries} draws of G({n}, {p})"
    )
