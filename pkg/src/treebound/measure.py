"""Exact-rational measures on tree embeddings and the random process behind them.

The oriented embedding process picks a uniform directed edge of the graph
for (omega_1, omega_2), then repeatedly embeds the next labeled tree vertex
as a uniform not-yet-used neighbor of its parent's image.  Three weights on
the resulting vertex sequences matter:

* ISO ("P"): the exact probability the process produces a given injective
  copy, (1/nd) * prod 1/|N(parent image) \\ {already embedded}|.
* MAJORANT ("p"): the closed form obtained by replacing each candidate-set
  size with d(v)-t+1.  It dominates ISO pointwise but is not normalized.
* HOM ("Pprime"): the same process without the used-vertex exclusion; its
  weight (1/nd) * prod 1/d(parent image) is a probability on homomorphic
  (repeats allowed) embeddings.

Everything is computed in exact arbitrary-precision rationals; entropy-like
aggregates exp(sum -w ln w) go through floats only at the final step, so the
chain verifier can distinguish, say, 24 from 144 without float doubt.

For each measure, g_table_exact tabulates g[i][v]: the total weight of
embeddings whose i-th vertex is v, for the full index range i = 1..t+1.
The load-bearing fact is the floor g[i][v] >= d(v)/nd, which holds with
equality for HOM (the underlying chain is reversible) and as an inequality
for MAJORANT; the table makes both checkable instance by instance.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Sequence

from .bounds import LOG_TOLERANCE, evaluate_bounds
from .counting import iter_copies, iter_hom_maps
from .graphs import (
    Embedding,
    GoodLabeling,
    Graph,
    Tree,
    good_labeling,
    good_labeling_between,
)

__all__ = [
    "MeasureKind",
    "GTable",
    "ReversalResult",
    "ChainReport",
    "weight",
    "sample_embedding",
    "g_table_exact",
    "g_table_monte_carlo",
    "reversal_check",
    "product_form_check",
    "verify_chain",
]


class MeasureKind(Enum):
    """The three weights: exact process law, closed-form majorant, hom law."""

    ISO = "P"
    MAJORANT = "p"
    HOM = "Pprime"

    @classmethod
    def from_token(cls, token: str) -> "MeasureKind":
        for kind in cls:
            if kind.value == token:
                return kind
        raise ValueError(f"unknown measure {token!r}; expected one of P, p, Pprime")


def _vertices(omega) -> tuple[int, ...]:
    if isinstance(omega, Embedding):
        return omega.vertices
    return tuple(omega)


def _validate_embedding(
    graph: Graph, labeling: GoodLabeling, verts: Sequence[int], injective: bool
) -> None:
    k = len(labeling.order)
    if len(verts) != k:
        raise ValueError(f"embedding has {len(verts)} vertices, labeling needs {k}")
    if any(not 0 <= v < graph.n for v in verts):
        raise ValueError("embedding vertex out of range")
    if injective and len(set(verts)) != k:
        raise ValueError("embedding repeats a vertex")
    parent_pos = labeling.parent_positions()
    for pos in range(1, k):
        if not graph.has_edge(verts[pos], verts[parent_pos[pos]]):
            raise ValueError(
                f"embedding misses edge at index {pos + 1}: "
                f"{verts[pos]} not adjacent to parent image {verts[parent_pos[pos]]}"
            )


def _weight_unchecked(
    graph: Graph,
    parent_pos: Sequence[int],
    verts: Sequence[int],
    kind: MeasureKind,
    nd: int,
    t: int,
) -> Fraction:
    denominator = nd
    if kind is MeasureKind.ISO:
        used = set(verts[:2])
        for pos in range(2, t + 1):
            parent_image = verts[parent_pos[pos]]
            count = sum(1 for u in graph.adjacency[parent_image] if u not in used)
            denominator *= count
            used.add(verts[pos])
    elif kind is MeasureKind.MAJORANT:
        for pos in range(2, t + 1):
            base = graph.degree(verts[parent_pos[pos]]) - t + 1
            if base <= 0:
                raise ValueError(
                    "nonpositive candidate floor d(v)-t+1; the majorant needs "
                    f"min degree >= t = {t}"
                )
            denominator *= base
    else:
        for pos in range(2, t + 1):
            denominator *= graph.degree(verts[parent_pos[pos]])
    return Fraction(1, denominator)


def weight(graph: Graph, tree: Tree, labeling: GoodLabeling, omega, kind: MeasureKind) -> Fraction:
    """Exact rational weight of one embedding under the chosen measure.

    The embedding must realize the labeled tree in the graph; ISO and
    MAJORANT additionally require it to be injective, while HOM accepts
    repeated vertices.  With t = 1 every weight is 1/nd (empty product).
    """
    labeling.validate(tree)
    verts = _vertices(omega)
    _validate_embedding(graph, labeling, verts, injective=kind is not MeasureKind.HOM)
    if graph.degree_sum == 0:
        raise ValueError("graph has no edges; weights undefined")
    return _weight_unchecked(
        graph, labeling.parent_positions(), verts, kind, graph.degree_sum, tree.t
    )


def sample_embedding(
    graph: Graph, tree: Tree, labeling: GoodLabeling, rng: random.Random
) -> Embedding:
    """Draw one embedding from the oriented process (the ISO law).

    Starts at a uniform directed edge, then embeds each next tree vertex as
    a uniform unused neighbor of its parent's image; candidates are taken in
    sorted vertex order so a seeded generator reproduces runs exactly.  With
    min degree >= t the candidate set is never empty; an empty set (degree
    hypothesis violated) aborts the sample.
    """
    labeling.validate(tree)
    nd = graph.degree_sum
    if nd == 0:
        raise ValueError("graph has no edges; nothing to sample")
    directed = [(u, w) for u in range(graph.n) for w in graph.adjacency[u]]
    first, second = directed[rng.randrange(nd)]
    verts = [first, second]
    used = {first, second}
    parent_pos = labeling.parent_positions()
    for pos in range(2, tree.t + 1):
        parent_image = verts[parent_pos[pos]]
        candidates = [u for u in graph.adjacency[parent_image] if u not in used]
        if not candidates:
            raise ValueError(
                f"empty candidate set at index {pos + 1}: min degree "
                f"{graph.min_degree} is below t = {tree.t}"
            )
        chosen = candidates[rng.randrange(len(candidates))]
        verts.append(chosen)
        used.add(chosen)
    return Embedding(tuple(verts))


@dataclass(frozen=True)
class GTable:
    """Exact per-index vertex weights g[i][v] for one measure.

    rows[i-1][v] is the total weight of embeddings whose i-th vertex is v,
    for the full range i = 1..t+1.  For the two probability measures each
    row sums to 1; for the majorant each row sums to >= 1.
    """

    kind: MeasureKind
    rows: tuple[tuple[Fraction, ...], ...]

    def g(self, i: int, v: int) -> Fraction:
        """Entry for 1-based index i and graph vertex v."""
        return self.rows[i - 1][v]

    @property
    def positions(self) -> int:
        return len(self.rows)

    @property
    def n(self) -> int:
        return len(self.rows[0])

    def row_sum(self, i: int) -> Fraction:
        return sum(self.rows[i - 1], Fraction(0))

    def slacks(self, graph: Graph):
        """Yield (i, v, g[i][v] - d(v)/nd) over the whole table."""
        nd = graph.degree_sum
        for i, row in enumerate(self.rows, 1):
            for v, value in enumerate(row):
                yield i, v, value - Fraction(graph.degree(v), nd)

    def min_slack(self, graph: Graph) -> Fraction:
        """Smallest g[i][v] - d(v)/nd; >= 0 certifies the degree floor."""
        return min(slack for _, _, slack in self.slacks(graph))

    def equals_degree_profile(self, graph: Graph) -> bool:
        """True when g[i][v] = d(v)/nd exactly everywhere (the HOM identity)."""
        return all(slack == 0 for _, _, slack in self.slacks(graph))

    def to_json_dict(self) -> dict:
        return {
            "kind": self.kind.value,
            "positions": self.positions,
            "n": self.n,
            "rows": [
                [f"{value.numerator}/{value.denominator}" for value in row]
                for row in self.rows
            ],
        }


def g_table_exact(
    graph: Graph,
    tree: Tree,
    labeling: GoodLabeling,
    kind: MeasureKind,
    work_cap: int | None = None,
) -> GTable:
    """Tabulate g[i][v] by full enumeration, in exact rationals.

    ISO and MAJORANT aggregate over all injective copies and require min
    degree >= t; HOM aggregates over the homomorphic embedding space, whose
    n^{t+1} size is charged against the work cap.
    """
    labeling.validate(tree)
    nd = graph.degree_sum
    if nd == 0:
        raise ValueError("graph has no edges; weights undefined")
    if kind is MeasureKind.HOM:
        embeddings = iter_hom_maps(graph, labeling, work_cap)
    else:
        if graph.min_degree < tree.t:
            raise ValueError(
                f"min degree {graph.min_degree} < t = {tree.t}; "
                "ISO and MAJORANT tables need the degree hypothesis"
            )
        embeddings = iter_copies(graph, labeling, work_cap)
    parent_pos = labeling.parent_positions()
    k = tree.t + 1
    rows = [[Fraction(0)] * graph.n for _ in range(k)]
    for verts in embeddings:
        w = _weight_unchecked(graph, parent_pos, verts, kind, nd, tree.t)
        for i, v in enumerate(verts):
            rows[i][v] += w
    return GTable(kind=kind, rows=tuple(tuple(row) for row in rows))


def g_table_monte_carlo(
    graph: Graph,
    tree: Tree,
    labeling: GoodLabeling,
    samples: int,
    seed: int,
) -> GTable:
    """Empirical ISO table: frequency of {omega_i = v} over seeded samples."""
    if samples < 1:
        raise ValueError(f"need at least 1 sample, got {samples}")
    labeling.validate(tree)
    k = tree.t + 1
    counts = [[0] * graph.n for _ in range(k)]
    rng = random.Random(seed)
    for _ in range(samples):
        emb = sample_embedding(graph, tree, labeling, rng)
        for i, v in enumerate(emb.vertices):
            counts[i][v] += 1
    rows = tuple(tuple(Fraction(c, samples) for c in row) for row in counts)
    return GTable(kind=MeasureKind.ISO, rows=rows)


@dataclass(frozen=True)
class ReversalResult:
    """Outcome of re-weighing one copy from its far end."""

    reversed_embedding: Embedding
    weight_forward: Fraction
    weight_reversed: Fraction
    equal: bool


def reversal_check(graph: Graph, tree: Tree, labeling: GoodLabeling, omega) -> ReversalResult:
    """Relabel a copy to start at omega_{t+1} and end at omega_1; compare majorants.

    The copy keeps its shape, only the traversal changes, and the majorant
    weight depends on each internal vertex's degree raised to its child
    count, which the reversal permutes but does not change; the two weights
    must agree exactly.
    """
    verts = _vertices(omega)
    forward = weight(graph, tree, labeling, verts, MeasureKind.MAJORANT)
    k = len(verts)
    # The copy's own tree structure, with vertices named by embedding index.
    index_tree = Tree.from_edges((labeling.f(j), j) for j in range(2, k + 1))
    reversed_labeling = good_labeling_between(index_tree, k, 1)
    z = tuple(verts[idx - 1] for idx in reversed_labeling.order)
    backward = weight(graph, index_tree, reversed_labeling, z, MeasureKind.MAJORANT)
    return ReversalResult(
        reversed_embedding=Embedding(z),
        weight_forward=forward,
        weight_reversed=backward,
        equal=forward == backward,
    )


def product_form_check(graph: Graph, tree: Tree, labeling: GoodLabeling, omega) -> bool:
    """Verify the per-vertex factorization of the majorant weight.

    Each internal factor 1/(d(image)-t+1) occurs once per child of the
    labeled vertex, so p(omega) = (1/nd) * prod_{j=2..t}
    (1/(d(omega_j)-t+1))^(treedeg(x_j)-1), as exact rationals.
    """
    verts = _vertices(omega)
    lhs = weight(graph, tree, labeling, verts, MeasureKind.MAJORANT)
    t = tree.t
    rhs = Fraction(1, graph.degree_sum)
    for j in range(2, t + 1):
        exponent = tree.tree_degree(labeling.vertex(j)) - 1
        if exponent:
            rhs /= (graph.degree(verts[j - 1]) - t + 1) ** exponent
    return lhs == rhs


@dataclass(frozen=True)
class ChainReport:
    """Measured values and verdicts for each link of the counting chain.

    The chain compares, in order: the number of copies, the exponential
    entropy of the ISO law, the majorant product prod p^(-p), and the
    degree-local copy bound.  Links are measured, not asserted: the middle
    link (entropy vs majorant product) can genuinely fail even though the
    two ends always compare correctly.
    """

    omega_count: int
    entropy_value: float
    majorant_product: float
    bound_value: float
    count_ge_entropy: bool
    entropy_ge_product: bool
    product_ge_bound: bool
    count_ge_bound: bool

    def links(self) -> tuple[bool, bool, bool, bool]:
        return (
            self.count_ge_entropy,
            self.entropy_ge_product,
            self.product_ge_bound,
            self.count_ge_bound,
        )

    def to_json_dict(self) -> dict:
        def fmt(x: float) -> float:
            return float(f"{x:.15g}")

        return {
            "omegaCount": str(self.omega_count),
            "expEntropy": fmt(self.entropy_value),
            "majorantProduct": fmt(self.majorant_product),
            "localBound": fmt(self.bound_value),
            "links": {
                "countGeEntropy": self.count_ge_entropy,
                "entropyGeProduct": self.entropy_ge_product,
                "productGeBound": self.product_ge_bound,
                "countGeBound": self.count_ge_bound,
            },
        }


def _log_fraction(value: Fraction) -> float:
    return math.log(value.numerator) - math.log(value.denominator)


def verify_chain(
    graph: Graph,
    tree: Tree,
    labeling: GoodLabeling | None = None,
    work_cap: int | None = None,
) -> ChainReport:
    """Enumerate all copies once and measure every link of the chain.

    Requires min degree >= t.  All weights are exact rationals; the
    exponential-entropy and majorant-product aggregates move to floats only
    in the final exp(sum -w ln w), and links are compared in log space with
    1e-9 tolerance.
    """
    if labeling is None:
        labeling = good_labeling(tree)
    else:
        labeling.validate(tree)
    if graph.min_degree < tree.t:
        raise ValueError(
            f"min degree {graph.min_degree} < t = {tree.t}; chain undefined"
        )
    nd = graph.degree_sum
    parent_pos = labeling.parent_positions()
    count = 0
    entropy_log = 0.0
    product_log = 0.0
    for verts in iter_copies(graph, labeling, work_cap):
        count += 1
        iso = _weight_unchecked(graph, parent_pos, verts, MeasureKind.ISO, nd, tree.t)
        maj = _weight_unchecked(graph, parent_pos, verts, MeasureKind.MAJORANT, nd, tree.t)
        entropy_log -= float(iso) * _log_fraction(iso)
        product_log -= float(maj) * _log_fraction(maj)
    if count == 0:
        raise ValueError("graph contains no copy of the tree")
    log_count = math.log(count)
    bound_log = evaluate_bounds(graph, tree.t).copies_local.log_value
    return ChainReport(
        omega_count=count,
        entropy_value=math.exp(entropy_log),
        majorant_product=math.exp(product_log),
        bound_value=math.exp(bound_log),
        count_ge_entropy=log_count >= entropy_log - LOG_TOLERANCE,
        entropy_ge_product=entropy_log >= product_log - LOG_TOLERANCE,
        product_ge_bound=product_log >= bound_log - LOG_TOLERANCE,
        count_ge_bound=log_count >= bound_log - LOG_TOLERANCE,
    )
