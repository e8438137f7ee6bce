"""Exact finite-volume computations on small Cayley trees.

This is the independent, brute-force side of the artifact: enumerate every
admissible configuration on a finite tree, weigh it by theta^(energy) times
the boundary-law weights on the outermost generation, and check that the
resulting finite-volume measures marginalize consistently from depth n to
depth n-1.  A law that solves the fixed-point system produces a consistency
defect at rounding level; a law that does not produces a visibly positive
defect.  Everything is exact or absent -- no sampling -- and sizes are
capped at 16 vertices to keep the oracle a desk-scale tool.

Weights are accumulated in log space, (energy)*ln(theta) + sum ln(z), and
exponentiated after subtracting the maximum, so the normalization stays
bit-stable even for activities far from 1.  The boundary fields use the
convention z(0) = 1: only the ratios z1 (for +1) and z2 (for -1) matter.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .model import SPINS, BoundaryLaw, InteractionGraph, wand_graph

__all__ = [
    "ENUMERATION_CAP",
    "SizeCapError",
    "FiniteCayleyTree",
    "FiniteVolumeMeasure",
    "cayley_tree",
    "hamiltonian",
    "enumerate_admissible",
    "admissible_count_formula",
    "finite_volume_measure",
    "root_marginal",
    "check_consistency",
]

#: largest vertex count the enumeration routines accept
ENUMERATION_CAP = 16

_WAND = wand_graph()


class SizeCapError(ValueError):
    """The tree exceeds the exact-enumeration cap."""


@dataclass(frozen=True)
class FiniteCayleyTree:
    """A rooted ball of radius ``depth`` in the Cayley tree of order ``k``.

    Vertices are integers in breadth-first order with root 0, so every
    vertex's parent has a smaller id.  ``full_root`` selects the geometry:
    the default half-tree gives the root k children (matching the rooted
    successor recursion); the full tree gives it k+1 and is for display
    only.  Every non-root internal vertex has exactly k children.
    """

    k: int
    depth: int
    full_root: bool
    parents: tuple
    children: tuple
    generation: tuple

    @property
    def size(self) -> int:
        return len(self.parents)

    def edges(self) -> list:
        """Parent-child pairs, one per non-root vertex."""
        return [(self.parents[v], v) for v in range(1, self.size)]

    def generation_sizes(self) -> list:
        sizes = [0] * (self.depth + 1)
        for g in self.generation:
            sizes[g] += 1
        return sizes

    def boundary(self) -> list:
        """Vertex ids of the outermost generation (the field-carrying ring)."""
        return [v for v in range(self.size) if self.generation[v] == self.depth]


def cayley_tree(k: int, depth: int, full_root: bool = False) -> FiniteCayleyTree:
    """Build the radius-``depth`` ball of the order-``k`` Cayley tree."""
    if isinstance(k, bool) or int(k) != k or k < 2:
        raise ValueError(f"tree order k must be an integer >= 2, got {k!r}")
    if int(depth) != depth or depth < 0:
        raise ValueError(f"depth must be a nonnegative integer, got {depth!r}")
    k, depth = int(k), int(depth)
    parents = [-1]
    generation = [0]
    frontier = [0]
    for g in range(1, depth + 1):
        next_frontier = []
        for v in frontier:
            fanout = k + 1 if (v == 0 and full_root) else k
            for _ in range(fanout):
                parents.append(v)
                generation.append(g)
                next_frontier.append(len(parents) - 1)
        frontier = next_frontier
    children = [[] for _ in parents]
    for v in range(1, len(parents)):
        children[parents[v]].append(v)
    return FiniteCayleyTree(
        k=k,
        depth=depth,
        full_root=full_root,
        parents=tuple(parents),
        children=tuple(tuple(c) for c in children),
        generation=tuple(generation),
    )


def hamiltonian(config, tree: FiniteCayleyTree, graph: InteractionGraph | None = None) -> int:
    """The J-free energy sum over edges of (spin(x) - spin(y))^2.

    ``config`` is a spin sequence indexed by vertex id.  Non-admissible
    configurations (an edge outside the constraint graph) are rejected.
    """
    graph = _WAND if graph is None else graph
    if len(config) != tree.size:
        raise ValueError(f"configuration has {len(config)} spins for {tree.size} vertices")
    total = 0
    for v in range(1, tree.size):
        su, sv = config[tree.parents[v]], config[v]
        if not graph.allows(su, sv):
            raise ValueError(f"configuration is not admissible: pair ({su}, {sv}) on edge ({tree.parents[v]}, {v})")
        total += (su - sv) ** 2
    return total


def _check_cap(tree: FiniteCayleyTree):
    if tree.size > ENUMERATION_CAP:
        raise SizeCapError(
            f"tree has {tree.size} vertices, above the exact-enumeration cap {ENUMERATION_CAP}"
        )


def enumerate_admissible(tree: FiniteCayleyTree, graph: InteractionGraph | None = None) -> list:
    """All admissible spin configurations on ``tree``, as vertex-indexed tuples.

    Depth-first with early pruning: a vertex only tries the spins its
    parent's spin allows, so the cost is proportional to the admissible
    count, not to 3^(vertices).
    """
    graph = _WAND if graph is None else graph
    _check_cap(tree)
    allowed = {s: tuple(t for t in SPINS if graph.allows(s, t)) for s in SPINS}
    n = tree.size
    parents = tree.parents
    out = []
    config = [0] * n

    def descend(v: int):
        if v == n:
            out.append(tuple(config))
            return
        options = SPINS if v == 0 else allowed[config[parents[v]]]
        for s in options:
            config[v] = s
            descend(v + 1)

    descend(0)
    return out


def admissible_count_formula(tree: FiniteCayleyTree, graph: InteractionGraph | None = None) -> int:
    """Admissible-configuration count via the adjacency-power recursion.

    Bottom-up over the tree: a leaf admits one completion per spin, an
    internal vertex with spin s admits the product over children of the
    adjacency-weighted sums of their counts.  Independent of enumeration.
    """
    graph = _WAND if graph is None else graph
    a = graph.adjacency
    counts = [[1, 1, 1] for _ in range(tree.size)]
    for v in range(tree.size - 1, -1, -1):
        for i in range(3):
            prod = 1
            for c in tree.children[v]:
                prod *= sum(a[i][j] * counts[c][j] for j in range(3))
            counts[v][i] = prod
    return sum(counts[0])


@dataclass(frozen=True)
class FiniteVolumeMeasure:
    """Normalized Gibbs measure over the admissible configurations of a tree.

    ``probabilities`` maps each admissible configuration tuple to its
    probability; ``partition`` is the un-normalized weight total Z (also
    available in log form to survive extreme activities).
    """

    tree: FiniteCayleyTree
    theta: float
    boundary_law: BoundaryLaw
    probabilities: dict
    log_partition: float

    @property
    def partition(self) -> float:
        return math.exp(self.log_partition)


def finite_volume_measure(tree: FiniteCayleyTree, theta: float, law: BoundaryLaw,
                          graph: InteractionGraph | None = None) -> FiniteVolumeMeasure:
    """The finite-volume measure with boundary fields on the last generation.

    Each admissible configuration gets weight theta^(energy) times the
    product of z(spin) over the outermost generation, with z(-1) = z2,
    z(0) = 1, z(+1) = z1; interior vertices carry no field.
    """
    graph = _WAND if graph is None else graph
    theta = float(theta)
    if not (math.isfinite(theta) and theta > 0.0):
        raise ValueError(f"theta must be positive and finite, got {theta!r}")
    configs = enumerate_admissible(tree, graph)
    log_theta = math.log(theta)
    log_z = {-1: math.log(law.z2), 0: 0.0, 1: math.log(law.z1)}
    ring = tree.boundary()
    parents = tree.parents

    log_weights = []
    for config in configs:
        energy = 0
        for v in range(1, tree.size):
            energy += (config[parents[v]] - config[v]) ** 2
        lw = energy * log_theta
        for v in ring:
            lw += log_z[config[v]]
        log_weights.append(lw)

    top = max(log_weights)
    rel = [math.exp(lw - top) for lw in log_weights]
    total = math.fsum(rel)
    probabilities = {config: w / total for config, w in zip(configs, rel)}
    return FiniteVolumeMeasure(
        tree=tree,
        theta=theta,
        boundary_law=law,
        probabilities=probabilities,
        log_partition=top + math.log(total),
    )


def root_marginal(tree: FiniteCayleyTree, theta: float, law: BoundaryLaw,
                  graph: InteractionGraph | None = None) -> tuple:
    """Marginal distribution of the root spin, in spin order (-1, 0, +1)."""
    measure = finite_volume_measure(tree, theta, law, graph)
    marginal = {s: 0.0 for s in SPINS}
    for config, p in measure.probabilities.items():
        marginal[config[0]] += p
    return tuple(marginal[s] for s in SPINS)


def check_consistency(tree_small: FiniteCayleyTree, tree_big: FiniteCayleyTree,
                      theta: float, law: BoundaryLaw,
                      graph: InteractionGraph | None = None) -> float:
    """Max defect between the depth-(n-1) measure and the depth-n marginal.

    The two trees must share order and root geometry and differ by one
    generation.  For a law solving the fixed-point system the defect is at
    rounding level (<= 1e-10 comfortably); for a law that does not solve it
    the defect is visibly positive, which is the empirical 'only if'.
    """
    if tree_small.k != tree_big.k or tree_small.full_root != tree_big.full_root:
        raise ValueError("trees must share order k and root geometry")
    if tree_big.depth != tree_small.depth + 1:
        raise ValueError("trees must differ by exactly one generation")
    small = finite_volume_measure(tree_small, theta, law, graph)
    big = finite_volume_measure(tree_big, theta, law, graph)
    n_small = tree_small.size
    marginal = {}
    for config, p in big.probabilities.items():
        prefix = config[:n_small]
        marginal[prefix] = marginal.get(prefix, 0.0) + p
    defect = 0.0
    for config in set(marginal) | set(small.probabilities):
        diff = abs(marginal.get(config, 0.0) - small.probabilities.get(config, 0.0))
        if diff > defect:
            defect = diff
    return defect
