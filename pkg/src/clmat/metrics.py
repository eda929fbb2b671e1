"""Energy, cost, and distance scores for rooted aggregation trees.

All functions are pure and safe to call concurrently on shared inputs.
+inf is a first-class cost value: float addition absorbs it naturally.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import (
    LeafIsRoot,
    NonPositiveResidual,
    NotInTree,
    SingletonTree,
    UnreachableNode,
)

NODE_MIN = "node-min"
EDGE_MIN = "edge-min"
ENERGY_VARIANTS = (NODE_MIN, EDGE_MIN)

CLMAT = "clmat"
RESIDUAL = "residual"
COST_VARIANTS = (CLMAT, RESIDUAL)


@dataclass(frozen=True)
class TreeMetrics:
    """The scored triple for one candidate tree.

    tree_energy is None for a singleton tree, where the bottleneck battery
    is undefined. tree_cost may be +inf (saturated degenerate denominator).
    """

    tree_energy: float | None
    tree_cost: float
    total_distance: float


def branch_energy(tree, graph, node: str) -> float:
    """Smallest battery on the root-to-node path, the end node itself excluded.

    The root is included, so a direct child of the root scores the root's
    energy.
    """
    if node == tree.root:
        raise LeafIsRoot(f"branch end must differ from the root {tree.root}")
    if node not in tree.dist:
        raise NotInTree(f"not a tree node: {node}")
    best = math.inf
    for v in tree.path_to_root(node):
        if v != node:
            best = min(best, graph.energy(v))
    return best


def tree_energy(tree, graph, variant: str = NODE_MIN) -> float:
    """Bottleneck battery of a tree.

    node-min: minimum energy over tree nodes, the root excluded.
    edge-min: minimum over tree edges of the min endpoint energy.
    Both read current node energies.
    """
    if variant not in ENERGY_VARIANTS:
        raise ValueError(f"unknown energy variant {variant!r}")
    if variant == NODE_MIN:
        energies = [graph.energy(v) for v in tree.dist if v != tree.root]
        if not energies:
            raise SingletonTree("node-min energy is undefined for a single-node tree")
        return min(energies)
    edges = tree.edges()
    if not edges:
        raise SingletonTree("edge-min energy is undefined for a tree with no edges")
    return min(graph.link_energy(u, v) for u, v in edges)


def clmat_edge_cost(energy_u: float, energy_v: float, tree_energy: float) -> float:
    """Edge cost as each endpoint's energy over its headroom above the tree bottleneck.

    A node whose energy equals the bottleneck has zero headroom; the cost
    saturates to +inf instead of erroring (reports show "inf", selection is
    unaffected because total distance is the primary key).
    """
    head_u = energy_u - tree_energy
    head_v = energy_v - tree_energy
    if head_u <= 0 or head_v <= 0:
        return math.inf
    return energy_u / head_u + energy_v / head_v


def residual_edge_cost(tx_uv: float, tx_vu: float,
                       residual_u: float, residual_v: float) -> float:
    """Per-packet transmission energy in each direction, normalized by residual energy."""
    if residual_u <= 0:
        raise NonPositiveResidual(f"residual energy must be positive, got {residual_u!r}")
    if residual_v <= 0:
        raise NonPositiveResidual(f"residual energy must be positive, got {residual_v!r}")
    return tx_uv / residual_u + tx_vu / residual_v


def tree_cost(tree, graph, variant: str = CLMAT,
              energy_variant: str = NODE_MIN, tx_energy=None) -> float:
    """Sum of edge costs over the tree's edges; 0 for a tree with no edges.

    The residual variant prices each edge with a per-packet transmission
    energy, so it needs tx_energy, a callable taking a link distance.
    """
    if variant not in COST_VARIANTS:
        raise ValueError(f"unknown cost variant {variant!r}")
    edges = tree.edges()
    if not edges:
        return 0.0
    total = 0.0
    if variant == CLMAT:
        bottleneck = tree_energy(tree, graph, energy_variant)
        for u, v in edges:
            total += clmat_edge_cost(graph.energy(u), graph.energy(v), bottleneck)
        return total
    if tx_energy is None:
        raise ValueError("the residual cost variant needs a tx_energy(distance) callable")
    for u, v in edges:
        tx = tx_energy(graph.distance(u, v))
        total += residual_edge_cost(tx, tx, graph.energy(u), graph.energy(v))
    return total


def total_distance(tree) -> float:
    """Sum of recorded root distances over every non-root spanned node."""
    total = 0.0
    for v, d in tree.dist.items():
        if v == tree.root:
            continue
        if math.isinf(d):
            raise UnreachableNode(f"infinite recorded distance for {v}")
        total += d
    return total
