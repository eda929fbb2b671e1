"""Per-root shortest-path aggregation trees, plus an independent relaxation oracle.

Tree construction is deterministic: the minimum-distance scan and the
relaxation loop both walk nodes in insertion order, so ties always resolve
the same way. Per-root builds are independent pure computations over the
immutable graph.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass

from .errors import NotInTree, SingletonTree, UnknownVertex
from .metrics import CLMAT, NODE_MIN, TreeMetrics, total_distance, tree_cost, tree_energy
from .topology import UNDIRECTED


@dataclass
class AggregationTree:
    """Rooted shortest-path tree: parent pointers plus root distances.

    parent maps every spanned non-root node to its parent; dist maps every
    spanned node to its shortest distance from the root. Nodes the root
    cannot reach are simply absent.
    """

    root: str
    parent: dict[str, str]
    dist: dict[str, float]

    def __contains__(self, v: str) -> bool:
        return v in self.dist

    def nodes(self) -> list[str]:
        return list(self.dist)

    def edges(self) -> list[tuple[str, str]]:
        """Tree links as (parent, child), in spanned-node order."""
        return [(self.parent[v], v) for v in self.dist if v != self.root]

    def children_counts(self) -> Counter:
        return Counter(self.parent.values())

    def path_to_root(self, v: str):
        """Yield v, then each ancestor up to and including the root."""
        if v not in self.dist:
            raise NotInTree(f"not a tree node: {v}")
        steps = 0
        while True:
            yield v
            if v == self.root:
                return
            v = self.parent[v]
            steps += 1
            if steps > len(self.dist):
                raise ValueError("parent map contains a cycle")

    def hop_count(self, v: str) -> int:
        return sum(1 for _ in self.path_to_root(v)) - 1

    @property
    def depth(self) -> int:
        """Longest root-to-node hop count; 0 for a singleton."""
        return max((self.hop_count(v) for v in self.dist), default=0)


def tree_depth(tree: AggregationTree) -> int:
    """Hop depth of a tree, the quantity consulted on selection ties."""
    return tree.depth


def shortest_path_tree(graph, root: str) -> AggregationTree:
    """Single-source shortest paths from root, with parent pointers.

    Classic quadratic scan: repeatedly finalize the unfinalized node of
    minimum tentative distance, walking indices in insertion order so the
    lowest index wins ties. A parent is recorded only on strict improvement,
    so the first-found parent survives equal-distance alternatives.
    """
    if graph.get_index(root) == -1:
        raise UnknownVertex(f"unknown vertex: {root}")
    ids = graph.node_ids()
    n = len(ids)
    ri = graph.get_index(root)
    tentative = [graph.distance(root, name) for name in ids]
    parent: dict[str, str] = {}
    for j, name in enumerate(ids):
        if j != ri and math.isfinite(tentative[j]):
            parent[name] = root
    final = [False] * n
    final[ri] = True
    for _ in range(n - 1):
        v = -1
        for j in range(n):
            if not final[j] and (v == -1 or tentative[j] < tentative[v]):
                v = j
        if v == -1 or not math.isfinite(tentative[v]):
            break
        final[v] = True
        for w in range(n):
            if final[w]:
                continue
            step = graph.distance(ids[v], ids[w])
            if math.isfinite(step) and tentative[v] + step < tentative[w]:
                tentative[w] = tentative[v] + step
                parent[ids[w]] = ids[v]
    dist = {ids[j]: tentative[j] for j in range(n) if math.isfinite(tentative[j])}
    return AggregationTree(root=root, parent=parent, dist=dist)


def oracle_shortest_paths(graph, root: str) -> dict[str, float]:
    """Shortest distances by edge relaxation iterated to a fixpoint.

    Deliberately shares no structure with shortest_path_tree: it sweeps the
    stored link list instead of scanning the matrix. Unreachable nodes keep
    +inf (the tree builder drops them instead).
    """
    if graph.get_index(root) == -1:
        raise UnknownVertex(f"unknown vertex: {root}")
    dist = {name: (0.0 if name == root else math.inf) for name in graph.node_ids()}
    arcs = []
    for link in graph.links:
        arcs.append((link.u, link.v, link.distance))
        if graph.mode == UNDIRECTED:
            arcs.append((link.v, link.u, link.distance))
    for _ in range(len(dist)):
        changed = False
        for u, v, d in arcs:
            through = dist[u] + d
            if through < dist[v]:
                dist[v] = through
                changed = True
        if not changed:
            break
    return dist


@dataclass(frozen=True)
class Candidate:
    """One candidate aggregator: its tree, its metric triple, whether it spans."""

    root: str
    tree: AggregationTree
    metrics: TreeMetrics
    spanning: bool


def build_all_candidates(graph, cost_variant: str = CLMAT,
                         energy_variant: str = NODE_MIN,
                         tx_energy=None) -> list[Candidate]:
    """Score the shortest-path tree rooted at every node, in insertion order.

    Entries whose tree fails to reach every node are flagged non-spanning;
    their metrics still describe the partial tree.
    """
    candidates = []
    for node in graph.nodes:
        tree = shortest_path_tree(graph, node.id)
        spanning = len(tree.dist) == len(graph)
        try:
            energy = tree_energy(tree, graph, energy_variant)
        except SingletonTree:
            energy = None
        cost = tree_cost(tree, graph, cost_variant, energy_variant, tx_energy)
        metrics = TreeMetrics(energy, cost, total_distance(tree))
        candidates.append(Candidate(node.id, tree, metrics, spanning))
    return candidates
