"""Graph model for the three supported topologies: paths, bipartite graphs,
and hexagonal-grid graphs.

Hexagonal graphs use axial coordinates (q, r); two cells are adjacent iff
their coordinate difference is one of the six axial offsets.  Every cell
gets one of three classes R/G/B via (q - r) mod 3, which yields a proper
3-coloring of the grid.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .errors import (
    InvalidEmbeddingError,
    InvalidSizeError,
    NotBipartiteError,
    UnknownNodeError,
)

HEX_OFFSETS = frozenset({(1, 0), (-1, 0), (0, 1), (0, -1), (1, -1), (-1, 1)})

CLASS_NAMES = ("R", "G", "B")


@dataclass(frozen=True)
class CellCoord:
    q: int
    r: int

    def is_adjacent(self, other: "CellCoord") -> bool:
        return (other.q - self.q, other.r - self.r) in HEX_OFFSETS


@dataclass(frozen=True)
class Graph:
    """Immutable graph with a kind tag and kind-specific annotations.

    partition maps node -> "L"/"U" for path and bipartite graphs;
    cell_of and class_of are populated for hexagonal graphs only.
    """

    kind: str  # "path" | "bipartite" | "hexagonal"
    nodes: tuple[str, ...]
    edges: frozenset[frozenset]
    partition: dict = field(default_factory=dict)
    cell_of: dict = field(default_factory=dict)
    class_of: dict = field(default_factory=dict)

    def neighbors(self, v: str) -> set:
        return {next(iter(e - {v})) for e in self.edges if v in e}

    def adjacent(self, u: str, v: str) -> bool:
        return frozenset((u, v)) in self.edges

    def edge_list(self) -> list[tuple[str, str]]:
        return sorted(tuple(sorted(e)) for e in self.edges)


def build_path(k: int) -> Graph:
    """Path v1..vk with partition alternating L, U, L, ... from v1."""
    if k < 1:
        raise InvalidSizeError(f"path needs at least one node, got k={k}")
    nodes = tuple(f"v{i}" for i in range(1, k + 1))
    edges = frozenset(frozenset((nodes[i], nodes[i + 1])) for i in range(k - 1))
    partition = {v: ("L" if i % 2 == 0 else "U") for i, v in enumerate(nodes)}
    return Graph(kind="path", nodes=nodes, edges=edges, partition=partition)


def build_bipartite(nodes, edges, partition) -> Graph:
    """Bipartite graph from an explicit L/U partition; rejects same-side edges."""
    nodes = tuple(sorted(nodes))
    node_set = set(nodes)
    for v in node_set:
        if partition.get(v) not in ("L", "U"):
            raise NotBipartiteError(f"node {v!r} has no L/U side")
    edge_set = set()
    for u, w in edges:
        if u not in node_set or w not in node_set:
            raise UnknownNodeError(f"edge ({u!r}, {w!r}) has an endpoint outside the node set")
        if u == w:
            raise NotBipartiteError(f"self-loop at {u!r}")
        if partition[u] == partition[w]:
            raise NotBipartiteError(f"edge ({u!r}, {w!r}) joins two {partition[u]} nodes")
        edge_set.add(frozenset((u, w)))
    return Graph(
        kind="bipartite",
        nodes=nodes,
        edges=frozenset(edge_set),
        partition={v: partition[v] for v in nodes},
    )


def build_hexagonal(cells: dict) -> Graph:
    """Hexagonal graph from an injective node -> CellCoord embedding.

    Adjacency is derived from the six axial offsets; the R/G/B class of a
    node at (q, r) is (q - r) mod 3.
    """
    coords = {}
    for v, c in cells.items():
        if not isinstance(c, CellCoord):
            c = CellCoord(*c)
        if c in coords.values():
            raise InvalidEmbeddingError(f"duplicate cell {c} (node {v!r})")
        coords[v] = c
    nodes = tuple(sorted(coords))
    edges = frozenset(
        frozenset((u, w))
        for u, w in combinations(nodes, 2)
        if coords[u].is_adjacent(coords[w])
    )
    class_of = {v: CLASS_NAMES[(coords[v].q - coords[v].r) % 3] for v in nodes}
    return Graph(
        kind="hexagonal",
        nodes=nodes,
        edges=edges,
        cell_of=coords,
        class_of=class_of,
    )


def maximal_cliques(g: Graph) -> list[frozenset]:
    """All maximal cliques, sorted for determinism.

    For the three supported kinds, every clique has size at most 3
    (paths and bipartite graphs are triangle-free; hexagonal grids have no K4),
    so isolated nodes, edges, and triangles are the only candidates.
    """
    triangles = set()
    for u, w, x in combinations(g.nodes, 3):
        if g.adjacent(u, w) and g.adjacent(u, x) and g.adjacent(w, x):
            triangles.add(frozenset((u, w, x)))
    cliques = set(triangles)
    for e in g.edges:
        if not any(e < t for t in triangles):
            cliques.add(e)
    for v in g.nodes:
        if not g.neighbors(v):
            cliques.add(frozenset((v,)))
    return sorted(cliques, key=lambda c: sorted(c))


def clique_weight(g: Graph, demand: dict) -> int:
    """omega: maximum total demand over the maximal cliques of g."""
    cliques = maximal_cliques(g)
    if not cliques:
        return 0
    return max(sum(demand.get(v, 0) for v in c) for c in cliques)
