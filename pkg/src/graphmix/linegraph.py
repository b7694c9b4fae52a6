"""Line graphs, their inverses on disjoint-clique inputs, and sparsity tests.

The inverse line graph is only taken on graphs whose components are all
cliques; clique K_c maps back to the star K_{1,c} and an isolated vertex
maps to a single disconnected edge.  The triangle is genuinely ambiguous
(K_3 is the line graph of both K_3 and K_{1,3}); the star preimage is
chosen so the output is always a star forest.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graph import Graph

__all__ = [
    "UnionFind",
    "StructureError",
    "line_graph",
    "CliqueDecomposition",
    "decompose_disjoint_cliques",
    "star_forest",
    "inverse_line_graph_disjoint",
    "SequenceEvidence",
    "classify_sequence",
]


class StructureError(ValueError):
    """Input graph violates a structural precondition."""


class UnionFind:
    """Array union-find with path halving and union by size."""

    def __init__(self, n: int):
        self.parent = np.arange(n, dtype=np.int64)
        self.size = np.ones(n, dtype=np.int64)

    def find(self, x: int) -> int:
        p = self.parent
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return
        if self.size[ra] < self.size[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        self.size[ra] += self.size[rb]


def line_graph(g: Graph) -> Graph:
    """L(G): one node per edge of G, adjacent iff the edges share an endpoint.

    Node i of the output is edge i in G's canonical edge order.  Output
    size is sum over vertices of C(deg, 2), so hubs blow up quadratically.
    """
    m = g.edge_count
    if m == 0:
        raise ValueError("line graph of an edgeless graph is undefined here")
    incident: list[list[int]] = [[] for _ in range(g.node_count)]
    for eid, (u, v) in enumerate(g.edges):
        incident[int(u)].append(eid)
        incident[int(v)].append(eid)
    chunks = []
    for ids in incident:
        d = len(ids)
        if d >= 2:
            arr = np.asarray(ids, dtype=np.int64)
            a, b = np.triu_indices(d, k=1)
            chunks.append(np.column_stack([arr[a], arr[b]]))
    edges = np.concatenate(chunks) if chunks else np.empty((0, 2), dtype=np.int64)
    return Graph(m, edges)


@dataclass(frozen=True)
class CliqueDecomposition:
    """Clique sizes (non-increasing, sizes >= 2) plus isolated vertices."""

    clique_sizes: tuple[int, ...]
    isolated_count: int


def decompose_disjoint_cliques(h: Graph) -> CliqueDecomposition:
    """Split h into cliques, or fail naming a non-clique component."""
    uf = UnionFind(h.node_count)
    for u, v in h.edges:
        uf.union(int(u), int(v))
    roots = np.fromiter(
        (uf.find(i) for i in range(h.node_count)), dtype=np.int64, count=h.node_count
    )
    edge_per_root = np.zeros(h.node_count, dtype=np.int64)
    if h.edge_count:
        np.add.at(edge_per_root, roots[h.edges[:, 0]], 1)
    sizes = []
    isolated = 0
    for root in np.unique(roots):
        c = int(np.sum(roots == root))
        e = int(edge_per_root[root])
        if c == 1:
            isolated += 1
            continue
        if e != c * (c - 1) // 2:
            raise StructureError(
                f"component containing node {int(root)} has {c} nodes and {e} edges, "
                "not a clique"
            )
        sizes.append(c)
    sizes.sort(reverse=True)
    return CliqueDecomposition(clique_sizes=tuple(sizes), isolated_count=isolated)


def star_forest(star_sizes, isolated_edges: int = 0) -> tuple[Graph, np.ndarray]:
    """Build disjoint stars K_{1,c} (in the given order) plus isolated edges.

    Returns the graph and the hub node index of each star.  Layout per
    star is hub first then its leaves; each isolated edge appends two
    fresh nodes.
    """
    sizes = [int(c) for c in star_sizes]
    if any(c < 1 for c in sizes):
        raise ValueError("star sizes must be >= 1")
    if isolated_edges < 0:
        raise ValueError("isolated_edges must be >= 0")
    hubs = np.empty(len(sizes), dtype=np.int64)
    chunks = []
    node = 0
    for i, c in enumerate(sizes):
        hubs[i] = node
        leaves = np.arange(node + 1, node + 1 + c, dtype=np.int64)
        chunks.append(np.column_stack([np.full(c, node, dtype=np.int64), leaves]))
        node += c + 1
    for _ in range(isolated_edges):
        chunks.append(np.array([[node, node + 1]], dtype=np.int64))
        node += 2
    edges = np.concatenate(chunks) if chunks else np.empty((0, 2), dtype=np.int64)
    return Graph(node, edges), hubs


def inverse_line_graph_disjoint(h: Graph) -> Graph:
    """Preimage of a disjoint-clique graph under the line-graph map.

    Clique of size c -> star K_{1,c}; isolated vertex -> isolated edge.
    The output has node_count(h) edges, one per input vertex.
    """
    dec = decompose_disjoint_cliques(h)
    g, _ = star_forest(dec.clique_sizes, isolated_edges=dec.isolated_count)
    return g


@dataclass(frozen=True)
class SequenceEvidence:
    """Trailing-window evidence that a graph sequence stays line-graph sparse."""

    square_degree_evidence: float
    max_degree_evidence: float


def classify_sequence(stats) -> SequenceEvidence:
    """Evidence from a sequence of (n, m, max_degree, sum_degree_squares).

    Membership in the sparse family is an asymptotic property, so this
    reports evidence in [0, 1], never a verdict: the minimum over the
    trailing half of the sequence of sum(d^2)/m^2 (clipped to 1; star
    sequences saturate it) and of max_degree/m.
    """
    rows = list(stats)
    if not rows:
        raise ValueError("need at least one stats row")
    tail = rows[len(rows) - (len(rows) + 1) // 2 :]
    sq = 1.0
    mx = 1.0
    for n, m, d_max, sum_sq in tail:
        if m <= 0:
            raise ValueError("stats rows need m >= 1")
        sq = min(sq, min(1.0, float(sum_sq) / float(m) ** 2))
        mx = min(mx, float(d_max) / float(m))
    return SequenceEvidence(square_degree_evidence=sq, max_degree_evidence=mx)
