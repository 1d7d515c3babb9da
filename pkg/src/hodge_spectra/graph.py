"""Simple undirected graphs with an ordered edge list, and triangle statistics."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations


class GraphError(ValueError):
    """Invalid graph input: self-loop, duplicate edge, or bad endpoint."""


@dataclass(frozen=True)
class Graph:
    """A simple graph on vertices ``0..n-1``.

    ``edges`` keeps the ingestion order because every edge-indexed matrix is
    built in that order.  Each edge is stored as ``(min, max)``; direction
    lives in :class:`~hodge_spectra.incidence.Orientation`.
    """

    n: int
    edges: tuple[tuple[int, int], ...]
    names: tuple[str, ...] | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.n < 0:
            raise GraphError(f"vertex count must be non-negative, got {self.n}")
        normed = []
        seen = set()
        for i, (u, v) in enumerate(self.edges):
            u, v = int(u), int(v)
            if u == v:
                raise GraphError(f"edge {i}: self-loop at vertex {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise GraphError(f"edge {i}: endpoint out of range for n={self.n}")
            key = (min(u, v), max(u, v))
            if key in seen:
                raise GraphError(f"edge {i}: duplicate edge {key}")
            seen.add(key)
            normed.append(key)
        object.__setattr__(self, "edges", tuple(normed))
        if self.names is not None and len(self.names) != self.n:
            raise GraphError("names must label every vertex")

    @classmethod
    def from_edges(cls, edges, n: int | None = None) -> "Graph":
        edges = [tuple(e) for e in edges]
        if n is None:
            n = 1 + max((max(e) for e in edges), default=-1)
        return cls(n, tuple(edges))

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def neighbors(self) -> tuple[frozenset[int], ...]:
        adj = [set() for _ in range(self.n)]
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return tuple(frozenset(a) for a in adj)

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        return tuple(len(a) for a in self.neighbors)

    @cached_property
    def edge_index(self) -> dict[tuple[int, int], int]:
        return {e: i for i, e in enumerate(self.edges)}

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.neighbors[u]

    def adjacency_matrix(self):
        import numpy as np

        A = np.zeros((self.n, self.n), dtype=np.int64)
        for u, v in self.edges:
            A[u, v] = A[v, u] = 1
        return A

    def laplacian_matrix(self):
        import numpy as np

        A = self.adjacency_matrix()
        return np.diag(A.sum(axis=1)) - A

    def complement(self) -> "Graph":
        return Graph(self.n, tuple(
            (u, v) for u, v in combinations(range(self.n), 2) if not self.has_edge(u, v)
        ))

    def is_complete(self) -> bool:
        return self.m == self.n * (self.n - 1) // 2

    def relabel_edges(self, order) -> "Graph":
        """Same graph with the edge list permuted by ``order``."""
        return Graph(self.n, tuple(self.edges[i] for i in order), self.names)


def _check_edge(g: Graph, e: int) -> tuple[int, int]:
    if not 0 <= e < g.m:
        raise IndexError(f"edge index {e} out of range for m={g.m}")
    return g.edges[e]


def _check_vertex(g: Graph, u: int) -> None:
    if not 0 <= u < g.n:
        raise IndexError(f"vertex {u} out of range for n={g.n}")


def enumerate_triangles(g: Graph) -> list[tuple[int, int, int]]:
    """All 3-cliques ``(i, j, k)`` with ``i < j < k``, in lexicographic order."""
    nbrs = g.neighbors
    out = []
    for i, j in sorted(g.edges):
        # k > j keeps each triangle once, keyed by its two smallest vertices
        for k in sorted(w for w in nbrs[i] & nbrs[j] if w > j):
            out.append((i, j, k))
    out.sort()
    return out


def triangle_degree_edge(g: Graph, e: int) -> int:
    u, v = _check_edge(g, e)
    return len(g.neighbors[u] & g.neighbors[v])


def triangle_degrees(g: Graph) -> list[int]:
    """Triangle degree of every edge, in edge order."""
    nbrs = g.neighbors
    return [len(nbrs[u] & nbrs[v]) for u, v in g.edges]


def triangle_degree_vertex(g: Graph, u: int) -> int:
    _check_vertex(g, u)
    nbrs = g.neighbors
    # each triangle at u is an edge inside N(u)
    return sum(len(nbrs[u] & nbrs[x]) for x in nbrs[u]) // 2


def edge_neighborhood_size(g: Graph, e: int) -> int:
    u, v = _check_edge(g, e)
    return g.degrees[u] + g.degrees[v] - 2


def components(g: Graph) -> tuple[int, list[int]]:
    """Number of connected components and a vertex -> component id labeling."""
    label = [-1] * g.n
    w = 0
    for s in range(g.n):
        if label[s] >= 0:
            continue
        label[s] = w
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for v in g.neighbors[u]:
                if label[v] < 0:
                    label[v] = w
                    queue.append(v)
        w += 1
    return w, label


def is_connected(g: Graph) -> bool:
    return g.n > 0 and components(g)[0] == 1


def bfs_distances(g: Graph, source: int) -> list[int | None]:
    dist: list[int | None] = [None] * g.n
    dist[source] = 0
    queue = deque([source])
    while queue:
        u = queue.popleft()
        for v in g.neighbors[u]:
            if dist[v] is None:
                dist[v] = dist[u] + 1
                queue.append(v)
    return dist


def diameter(g: Graph) -> int | None:
    """Largest shortest-path distance; ``None`` when the graph is disconnected."""
    if g.n == 0:
        return 0
    best = 0
    for s in range(g.n):
        dist = bfs_distances(g, s)
        if any(d is None for d in dist):
            return None
        best = max(best, max(dist))
    return best


def is_complete_split(g: Graph) -> bool:
    """True for K_t v sK_1 with t >= 1 and s >= 2: the dominating vertices form
    a clique and the rest are pairwise non-adjacent."""
    dominating = [u for u in range(g.n) if g.degrees[u] == g.n - 1]
    rest = [u for u in range(g.n) if g.degrees[u] != g.n - 1]
    if not dominating or len(rest) < 2:
        return False
    return all(g.degrees[u] == len(dominating) for u in rest)
