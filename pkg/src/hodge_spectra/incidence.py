"""Edge orientations and the signed incidence matrices B (edge-vertex) and C (triangle-edge)."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graph import Graph, enumerate_triangles


@dataclass(frozen=True)
class Orientation:
    """Per-edge ``(tail, head)``, indexed like ``Graph.edges``."""

    arcs: tuple[tuple[int, int], ...]

    def __post_init__(self):
        for t, h in self.arcs:
            if t == h:
                raise ValueError(f"arc ({t}, {h}) has equal tail and head")

    def tail(self, e: int) -> int:
        return self.arcs[e][0]

    def head(self, e: int) -> int:
        return self.arcs[e][1]

    def validate(self, g: Graph) -> None:
        if len(self.arcs) != g.m:
            raise ValueError(f"orientation has {len(self.arcs)} arcs, graph has {g.m} edges")
        for i, ((t, h), (u, v)) in enumerate(zip(self.arcs, g.edges)):
            if {t, h} != {u, v}:
                raise ValueError(f"arc {i} ({t}->{h}) does not match edge {{{u}, {v}}}")

    def flip(self, e: int) -> "Orientation":
        arcs = list(self.arcs)
        t, h = arcs[e]
        arcs[e] = (h, t)
        return Orientation(tuple(arcs))


def canonical_orientation(g: Graph) -> Orientation:
    """Orient every edge from its lower to its higher endpoint."""
    return Orientation(tuple(g.edges))


def random_orientation(g: Graph, rng: np.random.Generator) -> Orientation:
    flips = rng.integers(0, 2, size=g.m)
    return Orientation(tuple((v, u) if f else (u, v) for (u, v), f in zip(g.edges, flips)))


def build_B(g: Graph, o: Orientation) -> np.ndarray:
    """m x n edge-vertex incidence: -1 at the tail, +1 at the head."""
    if g.m == 0:
        raise ValueError("edge-vertex incidence needs at least one edge")
    o.validate(g)
    B = np.zeros((g.m, g.n), dtype=np.int64)
    for e, (t, h) in enumerate(o.arcs):
        B[e, t] = -1
        B[e, h] = 1
    return B


def triangle_sign(tri: tuple[int, int, int], arc: tuple[int, int]) -> int:
    """+1 if the arc runs along the cycle i -> j -> k -> i, else -1."""
    i, j, k = tri
    return 1 if arc in ((i, j), (j, k), (k, i)) else -1


def build_C(g: Graph, o: Orientation) -> np.ndarray:
    """t x m triangle-edge incidence, rows in lexicographic triangle order."""
    o.validate(g)
    tris = enumerate_triangles(g)
    C = np.zeros((len(tris), g.m), dtype=np.int64)
    idx = g.edge_index
    for r, (i, j, k) in enumerate(tris):
        for u, v in ((i, j), (i, k), (j, k)):
            e = idx[(u, v)]
            C[r, e] = triangle_sign((i, j, k), o.arcs[e])
    return C
