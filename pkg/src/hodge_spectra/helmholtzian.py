"""The Helmholtzian (Hodge 1-Laplacian) of a graph, built three independent ways.

* :func:`build_H_direct` applies the entry rules edge pair by edge pair,
* :func:`build_H_factored` multiplies out ``B B^T + C^T C``,
* :func:`build_H_split` assembles ``D + A(Lambda_R)`` from the signed loop graph.

All three return a :class:`HelmholtzianMatrix` and must agree entrywise.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .graph import Graph, triangle_degrees
from .incidence import Orientation, build_B, build_C, enumerate_triangles, triangle_sign


class QuadraticFormMismatch(ArithmeticError):
    pass


@dataclass(frozen=True, eq=False)
class HelmholtzianMatrix:
    matrix: np.ndarray
    provenance: str
    graph: Graph
    orientation: Orientation

    def __array__(self, dtype=None, copy=None):
        return self.matrix if dtype is None else self.matrix.astype(dtype)

    @property
    def m(self) -> int:
        return self.matrix.shape[0]


def _require_edges(g: Graph) -> None:
    if g.m == 0:
        raise ValueError("the Helmholtzian needs at least one edge (edgeless graphs map to the 0x0 matrix)")


def edge_pair_relations(g: Graph, o: Orientation):
    """Yield ``(e, f, sign, cotriangular)`` for every pair of adjacent edges.

    ``sign`` is +1 when the two arcs share a head or share a tail and -1 when
    one runs into the other.  A pair sharing vertex ``v`` is co-triangular
    exactly when the two far endpoints are adjacent.
    """
    o.validate(g)
    incident: list[list[tuple[int, int]]] = [[] for _ in range(g.n)]
    for e, (t, h) in enumerate(o.arcs):
        incident[t].append((e, -1))
        incident[h].append((e, +1))
    for v in range(g.n):
        for (e, se), (f, sf) in combinations(incident[v], 2):
            a = o.arcs[e][0] if o.arcs[e][1] == v else o.arcs[e][1]
            b = o.arcs[f][0] if o.arcs[f][1] == v else o.arcs[f][1]
            yield e, f, se * sf, g.has_edge(a, b)


def build_H_direct(g: Graph, o: Orientation) -> HelmholtzianMatrix:
    _require_edges(g)
    H = np.diag(np.asarray(triangle_degrees(g), dtype=np.int64) + 2)
    for e, f, sign, cotri in edge_pair_relations(g, o):
        if not cotri:
            H[e, f] = H[f, e] = sign
    return HelmholtzianMatrix(H, "direct", g, o)


def build_H_factored(g: Graph, o: Orientation) -> HelmholtzianMatrix:
    _require_edges(g)
    B = build_B(g, o)
    C = build_C(g, o)
    return HelmholtzianMatrix(B @ B.T + C.T @ C, "factored", g, o)


@dataclass(frozen=True)
class SignedLoopGraph:
    """Signed graph with loops on the edge set of ``G``.

    Vertex ``e`` carries ``loops[e]`` positive loops; ``positive`` and
    ``negative`` hold the signed non-loop edges as sorted index pairs.
    """

    loops: tuple[int, ...]
    positive: frozenset[tuple[int, int]]
    negative: frozenset[tuple[int, int]]

    @property
    def order(self) -> int:
        return len(self.loops)

    def reduced_adjacency(self) -> np.ndarray:
        """Adjacency of the loop-free reduction."""
        A = np.zeros((self.order, self.order), dtype=np.int64)
        for e, f in self.positive:
            A[e, f] = A[f, e] = 1
        for e, f in self.negative:
            A[e, f] = A[f, e] = -1
        return A

    def adjacency(self, drop_loops: int = 0) -> np.ndarray:
        """Adjacency with ``loops[e] - drop_loops`` on the diagonal."""
        return self.reduced_adjacency() + np.diag(np.asarray(self.loops, dtype=np.int64) - drop_loops)

    def sign(self, e: int, f: int) -> int:
        key = (min(e, f), max(e, f))
        if key in self.positive:
            return 1
        if key in self.negative:
            return -1
        return 0


def build_signed_loop_graph(g: Graph, o: Orientation) -> SignedLoopGraph:
    _require_edges(g)
    pos, neg = set(), set()
    for e, f, sign, cotri in edge_pair_relations(g, o):
        if cotri:
            continue
        (pos if sign > 0 else neg).add((min(e, f), max(e, f)))
    loops = tuple(d + 2 for d in triangle_degrees(g))
    return SignedLoopGraph(loops, frozenset(pos), frozenset(neg))


def build_H_split(g: Graph, o: Orientation) -> HelmholtzianMatrix:
    lam = build_signed_loop_graph(g, o)
    D = np.diag(np.asarray(lam.loops, dtype=np.int64))
    return HelmholtzianMatrix(D + lam.reduced_adjacency(), "split", g, o)


def quadratic_form_combinatorial(g: Graph, o: Orientation, x) -> float:
    """Sum-of-squares expansion of x^T H x in terms of degrees and edge relations."""
    x = np.asarray(x, dtype=float)
    deg = g.degrees
    tdeg = triangle_degrees(g)
    total = 0.0
    for e, (t, h) in enumerate(o.arcs):
        total += (3 * tdeg[e] + 4 - deg[t] - deg[h]) * x[e] ** 2
    for e, f, sign, cotri in edge_pair_relations(g, o):
        if cotri:
            continue
        total += (x[e] + x[f]) ** 2 if sign > 0 else (x[e] - x[f]) ** 2
    return total


def quadratic_form(h: HelmholtzianMatrix, x, rtol: float = 1e-9) -> float:
    """x^T H x, cross-checked against the combinatorial expansion.

    Raises :class:`QuadraticFormMismatch` when the two disagree beyond ``rtol``
    relative to the scale of the summands.
    """
    x = np.asarray(x, dtype=float)
    if x.shape != (h.m,):
        raise ValueError(f"vector length {x.shape} does not match m={h.m}")
    value = float(x @ h.matrix @ x)
    comb = quadratic_form_combinatorial(h.graph, h.orientation, x)
    scale = max(1.0, float(np.abs(h.matrix).sum()) * float(x @ x))
    if abs(value - comb) > rtol * scale:
        raise QuadraticFormMismatch(f"x^T H x = {value!r} but expansion gives {comb!r}")
    return value


def curl_energy_bounds(g: Graph, o: Orientation, x) -> tuple[float | None, float, float]:
    """(Cauchy-Schwarz lower bound, x^T C^T C x, 3 sum Delta(e) x_e^2).

    The lower bound is ``None`` for triangle-free graphs.
    """
    x = np.asarray(x, dtype=float)
    tris = enumerate_triangles(g)
    idx = g.edge_index
    per_tri = []
    for tri in tris:
        i, j, k = tri
        s = 0.0
        for pair in ((i, j), (i, k), (j, k)):
            e = idx[pair]
            s += triangle_sign(tri, o.arcs[e]) * x[e]
        per_tri.append(s)
    middle = float(sum(s * s for s in per_tri))
    upper = float(sum(3 * d * xe * xe for d, xe in zip(triangle_degrees(g), x)))
    lower = float(sum(per_tri)) ** 2 / len(tris) if tris else None
    return lower, middle, upper


def grad_energy_bounds(g: Graph, o: Orientation, x) -> tuple[float, float, float]:
    """(Cauchy-Schwarz lower bound, x^T B B^T x, sum (d(head) + d(tail)) x_e^2)."""
    x = np.asarray(x, dtype=float)
    per_vertex = np.zeros(g.n)
    for e, (t, h) in enumerate(o.arcs):
        per_vertex[t] -= x[e]
        per_vertex[h] += x[e]
    middle = float(per_vertex @ per_vertex)
    deg = g.degrees
    upper = float(sum((deg[t] + deg[h]) * x[e] ** 2 for e, (t, h) in enumerate(o.arcs)))
    lower = float(per_vertex.sum()) ** 2 / g.n
    return lower, middle, upper
