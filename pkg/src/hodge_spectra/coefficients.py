"""Combinatorial formulas for the coefficients of the Helmholtzian characteristic polynomial.

Two independent routes to ``c_k``:

* closed forms for ``c_1, c_2, c_3`` in terms of degrees, triangle degrees and
  edge neighbourhoods of ``G``;
* an exhaustive sum over basic subgraphs (vertex-disjoint unions of loops-weighted
  vertices, isolated edges and cycles) of the signed loop graph on ``E(G)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb

import numpy as np

from .exact import poly_taylor_shift
from .graph import Graph, edge_neighborhood_size, enumerate_triangles, triangle_degrees
from .helmholtzian import SignedLoopGraph, build_signed_loop_graph
from .incidence import Orientation
from .spectral import charpoly_exact

DEFAULT_ORACLE_BUDGET = 10**7


class OracleBudgetExceeded(RuntimeError):
    pass


def _elementary_symmetric(ws, k: int) -> int:
    """e_k of the weights: the sum over unordered k-subsets of their products."""
    e = [1] + [0] * k
    for w in ws:
        for j in range(k, 0, -1):
            e[j] += e[j - 1] * w
    return e[k]


def _independent_triples_at(g: Graph, u: int) -> int:
    """Triples of edges at u whose far endpoints are pairwise non-adjacent."""
    nbrs = g.neighbors
    local = sorted(nbrs[u])
    d = len(local)
    inner_edges = 0
    two_paths = 0
    inner_triangles = 0
    for x in local:
        k = len(nbrs[x] & nbrs[u])
        inner_edges += k
        two_paths += comb(k, 2)
    inner_edges //= 2
    for x in local:
        for y in nbrs[x] & nbrs[u]:
            if y > x:
                inner_triangles += sum(1 for z in nbrs[x] & nbrs[y] & nbrs[u] if z > y)
    # inclusion-exclusion over the edges of the neighbourhood graph G[N(u)]
    return comb(d, 3) - inner_edges * (d - 2) + two_paths - inner_triangles


@dataclass(frozen=True)
class ClosedFormCoefficients:
    c1: int
    c2: int
    c3: int
    pair_sum: int          # sum over unordered edge pairs of (D_i+2)(D_j+2)
    line_edges: int        # sum_v C(d(v), 2)
    triangles: int
    c31: int
    c32: int
    c33: int
    c33_printed: int       # -2 sum_u (C(d,3) - Delta(u)(d-2)), exact only without 2-paths in G[N(u)]

    def as_tuple(self) -> tuple[int, int, int]:
        return self.c1, self.c2, self.c3


def coeffs_closed_form(g: Graph) -> ClosedFormCoefficients:
    """c_1, c_2, c_3 from degree and triangle counts.

    ``c33`` counts the 3-cycles of the reduced signed loop graph exactly: at
    each vertex, triples of incident edges with pairwise non-adjacent far
    endpoints.  ``c33_printed`` is the shorter expression
    ``-2 sum_u (C(d,3) - Delta(u)(d-2))``, which double-subtracts triples
    whose far endpoints span two or more edges (diamonds, K4) and is kept for
    comparison.
    """
    if g.m == 0:
        raise ValueError("coefficients need at least one edge")
    tdeg = triangle_degrees(g)
    w = [d + 2 for d in tdeg]
    t = len(enumerate_triangles(g))
    line_edges = sum(comb(d, 2) for d in g.degrees)
    c1 = -sum(w)
    pair_sum = _elementary_symmetric(w, 2)
    c2 = pair_sum - line_edges + 3 * t
    c31 = -_elementary_symmetric(w, 3)
    c32 = sum(
        (line_edges - 3 * t - edge_neighborhood_size(g, e) + 2 * tdeg[e]) * w[e]
        for e in range(g.m)
    )
    c33 = -2 * sum(_independent_triples_at(g, u) for u in range(g.n))
    nbrs = g.neighbors
    vertex_tri = [sum(len(nbrs[u] & nbrs[x]) for x in nbrs[u]) // 2 for u in range(g.n)]
    c33_printed = -2 * sum(comb(d, 3) - vertex_tri[u] * (d - 2) for u, d in enumerate(g.degrees))
    return ClosedFormCoefficients(
        c1=c1, c2=c2, c3=c31 + c32 + c33,
        pair_sum=pair_sum, line_edges=line_edges, triangles=t,
        c31=c31, c32=c32, c33=c33, c33_printed=c33_printed,
    )


def basic_subgraph_polynomial(lam: SignedLoopGraph, budget: int = DEFAULT_ORACLE_BUDGET) -> list[int]:
    """Weighted count of basic subgraphs of the signed loop graph, by order.

    Entry ``k`` is ``sum_B (-1)^(m(B) + c_odd_neg(B) + c_even_pos(B)) 2^c(B) prod_v w(v)``
    over basic subgraphs on ``k`` vertices.  Backtracking always branches on
    the smallest undecided vertex, which is excluded, kept isolated, matched
    to a later neighbour, or made the minimum of a cycle through later
    vertices.  States are memoised on (vertex, used mask).
    """
    m = lam.order
    adj = [[] for _ in range(m)]
    sign = {}
    for (e, f), s in [(p, 1) for p in lam.positive] + [(p, -1) for p in lam.negative]:
        adj[e].append(f)
        adj[f].append(e)
        sign[(e, f)] = sign[(f, e)] = s
    for a in adj:
        a.sort()
    work = [0]

    def tick():
        work[0] += 1
        if work[0] > budget:
            raise OracleBudgetExceeded(f"basic-subgraph enumeration exceeded {budget} states")

    def add(acc, poly, shift, factor):
        for i, c in enumerate(poly):
            if c:
                acc[i + shift] += factor * c

    def cycles_from(v, used):
        """Simple cycles with minimum vertex v avoiding ``used``; each once."""
        out = []
        path = [v]
        on_path = 1 << v

        def extend(x, s):
            nonlocal on_path
            for y in adj[x]:
                tick()
                if y < v or (used >> y) & 1:
                    continue
                if y == v:
                    # length >= 3, and fix a direction by comparing the ends
                    if len(path) >= 3 and path[1] < path[-1]:
                        out.append((on_path, len(path), s * sign[(x, y)]))
                    continue
                if (on_path >> y) & 1:
                    continue
                path.append(y)
                on_path |= 1 << y
                extend(y, s * sign[(x, y)])
                on_path &= ~(1 << y)
                path.pop()

        extend(v, 1)
        return out

    @lru_cache(maxsize=None)
    def solve(v, used):
        tick()
        while v < m and (used >> v) & 1:
            v += 1
        acc = [0] * (m + 1)
        if v == m:
            acc[0] = 1
            return tuple(acc)
        bit = 1 << v
        rest = solve(v + 1, used | bit)
        add(acc, rest, 0, 1)                     # v not in B
        add(acc, rest, 1, lam.loops[v])          # v isolated, weight = loop count
        for u in adj[v]:
            if u > v and not (used >> u) & 1:    # isolated edge {v, u}
                add(acc, solve(v + 1, used | bit | (1 << u)), 2, -1)
        for mask, length, s in cycles_from(v, used):
            negative = s < 0
            odd = length % 2 == 1
            flip = (odd and negative) or (not odd and not negative)
            add(acc, solve(v + 1, used | mask), length, -2 if flip else 2)
        return tuple(acc)

    return list(solve(0, 0))


def coeff_ck_oracle(g: Graph, o: Orientation, k: int, budget: int = DEFAULT_ORACLE_BUDGET) -> int:
    """c_k as (-1)^k times the weighted count of basic subgraphs on k vertices."""
    if not 0 <= k <= g.m:
        raise ValueError(f"k must lie in [0, {g.m}], got {k}")
    return all_coeffs_oracle(g, o, budget)[k]


def all_coeffs_oracle(g: Graph, o: Orientation, budget: int = DEFAULT_ORACLE_BUDGET) -> list[int]:
    lam = build_signed_loop_graph(g, o)
    weights = basic_subgraph_polynomial(lam, budget)
    return [(-1) ** k * c for k, c in enumerate(weights)]


def loop_shift_check(g: Graph, o: Orientation) -> bool:
    """Removing two loops everywhere shifts the spectrum down by exactly 2.

    Compares phi_{A(Lambda)}(x) with phi_{A(Lambda')}(x - 2) coefficient-wise.
    """
    lam = build_signed_loop_graph(g, o)
    full = charpoly_exact(lam.adjacency()).coeffs
    reduced = charpoly_exact(lam.adjacency(drop_loops=2)).coeffs
    return list(full) == poly_taylor_shift(reduced, -2)


def loop_shifted_adjacency(g: Graph, o: Orientation) -> np.ndarray:
    return build_signed_loop_graph(g, o).adjacency(drop_loops=2)
