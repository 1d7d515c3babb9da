"""Named graph families, their closed-form Helmholtzian spectra, and the join.

Family specs have a text form used by the CLI::

    complete:5          multipartite:2,3,3     bipartite:2,3
    windmill:2;2,2      split:4,2              threshold:001101
    cycle:5  path:4  empty:3  cocktail:3  star:4
    join(complete:3,cycle:4)
    hseq(complete:2;1,1;2,0)     # seed, then steps (s,t)
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass
from itertools import combinations
from math import comb

import numpy as np

from .graph import Graph, GraphError
from .helmholtzian import build_H_direct
from .incidence import canonical_orientation
from .spectral import DEFAULT_CLUSTER_TOL, Spectrum, eigen_spectrum, h_integral_test


class FamilyError(ValueError):
    pass


@dataclass(frozen=True)
class FamilySpec:
    kind: str
    params: tuple = ()
    left: "FamilySpec | Graph | None" = None
    right: "FamilySpec | Graph | None" = None

    def __str__(self) -> str:
        return format_family(self)


CLOSED_FORM_KINDS = {"complete", "multipartite", "bipartite", "windmill", "split", "threshold"}


def _ints(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError as exc:
        raise FamilyError(f"expected comma-separated integers, got {text!r}") from exc


def _split_top_level(text: str, sep: str) -> list[str]:
    depth, cur, out = 0, [], []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == sep and depth == 0:
            out.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    out.append("".join(cur))
    return out


def parse_family(text: str) -> FamilySpec:
    """Parse the canonical text form of a family spec."""
    text = text.strip()
    m = re.fullmatch(r"(join|hseq)\((.*)\)", text)
    if m:
        head, body = m.groups()
        if head == "join":
            parts = _split_top_level(body, ",")
            if len(parts) != 2:
                raise FamilyError(f"join takes two operands, got {text!r}")
            return FamilySpec("join", (), parse_family(parts[0]), parse_family(parts[1]))
        parts = _split_top_level(body, ";")
        seed = parse_family(parts[0])
        steps = []
        for p in parts[1:]:
            st = _ints(p)
            if len(st) != 2:
                raise FamilyError(f"hseq step must be 's,t', got {p!r}")
            steps.append(st)
        return FamilySpec("hseq", tuple(steps), seed)
    if ":" not in text:
        raise FamilyError(f"family spec must look like 'kind:params', got {text!r}")
    kind, arg = text.split(":", 1)
    kind = kind.strip().lower()
    if kind == "windmill":
        if ";" not in arg:
            raise FamilyError("windmill spec is 'windmill:n0;n1,n2,...'")
        n0, rest = arg.split(";", 1)
        return FamilySpec("windmill", (int(n0),) + _ints(rest))
    if kind == "threshold":
        bits = arg.strip()
        if not bits or set(bits) - {"0", "1"}:
            raise FamilyError(f"threshold code must be a non-empty 0/1 string, got {bits!r}")
        return FamilySpec("threshold", tuple(int(b) for b in bits))
    if kind in {"complete", "multipartite", "bipartite", "split", "cycle", "path", "empty", "cocktail", "star"}:
        return FamilySpec(kind, _ints(arg))
    raise FamilyError(f"unknown family {kind!r}")


def format_family(spec: FamilySpec) -> str:
    if spec.kind == "join":
        return f"join({_fmt_operand(spec.left)},{_fmt_operand(spec.right)})"
    if spec.kind == "hseq":
        steps = ";".join(f"{s},{t}" for s, t in spec.params)
        return f"hseq({_fmt_operand(spec.left)}{';' + steps if steps else ''})"
    if spec.kind == "windmill":
        return f"windmill:{spec.params[0]};{','.join(map(str, spec.params[1:]))}"
    if spec.kind == "threshold":
        return "threshold:" + "".join(map(str, spec.params))
    return f"{spec.kind}:{','.join(map(str, spec.params))}"


def _fmt_operand(x) -> str:
    return format_family(x) if isinstance(x, FamilySpec) else f"<graph n={x.n} m={x.m}>"


# --- generators ----------------------------------------------------------------


def complete_graph(n: int) -> Graph:
    return Graph(n, tuple(combinations(range(n), 2)))


def empty_graph(n: int) -> Graph:
    return Graph(n, ())


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise FamilyError("cycle needs n >= 3")
    return Graph(n, tuple((i, (i + 1) % n) for i in range(n)))


def path_graph(n: int) -> Graph:
    return Graph(n, tuple((i, i + 1) for i in range(n - 1)))


def disjoint_union(*graphs: Graph) -> Graph:
    edges, off = [], 0
    for g in graphs:
        edges.extend((u + off, v + off) for u, v in g.edges)
        off += g.n
    return Graph(off, tuple(edges))


def join(g1: Graph, g2: Graph) -> Graph:
    """G1 v G2: edges of G1, then edges of G2, then cross edges in (u, v) order."""
    off = g1.n
    edges = list(g1.edges)
    edges.extend((u + off, v + off) for u, v in g2.edges)
    edges.extend((u, v + off) for u in range(g1.n) for v in range(g2.n))
    return Graph(g1.n + g2.n, tuple(edges))


def complete_multipartite(parts) -> Graph:
    parts = list(parts)
    starts = np.cumsum([0] + parts)
    edges = []
    for i, j in combinations(range(len(parts)), 2):
        for u in range(starts[i], starts[i + 1]):
            for v in range(starts[j], starts[j + 1]):
                edges.append((int(u), int(v)))
    return Graph(int(starts[-1]), tuple(sorted(edges)))


def cocktail_party(k: int) -> Graph:
    """K_{2,2,...,2} with k parts: (2k-4)-regular."""
    return complete_multipartite([2] * k)


def threshold_graph(bits) -> Graph:
    """Vertex i arrives isolated (0) or dominating (1); the first bit is the start vertex."""
    bits = list(bits)
    if not bits:
        raise FamilyError("threshold code must be non-empty")
    edges = []
    for i, b in enumerate(bits[1:], start=1):
        if b:
            edges.extend((j, i) for j in range(i))
    return Graph(len(bits), tuple(edges))


def windmill(n0: int, parts) -> Graph:
    """K_{n0} v (K_{n1} u ... u K_{nk}), with the K_{n0} vertices first."""
    return join(complete_graph(n0), disjoint_union(*(complete_graph(p) for p in parts)))


def complete_split(s: int, t: int) -> Graph:
    """K_t v sK_1."""
    return join(complete_graph(t), empty_graph(s))


def _positive(params, what: str, count: int | None = None):
    if count is not None and len(params) != count:
        raise FamilyError(f"{what} takes {count} parameter(s), got {len(params)}")
    if not params or any(p < 1 for p in params):
        raise FamilyError(f"{what} sizes must be positive integers, got {params}")


def gen_family(spec) -> Graph:
    if isinstance(spec, Graph):
        return spec
    if isinstance(spec, str):
        spec = parse_family(spec)
    k, p = spec.kind, spec.params
    try:
        if k == "complete":
            _positive(p, k, 1)
            return complete_graph(p[0])
        if k in {"multipartite", "bipartite"}:
            _positive(p, k, 2 if k == "bipartite" else None)
            return complete_multipartite(p)
        if k == "windmill":
            _positive(p, k)
            if len(p) < 2:
                raise FamilyError("windmill needs n0 and at least one part")
            return windmill(p[0], p[1:])
        if k == "split":
            _positive(p, k, 2)
            return complete_split(p[0], p[1])
        if k == "threshold":
            return threshold_graph(p)
        if k == "cycle":
            return cycle_graph(p[0])
        if k == "path":
            _positive(p, k, 1)
            return path_graph(p[0])
        if k == "empty":
            _positive(p, k, 1)
            return empty_graph(p[0])
        if k == "star":
            _positive(p, k, 1)
            return join(empty_graph(1), empty_graph(p[0]))
        if k == "cocktail":
            _positive(p, k, 1)
            return cocktail_party(p[0])
        if k == "join":
            return join(gen_family(spec.left), gen_family(spec.right))
        if k == "hseq":
            return h_integral_sequence(spec.left, spec.params)[-1]
    except GraphError as exc:
        raise FamilyError(str(exc)) from exc
    raise FamilyError(f"cannot generate family {k!r}")


# --- closed-form spectra ---------------------------------------------------------


def closed_form_spectrum(spec) -> Spectrum:
    """Exact integer H-spectrum of a family with a known closed form."""
    if isinstance(spec, str):
        spec = parse_family(spec)
    k, p = spec.kind, spec.params
    counts: Counter = Counter()
    if k == "complete":
        _positive(p, k, 1)
        n = p[0]
        counts[n] += comb(n, 2)
    elif k in {"multipartite", "bipartite"}:
        _positive(p, k, 2 if k == "bipartite" else None)
        n, parts = sum(p), list(p)
        kk = len(parts)
        counts[n] += comb(kk, 2)
        for ni in parts:
            counts[n - ni] += (kk - 1) * (ni - 1)
        for ni, nj in combinations(parts, 2):
            counts[n - ni - nj] += ni * nj - ni - nj + 1
    elif k == "windmill":
        _positive(p, k)
        n0, parts = p[0], p[1:]
        if not parts:
            raise FamilyError("windmill needs at least one part")
        n = n0 + sum(parts)
        counts[n] += n0 * (n0 + 1) // 2
        counts[n0] += n0 * (len(parts) - 1)
        for ni in parts:
            counts[n0 + ni] += (2 * n0 + ni) * (ni - 1) // 2
    elif k == "split":
        _positive(p, k, 2)
        s, t = p
        if s == 1:
            # K_t v K_1 is K_{t+1}
            counts[t + 1] += comb(t + 1, 2)
        else:
            counts[s + t] += comb(t + 1, 2)
            counts[t] += (s - 1) * t
    elif k == "threshold":
        return threshold_spectrum_iterative(p)
    else:
        raise FamilyError(f"no closed-form spectrum for {k!r}")
    sp = Spectrum.from_counts(counts, "exact-integer")
    if sp.total == 0:
        raise FamilyError("family has no edges")
    return sp


def n_matrix(parts) -> np.ndarray:
    """Block matrix with (n_i + 1) I on the diagonal blocks and all-ones off them."""
    parts = list(parts)
    n = sum(parts)
    N = np.ones((n, n), dtype=np.int64)
    start = 0
    for ni in parts:
        N[start:start + ni, start:start + ni] = (ni + 1) * np.eye(ni, dtype=np.int64)
        start += ni
    return N


def n_matrix_spectrum(parts) -> Spectrum:
    parts = list(parts)
    if not parts or any(p < 1 for p in parts):
        raise FamilyError("parts must be positive")
    counts: Counter = Counter()
    counts[sum(parts) + 1] += 1
    for ni in parts:
        counts[ni + 1] += ni - 1
    counts[1] += len(parts) - 1
    return Spectrum.from_counts(counts, "exact-integer")


def threshold_spectrum_iterative(bits) -> Spectrum:
    """H-spectrum of a threshold graph, carried along with its Laplacian spectrum.

    An isolated vertex leaves the H-spectrum alone and adds a Laplacian 0.  A
    dominating vertex joining a graph on n-1 vertices maps the H-spectrum to
    {lambda + 1} u {mu_1 + 1, ..., mu_{n-2} + 1} u {n}, and the Laplacian
    spectrum to {mu_1 + 1, ..., mu_{n-2} + 1} u {n, 0}.
    """
    bits = list(bits)
    if not bits or set(bits) - {0, 1}:
        raise FamilyError("threshold code must be a non-empty 0/1 sequence")
    if not any(bits[1:]):
        raise FamilyError("threshold graph has no edges")
    h: Counter = Counter()
    lap = [0]
    for n, b in enumerate(bits[1:], start=2):
        if b == 0:
            lap.append(0)
            continue
        mus = sorted(lap, reverse=True)[:-1]    # drop one zero eigenvalue
        h = Counter({v + 1: k for v, k in h.items()})
        for mu in mus:
            h[mu + 1] += 1
        h[n] += 1
        lap = [mu + 1 for mu in mus] + [n, 0]
    return Spectrum.from_counts(h, "exact-integer")


def threshold_laplacian_spectrum(bits) -> Spectrum:
    bits = list(bits)
    lap = [0]
    for n, b in enumerate(bits[1:], start=2):
        if b == 0:
            lap.append(0)
        else:
            mus = sorted(lap, reverse=True)[:-1]
            lap = [mu + 1 for mu in mus] + [n, 0]
    return Spectrum.from_counts(Counter(lap), "exact-integer")


# --- joins -------------------------------------------------------------------


def join_block_matrix(g1: Graph, g2: Graph) -> np.ndarray:
    """H(G1 v G2) in block form: H(G1)+n2 I, H(G2)+n1 I, and the cross block.

    The cross block, indexed by pairs (u, v) in row-major order, is
    I (x) A(co-G2) + A(co-G1) (x) I + diag(d1(u) + d2(v) + 2).
    """
    if g1.n == 0 or g2.n == 0:
        raise FamilyError("join operands need at least one vertex")
    n1, n2 = g1.n, g2.n
    blocks = []
    if g1.m:
        blocks.append(np.asarray(build_H_direct(g1, canonical_orientation(g1)).matrix) + n2 * np.eye(g1.m, dtype=np.int64))
    if g2.m:
        blocks.append(np.asarray(build_H_direct(g2, canonical_orientation(g2)).matrix) + n1 * np.eye(g2.m, dtype=np.int64))
    a1 = g1.complement().adjacency_matrix()
    a2 = g2.complement().adjacency_matrix()
    x = np.add.outer(np.asarray(g1.degrees), np.asarray(g2.degrees)).ravel() + 2
    cross = np.kron(np.eye(n1, dtype=np.int64), a2) + np.kron(a1, np.eye(n2, dtype=np.int64)) + np.diag(x)
    blocks.append(cross.astype(np.int64))
    size = sum(b.shape[0] for b in blocks)
    out = np.zeros((size, size), dtype=np.int64)
    at = 0
    for b in blocks:
        k = b.shape[0]
        out[at:at + k, at:at + k] = b
        at += k
    return out


def regularity(g: Graph) -> int | None:
    degs = set(g.degrees)
    return degs.pop() if len(degs) == 1 else None


def join_regular_spectrum(g1: Graph, g2: Graph, cluster_tol: float = DEFAULT_CLUSTER_TOL) -> Spectrum:
    """Spectrum of G1 v G2 for regular factors from the factors' H- and adjacency spectra."""
    r1, r2 = regularity(g1), regularity(g2)
    if r1 is None or r2 is None:
        raise FamilyError("join_regular_spectrum needs two regular graphs")
    n1, n2 = g1.n, g2.n
    vals: list[float] = []
    for g, shift in ((g1, n2), (g2, n1)):
        if g.m:
            vals.extend(float(v) + shift for v in eigen_spectrum(build_H_direct(g, canonical_orientation(g)), cluster_tol).expanded())
    mu1 = np.sort(np.linalg.eigvalsh(g1.adjacency_matrix().astype(float)))[::-1][1:]
    mu2 = np.sort(np.linalg.eigvalsh(g2.adjacency_matrix().astype(float)))[::-1][1:]
    vals.append(float(n1 + n2))
    vals.extend(n1 + r2 - mu2)
    vals.extend(n2 + r1 - mu1)
    vals.extend((r1 + r2 - np.add.outer(mu1, mu2)).ravel())
    return _cluster_values(vals, cluster_tol)


def _cluster_values(vals, cluster_tol: float) -> Spectrum:
    w = np.sort(np.asarray(vals, dtype=float))[::-1]
    scale = cluster_tol * max(1.0, float(w[0]))
    groups = [[w[0]]]
    for x in w[1:]:
        if groups[-1][-1] - x <= scale:
            groups[-1].append(x)
        else:
            groups.append([x])
    return Spectrum(tuple(float(np.mean(g)) for g in groups), tuple(len(g) for g in groups),
                    "clustered-float", cluster_tol)


# --- H-integral sequences ------------------------------------------------------


def is_laplacian_integral(g: Graph) -> bool:
    if g.n == 0:
        return True
    ok, _ = h_integral_test(g.laplacian_matrix())
    return ok


def h_integral_sequence(seed, steps) -> list[Graph]:
    """G_0 = seed, G_{i+1} = K_s v (G_i u tK_1); the seed must be H- and Laplacian-integral."""
    g = gen_family(seed)
    if g.m == 0 or not h_integral_test(build_H_direct(g, canonical_orientation(g)))[0]:
        raise FamilyError("seed is not H-integral")
    if not is_laplacian_integral(g):
        raise FamilyError("seed is not Laplacian-integral")
    out = [g]
    for s, t in steps:
        if s < 0 or t < 0:
            raise FamilyError(f"step sizes must be non-negative, got {(s, t)}")
        g = join(complete_graph(s), disjoint_union(g, empty_graph(t))) if s else disjoint_union(g, empty_graph(t))
        out.append(g)
    return out
