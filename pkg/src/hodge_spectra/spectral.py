"""Spectra of Helmholtzian matrices: floating eigensolve, exact polynomials, nullity, bounds."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from math import prod

import numpy as np

from .exact import (
    bareiss_rank,
    berkowitz,
    charpoly_modular,
    poly_eval,
    poly_from_roots,
    trailing_zeros,
)
from .graph import Graph, components, diameter, is_complete_split, is_connected, triangle_degrees
from .helmholtzian import HelmholtzianMatrix, edge_pair_relations
from .incidence import Orientation, build_B, build_C, canonical_orientation, enumerate_triangles

DEFAULT_CLUSTER_TOL = 1e-8
BERKOWITZ_MAX_M = 80


class SpectrumError(ValueError):
    pass


class IllConditionedProjector(ArithmeticError):
    pass


@dataclass(frozen=True)
class Spectrum:
    """Distinct eigenvalues (strictly decreasing) with multiplicities."""

    values: tuple
    multiplicities: tuple[int, ...]
    kind: str = "clustered-float"
    tolerance: float | None = None

    def __post_init__(self):
        if len(self.values) != len(self.multiplicities):
            raise SpectrumError("values and multiplicities differ in length")
        if any(k < 1 for k in self.multiplicities):
            raise SpectrumError("multiplicities must be positive")
        if any(a <= b for a, b in zip(self.values, self.values[1:])):
            raise SpectrumError("values must be strictly decreasing")

    @classmethod
    def from_counts(cls, counts, kind: str = "exact-integer", tolerance=None) -> "Spectrum":
        """Build from a value -> multiplicity mapping; zero multiplicities are dropped."""
        merged: Counter = Counter()
        for v, k in dict(counts).items():
            if k:
                merged[v] += k
        items = sorted(merged.items(), key=lambda kv: kv[0], reverse=True)
        return cls(tuple(v for v, _ in items), tuple(k for _, k in items), kind, tolerance)

    @property
    def total(self) -> int:
        return sum(self.multiplicities)

    @property
    def distinct(self) -> int:
        return len(self.values)

    def items(self):
        return zip(self.values, self.multiplicities)

    def as_dict(self) -> dict:
        return dict(self.items())

    def multiplicity_of(self, value, atol: float = 0.0) -> int:
        for v, k in self.items():
            if abs(v - value) <= atol:
                return k
        return 0

    def expanded(self) -> list:
        out = []
        for v, k in self.items():
            out.extend([v] * k)
        return out

    def matches(self, other: "Spectrum", atol: float = 1e-8) -> bool:
        """Same multiset: equal multiplicities and values within ``atol``."""
        if self.distinct != other.distinct:
            return False
        return all(
            k1 == k2 and abs(float(v1) - float(v2)) <= atol
            for (v1, k1), (v2, k2) in zip(self.items(), other.items())
        )

    def __str__(self):
        return "{" + ", ".join(f"{v:g}^{k}" if isinstance(v, float) else f"{v}^{k}" for v, k in self.items()) + "}"


@dataclass(frozen=True)
class CharPoly:
    """Exact coefficients of det(lambda I - H), leading 1 first."""

    coeffs: tuple[int, ...]

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, k: int) -> int:
        return self.coeffs[k]

    def __call__(self, x):
        return poly_eval(self.coeffs, x)

    @property
    def nullity(self) -> int:
        return trailing_zeros(self.coeffs)

    def derivative(self, order: int = 1) -> "CharPoly":
        c = list(self.coeffs)
        for _ in range(order):
            d = len(c) - 1
            c = [coef * (d - i) for i, coef in enumerate(c[:-1])] or [0]
        return CharPoly(tuple(c))


def _dense(h) -> np.ndarray:
    return np.asarray(h.matrix if isinstance(h, HelmholtzianMatrix) else h)


def _symmetric_or_raise(a: np.ndarray) -> None:
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise SpectrumError(f"square matrix required, got shape {a.shape}")
    if a.shape[0] == 0:
        raise SpectrumError("empty matrix has no spectrum")
    if not np.array_equal(a, a.T):
        raise SpectrumError("matrix is not symmetric")


def eigendecomposition(h) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues in decreasing order with orthonormal eigenvectors as columns.

    Raises if any eigenpair residual exceeds 1e-9 * ||H||_F.
    """
    a = _dense(h)
    _symmetric_or_raise(a)
    af = a.astype(float)
    w, v = np.linalg.eigh(af)
    w, v = w[::-1], v[:, ::-1]
    resid = np.linalg.norm(af @ v - v * w, axis=0)
    limit = 1e-9 * max(np.linalg.norm(af), 1.0)
    if resid.max(initial=0.0) > limit:
        raise SpectrumError(f"eigenpair residual {resid.max():.3e} exceeds {limit:.3e}")
    return w, v


def cluster_eigenvalues(w, cluster_tol: float = DEFAULT_CLUSTER_TOL) -> list[list[int]]:
    """Greedy grouping of decreasing eigenvalues into index runs.

    Consecutive values closer than ``cluster_tol * max(1, w[0])`` share a run.
    """
    if cluster_tol <= 0:
        raise SpectrumError("cluster_tol must be positive")
    w = np.asarray(w, dtype=float)
    if w.size == 0:
        return []
    scale = cluster_tol * max(1.0, float(w[0]))
    groups = [[0]]
    for i in range(1, w.size):
        if w[i - 1] - w[i] <= scale:
            groups[-1].append(i)
        else:
            groups.append([i])
    return groups


def eigen_spectrum(h, cluster_tol: float = DEFAULT_CLUSTER_TOL) -> Spectrum:
    w, _ = eigendecomposition(h)
    groups = cluster_eigenvalues(w, cluster_tol)
    values = tuple(float(np.mean(w[g])) for g in groups)
    mults = tuple(len(g) for g in groups)
    return Spectrum(values, mults, "clustered-float", cluster_tol)


def charpoly_exact(h, method: str = "auto") -> CharPoly:
    """Exact characteristic polynomial of an integer symmetric matrix.

    ``method`` is ``"berkowitz"`` (division-free over Z), ``"modular"``
    (multi-modular Hessenberg + CRT) or ``"auto"`` (Berkowitz up to m = 80).
    """
    a = _dense(h)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise SpectrumError(f"square matrix required, got shape {a.shape}")
    if method == "auto":
        method = "berkowitz" if a.shape[0] <= BERKOWITZ_MAX_M else "modular"
    if method == "berkowitz":
        return CharPoly(tuple(berkowitz(a)))
    if method == "modular":
        return CharPoly(tuple(charpoly_modular(a)))
    raise ValueError(f"unknown method {method!r}")


def stacked_boundary(g: Graph, o: Orientation | None = None) -> np.ndarray:
    """B^T stacked over C, an (n + t) x m integer matrix."""
    o = o or canonical_orientation(g)
    return np.vstack([build_B(g, o).T, build_C(g, o)])


def nullity_rank(g: Graph, o: Orientation | None = None) -> int:
    """Multiplicity of eigenvalue 0, as m minus the exact rank of [B^T; C]."""
    if g.m == 0:
        raise ValueError("nullity needs at least one edge")
    return g.m - bareiss_rank(stacked_boundary(g, o))


def _triangle_rank_matches(g: Graph) -> bool:
    C = build_C(g, canonical_orientation(g))
    return bareiss_rank(C) == C.shape[0]


def nullity_formula(g: Graph) -> tuple[int, bool]:
    """(m - n - t + w, valid) where valid means the triangle rows of C are independent.

    When triangle boundaries are dependent (K4, octahedron, ...) the closed
    formula undercounts the rank and the value is reported but flagged.
    """
    if g.m == 0:
        raise ValueError("nullity needs at least one edge")
    t = len(enumerate_triangles(g))
    w, _ = components(g)
    return g.m - g.n - t + w, _triangle_rank_matches(g)


def triangles_from_nullity(g: Graph) -> tuple[int, bool]:
    w, _ = components(g)
    return g.m - g.n - nullity_rank(g) + w, _triangle_rank_matches(g)


@dataclass(frozen=True)
class LeastEigenvalueBounds:
    least: float
    bound_i: int
    bound_ii: float | None
    holds_i: bool
    holds_ii: bool
    attains_i: bool
    equality_iff_complete: bool


def induced_p3_pairs(g: Graph, o: Orientation | None = None):
    """Pairs of adjacent edges whose far endpoints are non-adjacent."""
    o = o or canonical_orientation(g)
    return [(e, f) for e, f, _, cotri in edge_pair_relations(g, o) if not cotri]


def least_eigenvalue_bounds(g: Graph, h, tol: float = 1e-9) -> LeastEigenvalueBounds:
    if not is_connected(g):
        raise ValueError("least-eigenvalue bounds need a connected graph")
    if g.m == 0:
        raise ValueError("least-eigenvalue bounds need at least one edge")
    w, _ = eigendecomposition(h)
    least = float(w[-1])
    slack = tol * max(1.0, float(w[0]))
    tdeg = triangle_degrees(g)
    bound_i = min(tdeg) + 2
    pairs = induced_p3_pairs(g, getattr(h, "orientation", None))
    bound_ii = min((tdeg[e] + tdeg[f]) / 2 + 1 for e, f in pairs) if pairs else None
    complete = g.is_complete()
    attains = abs(least - bound_i) <= slack
    return LeastEigenvalueBounds(
        least=least,
        bound_i=bound_i,
        bound_ii=bound_ii,
        holds_i=least <= bound_i + slack,
        holds_ii=bound_ii is None or least <= bound_ii + slack,
        attains_i=attains,
        equality_iff_complete=attains == complete,
    )


def spectral_projectors(h, sp: Spectrum, method: str = "spectral") -> list[np.ndarray]:
    """Orthogonal projectors onto the eigenspaces of ``sp``, via Lagrange polynomials.

    ``method="polynomial"`` multiplies out prod_{j != i} (H - l_j I) / (l_i - l_j)
    as matrices, which loses accuracy quickly once there are more than a
    handful of distinct eigenvalues.  ``method="spectral"`` evaluates the same
    Lagrange polynomials on the computed eigenvalues and maps back through the
    eigenvectors, which is stable for any number of clusters.
    """
    a = _dense(h).astype(float)
    lam = [float(v) for v in sp.values]
    tol = sp.tolerance or DEFAULT_CLUSTER_TOL
    scale = max(1.0, lam[0])
    gaps = [x - y for x, y in zip(lam, lam[1:])]
    if gaps and min(gaps) < 10 * tol * scale:
        raise IllConditionedProjector(f"eigenvalue gap {min(gaps):.3e} below 10 x cluster tolerance")
    m = a.shape[0]
    out = []
    if method == "polynomial":
        eye = np.eye(m)
        for i, li in enumerate(lam):
            P = eye.copy()
            for j, lj in enumerate(lam):
                if j != i:
                    P = P @ (a - lj * eye) / (li - lj)
            out.append(P)
        return out
    if method != "spectral":
        raise ValueError(f"unknown method {method!r}")
    w, v = eigendecomposition(a)
    for i, li in enumerate(lam):
        f = np.array([prod((x - lj) / (li - lj) for j, lj in enumerate(lam) if j != i) for x in w])
        out.append((v * f) @ v.T)
    return out


def projector_residuals(h, sp: Spectrum, projectors) -> dict[str, float]:
    """Max-abs residuals of the projector identities."""
    a = _dense(h).astype(float)
    m = a.shape[0]
    idem = max(float(np.abs(P @ P - P).max()) for P in projectors)
    total = float(np.abs(sum(projectors) - np.eye(m)).max())
    recon = float(np.abs(sum(float(l) * P for l, P in zip(sp.values, projectors)) - a).max())
    trace = max(abs(float(np.trace(P)) - k) for P, k in zip(projectors, sp.multiplicities))
    eig = max(float(np.abs(a @ P - float(l) * P).max()) for l, P in zip(sp.values, projectors))
    return {"idempotent": idem, "partition_of_unity": total, "reconstruction": recon,
            "trace": trace, "eigen": eig}


@dataclass(frozen=True)
class DiameterCheck:
    distinct: int
    diameter: int
    holds: bool
    classification_ok: bool


def distinct_count_and_diameter_check(g: Graph, sp: Spectrum) -> DiameterCheck:
    """Diameter never exceeds the number of distinct eigenvalues; one value means
    complete, two values means a complete split graph."""
    if not is_connected(g):
        raise ValueError("diameter check needs a connected graph")
    s = sp.distinct
    d = diameter(g)
    if s == 1:
        ok = g.is_complete()
    elif s == 2:
        ok = is_complete_split(g)
    else:
        ok = not g.is_complete() and not is_complete_split(g)
    return DiameterCheck(s, d, d <= s, ok)


def minimal_polynomial_degree(h) -> int:
    """Exact rank of the flattened powers I, H, H^2, ... (the Krylov moment matrix).

    For symmetric H this is the number of distinct eigenvalues.  Only the
    upper triangle is used since every power is symmetric.
    """
    a = np.asarray(_dense(h)).astype(object)
    m = a.shape[0]
    iu = np.triu_indices(m)
    rows = []
    power = np.eye(m, dtype=np.int64).astype(object)
    rank = 0
    for _ in range(m + 1):
        rows.append(power[iu])
        r = bareiss_rank(np.array(rows, dtype=object))
        if r == rank:
            break
        rank = r
        power = power.dot(a)
    return rank


def h_integral_test(h, cluster_tol: float = DEFAULT_CLUSTER_TOL) -> tuple[bool, Spectrum | None]:
    """Round the float spectrum to integers and confirm against the exact polynomial."""
    sp = eigen_spectrum(h, cluster_tol)
    rounded: Counter = Counter()
    for v, k in sp.items():
        rounded[int(round(v))] += k
    exact = charpoly_exact(h)
    expansion = poly_from_roots(sorted(rounded.items(), reverse=True))
    if list(exact.coeffs) != expansion:
        return False, None
    return True, Spectrum.from_counts(rounded, "exact-integer")


def roots_bracketed(cp: CharPoly, sp: Spectrum, rel: float = 1e-8) -> list[bool]:
    """For each cluster, does the exact polynomial have a root within rel * lambda_1?

    A cluster of multiplicity k sits on a simple root of the (k-1)-th
    derivative, so that derivative must change sign (or vanish) across the
    interval.  Evaluation is exact over the rationals.
    """
    delta = Fraction(rel) * max(1, Fraction(float(sp.values[0])))
    out = []
    for v, k in sp.items():
        d = cp.derivative(k - 1)
        c = Fraction(float(v))
        lo, hi = d(c - delta), d(c + delta)
        out.append(lo == 0 or hi == 0 or (lo < 0) != (hi < 0))
    return out


def null_vectors(h, sp: Spectrum | None = None) -> np.ndarray:
    """Orthonormal basis (columns) of the numerically-zero eigenspace."""
    w, v = eigendecomposition(h)
    sp = sp or eigen_spectrum(h)
    scale = (sp.tolerance or DEFAULT_CLUSTER_TOL) * max(1.0, float(w[0]))
    return v[:, np.abs(w) <= max(scale, 1e-9)]
