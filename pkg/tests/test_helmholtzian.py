import numpy as np
import pytest

from hodge_spectra import (
    Graph,
    build_H_direct,
    build_H_factored,
    build_H_split,
    build_signed_loop_graph,
    canonical_orientation,
    quadratic_form,
)
from hodge_spectra.families import complete_graph, join, empty_graph
from hodge_spectra.helmholtzian import QuadraticFormMismatch, HelmholtzianMatrix, curl_energy_bounds
from hodge_spectra.incidence import Orientation

P3 = Graph(3, ((0, 1), (1, 2)))
P3_O = Orientation(((0, 1), (1, 2)))


def test_small_matrices():
    k3 = complete_graph(3)
    for build in (build_H_direct, build_H_factored, build_H_split):
        assert np.array_equal(build(k3, canonical_orientation(k3)).matrix, 3 * np.eye(3))
        assert build(P3, P3_O).matrix.tolist() == [[2, -1], [-1, 2]]
    with pytest.raises(ValueError):
        build_H_direct(Graph(3, ()), Orientation(()))


def test_star_factored_equals_direct():
    star = join(empty_graph(1), empty_graph(3))
    o = canonical_orientation(star)
    h = build_H_direct(star, o).matrix
    assert np.array_equal(h, build_H_factored(star, o).matrix)
    # every pair shares the tail 0
    assert np.array_equal(h, np.eye(3, dtype=int) + np.ones((3, 3), dtype=int))


def test_signed_loop_graph_examples(worked_example):
    g, o = worked_example
    lam = build_signed_loop_graph(g, o)
    assert lam.loops == (2, 2, 2, 2, 2, 2, 3, 3, 3)
    assert lam.negative == {(0, 1), (0, 2)}
    assert len(lam.positive) == 15
    assert lam.sign(1, 0) == -1 and lam.sign(7, 0) == 0
    k3 = build_signed_loop_graph(complete_graph(3), canonical_orientation(complete_graph(3)))
    assert k3.loops == (3, 3, 3) and not k3.positive and not k3.negative
    p3 = build_signed_loop_graph(P3, P3_O)
    assert p3.loops == (2, 2) and p3.negative == {(0, 1)} and not p3.positive


def test_quadratic_form_examples():
    k4 = complete_graph(4)
    h = build_H_direct(k4, canonical_orientation(k4))
    assert quadratic_form(h, np.zeros(6)) == 0
    assert quadratic_form(h, np.eye(6)[2]) == 4
    x = np.random.default_rng(1).choice([-1.0, 1.0], size=6)
    assert quadratic_form(h, x) == pytest.approx(4 * 6)
    with pytest.raises(ValueError):
        quadratic_form(h, np.zeros(5))


def test_quadratic_form_detects_mismatch():
    h = build_H_direct(P3, P3_O)
    bad = HelmholtzianMatrix(h.matrix + np.eye(2, dtype=int), "tampered", P3, P3_O)
    with pytest.raises(QuadraticFormMismatch):
        quadratic_form(bad, np.ones(2))


def test_three_builds_agree_and_psd(corpus):
    for g in corpus:
        o = canonical_orientation(g)
        hd = build_H_direct(g, o).matrix
        assert np.array_equal(hd, build_H_factored(g, o).matrix)
        assert np.array_equal(hd, build_H_split(g, o).matrix)
        assert np.array_equal(hd, build_signed_loop_graph(g, o).adjacency())
        off = hd - np.diag(np.diag(hd))
        assert set(np.unique(off)) <= {-1, 0, 1}
        w = np.linalg.eigvalsh(hd.astype(float))
        assert w[0] >= -1e-8 * max(1.0, w[-1])


def test_triangle_free_spectrum_is_laplacian(corpus):
    for g in corpus:
        o = canonical_orientation(g)
        if curl_energy_bounds(g, o, np.ones(g.m))[0] is not None:
            continue
        w = np.linalg.eigvalsh(build_H_direct(g, o).matrix.astype(float))
        lap = np.linalg.eigvalsh(g.laplacian_matrix().astype(float))
        assert np.allclose(np.sort(w[w > 1e-8]), np.sort(lap[lap > 1e-8]))
