import numpy as np
import pytest

from hodge_spectra import (
    Graph,
    Spectrum,
    build_H_direct,
    canonical_orientation,
    charpoly_exact,
    distinct_count_and_diameter_check,
    eigen_spectrum,
    gen_family,
    h_integral_test,
    least_eigenvalue_bounds,
    nullity_formula,
    nullity_rank,
    spectral_projectors,
    triangles_from_nullity,
)
from hodge_spectra.families import complete_graph, cycle_graph, path_graph, threshold_graph
from hodge_spectra.spectral import (
    IllConditionedProjector,
    SpectrumError,
    minimal_polynomial_degree,
    projector_residuals,
    roots_bracketed,
)

WORKED_CHARPOLY = (1, -21, 178, -802, 2105, -3293, 2996, -1452, 288, 0)


def H(g):
    return build_H_direct(g, canonical_orientation(g))


def test_spectrum_validation():
    with pytest.raises(SpectrumError):
        Spectrum((1.0, 2.0), (1, 1))
    with pytest.raises(SpectrumError):
        Spectrum((2.0,), (0,))
    sp = Spectrum.from_counts({2: 1, 5: 3, 1: 0})
    assert sp.values == (5, 2) and sp.total == 4 and str(sp) == "{5^3, 2^1}"


def test_eigen_spectrum_examples(worked_example):
    assert eigen_spectrum(H(complete_graph(4))).matches(Spectrum((4,), (6,)))
    assert eigen_spectrum(H(path_graph(3))).matches(Spectrum((3, 1), (1, 1)))
    g, o = worked_example
    sp = eigen_spectrum(build_H_direct(g, o))
    assert sp.total == 9 and sp.multiplicity_of(0.0, 1e-8) == 1
    assert all(abs(np.polyval([float(c) for c in WORKED_CHARPOLY], v)) < 1e-6 for v in sp.values)


def test_eigen_spectrum_rejects_bad_input():
    with pytest.raises(SpectrumError):
        eigen_spectrum(np.array([[1, 2], [0, 1]]))
    with pytest.raises(SpectrumError):
        eigen_spectrum(np.zeros((0, 0)))


def test_charpoly_examples(worked_example):
    assert charpoly_exact(H(complete_graph(3))).coeffs == (1, -9, 27, -27)
    assert charpoly_exact(H(path_graph(3))).coeffs == (1, -4, 3)
    g, o = worked_example
    cp = charpoly_exact(build_H_direct(g, o))
    assert cp.coeffs == WORKED_CHARPOLY
    for x in (-3, 0, 2, 7):
        det = round(np.linalg.det(x * np.eye(9) - build_H_direct(g, o).matrix))
        assert cp(x) == det
    assert charpoly_exact(build_H_direct(g, o), method="modular") == cp


def test_nullity_examples(worked_example):
    tree = Graph(6, ((0, 1), (1, 2), (1, 3), (3, 4), (3, 5)))
    assert nullity_rank(tree) == 0 and nullity_formula(tree) == (0, True)
    assert triangles_from_nullity(tree) == (0, True)
    assert nullity_rank(cycle_graph(4)) == 1 and nullity_formula(cycle_graph(4)) == (1, True)
    k4 = complete_graph(4)
    assert nullity_rank(k4) == 0
    assert nullity_formula(k4) == (-1, False)
    assert triangles_from_nullity(k4) == (3, False)
    g, o = worked_example
    assert nullity_rank(g, o) == 1 and nullity_formula(g) == (1, True)
    assert triangles_from_nullity(g) == (1, True)
    octa = gen_family("multipartite:2,2,2")
    assert nullity_formula(octa) == (-1, False) and nullity_rank(octa) == 0


def test_least_eigenvalue_examples():
    b = least_eigenvalue_bounds(complete_graph(5), H(complete_graph(5)))
    assert b.bound_i == 5 and b.bound_ii is None and b.attains_i and b.equality_iff_complete
    b = least_eigenvalue_bounds(path_graph(3), H(path_graph(3)))
    assert (b.bound_i, b.bound_ii) == (2, 1.0) and b.least == pytest.approx(1.0)
    b = least_eigenvalue_bounds(cycle_graph(4), H(cycle_graph(4)))
    assert (b.bound_i, b.bound_ii) == (2, 1.0) and b.least == pytest.approx(0.0, abs=1e-12)
    with pytest.raises(ValueError):
        g = Graph(4, ((0, 1), (2, 3)))
        least_eigenvalue_bounds(g, H(g))


def test_projector_examples():
    k3 = H(complete_graph(3))
    (P,) = spectral_projectors(k3, eigen_spectrum(k3))
    assert np.allclose(P, np.eye(3))
    p3 = H(path_graph(3))
    P1, P2 = spectral_projectors(p3, eigen_spectrum(p3))
    assert np.allclose(P1, [[0.5, -0.5], [-0.5, 0.5]]) and np.allclose(P2, [[0.5, 0.5], [0.5, 0.5]])
    split = H(gen_family("split:3,2"))
    sp = eigen_spectrum(split)
    Ps = spectral_projectors(split, sp)
    assert [round(np.trace(P)) for P in Ps] == [3, 4]
    for method in ("spectral", "polynomial"):
        res = projector_residuals(split, sp, spectral_projectors(split, sp, method=method))
        assert max(res.values()) < 1e-9


def test_projector_rejects_close_clusters():
    h = np.diag([1.0, 1.0 + 1e-9, 3.0])
    sp = Spectrum((3.0, 1.0 + 1e-9, 1.0), (1, 1, 1), tolerance=1e-8)
    with pytest.raises(IllConditionedProjector):
        spectral_projectors(h, sp)


def test_diameter_check_examples():
    c = distinct_count_and_diameter_check(complete_graph(6), eigen_spectrum(H(complete_graph(6))))
    assert (c.distinct, c.diameter, c.holds) == (1, 1, True)
    split = gen_family("split:4,2")
    c = distinct_count_and_diameter_check(split, eigen_spectrum(H(split)))
    assert (c.distinct, c.diameter, c.holds, c.classification_ok) == (2, 2, True, True)
    c = distinct_count_and_diameter_check(path_graph(4), eigen_spectrum(H(path_graph(4))))
    assert c.diameter == 3 and c.holds


def test_h_integral_examples(worked_example):
    g, o = worked_example
    assert h_integral_test(build_H_direct(g, o)) == (False, None)
    ok, sp = h_integral_test(H(threshold_graph((0, 0, 1, 1, 0, 1))))
    assert ok and sp.as_dict() == {6: 1, 5: 5, 3: 3, 1: 1}
    ok, sp = h_integral_test(H(gen_family("bipartite:2,3")))
    assert ok and sp.as_dict() == {5: 1, 3: 1, 2: 2, 0: 2}


def test_spectral_invariants_on_corpus(corpus):
    for g in corpus[::3]:
        h = H(g)
        sp = eigen_spectrum(h)
        cp = charpoly_exact(h)
        assert int(np.trace(h.matrix)) == -cp[1]
        assert all(roots_bracketed(cp, sp))
        if g.m <= 25:
            assert minimal_polynomial_degree(h) == sp.distinct
