"""Helmholtzian (graph Hodge 1-Laplacian) matrices, exact characteristic
polynomials, spectra and combinatorial coefficient formulas."""

from .coefficients import (
    ClosedFormCoefficients,
    OracleBudgetExceeded,
    all_coeffs_oracle,
    coeff_ck_oracle,
    coeffs_closed_form,
    loop_shift_check,
)
from .families import (
    FamilyError,
    FamilySpec,
    closed_form_spectrum,
    gen_family,
    h_integral_sequence,
    join,
    join_block_matrix,
    join_regular_spectrum,
    n_matrix_spectrum,
    parse_family,
    threshold_spectrum_iterative,
)
from .graph import (
    Graph,
    GraphError,
    components,
    diameter,
    edge_neighborhood_size,
    enumerate_triangles,
    triangle_degree_edge,
    triangle_degree_vertex,
)
from .helmholtzian import (
    HelmholtzianMatrix,
    SignedLoopGraph,
    build_H_direct,
    build_H_factored,
    build_H_split,
    build_signed_loop_graph,
    quadratic_form,
)
from .incidence import Orientation, build_B, build_C, canonical_orientation, random_orientation
from .ingest import InputError, emit_edgelist, parse_edgelist, parse_graph6
from .spectral import (
    CharPoly,
    Spectrum,
    charpoly_exact,
    distinct_count_and_diameter_check,
    eigen_spectrum,
    h_integral_test,
    least_eigenvalue_bounds,
    nullity_formula,
    nullity_rank,
    spectral_projectors,
    triangles_from_nullity,
)

__version__ = "0.1.0"
