"""Exact E1/E2 pages of the cohomology spectral sequences of the cosimplicial
models for long knots, string links, homotopy string links and braids."""

__version__ = "0.1.0"

from .connest import convergence_verdict, cube_cartesian, layer_connectivity, vanishing_region
from .exactla import GF, QQ, Field, SparseMatrix, kernel_basis, kernel_dim, rank
from .models import (
    ModelOperators,
    ModelSpec,
    codegeneracy_pullback,
    coface_pullback,
    grid_index,
    normalized_basis,
)
from .oscore import (
    Graph,
    OSAlgebra,
    build_graph,
    chromatic_poly,
    enumerate_nbc,
    hilbert_series,
    straighten,
)
from .simplexcalc import OrderMap, check_identities, cj_map, cjshriek_map
from .specseq import d1_matrix, e1_dims, e2_page, e2_row
