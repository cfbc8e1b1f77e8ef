"""Exact integer linear algebra: Smith normal form, homology, mapping tori."""

from .cells import CellComplex, circle, interval, product, sphere
from .chains import (
    AbelianGroup,
    ChainComplex,
    ChainMap,
    HomologyBasis,
    HomologySummary,
    check_chain_map,
    homology,
    induced_map,
    mapping_cone,
    mapping_torus_complex,
    mapping_torus_homology,
    wang_betti,
)
from .matrix import IntegerMatrix, block_diagonal
from .modular import cohomology_mod_n
from .smith import (
    Lattice,
    SmithDecomposition,
    invariant_factors,
    kernel_basis,
    smith_normal_form,
)

__all__ = [
    "AbelianGroup",
    "CellComplex",
    "ChainComplex",
    "ChainMap",
    "HomologyBasis",
    "HomologySummary",
    "IntegerMatrix",
    "Lattice",
    "SmithDecomposition",
    "block_diagonal",
    "check_chain_map",
    "circle",
    "cohomology_mod_n",
    "homology",
    "induced_map",
    "interval",
    "invariant_factors",
    "kernel_basis",
    "mapping_cone",
    "mapping_torus_complex",
    "mapping_torus_homology",
    "product",
    "smith_normal_form",
    "sphere",
    "wang_betti",
]
