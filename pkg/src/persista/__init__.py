"""Simplicial homology and persistence barcodes over the integers and prime fields."""

__version__ = "0.1.0"

from .algebra import PrimeField, SparseColumn, SparseMatrix, anti_transpose, smith_normal_form
from .core import (
    Cell, Chain, Filtration, GeometricComplex, Simplex, SimplicialComplex,
    filtration_from_complex, simplicial_boundary, validate_complex,
)
from .homology import betti_numbers, integer_homology, relative_betti
from .persistence import (
    Barcode, Interval, barcode_absolute_cohomology, barcode_absolute_homology,
    barcode_relative, four_barcodes, rank_invariant_oracle, reduce, spectrum,
)
