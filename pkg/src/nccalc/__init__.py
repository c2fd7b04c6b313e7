"""Exact Hochschild calculus for finite-dimensional algebras and a combinatorial model of the KS operad."""
from .algebra import FiniteAlgebra, from_structure_constants, matrix_algebra, preset, tensor
from .exactfield import GF, QQ, field_from_tag

__version__ = "0.1.0"

__all__ = ["FiniteAlgebra", "GF", "QQ", "field_from_tag", "from_structure_constants", "matrix_algebra",
           "preset", "tensor", "__version__"]
