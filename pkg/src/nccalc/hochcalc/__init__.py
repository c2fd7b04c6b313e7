"""Hochschild chains and cochains, the calculus operations, the bar model and the verifiers."""
from .bar import BarResolution, bar_contraction_chain, bar_resolution, contraction_via_bar
from .chains import HochschildChains, chains
from .cochains import (Cochain, CochainError, HochschildCochains, as_normalized, as_unnormalized,
                       cochain_from_function, cochains, differential, multiplication_cochain, unit_cochain)
from .operations import (cartan_rhs, connes_B, contraction, cup, gerstenhaber_bracket, insertion_operator,
                         lie_derivative, lie_derivative_chain, on_homology, pre_lie)
from .tensors import NORMALIZED, UNNORMALIZED, VARIANTS, TensorBasis
from .verify import BudgetExceeded, identity_suite, verify_kunneth, verify_morita

__all__ = [
    "BarResolution", "BudgetExceeded", "Cochain", "CochainError", "HochschildChains", "HochschildCochains",
    "NORMALIZED", "TensorBasis", "UNNORMALIZED", "VARIANTS", "as_normalized", "as_unnormalized",
    "bar_contraction_chain", "bar_resolution", "cartan_rhs", "chains", "cochain_from_function", "cochains",
    "connes_B", "contraction", "contraction_via_bar", "cup", "differential", "gerstenhaber_bracket",
    "identity_suite", "insertion_operator", "lie_derivative", "lie_derivative_chain",
    "multiplication_cochain", "on_homology", "pre_lie", "unit_cochain", "verify_kunneth", "verify_morita",
]
