"""Exponential splitting for three-generator cyclic Lie algebras."""

from cyclic_split.algebra import (
    ZERO_BRACKET,
    AlgebraSpec,
    Axis,
    CoefficientVector,
    adjoint_rotate,
    commutator_coefficient,
    jacobi_residual_symbolic,
)
from cyclic_split.factor import (
    VARIANTS,
    ExpFactor,
    FactorSequence,
    VariantId,
    all_variants,
    evaluate,
    residual,
    split_three,
    split_two,
)
from cyclic_split.representations import (
    Representation,
    rescale_basis,
    so3_generators,
    spin_generators,
    validate_cyclic,
)

__version__ = "0.1.0"

__all__ = [
    "ZERO_BRACKET",
    "AlgebraSpec",
    "Axis",
    "CoefficientVector",
    "ExpFactor",
    "FactorSequence",
    "Representation",
    "VARIANTS",
    "VariantId",
    "adjoint_rotate",
    "all_variants",
    "commutator_coefficient",
    "evaluate",
    "jacobi_residual_symbolic",
    "rescale_basis",
    "residual",
    "so3_generators",
    "spin_generators",
    "split_three",
    "split_two",
    "validate_cyclic",
]
