"""Dense complex tensor substrate: storage, contractions and symmetrization"""

from .dense import (
    DenseComplexTensor,
    as_tensor,
    multilinear_eval,
    outer_product,
    partial_eval,
    symmetrize,
    tensor_norm,
)

__all__ = [
    "DenseComplexTensor",
    "as_tensor",
    "multilinear_eval",
    "outer_product",
    "partial_eval",
    "symmetrize",
    "tensor_norm",
]
