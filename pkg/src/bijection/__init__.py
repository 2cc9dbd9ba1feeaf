"""Form/tensor bijections, Hermitian flattening and CPS decompositions"""

from .decomposition import cps_decompose, flatten_square, is_flattening_psd, sos_split
from .embedding import embed_cps_to_css
from .jacobi import hermitian_eigh, is_hermitian
from .maps import (
    complex_form_of,
    css_project,
    g_forward,
    g_inverse,
    s_forward,
    s_inverse,
    symmetric_tensor_of,
)

__all__ = [
    "complex_form_of",
    "cps_decompose",
    "css_project",
    "embed_cps_to_css",
    "flatten_square",
    "g_forward",
    "g_inverse",
    "hermitian_eigh",
    "is_flattening_psd",
    "is_hermitian",
    "s_forward",
    "s_inverse",
    "sos_split",
    "symmetric_tensor_of",
]
