"""Single-vector versus multilinear maxima of structured tensors"""

from .ascent import SlotKind, block_coordinate_ascent, tied_block_ascent
from .checks import (
    check_cps_banach,
    check_css_banach,
    check_symmetric_complex_banach,
    hermitian_banach,
    sandwich_check,
)

__all__ = [
    "SlotKind",
    "block_coordinate_ascent",
    "check_cps_banach",
    "check_css_banach",
    "check_symmetric_complex_banach",
    "hermitian_banach",
    "sandwich_check",
    "tied_block_ascent",
]
