"""Embedding of conjugate partial-symmetric tensors into conjugate super-symmetric ones"""

import logging
from typing import Optional

import numpy as np

from ..core.exceptions import StructureError
from ..tensor.dense import ArrayLike, DenseComplexTensor, as_tensor
from ..tensor.indexing import full_group, orbit_average
from ..tensor.symmetry import is_cps

logger = logging.getLogger(__name__)


def embed_cps_to_css(F: ArrayLike, tau: Optional[float] = None) -> DenseComplexTensor:
    """G over dimension 2n with G((x̄;x),…,(x̄;x)) = F(x̄,…,x̄, x,…,x).

    F is placed on the block whose front modes index x̄ and back modes index x,
    then averaged over all index permutations, which spreads every entry as
    F_{i}/C(2d,d) over the permutations of (i_1..i_d, i_{d+1}+n..i_{2d}+n).
    """
    F = as_tensor(F)
    check = is_cps(F, tau)
    if not check:
        raise StructureError(f"embed_cps_to_css needs a conjugate partial-symmetric tensor ({check.reason} at {check.index})")
    n, order = F.dims[0], F.order
    d = order // 2
    block = np.zeros((2 * n,) * order, dtype=np.complex128)
    block[(slice(0, n),) * d + (slice(n, 2 * n),) * d] = F.data
    return DenseComplexTensor(orbit_average(block, full_group(order)))
