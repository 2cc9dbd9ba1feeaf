"""G-eigenpairs of conjugate super-symmetric tensors"""

import logging
from typing import List, Optional, Sequence

import numpy as np

from ..core.exceptions import StructureError
from ..core.models import EigenKind, EigenPair, SolverConfig
from ..tensor.dense import ArrayLike, DenseComplexTensor, as_tensor, contract_modes
from ..tensor.symmetry import is_css
from .base import EigenSolver, Linearization, as_unit_vector

logger = logging.getLogger(__name__)


def stacked(x: np.ndarray) -> np.ndarray:
    """(x̄; x)"""
    return np.concatenate([np.conj(x), x])


def _gradient(data: np.ndarray, z: np.ndarray) -> np.ndarray:
    """G(•, z^{d−1})"""
    return contract_modes(data, {k: z for k in range(1, data.ndim)})


def g_defect(data: np.ndarray, lam: float, x: np.ndarray) -> float:
    target = np.concatenate([x, np.conj(x)])
    return float(np.linalg.norm(_gradient(data, stacked(x)) - lam * target))


def g_eig_residual(G: ArrayLike, lam: float, x, tau: Optional[float] = None) -> float:
    """‖G(•, (x̄;x)^{d−1}) − λ(x; x̄)‖"""
    G = as_tensor(G)
    check = is_css(G, tau)
    if not check:
        raise StructureError(f"g_eig_residual needs a conjugate super-symmetric tensor ({check.reason})")
    return g_defect(G.data, float(lam), as_unit_vector(x, G.dims[0] // 2))


class GEigenSolver(EigenSolver):
    """G((•;•), (x̄;x)^{d−1}) = λ(x; x̄) with xᴴx = 1; λ = G((x̄;x)^d)/2"""

    kind = EigenKind.G

    def __init__(self):
        super().__init__("G-eigen solver")

    def validate(self, T: DenseComplexTensor, tau: Optional[float] = None) -> None:
        check = is_css(T, tau)
        if not check:
            raise StructureError(
                f"G-eigenpairs need a conjugate super-symmetric tensor ({check.reason} at {check.index})"
            )

    def vector_length(self, data: np.ndarray) -> int:
        return data.shape[0] // 2

    def raw_value(self, data: np.ndarray, x: np.ndarray) -> complex:
        z = stacked(x)
        return complex(np.dot(z, _gradient(data, z))) / 2

    def ascent_direction(self, data: np.ndarray, x: np.ndarray) -> np.ndarray:
        # the back half of the gradient is the conjugate of the front half
        return _gradient(data, stacked(x))[: x.shape[0]]

    def linearize(self, data: np.ndarray, lam: float, x: np.ndarray) -> Linearization:
        n = x.shape[0]
        d = data.ndim
        z = stacked(x)
        res = _gradient(data, z)[:n] - lam * x
        if d > 1:
            M = (d - 1) * contract_modes(data, {k: z for k in range(2, d)})
            A, B = M[:n, n:], M[:n, :n]
        else:
            A = B = np.zeros((n, n), dtype=np.complex128)
        return Linearization(res=res, A=A - lam * np.eye(n), B=B, c=-x)

    def defect(self, data: np.ndarray, lam: float, x: np.ndarray) -> float:
        return g_defect(data, lam, x)


def solve_g_eig(G: ArrayLike, cfg: Optional[SolverConfig] = None,
                seeds: Optional[Sequence] = None) -> List[EigenPair]:
    """G-eigenpairs of a CSS tensor, λ descending"""
    from .registry import solver_registry

    return solver_registry.solve(EigenKind.G, G, cfg, seeds)
