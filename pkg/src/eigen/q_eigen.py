"""Q-eigenpairs (equivalently US-eigenpairs) of symmetric complex tensors"""

import logging
from typing import List, Optional, Sequence

import numpy as np

from ..core.exceptions import StructureError
from ..core.models import EigenKind, EigenPair, SolverConfig
from ..tensor.dense import ArrayLike, DenseComplexTensor, as_tensor, contract_modes
from ..tensor.symmetry import is_symmetric
from .base import EigenSolver, Linearization, as_unit_vector

logger = logging.getLogger(__name__)


def _gradient(data: np.ndarray, x: np.ndarray) -> np.ndarray:
    """H(•, x^{d−1})"""
    return contract_modes(data, {k: x for k in range(1, data.ndim)})


def q_defect(data: np.ndarray, lam: float, x: np.ndarray) -> float:
    return float(np.linalg.norm(_gradient(data, x) - lam * np.conj(x)))


def us_defect(data: np.ndarray, lam: float, y: np.ndarray) -> float:
    first = np.linalg.norm(_gradient(np.conj(data), y) - lam * np.conj(y))
    second = np.linalg.norm(_gradient(data, np.conj(y)) - lam * y)
    return float(max(first, second))


def _require_symmetric(H: DenseComplexTensor, tau: Optional[float], op: str) -> None:
    check = is_symmetric(H, tau)
    if not check:
        raise StructureError(f"{op} needs a symmetric tensor ({check.reason} at {check.index})")


def q_eig_residual(H: ArrayLike, lam: float, x, tau: Optional[float] = None) -> float:
    """‖H(•, x^{d−1}) − λx̄‖"""
    H = as_tensor(H)
    _require_symmetric(H, tau, "q_eig_residual")
    return q_defect(H.data, float(lam), as_unit_vector(x, H.dims[0]))


def us_eig_residual(H: ArrayLike, lam: float, x, tau: Optional[float] = None) -> float:
    """max(‖H̄(•, x^{d−1}) − λx̄‖, ‖H(•, x̄^{d−1}) − λx‖)"""
    H = as_tensor(H)
    _require_symmetric(H, tau, "us_eig_residual")
    return us_defect(H.data, float(lam), as_unit_vector(x, H.dims[0]))


class QEigenSolver(EigenSolver):
    """H(•, x^{d−1}) = λx̄ with xᴴx = 1 and λ real; λ = H(x^d)"""

    kind = EigenKind.Q

    def __init__(self):
        super().__init__("Q-eigen solver")

    def validate(self, T: DenseComplexTensor, tau: Optional[float] = None) -> None:
        _require_symmetric(T, tau, "Q-eigenpairs")

    def vector_length(self, data: np.ndarray) -> int:
        return data.shape[0]

    def raw_value(self, data: np.ndarray, x: np.ndarray) -> complex:
        return complex(np.dot(x, _gradient(data, x)))

    def ascent_direction(self, data: np.ndarray, x: np.ndarray) -> np.ndarray:
        # Wirtinger gradient of Re H(x^d) points along conj(H(•, x^{d−1}))
        return np.conj(_gradient(data, x))

    def linearize(self, data: np.ndarray, lam: float, x: np.ndarray) -> Linearization:
        n = x.shape[0]
        d = data.ndim
        if d > 1:
            A = (d - 1) * contract_modes(data, {k: x for k in range(2, d)})
        else:
            A = np.zeros((n, n), dtype=np.complex128)
        res = _gradient(data, x) - lam * np.conj(x)
        return Linearization(res=res, A=A, B=-lam * np.eye(n), c=-np.conj(x))

    def defect(self, data: np.ndarray, lam: float, x: np.ndarray) -> float:
        return q_defect(data, lam, x)

    def admissible(self, data: np.ndarray, lam: float, x: np.ndarray, tol: float) -> bool:
        # (λ, x̄) must solve the US system as well
        return us_defect(data, lam, np.conj(x)) <= tol


def solve_q_eig(H: ArrayLike, cfg: Optional[SolverConfig] = None,
                seeds: Optional[Sequence] = None) -> List[EigenPair]:
    """Q-eigenpairs of a symmetric tensor, λ descending"""
    from .registry import solver_registry

    return solver_registry.solve(EigenKind.Q, H, cfg, seeds)
