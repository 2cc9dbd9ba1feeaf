"""C-eigenpairs of conjugate partial-symmetric tensors"""

import logging
from typing import Dict, List, Optional, Sequence

import numpy as np

from ..bijection.decomposition import flatten_square
from ..core.exceptions import StructureError
from ..core.models import EigenKind, EigenPair, SolverConfig
from ..tensor.dense import ArrayLike, DenseComplexTensor, as_tensor, contract_modes
from ..tensor.symmetry import is_cps
from .base import EigenSolver, Linearization, as_unit_vector

logger = logging.getLogger(__name__)

# Flattening eigenvectors tried as Newton seeds, largest |eigenvalue| first
MAX_SPECTRAL_SEEDS = 16


def _bind(modes: Sequence[int], x: np.ndarray) -> Dict[int, np.ndarray]:
    return {k: x for k in modes}


def _gradient(data: np.ndarray, x: np.ndarray) -> np.ndarray:
    """F(•, x̄^{d−1}, x^d)"""
    d = data.ndim // 2
    return contract_modes(data, {**_bind(range(1, d), np.conj(x)), **_bind(range(d, 2 * d), x)})


def _tail_gradient(data: np.ndarray, x: np.ndarray) -> np.ndarray:
    """F(x̄^d, x^{d−1}, •)"""
    d = data.ndim // 2
    return contract_modes(data, {**_bind(range(d), np.conj(x)), **_bind(range(d, 2 * d - 1), x)})


def c_defect(data: np.ndarray, lam: float, x: np.ndarray) -> float:
    first = np.linalg.norm(_gradient(data, x) - lam * x)
    second = np.linalg.norm(_tail_gradient(data, x) - lam * np.conj(x))
    return float(max(first, second))


def c_eig_residual(F: ArrayLike, lam: float, x, tau: Optional[float] = None) -> float:
    """max(‖F(•, x̄^{d−1}, x^d) − λx‖, ‖F(x̄^d, x^{d−1}, •) − λx̄‖)"""
    F = as_tensor(F)
    check = is_cps(F, tau)
    if not check:
        raise StructureError(f"c_eig_residual needs a conjugate partial-symmetric tensor ({check.reason})")
    return c_defect(F.data, float(lam), as_unit_vector(x, F.dims[0]))


class CEigenSolver(EigenSolver):
    """F(•, x̄^{d−1}, x^d) = λx with xᴴx = 1; λ = F(x̄^d, x^d) is the Rayleigh value"""

    kind = EigenKind.C
    canonicalize_phase = True

    def __init__(self):
        super().__init__("C-eigen solver")

    def validate(self, T: DenseComplexTensor, tau: Optional[float] = None) -> None:
        check = is_cps(T, tau)
        if not check:
            raise StructureError(
                f"C-eigenpairs need a conjugate partial-symmetric tensor ({check.reason} at {check.index})"
            )

    def vector_length(self, data: np.ndarray) -> int:
        return data.shape[0]

    def raw_value(self, data: np.ndarray, x: np.ndarray) -> complex:
        return complex(np.vdot(x, _gradient(data, x)))

    def ascent_direction(self, data: np.ndarray, x: np.ndarray) -> np.ndarray:
        return _gradient(data, x)

    def linearize(self, data: np.ndarray, lam: float, x: np.ndarray) -> Linearization:
        n = x.shape[0]
        d = data.ndim // 2
        xb = np.conj(x)
        # ∂/∂x: the free plain slot is mode d
        A = d * contract_modes(data, {**_bind(range(1, d), xb), **_bind(range(d + 1, 2 * d), x)})
        if d > 1:
            B = (d - 1) * contract_modes(data, {**_bind(range(2, d), xb), **_bind(range(d, 2 * d), x)})
        else:
            B = np.zeros((n, n), dtype=np.complex128)
        res = _gradient(data, x) - lam * x
        return Linearization(res=res, A=A - lam * np.eye(n), B=B, c=-x)

    def defect(self, data: np.ndarray, lam: float, x: np.ndarray) -> float:
        return c_defect(data, lam, x)

    def spectral_seeds(self, data: np.ndarray) -> List[np.ndarray]:
        """Leading left singular vector of the reshaped eigenvectors with the largest |eigenvalue| of the flattening"""
        n = data.shape[0]
        M = flatten_square(DenseComplexTensor(data))
        try:
            w, V = np.linalg.eigh((M + M.conj().T) / 2)
        except np.linalg.LinAlgError as e:
            logger.warning(f"Spectral seeding skipped: {e}")
            return []
        seeds = []
        for k in np.argsort(-np.abs(w), kind="stable")[:MAX_SPECTRAL_SEEDS]:
            U, _, _ = np.linalg.svd(V[:, k].reshape(n, -1))
            seeds.append(U[:, 0])
        return seeds


def solve_c_eig(F: ArrayLike, cfg: Optional[SolverConfig] = None,
                seeds: Optional[Sequence] = None) -> List[EigenPair]:
    """C-eigenpairs of a CPS tensor, λ descending"""
    from .registry import solver_registry

    return solver_registry.solve(EigenKind.C, F, cfg, seeds)
