"""Symmetry predicates for dense complex tensors"""

import logging
from typing import List, Optional

import numpy as np

from ..core.config import settings
from ..core.models import SymmetryCheck, SymmetryClass
from .dense import ArrayLike, as_tensor
from .indexing import Groups, canonical_index_map, full_group, split_groups

logger = logging.getLogger(__name__)


def _fail(symmetry: SymmetryClass, reason: str, defect: Optional[np.ndarray] = None) -> SymmetryCheck:
    if defect is None:
        return SymmetryCheck(symmetry=symmetry, passed=False, reason=reason)
    worst = np.unravel_index(int(np.argmax(defect)), defect.shape)
    return SymmetryCheck(
        symmetry=symmetry,
        passed=False,
        reason=reason,
        index=tuple(int(i) + 1 for i in worst),
        violation=float(defect[worst]),
    )


def _orbit_defect(data: np.ndarray, groups: Groups) -> np.ndarray:
    """|F_i − F_{sorted(i)}| for every position"""
    canon = canonical_index_map(data.shape, groups)
    flat = data.ravel()
    return np.abs(flat - flat[canon]).reshape(data.shape)


def _ok(symmetry: SymmetryClass, violation: float) -> SymmetryCheck:
    return SymmetryCheck(symmetry=symmetry, passed=True, violation=violation)


def is_symmetric(F: ArrayLike, tau: Optional[float] = None) -> SymmetryCheck:
    """Invariance under every permutation of the indices"""
    tau = settings.tau_sym if tau is None else tau
    F = as_tensor(F)
    tag = SymmetryClass.SYMMETRIC
    if len(set(F.dims)) != 1:
        return _fail(tag, "unequal_dims")
    defect = _orbit_defect(F.data, full_group(F.order))
    worst = float(defect.max())
    if worst > tau:
        return _fail(tag, "not_symmetric", defect)
    return _ok(tag, worst)


def is_partial_symmetric(F: ArrayLike, tau: Optional[float] = None) -> SymmetryCheck:
    """Invariance under permutations within the first d modes and within the last d modes"""
    tau = settings.tau_sym if tau is None else tau
    F = as_tensor(F)
    tag = SymmetryClass.PARTIAL_SYMMETRIC
    if F.order % 2:
        return _fail(tag, "odd_order")
    if len(set(F.dims)) != 1:
        return _fail(tag, "unequal_dims")
    defect = _orbit_defect(F.data, split_groups(F.order))
    worst = float(defect.max())
    if worst > tau:
        return _fail(tag, "not_partial_symmetric", defect)
    return _ok(tag, worst)


def swap_halves(data: np.ndarray) -> np.ndarray:
    """F_{i_{d+1}…i_{2d} i_1…i_d} as an array indexed by i"""
    d = data.ndim // 2
    return np.transpose(data, tuple(range(d, 2 * d)) + tuple(range(d)))


def is_cps(F: ArrayLike, tau: Optional[float] = None) -> SymmetryCheck:
    """Partial symmetry plus F_{I,J} = conj(F_{J,I})"""
    tau = settings.tau_sym if tau is None else tau
    F = as_tensor(F)
    tag = SymmetryClass.CONJUGATE_PARTIAL_SYMMETRIC
    partial = is_partial_symmetric(F, tau)
    if not partial:
        return partial.model_copy(update={"symmetry": tag})
    defect = np.abs(F.data - np.conj(swap_halves(F.data)))
    worst = float(defect.max())
    if worst > tau:
        return _fail(tag, "not_conjugate_pair", defect)
    return _ok(tag, max(worst, partial.violation))


def shift_conjugate(data: np.ndarray) -> np.ndarray:
    """conj(F_j) with every index of j shifted by n (mod 2n)"""
    n = data.shape[0] // 2
    return np.conj(np.roll(data, n, axis=tuple(range(data.ndim))))


def is_css(F: ArrayLike, tau: Optional[float] = None) -> SymmetryCheck:
    """Symmetry over dimension 2n plus F_i = conj(F_j) whenever every |i_k − j_k| = n"""
    tau = settings.tau_sym if tau is None else tau
    F = as_tensor(F)
    tag = SymmetryClass.CONJUGATE_SUPER_SYMMETRIC
    if any(n % 2 for n in F.dims):
        return _fail(tag, "odd_dimension")
    symmetric = is_symmetric(F, tau)
    if not symmetric:
        return symmetric.model_copy(update={"symmetry": tag})
    defect = np.abs(F.data - shift_conjugate(F.data))
    worst = float(defect.max())
    if worst > tau:
        return _fail(tag, "not_conjugate_shift", defect)
    return _ok(tag, max(worst, symmetric.violation))


def classify_tensor(F: ArrayLike, tau: Optional[float] = None) -> List[SymmetryClass]:
    """Every structure tag whose predicate passes; [NONE] when none does"""
    checks = [is_symmetric, is_partial_symmetric, is_cps, is_css]
    tags = [check.symmetry for check in (c(F, tau) for c in checks) if check.passed]
    return tags or [SymmetryClass.NONE]
