"""Verification of the relations between Q-, C- and G-eigenvalues"""

import logging
from typing import List, Optional

import numpy as np

from ..bijection.embedding import embed_cps_to_css
from ..core.exceptions import InternalError, RelationError
from ..core.models import RelationEntry, RelationReport, SolverConfig
from ..tensor.dense import ArrayLike, as_tensor, contract_modes, outer_product
from ..tensor.symmetry import is_cps
from .c_eigen import CEigenSolver, c_defect, solve_c_eig
from .g_eigen import GEigenSolver, g_defect, solve_g_eig
from .q_eigen import QEigenSolver, q_defect, solve_q_eig

logger = logging.getLogger(__name__)

# C→Q residuals grow like 1/√μ; this bounds the amplification for small C-eigenvalues μ
C_TO_Q_AMPLIFICATION_CAP = 100.0


def c_to_q_tolerance(tau: float, lam: float) -> float:
    """τ·max(1, λ, min(1/λ, cap)) for the Q-residual of λ = √μ"""
    return tau * max(1.0, lam, min(1.0 / lam, C_TO_Q_AMPLIFICATION_CAP))


def _verify(entries: List[RelationEntry], entry: RelationEntry, tolerance: float, relation: str) -> None:
    entries.append(entry)
    if entry.residual > tolerance:
        logger.error(
            f"{relation} failed ({entry.direction}): λ={entry.source_lam:.6g} ↦ {entry.target_lam:.6g}, "
            f"residual {entry.residual:.2e} > {tolerance:.2e}"
        )
        raise RelationError(
            f"{relation} failed in direction {entry.direction} for λ = {entry.source_lam:.12g}",
            pair=entry,
        )


def check_q_c_relation(H: ArrayLike, cfg: Optional[SolverConfig] = None) -> RelationReport:
    """λ is a Q-eigenvalue of H iff λ² is a C-eigenvalue of conj(H)⊗H"""
    cfg = cfg or SolverConfig.from_settings()
    H = as_tensor(H)
    QEigenSolver().validate(H)
    d = H.order
    F = outer_product(H.conj(), H)
    if not is_cps(F):
        raise InternalError("conj(H)⊗H of a symmetric H is not conjugate partial-symmetric")

    relation = "q-c"
    tau = cfg.tau_eig
    entries: List[RelationEntry] = []

    for pair in solve_q_eig(H, cfg):
        target = pair.lam ** 2
        residual = c_defect(F.data, target, pair.x)
        entry = RelationEntry(direction="Q->C", source_lam=pair.lam, target_lam=target, residual=residual, x=pair.x)
        _verify(entries, entry, tau * max(1.0, abs(pair.lam)), relation)

    for pair in solve_c_eig(F, cfg):
        if pair.lam <= tau:
            continue
        # rotate into the phase where H(y^d) is real nonnegative
        theta = float(np.angle(np.dot(pair.x, contract_modes(H.data, {k: pair.x for k in range(1, d)}))))
        y = pair.x * np.exp(-1j * theta / d)
        lam = float(np.sqrt(pair.lam))
        residual = q_defect(H.data, lam, y)
        entry = RelationEntry(direction="C->Q", source_lam=pair.lam, target_lam=lam, residual=residual, x=y)
        _verify(entries, entry, c_to_q_tolerance(tau, lam), relation)

    logger.info(f"Q/C relation verified on {len(entries)} pairs")
    return RelationReport(relation=relation, verified=True, tolerance=tau, entries=entries)


def check_c_g_relation(F: ArrayLike, cfg: Optional[SolverConfig] = None) -> RelationReport:
    """λ is a C-eigenvalue of F iff λ/2 is a G-eigenvalue of its CSS embedding"""
    cfg = cfg or SolverConfig.from_settings()
    F = as_tensor(F)
    CEigenSolver().validate(F)
    G = embed_cps_to_css(F)
    GEigenSolver().validate(G)

    relation = "c-g"
    tau = cfg.tau_eig
    entries: List[RelationEntry] = []

    for pair in solve_c_eig(F, cfg):
        residual = g_defect(G.data, pair.lam / 2, pair.x)
        entry = RelationEntry(direction="C->G", source_lam=pair.lam, target_lam=pair.lam / 2, residual=residual, x=pair.x)
        _verify(entries, entry, tau * max(1.0, abs(pair.lam)), relation)

    for pair in solve_g_eig(G, cfg):
        residual = c_defect(F.data, 2 * pair.lam, pair.x)
        entry = RelationEntry(direction="G->C", source_lam=pair.lam, target_lam=2 * pair.lam, residual=residual, x=pair.x)
        _verify(entries, entry, 2 * tau * max(1.0, abs(pair.lam)), relation)

    logger.info(f"C/G relation verified on {len(entries)} pairs")
    return RelationReport(relation=relation, verified=True, tolerance=tau, entries=entries)
