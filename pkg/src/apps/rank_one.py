"""Best rank-one approximation of complex tensors"""

import logging
import math
from typing import List, Optional, Sequence

import numpy as np

from ..banach.ascent import SlotKind, block_coordinate_ascent
from ..core.exceptions import ArgumentError
from ..core.models import AscentResult, RankOneResult, SolverConfig
from ..eigen.g_eigen import solve_g_eig
from ..engine.multistart import MultistartRunner
from ..tensor.dense import ArrayLike, DenseComplexTensor, as_tensor, contract_modes, outer_vectors, symmetrize, tensor_norm

logger = logging.getLogger(__name__)


def _require_nonzero(F: DenseComplexTensor, op: str) -> None:
    if tensor_norm(F) == 0.0:
        raise ArgumentError(f"{op} needs a nonzero tensor")


def _value(data: np.ndarray, blocks: Sequence[np.ndarray]) -> float:
    return float(np.real(contract_modes(data, dict(enumerate(blocks)))))


def _result(F: DenseComplexTensor, blocks: List[np.ndarray], converged: bool) -> RankOneResult:
    """Factors are the conjugated maximizers of Re F(x¹,…,x^d); the optimal scale is that maximum"""
    blocks = [b / np.linalg.norm(b) for b in blocks]
    value = _value(F.data, blocks)
    if value < 0:
        blocks[0] = -blocks[0]
        value = -value
    factors = [np.conj(b) for b in blocks]
    residual = tensor_norm(F - outer_vectors(factors) * value)
    return RankOneResult(factors=factors, scale=value, objective=value, residual=residual, converged=converged)


def rank_one_als(F: ArrayLike, cfg: Optional[SolverConfig] = None,
                 init: Optional[Sequence[Sequence]] = None) -> RankOneResult:
    """λ z¹⊗⋯⊗z^d minimizing ‖λ z¹⊗⋯⊗z^d − F‖ by block ascent on Re F(x¹,…,x^d)"""
    F = as_tensor(F)
    _require_nonzero(F, "rank_one_als")
    ascent = block_coordinate_ascent(F, [SlotKind.PLAIN] * F.order, cfg, init=init)
    result = _result(F, list(ascent.blocks), ascent.converged)
    logger.info(f"Rank-one ALS: scale {result.scale:.12g}, residual {result.residual:.3e}")
    return result


def coupled_sphere_ascent(F: ArrayLike, cfg: Optional[SolverConfig] = None,
                          init: Optional[Sequence[Sequence]] = None) -> AscentResult:
    """Projected ascent on Re F(z¹,…,z^d) under Σ‖zᵏ‖² = d.

    The stacked iterate moves to √d·normalize(g + γz) with g the stacked
    Wirtinger gradient; γ doubles whenever a step would lower the value.
    """
    F = as_tensor(F)
    _require_nonzero(F, "coupled_sphere_ascent")
    cfg = cfg or SolverConfig.from_settings()
    data, d, dims = F.data, F.order, F.dims
    radius = math.sqrt(d)
    scale = tensor_norm(F)
    cap = 2.0 ** cfg.shift_cap_exponent * scale
    offsets = np.cumsum([0] + list(dims))

    def split(z: np.ndarray) -> List[np.ndarray]:
        return [z[offsets[k]:offsets[k + 1]] for k in range(d)]

    def gradient(z: np.ndarray) -> np.ndarray:
        blocks = split(z)
        parts = [np.conj(contract_modes(data, {j: blocks[j] for j in range(d) if j != k})) for k in range(d)]
        return np.concatenate(parts)

    def ascend(start_id: int, blocks: Sequence[np.ndarray]):
        z = np.concatenate([np.asarray(b, dtype=np.complex128) for b in blocks])
        z = radius * z / np.linalg.norm(z)
        f = _value(data, split(z))
        trace = [f]
        gamma = 0.0
        converged = False
        it = 0
        for it in range(1, cfg.max_iters + 1):
            y = gradient(z) + gamma * z
            size = np.linalg.norm(y)
            if size == 0.0:
                converged = True
                break
            y = radius * y / size
            fy = _value(data, split(y))
            if fy < f and gamma < cap:
                gamma = scale if gamma == 0.0 else min(2 * gamma, cap)
                continue
            improvement = fy - f
            z, f = y, fy
            trace.append(f)
            if improvement < cfg.tau_bca:
                converged = True
                break
        return start_id, f, split(z), converged, it, trace

    runner = MultistartRunner("coupled-ascent", cfg.seed)
    starts = [list(b) for b in init or []] + runner.block_starts(dims, cfg.starts)
    outcomes = runner.run(starts, ascend)
    start_id, value, blocks, converged, iters, trace = max(outcomes, key=lambda o: (o[1], -o[0]))
    norms = ", ".join(f"{np.linalg.norm(b):.6f}" for b in blocks)
    logger.info(f"Coupled ascent: value {value:.12g}, block norms [{norms}]")
    return AscentResult(value=value, blocks=blocks, converged=converged, iters=iters, start_id=start_id, trace=trace)


def embed_rank_one_as_geig(F: ArrayLike) -> DenseComplexTensor:
    """CSS G over dimension 2N, N = Σnₖ, with G((x̄;x)^d) = Re F(z¹,…,z^d) for z = √d·x split into blocks.

    F is placed on its block of an N^d tensor and symmetrized into H with
    H(z,…,z) = F(z¹,…,z^d); G carries √(d^d)/2 · (conj(H) ⊕ H) on its
    conjugated and plain diagonal blocks.
    """
    F = as_tensor(F)
    _require_nonzero(F, "embed_rank_one_as_geig")
    d = F.order
    offsets = np.cumsum([0] + list(F.dims))
    N = int(offsets[-1])

    placed = np.zeros((N,) * d, dtype=np.complex128)
    placed[tuple(slice(offsets[k], offsets[k + 1]) for k in range(d))] = F.data
    H = symmetrize(placed).data

    c = math.sqrt(d ** d) / 2
    G = np.zeros((2 * N,) * d, dtype=np.complex128)
    G[(slice(0, N),) * d] = c * np.conj(H)
    G[(slice(N, 2 * N),) * d] = c * H
    return DenseComplexTensor(G)


def rank_one_via_geig(F: ArrayLike, cfg: Optional[SolverConfig] = None) -> RankOneResult:
    """Rank-one approximation through the largest G-eigenvalue of the CSS embedding, seeded by ALS"""
    F = as_tensor(F)
    cfg = cfg or SolverConfig.from_settings()
    d = F.order
    als = rank_one_als(F, cfg)
    seed = np.concatenate([np.conj(z) for z in als.factors]) / math.sqrt(d)

    G = embed_rank_one_as_geig(F)
    top = solve_g_eig(G, cfg, seeds=[seed])[0]
    z = math.sqrt(d) * top.x
    offsets = np.cumsum([0] + list(F.dims))
    blocks = [z[offsets[k]:offsets[k + 1]] for k in range(d)]
    if any(np.linalg.norm(b) == 0.0 for b in blocks):
        logger.warning("G-eigenvector has an empty block; keeping the ALS result")
        return als

    result = _result(F, blocks, converged=True)
    logger.info(
        f"Rank-one via G-eigen: 2λ_G = {2 * top.lam:.12g}, scale {result.scale:.12g} (ALS {als.scale:.12g})"
    )
    return result if result.scale >= als.scale else als
