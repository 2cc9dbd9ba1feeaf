"""Block coordinate ascent for multilinear relaxations"""

import logging
from enum import Enum
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np

from ..core.exceptions import ArgumentError, ConvergenceError, DimensionError
from ..core.models import AscentResult, SolverConfig
from ..engine.multistart import MultistartRunner, normalize
from ..tensor.dense import ArrayLike, as_tensor, contract_modes, tensor_norm

logger = logging.getLogger(__name__)

# Inner iterations for a block tied to several modes
TIED_INNER_ITERS = 100


class SlotKind(str, Enum):
    """How a block vector enters its mode"""
    PLAIN = "plain"
    CONJ = "conj"
    STACKED = "stacked"  # a 2n mode bound to (x̄; x)


SlotLike = Union[SlotKind, str, bool]


def as_slot_kinds(pattern: Sequence[SlotLike]) -> List[SlotKind]:
    """Booleans read as conjugated flags; strings as SlotKind values"""
    kinds = []
    for flag in pattern:
        if isinstance(flag, (bool, np.bool_)):
            kinds.append(SlotKind.CONJ if flag else SlotKind.PLAIN)
        else:
            try:
                kinds.append(SlotKind(flag))
            except ValueError:
                raise ArgumentError(f"Unknown slot kind {flag!r}")
    return kinds


def slot_vector(kind: SlotKind, x: np.ndarray) -> np.ndarray:
    if kind == SlotKind.PLAIN:
        return x
    if kind == SlotKind.CONJ:
        return np.conj(x)
    return np.concatenate([np.conj(x), x])


def best_response(kind: SlotKind, c: np.ndarray) -> Optional[np.ndarray]:
    """Unit x maximizing Re Σ cᵢ·slot(x)ᵢ; None when the contraction vanishes"""
    if kind == SlotKind.PLAIN:
        w = np.conj(c)
    elif kind == SlotKind.CONJ:
        w = c
    else:
        n = c.shape[0] // 2
        w = c[:n] + np.conj(c[n:])
    size = np.linalg.norm(w)
    if size == 0.0:
        return None
    return w / size


def _objective(data: np.ndarray, modes: Sequence[Sequence[int]], kinds: Sequence[SlotKind],
               blocks: Sequence[np.ndarray]) -> float:
    vectors = {}
    for group, kind, x in zip(modes, kinds, blocks):
        for k in group:
            vectors[k] = slot_vector(kind, x)
    return float(np.real(contract_modes(data, vectors)))


def _tied_update(T: np.ndarray, kind: SlotKind, x: np.ndarray, tau: float, scale: float, cap: float) -> np.ndarray:
    """Shifted ascent on Re T(a^m) with a = x or x̄; steps that lower the value are refused"""
    if kind == SlotKind.CONJ:
        T = np.conj(T)
    m = T.ndim

    def value(v: np.ndarray) -> float:
        return float(np.real(contract_modes(T, {k: v for k in range(m)})))

    f = value(x)
    gamma = 0.0
    for _ in range(TIED_INNER_ITERS):
        g = sum(contract_modes(T, {j: x for j in range(m) if j != k}) for k in range(m))
        y = np.conj(g) + gamma * x
        size = np.linalg.norm(y)
        if size == 0.0:
            break
        y = y / size
        fy = value(y)
        if fy < f:
            if gamma >= cap:
                break
            gamma = scale if gamma == 0.0 else min(2 * gamma, cap)
            continue
        improvement = fy - f
        x, f = y, fy
        if improvement < tau:
            break
    return x


def _ascend(data: np.ndarray, modes: Sequence[Sequence[int]], kinds: Sequence[SlotKind],
            blocks: List[np.ndarray], cfg: SolverConfig, scale: float) -> Tuple[float, List[np.ndarray], bool, int, List[float]]:
    cap = 2.0 ** cfg.shift_cap_exponent * scale
    blocks = [normalize(np.asarray(b, dtype=np.complex128)) for b in blocks]
    value = _objective(data, modes, kinds, blocks)
    trace = [value]
    converged = False
    sweep = 0
    for sweep in range(1, cfg.max_iters + 1):
        before = value
        for b, (group, kind) in enumerate(zip(modes, kinds)):
            others = {}
            for c, (other_group, other_kind) in enumerate(zip(modes, kinds)):
                if c != b:
                    for k in other_group:
                        others[k] = slot_vector(other_kind, blocks[c])
            T = contract_modes(data, others)
            if len(group) == 1:
                update = best_response(kind, T)
                if update is not None:
                    blocks[b] = update
            else:
                blocks[b] = _tied_update(T, kind, blocks[b], cfg.tau_bca, scale, cap)
            value = _objective(data, modes, kinds, blocks)
            trace.append(value)
        if value - before < cfg.tau_bca:
            converged = True
            break
    return value, blocks, converged, sweep, trace


def _run(F: ArrayLike, modes: Sequence[Sequence[int]], kinds: Sequence[SlotKind], cfg: Optional[SolverConfig],
         init: Optional[Sequence[Sequence]], label: str) -> AscentResult:
    F = as_tensor(F)
    cfg = cfg or SolverConfig.from_settings()
    dims = []
    for group, kind in zip(modes, kinds):
        n = F.dims[group[0]]
        if any(F.dims[k] != n for k in group):
            raise DimensionError(f"Tied modes {list(group)} have different dimensions")
        if kind == SlotKind.STACKED:
            if n % 2:
                raise DimensionError(f"Stacked slot on mode {group[0]} needs an even dimension, got {n}")
            n //= 2
        dims.append(n)

    runner = MultistartRunner(label, cfg.seed)
    starts: List[List[np.ndarray]] = []
    for warm in init or []:
        if len(warm) != len(dims):
            raise ArgumentError(f"Warm start has {len(warm)} blocks, expected {len(dims)}")
        starts.append([np.asarray(x, dtype=np.complex128) for x in warm])
    starts.extend(runner.block_starts(dims, cfg.starts))

    scale = max(tensor_norm(F), 1.0)
    outcomes = runner.run(starts, lambda start_id, blocks: (start_id, _ascend(F.data, modes, kinds, list(blocks), cfg, scale)))

    if not outcomes:
        raise ConvergenceError(f"{label}: every start failed")
    best_id, (value, blocks, converged, iters, trace) = max(outcomes, key=lambda o: (o[1][0], -o[0]))
    logger.info(f"{label}: best value {value:.12g} from start {best_id} ({len(starts)} starts, {iters} sweeps)")
    return AscentResult(value=value, blocks=blocks, converged=converged, iters=iters, start_id=best_id, trace=trace)


def block_coordinate_ascent(F: ArrayLike, conj_pattern: Sequence[SlotLike], cfg: Optional[SolverConfig] = None,
                            init: Optional[Sequence[Sequence]] = None) -> AscentResult:
    """Maximize Re F(a¹,…,a^d) over unit blocks, aᵏ = xᵏ, x̄ᵏ or (x̄ᵏ; xᵏ) per slot kind.

    Every block update is the closed-form maximizer with the other blocks fixed,
    so the objective never decreases. A zero contraction keeps the previous block.
    """
    F = as_tensor(F)
    kinds = as_slot_kinds(conj_pattern)
    if len(kinds) != F.order:
        raise ArgumentError(f"conj_pattern has {len(kinds)} flags, tensor has order {F.order}")
    modes = [[k] for k in range(F.order)]
    return _run(F, modes, kinds, cfg, init, "block-ascent")


def tied_block_ascent(F: ArrayLike, ties: Sequence[Sequence[int]], conj_pattern: Sequence[SlotLike],
                      cfg: Optional[SolverConfig] = None, init: Optional[Sequence[Sequence]] = None) -> AscentResult:
    """Block ascent where each block vector fills every mode of its tie group.

    Groups with several modes are updated by an inner shifted ascent warm-started
    at the current block.
    """
    F = as_tensor(F)
    kinds = as_slot_kinds(conj_pattern)
    if len(kinds) != len(ties):
        raise ArgumentError(f"conj_pattern has {len(kinds)} flags for {len(ties)} tie groups")
    covered = sorted(k for group in ties for k in group)
    if covered != list(range(F.order)):
        raise ArgumentError(f"Tie groups {ties} must partition the modes 0..{F.order - 1}")
    for group, kind in zip(ties, kinds):
        if len(group) > 1 and kind == SlotKind.STACKED:
            raise ArgumentError("Stacked slots cannot be tied across modes")
    return _run(F, [list(g) for g in ties], kinds, cfg, init, "tied-ascent")
