"""Base class for structured-tensor eigen solvers"""

import logging
from abc import ABC, abstractmethod
from typing import List, NamedTuple, Optional, Sequence, Tuple

import numpy as np

from ..core.exceptions import ConvergenceError, DimensionError
from ..core.models import EigenKind, EigenPair, SolverConfig
from ..engine.multistart import MultistartRunner, normalize
from ..tensor.dense import ArrayLike, DenseComplexTensor, as_tensor, tensor_norm

logger = logging.getLogger(__name__)

# Ascent hands over to Newton once the defining residual drops below this (relative to ‖T‖)
POLISH_THRESHOLD = 1e-4
# Merge radius for eigenvectors on the same phase orbit
ORBIT_RADIUS = 1e-6


class Linearization(NamedTuple):
    """res(x + dx, λ + dλ) ≈ res + A·dx + B·conj(dx) + c·dλ"""
    res: np.ndarray
    A: np.ndarray
    B: np.ndarray
    c: np.ndarray


class Job(NamedTuple):
    vector: np.ndarray
    mode: str  # "ascent" runs the shifted fixed point first, "newton" polishes directly
    origin: str


def orbit_distance(x: np.ndarray, y: np.ndarray) -> float:
    """min over φ of ‖x − y·e^{iφ}‖ for unit vectors"""
    return float(np.sqrt(max(0.0, 2.0 - 2.0 * abs(np.vdot(x, y)))))


def canonical_phase(x: np.ndarray) -> np.ndarray:
    """Rotate so the largest-modulus entry is real positive"""
    k = int(np.argmax(np.abs(x)))
    if x[k] == 0:
        return x
    return x * (np.conj(x[k]) / abs(x[k]))


def as_unit_vector(x, n: int, what: str = "x", tol: float = 1e-6) -> np.ndarray:
    v = np.asarray(x, dtype=np.complex128)
    if v.ndim != 1 or v.shape[0] != n:
        raise DimensionError(f"{what} must be a vector of length {n}, got shape {v.shape}")
    if abs(np.linalg.norm(v) - 1.0) > tol:
        raise DimensionError(f"{what} must have unit norm, got {np.linalg.norm(v):.6g}")
    return v


class EigenSolver(ABC):
    """Multistart KKT solver shared by the C-, G- and Q-eigen notions.

    Each start runs a shifted fixed-point ascent x ← normalize(g(x) + γx) with an
    adaptive shift, then a Newton polish on the real (2n+1)-dimensional system
    {res(x, λ) = 0, xᴴx = 1}. Random starts are also polished directly so that
    KKT points which are not local maxima are reached.
    """

    kind: EigenKind
    canonicalize_phase: bool = False

    def __init__(self, name: str):
        self.name = name

    @abstractmethod
    def validate(self, T: DenseComplexTensor, tau: Optional[float] = None) -> None:
        """Raise StructureError unless T carries the structure this notion needs"""

    @abstractmethod
    def vector_length(self, data: np.ndarray) -> int:
        pass

    @abstractmethod
    def raw_value(self, data: np.ndarray, x: np.ndarray) -> complex:
        """Eigenvalue estimate at x before projection to the reals"""

    @abstractmethod
    def ascent_direction(self, data: np.ndarray, x: np.ndarray) -> np.ndarray:
        pass

    @abstractmethod
    def linearize(self, data: np.ndarray, lam: float, x: np.ndarray) -> Linearization:
        pass

    @abstractmethod
    def defect(self, data: np.ndarray, lam: float, x: np.ndarray) -> float:
        """Norm of the full defining system at (λ, x)"""

    def spectral_seeds(self, data: np.ndarray) -> List[np.ndarray]:
        return []

    def admissible(self, data: np.ndarray, lam: float, x: np.ndarray, tol: float) -> bool:
        """Acceptance test on top of the defining residual"""
        return True

    def solve(self, T: ArrayLike, cfg: Optional[SolverConfig] = None,
              seeds: Optional[Sequence] = None) -> List[EigenPair]:
        """Deduplicated converged eigenpairs across all starts, λ descending"""
        T = as_tensor(T)
        self.validate(T)
        cfg = cfg or SolverConfig.from_settings()
        data = T.data
        n = self.vector_length(data)
        scale = tensor_norm(T)

        runner = MultistartRunner(f"{self.kind.value}-eig", cfg.seed)
        jobs: List[Job] = []
        for x in seeds or []:
            jobs.append(Job(normalize(as_unit_vector(x, n, "seed", tol=np.inf)), "newton", "seed"))
        for x in self.spectral_seeds(data):
            jobs.append(Job(x, "newton", "spectral"))
        for x in runner.unit_starts(n, cfg.starts):
            jobs.append(Job(x, "ascent", "random"))
            jobs.append(Job(x, "newton", "random"))

        candidates = runner.run(jobs, lambda start_id, job: self._local_solve(data, job, start_id, cfg, scale, runner))
        if not candidates:
            logger.error(f"{self.name}: no start converged out of {len(jobs)}")
            raise ConvergenceError(
                f"No {self.kind.value}-eigenpair converged from {len(jobs)} starts",
                best_residual=runner.best_residual,
            )

        pairs = self._deduplicate(candidates, cfg.tau_eig)
        if scale == 0.0:
            # every unit vector is an eigenvector of the zero tensor
            pairs = pairs[:1]
        logger.info(
            f"{self.name}: {len(pairs)} distinct pairs from {len(candidates)} converged starts, "
            f"λ range [{pairs[-1].lam:.6g}, {pairs[0].lam:.6g}]"
        )
        return pairs

    def _local_solve(self, data: np.ndarray, job: Job, start_id: int, cfg: SolverConfig,
                     scale: float, runner: MultistartRunner) -> Optional[EigenPair]:
        x = job.vector
        iters = 0
        if job.mode == "ascent":
            x, iters = self._ascend(data, x, cfg, scale)
        x, polish_iters = self._polish(data, x, cfg)
        iters += polish_iters

        if self.canonicalize_phase:
            x = canonical_phase(x)
        raw = self.raw_value(data, x)
        lam = float(raw.real)
        residual = self.defect(data, lam, x)
        runner.note_residual(residual)
        if not np.isfinite(residual) or residual > cfg.tau_eig:
            logger.debug(f"{self.name}: start {start_id} ({job.origin}/{job.mode}) stalled at residual {residual:.2e}")
            return None
        imag = abs(raw.imag)
        if imag > cfg.tau_eig * max(1.0, abs(raw)):
            logger.warning(f"{self.name}: start {start_id} has eigenvalue imaginary part {imag:.2e}; rejected")
            return None
        if not self.admissible(data, lam, x, cfg.tau_eig):
            logger.warning(f"{self.name}: start {start_id} fails the companion system at λ = {lam:.6g}; rejected")
            return None
        return EigenPair(
            lam=lam, x=x, residual=residual, kind=self.kind,
            iters=iters, start_id=start_id, imag_defect=imag,
        )

    def _ascend(self, data: np.ndarray, x: np.ndarray, cfg: SolverConfig, scale: float) -> Tuple[np.ndarray, int]:
        """Shifted fixed-point ascent; the shift doubles whenever a step would lower the objective"""
        if scale == 0.0:
            return x, 0
        adaptive = cfg.shift is None
        gamma = 0.0 if adaptive else cfg.shift
        cap = 2.0 ** cfg.shift_cap_exponent * scale
        f = self.raw_value(data, x).real
        it = 0
        for it in range(1, cfg.max_iters + 1):
            y = self.ascent_direction(data, x) + gamma * x
            size = np.linalg.norm(y)
            if size == 0.0:
                break
            y = y / size
            fy = self.raw_value(data, y).real
            if adaptive and fy < f - 1e-13 * max(1.0, abs(f)) and gamma < cap:
                gamma = scale if gamma == 0.0 else min(2.0 * gamma, cap)
                logger.debug(f"{self.name}: objective dropped at iteration {it}, shift raised to {gamma:.3g}")
                continue
            x, f = y, fy
            if self.defect(data, f, x) <= POLISH_THRESHOLD * max(1.0, scale):
                break
        return x, it

    def _polish(self, data: np.ndarray, x: np.ndarray, cfg: SolverConfig) -> Tuple[np.ndarray, int]:
        """Newton on the real KKT system; least-squares steps take the minimum-norm solution"""
        n = x.shape[0]
        lam = self.raw_value(data, x).real
        best_x, best_r = x, np.inf
        it = 0
        for it in range(cfg.newton_max_iters + 1):
            lin = self.linearize(data, lam, x)
            sphere = float(np.vdot(x, x).real) - 1.0
            r = max(float(np.linalg.norm(lin.res)), abs(sphere))
            if not np.isfinite(r):
                break
            if r < best_r:
                best_x, best_r = x, r
            if r <= 1e-3 * cfg.tau_eig or it == cfg.newton_max_iters:
                break

            P = lin.A + lin.B
            Q = 1j * (lin.A - lin.B)
            J = np.zeros((2 * n + 1, 2 * n + 1))
            J[:n, :n], J[n:2 * n, :n] = P.real, P.imag
            J[:n, n:2 * n], J[n:2 * n, n:2 * n] = Q.real, Q.imag
            J[:n, 2 * n], J[n:2 * n, 2 * n] = lin.c.real, lin.c.imag
            J[2 * n, :n], J[2 * n, n:2 * n] = 2.0 * x.real, 2.0 * x.imag
            rhs = -np.concatenate([lin.res.real, lin.res.imag, [sphere]])
            step = np.linalg.lstsq(J, rhs, rcond=None)[0]

            x = x + step[:n] + 1j * step[n:2 * n]
            lam = lam + step[2 * n]
            size = np.linalg.norm(x)
            if not np.isfinite(size) or size == 0.0:
                break
            x = x / size
        return best_x, it

    def _deduplicate(self, pairs: List[EigenPair], tau: float) -> List[EigenPair]:
        kept: List[EigenPair] = []
        for pair in sorted(pairs, key=lambda p: p.start_id):
            duplicate = any(
                abs(pair.lam - other.lam) <= tau * max(1.0, abs(other.lam))
                and orbit_distance(pair.x, other.x) <= ORBIT_RADIUS
                for other in kept
            )
            if not duplicate:
                kept.append(pair)
        kept.sort(key=lambda p: (-p.lam, p.start_id))
        return kept
