"""Seeded multistart execution engine"""

import logging
from typing import Callable, Generic, List, Optional, Sequence, TypeVar

import numpy as np

from ..core.exceptions import ConvergenceError

logger = logging.getLogger(__name__)

S = TypeVar("S")
R = TypeVar("R")


def random_unit_vector(n: int, rng: np.random.Generator) -> np.ndarray:
    """Uniform point on the complex unit sphere (normalized standard complex Gaussian)"""
    z = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    return z / np.linalg.norm(z)


def normalize(x: np.ndarray) -> np.ndarray:
    return x / np.linalg.norm(x)


class MultistartRunner(Generic[S, R]):
    """Runs a local solver from every start and reduces the outcomes in start order.

    Starts are independent: each one owns its state and the reduction visits
    outcomes sorted by start id, so a fixed seed gives a fixed result.
    """

    def __init__(self, name: str, seed: int = 0):
        self.name = name
        self.seed = seed
        self.rng = np.random.default_rng(seed)
        self.failures = 0
        self.best_residual: Optional[float] = None

    def unit_starts(self, n: int, count: int) -> List[np.ndarray]:
        """count random unit vectors in C^n drawn from the runner's generator"""
        return [random_unit_vector(n, self.rng) for _ in range(count)]

    def block_starts(self, dims: Sequence[int], count: int) -> List[List[np.ndarray]]:
        """count tuples of random unit vectors, one per block dimension"""
        return [[random_unit_vector(n, self.rng) for n in dims] for _ in range(count)]

    def note_residual(self, residual: float) -> None:
        """Track the smallest residual seen, for error reporting"""
        if np.isfinite(residual) and (self.best_residual is None or residual < self.best_residual):
            self.best_residual = float(residual)

    def run(self, starts: Sequence[S], solve: Callable[[int, S], Optional[R]]) -> List[R]:
        """Apply solve(start_id, start) to every start; None or a numerical failure drops the start"""
        results: List[R] = []
        for start_id, start in enumerate(starts):
            try:
                outcome = solve(start_id, start)
            except (ConvergenceError, np.linalg.LinAlgError, FloatingPointError) as e:
                logger.debug(f"{self.name}: start {start_id} failed: {e}")
                self.failures += 1
                continue
            if outcome is None:
                self.failures += 1
                continue
            results.append(outcome)

        logger.info(f"{self.name}: {len(results)}/{len(starts)} starts kept (seed {self.seed})")
        return results
