"""Brute-force sphere sampling oracle for small instances"""

import logging
from typing import Callable, Optional, Tuple

import numpy as np

from ..core.exceptions import ArgumentError
from ..engine.multistart import MultistartRunner, normalize

logger = logging.getLogger(__name__)

Objective = Callable[[np.ndarray], float]


def wirtinger_gradient(objective: Objective, x: np.ndarray, h: float = 1e-6) -> np.ndarray:
    """∂f/∂x̄ = ½(∂f/∂Re x + i ∂f/∂Im x) by central differences"""
    n = x.shape[0]
    grad = np.zeros(n, dtype=np.complex128)
    for k in range(n):
        e = np.zeros(n, dtype=np.complex128)
        e[k] = h
        d_re = (objective(x + e) - objective(x - e)) / (2 * h)
        d_im = (objective(x + 1j * e) - objective(x - 1j * e)) / (2 * h)
        grad[k] = 0.5 * (d_re + 1j * d_im)
    return grad


def _polish(objective: Objective, x: np.ndarray, steps: int) -> Tuple[float, np.ndarray]:
    """Projected gradient ascent on the unit sphere with step halving"""
    f = objective(x)
    eta = 1.0
    for _ in range(steps):
        grad = wirtinger_gradient(objective, x)
        # drop the radial part
        grad = grad - np.vdot(x, grad).real * x
        if np.linalg.norm(grad) < 1e-12:
            break
        while eta > 1e-12:
            y = normalize(x + eta * grad)
            fy = objective(y)
            if fy > f:
                x, f = y, fy
                eta = min(2 * eta, 1.0)
                break
            eta /= 2
        else:
            break
    return f, x


def sphere_oracle(objective: Objective, n: int, samples: int, seed: Optional[int] = 0,
                  polish: int = 5, polish_steps: int = 200) -> Tuple[float, np.ndarray]:
    """Best value over random complex unit vectors, the top few polished by projected ascent.

    The result is a feasible value, hence a lower bound for the maximum.
    """
    if samples < 1:
        raise ArgumentError(f"samples must be at least 1, got {samples}")
    if n < 1:
        raise ArgumentError(f"n must be at least 1, got {n}")

    runner = MultistartRunner("sphere-oracle", 0 if seed is None else seed)
    points = runner.unit_starts(n, samples)
    values = np.array([objective(x) for x in points], dtype=float)
    order = np.argsort(-values, kind="stable")

    best_value, best_x = float(values[order[0]]), points[order[0]]
    for k in order[:polish]:
        value, x = _polish(objective, points[k], polish_steps)
        if value > best_value:
            best_value, best_x = float(value), x

    logger.debug(f"Sphere oracle: best {best_value:.10g} over {samples} samples (n={n})")
    return best_value, best_x
