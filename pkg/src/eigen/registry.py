"""Solver registry for the eigen notions"""

import logging
from typing import Any, Dict, List, Optional, Sequence, Union

from ..core.exceptions import ArgumentError
from ..core.models import EigenKind, EigenPair, SolverConfig
from ..tensor.dense import ArrayLike
from .base import EigenSolver
from .c_eigen import CEigenSolver
from .g_eigen import GEigenSolver
from .q_eigen import QEigenSolver

logger = logging.getLogger(__name__)


class SolverRegistry:
    """Maps each eigen kind to the solver instance that handles it"""

    def __init__(self):
        self._solvers: Dict[EigenKind, EigenSolver] = {}
        self._initialize_default_solvers()

    def _initialize_default_solvers(self):
        for solver in (CEigenSolver(), GEigenSolver(), QEigenSolver()):
            self.register(solver)
        logger.debug(f"Solver registry initialized with kinds {[k.value for k in self._solvers]}")

    def register(self, solver: EigenSolver):
        """Register (or replace) the solver for solver.kind"""
        self._solvers[solver.kind] = solver
        logger.debug(f"Registered solver {solver.name} for kind {solver.kind.value}")

    def get(self, kind: Union[EigenKind, str]) -> EigenSolver:
        try:
            kind = EigenKind(kind.upper() if isinstance(kind, str) else kind)
        except ValueError:
            raise ArgumentError(f"Unknown eigen kind: {kind!r} (expected one of C, G, Q)")
        if kind not in self._solvers:
            raise ArgumentError(f"No solver registered for kind {kind.value}")
        return self._solvers[kind]

    def solve(self, kind: Union[EigenKind, str], T: ArrayLike, cfg: Optional[SolverConfig] = None,
              seeds: Optional[Sequence] = None) -> List[EigenPair]:
        return self.get(kind).solve(T, cfg, seeds)

    def list_solvers(self) -> Dict[str, Dict[str, Any]]:
        return {
            kind.value: {"name": solver.name, "phase_canonicalized": solver.canonicalize_phase}
            for kind, solver in self._solvers.items()
        }


# Global solver registry instance
solver_registry = SolverRegistry()
