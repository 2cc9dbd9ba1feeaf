"""C-, G- and Q-eigenpairs of structured complex tensors"""

from .base import EigenSolver, canonical_phase, orbit_distance
from .c_eigen import CEigenSolver, c_eig_residual, solve_c_eig
from .g_eigen import GEigenSolver, g_eig_residual, solve_g_eig
from .oracle import sphere_oracle
from .q_eigen import QEigenSolver, q_eig_residual, solve_q_eig, us_eig_residual
from .registry import SolverRegistry, solver_registry
from .relations import check_c_g_relation, check_q_c_relation

__all__ = [
    "CEigenSolver",
    "EigenSolver",
    "GEigenSolver",
    "QEigenSolver",
    "SolverRegistry",
    "c_eig_residual",
    "canonical_phase",
    "check_c_g_relation",
    "check_q_c_relation",
    "g_eig_residual",
    "orbit_distance",
    "q_eig_residual",
    "solve_c_eig",
    "solve_g_eig",
    "solve_q_eig",
    "solver_registry",
    "sphere_oracle",
    "us_eig_residual",
]
