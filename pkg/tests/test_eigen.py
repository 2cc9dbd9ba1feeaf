"""Tests for the C-, G- and Q-eigen solvers, the registry, the relations and the sampling oracle"""

import numpy as np
import pytest

from src.bijection import embed_cps_to_css
from src.core.exceptions import ArgumentError, ConvergenceError, DimensionError, StructureError
from src.core.models import EigenKind, SolverConfig
from src.eigen import (
    CEigenSolver,
    QEigenSolver,
    c_eig_residual,
    canonical_phase,
    check_c_g_relation,
    check_q_c_relation,
    g_eig_residual,
    orbit_distance,
    q_eig_residual,
    solve_c_eig,
    solve_g_eig,
    solve_q_eig,
    solver_registry,
    sphere_oracle,
    us_eig_residual,
)
from src.eigen.c_eigen import MAX_SPECTRAL_SEEDS
from src.eigen.relations import C_TO_Q_AMPLIFICATION_CAP, c_to_q_tolerance
from src.engine.multistart import MultistartRunner
from src.tensor import DenseComplexTensor, multilinear_eval


@pytest.fixture
def diagonal():
    return DenseComplexTensor(np.diag([2.0, 1.0]))


@pytest.mark.parametrize("rng, n", [(seed, 1 + seed % 6) for seed in range(50)], indirect=["rng"])
def test_c_eig_of_hermitian_matrix_matches_spectrum(rng, n, make_hermitian):
    """For order two the C-eigenvalues are the ordinary eigenvalues, none missing and none extra"""
    A = make_hermitian(n)
    cfg = SolverConfig.from_settings(starts=32, max_iters=1000, seed=0)
    pairs = solve_c_eig(A, cfg)

    assert [p.lam for p in pairs] == pytest.approx(sorted(np.linalg.eigvalsh(A), reverse=True), abs=1e-8)
    for p in pairs:
        assert p.kind == EigenKind.C
        assert np.linalg.norm(p.x) == pytest.approx(1.0)
        assert c_eig_residual(A, p.lam, p.x) <= cfg.tau_eig


def test_c_eig_of_diagonal_matrix(diagonal, cfg):
    pairs = solve_c_eig(diagonal, cfg)
    assert [p.lam for p in pairs] == pytest.approx([2.0, 1.0], abs=1e-9)
    assert abs(pairs[0].x[0]) == pytest.approx(1.0)


def test_c_eig_of_gap_tensor(quartic_gap_tensor, cfg):
    """2Re(x̄₁²x₂²) peaks at ½ on the sphere"""
    pairs = solve_c_eig(quartic_gap_tensor, cfg)

    assert pairs[0].lam == pytest.approx(0.5, abs=1e-8)
    x = pairs[0].x
    assert abs(x[0]) == pytest.approx(abs(x[1]), abs=1e-6)
    assert multilinear_eval(quartic_gap_tensor, [np.conj(x)] * 2 + [x] * 2).real == pytest.approx(0.5, abs=1e-8)


def test_c_eig_pairs_are_sorted_and_distinct(make_cps, cfg):
    pairs = solve_c_eig(make_cps(2, 2), cfg)
    lams = [p.lam for p in pairs]
    assert lams == sorted(lams, reverse=True)
    for i, p in enumerate(pairs):
        for q in pairs[i + 1:]:
            assert abs(p.lam - q.lam) > 1e-9 or orbit_distance(p.x, q.x) > 1e-6, "Duplicates must be merged"


def test_c_eig_is_deterministic(make_cps):
    """The same seed yields the same eigenpairs"""
    F = make_cps(2, 2)
    cfg = SolverConfig.from_settings(starts=8, seed=7)
    first = solve_c_eig(F, cfg)
    second = solve_c_eig(F, cfg)
    assert [p.lam for p in first] == [p.lam for p in second]
    assert all(np.array_equal(a.x, b.x) for a, b in zip(first, second))


def test_c_eig_uses_seeds(diagonal):
    """A seed at an eigenvector is polished even with a single random start"""
    cfg = SolverConfig.from_settings(starts=1, seed=3)
    pairs = solve_c_eig(diagonal, cfg, seeds=[[0, 1]])
    assert any(p.lam == pytest.approx(1.0) for p in pairs)


def test_c_eig_rejects_non_cps(quartic_form_tensor, cfg):
    with pytest.raises(StructureError):
        solve_c_eig(quartic_form_tensor, cfg)


def test_g_eig_of_embedded_gap_tensor(quartic_gap_tensor, cfg):
    """G-eigenvalues of the embedding are half the C-eigenvalues"""
    G = embed_cps_to_css(quartic_gap_tensor)
    pairs = solve_g_eig(G, cfg)

    assert pairs[0].lam == pytest.approx(0.25, abs=1e-8)
    assert g_eig_residual(G, pairs[0].lam, pairs[0].x) <= cfg.tau_eig


def test_g_eig_of_css_quadratic(cfg):
    """G = [[0, A], [Aᵀ, 0]] for Hermitian A has the spectrum of A"""
    A = np.array([[3.0, 1j], [-1j, 1.0]])
    G = np.block([[np.zeros((2, 2)), A], [A.T, np.zeros((2, 2))]])
    pairs = solve_g_eig(G, cfg)
    expected = sorted(np.linalg.eigvalsh(A), reverse=True)
    assert [p.lam for p in pairs] == pytest.approx(expected, abs=1e-8)


def test_g_eig_rejects_non_css(cfg):
    with pytest.raises(StructureError):
        solve_g_eig(np.eye(3), cfg)


def test_q_eig_of_diagonal_matrix(diagonal, cfg):
    """Eigenvalues come in ±σ; the largest is the top singular value"""
    pairs = solve_q_eig(diagonal, cfg)

    assert pairs[0].lam == pytest.approx(2.0, abs=1e-9)
    assert {round(abs(p.lam), 6) for p in pairs} <= {1.0, 2.0}
    for p in pairs:
        assert q_eig_residual(diagonal, p.lam, p.x) <= cfg.tau_eig
        assert us_eig_residual(diagonal, p.lam, np.conj(p.x)) <= cfg.tau_eig


@pytest.mark.parametrize("rng, shape", [(seed, shape) for seed, shape in enumerate([(2, 2), (3, 2), (2, 3), (3, 3)])],
                         indirect=["rng"])
def test_q_pairs_solve_the_us_system_at_the_conjugate(rng, shape, make_symmetric, cfg):
    """Every Q-pair (λ, x) gives a US-pair (λ, x̄) and λ = H(x^d)"""
    H = make_symmetric(*shape)
    d = shape[1]
    for p in solve_q_eig(H, cfg):
        assert us_eig_residual(H, p.lam, np.conj(p.x)) <= cfg.tau_eig
        assert multilinear_eval(H, [p.x] * d) == pytest.approx(p.lam, abs=2 * cfg.tau_eig * max(1.0, abs(p.lam)))


def test_q_solver_rejects_pairs_off_the_us_system(diagonal):
    solver = QEigenSolver()
    assert solver.admissible(diagonal.data, 2.0, np.array([1.0, 0.0]), 1e-8)
    assert not solver.admissible(diagonal.data, 2.0, np.array([0.0, 1.0]), 1e-8)


@pytest.mark.parametrize("kind, dims", [("C", (2, 2, 2, 2)), ("G", (4, 4)), ("Q", (2, 2))])
def test_zero_tensor_gives_a_single_zero_pair(kind, dims, cfg):
    """Every unit vector is an eigenvector of the zero tensor; one representative is reported"""
    pairs = solver_registry.solve(kind, np.zeros(dims), cfg)
    assert len(pairs) == 1
    assert pairs[0].lam == 0.0
    assert np.linalg.norm(pairs[0].x) == pytest.approx(1.0)


def test_q_eig_cubic(make_symmetric, cfg):
    """Top Q-eigenvalue equals max |H(x³)| on the sphere"""
    H = make_symmetric(2, 3)
    pairs = solve_q_eig(H, cfg)
    top = pairs[0].lam
    value, _ = sphere_oracle(lambda x: abs(multilinear_eval(H, [x] * 3)), 2, samples=400, seed=1)
    assert top >= value - 1e-6
    assert top == pytest.approx(value, abs=1e-3)


def test_residual_functions_at_known_pairs(diagonal, quartic_gap_tensor):
    e1 = np.array([1, 0])
    assert c_eig_residual(diagonal, 2.0, e1) == pytest.approx(0.0)
    assert c_eig_residual(diagonal, 1.0, e1) == pytest.approx(1.0)
    assert q_eig_residual(diagonal, 2.0, e1) == pytest.approx(0.0)
    assert us_eig_residual(diagonal, 2.0, e1) == pytest.approx(0.0)

    x = np.array([1, 1]) / np.sqrt(2)
    assert c_eig_residual(quartic_gap_tensor, 0.5, x) == pytest.approx(0.0, abs=1e-15)
    G = embed_cps_to_css(quartic_gap_tensor)
    assert g_eig_residual(G, 0.25, x) == pytest.approx(0.0, abs=1e-15)


def test_residual_functions_validate_input(diagonal, quartic_form_tensor):
    with pytest.raises(DimensionError):
        c_eig_residual(diagonal, 2.0, [2, 0])
    with pytest.raises(DimensionError):
        q_eig_residual(diagonal, 2.0, [1, 0, 0])
    with pytest.raises(StructureError):
        c_eig_residual(quartic_form_tensor, 1.0, [1, 0])
    with pytest.raises(StructureError):
        g_eig_residual(np.eye(3), 1.0, [1, 0])


def test_registry_lookup():
    assert solver_registry.get("c").kind == EigenKind.C
    assert solver_registry.get(EigenKind.G).kind == EigenKind.G
    assert set(solver_registry.list_solvers()) == {"C", "G", "Q"}
    with pytest.raises(ArgumentError):
        solver_registry.get("Z")


def test_no_convergence_raises(make_hermitian):
    """A budget too small for any start is reported, not silently empty"""
    cfg = SolverConfig.from_settings(starts=1, max_iters=1, newton_max_iters=1, tau_eig=1e-300)
    with pytest.raises(ConvergenceError) as excinfo:
        solve_c_eig(make_hermitian(3), cfg)
    assert excinfo.value.best_residual is not None


SYMMETRIC_SHAPES = [(n, d) for n in (1, 2, 3) for d in (1, 2, 3)]
CPS_SHAPES = [(n, d) for d in (1, 2) for n in (1, 2, 3)]


@pytest.mark.parametrize("rng, shape", [(seed, SYMMETRIC_SHAPES[seed % 9]) for seed in range(20)], indirect=["rng"])
def test_q_c_relation(rng, shape, make_symmetric, cfg):
    """Q-eigenvalues square into C-eigenvalues of conj(H)⊗H and back"""
    report = check_q_c_relation(make_symmetric(*shape), cfg)

    assert report.verified
    directions = {entry.direction for entry in report.entries}
    assert directions == {"Q->C", "C->Q"}
    for entry in report.entries:
        if entry.direction == "Q->C":
            assert entry.target_lam == pytest.approx(entry.source_lam ** 2)


def test_c_g_relation(quartic_gap_tensor, cfg):
    report = check_c_g_relation(quartic_gap_tensor, cfg)

    assert report.verified
    tops = [e.target_lam for e in report.entries if e.direction == "C->G"]
    assert max(tops) == pytest.approx(0.25, abs=1e-8)


@pytest.mark.parametrize("rng, shape", [(seed, CPS_SHAPES[seed % 6]) for seed in range(20)], indirect=["rng"])
def test_c_g_relation_random(rng, shape, make_cps, cfg):
    """Every C-pair (λ, x) solves the G-system of the embedding at λ/2 and back"""
    report = check_c_g_relation(make_cps(*shape), cfg)
    assert report.verified
    for entry in report.entries:
        if entry.direction == "C->G":
            assert entry.residual <= 1e-8


def test_zero_symmetric_tensor_relation_is_trivial(cfg):
    report = check_q_c_relation(np.zeros((2, 2)), cfg)
    assert report.verified
    assert [(e.direction, e.source_lam) for e in report.entries] == [("Q->C", 0.0)]


def test_c_to_q_tolerance_is_capped():
    """The 1/λ growth of the allowed Q-residual stops at the cap"""
    assert c_to_q_tolerance(1e-8, 1e-4) == pytest.approx(1e-8 * C_TO_Q_AMPLIFICATION_CAP)
    assert c_to_q_tolerance(1e-8, 0.5) == pytest.approx(2e-8)
    assert c_to_q_tolerance(1e-8, 3.0) == pytest.approx(3e-8)


@pytest.mark.parametrize("rng, shape", [(seed, CPS_SHAPES[seed % 6]) for seed in range(6)], indirect=["rng"])
def test_c_eigenpairs_are_phase_invariant(rng, shape, make_cps, cfg):
    """(λ, x·e^{iφ}) is a C-eigenpair whenever (λ, x) is"""
    F = make_cps(*shape)
    d = shape[1]
    for pair in solve_c_eig(F, cfg):
        value = multilinear_eval(F, [np.conj(pair.x)] * d + [pair.x] * d)
        assert value == pytest.approx(pair.lam, rel=1e-9, abs=1e-9)
        for phi in rng.uniform(0.0, 2 * np.pi, 10):
            assert c_eig_residual(F, pair.lam, pair.x * np.exp(1j * phi)) <= cfg.tau_eig


def test_spectral_seeds_are_capped(make_cps):
    """Only the flattening eigenvectors with the largest |eigenvalue| seed Newton"""
    solver = CEigenSolver()
    seeds = solver.spectral_seeds(make_cps(3, 3).data)
    assert len(seeds) == MAX_SPECTRAL_SEEDS, "27 flattening eigenvectors exceed the cap"
    assert all(np.linalg.norm(x) == pytest.approx(1.0) for x in seeds)
    assert len(solver.spectral_seeds(make_cps(2, 1).data)) == 2


def test_sphere_oracle_on_hermitian_quadratic(make_hermitian):
    """Oracle value is feasible and close to the top eigenvalue"""
    A = make_hermitian(3)
    top = np.linalg.eigvalsh(A)[-1]
    value, x = sphere_oracle(lambda x: float(np.vdot(x, A @ x).real), 3, samples=200, seed=0)

    assert value <= top + 1e-9
    assert value == pytest.approx(top, abs=1e-4)
    assert np.linalg.norm(x) == pytest.approx(1.0)


def test_sphere_oracle_argument_checks():
    with pytest.raises(ArgumentError):
        sphere_oracle(lambda x: 0.0, 2, samples=0)
    with pytest.raises(ArgumentError):
        sphere_oracle(lambda x: 0.0, 0, samples=5)


def test_phase_helpers():
    x = np.array([0.6j, -0.8])
    y = canonical_phase(x)
    assert y[1] == pytest.approx(0.8)
    assert orbit_distance(x, y) == pytest.approx(0.0, abs=1e-12)
    assert orbit_distance(np.array([1, 0]), np.array([0, 1])) == pytest.approx(np.sqrt(2))


def test_multistart_runner_drops_failures():
    """Failed and None outcomes are counted; the rest keep start order"""
    runner = MultistartRunner("test", seed=5)

    def solve(start_id, start):
        if start_id == 1:
            raise ConvergenceError("stalled", best_residual=0.5)
        return None if start_id == 2 else start * 10

    assert runner.run([1, 2, 3, 4], solve) == [10, 40]
    assert runner.failures == 2
    assert len(runner.unit_starts(3, 4)) == 4


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
