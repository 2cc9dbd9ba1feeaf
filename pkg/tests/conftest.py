"""Shared fixtures: seeded generators, worked example tensors and random structured-tensor factories"""

from pathlib import Path

import numpy as np
import pytest

from src.bijection import css_project
from src.core.models import SolverConfig
from src.tensor import DenseComplexTensor, outer_product, symmetrize

DATA_DIR = Path(__file__).resolve().parent.parent / "data"


def random_complex(rng: np.random.Generator, shape) -> np.ndarray:
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


@pytest.fixture
def rng(request):
    """Deterministic generator for test data; indirect parametrization supplies the seed"""
    return np.random.default_rng(getattr(request, "param", 20240601))


@pytest.fixture
def data_dir() -> Path:
    return DATA_DIR


@pytest.fixture
def cfg():
    """Solver budget that keeps the suites fast"""
    return SolverConfig.from_settings(starts=16, max_iters=1000, seed=0)


@pytest.fixture
def quartic_gap_tensor():
    """CPS tensor with F₁₁₂₂ = F₂₂₁₁ = 1: single-vector max ½, multilinear max 1"""
    return DenseComplexTensor.from_entries([2, 2, 2, 2], [((1, 1, 2, 2), 1), ((2, 2, 1, 1), 1)])


@pytest.fixture
def quartic_form_tensor():
    """Partial-symmetric tensor of (1−i)~x1²x1² + 4~x1~x2x1x2 + 6~x1~x2x2²"""
    entries = [
        ((1, 1, 1, 1), 1 - 1j),
        ((1, 2, 1, 2), 1), ((1, 2, 2, 1), 1), ((2, 1, 1, 2), 1), ((2, 1, 2, 1), 1),
        ((1, 2, 2, 2), 3), ((2, 1, 2, 2), 3),
    ]
    return DenseComplexTensor.from_entries([2, 2, 2, 2], entries)


@pytest.fixture
def quartic_form_text():
    return "(1-1i)*~x1^2*x1^2 + 4*~x1*~x2*x1*x2 + 6*~x1*~x2*x2^2"


@pytest.fixture
def quadratic_form_matrix():
    """Symmetric 4×4 matrix of i~x1² + 2~x1x1 + 4~x2x1 + 3x2²"""
    return DenseComplexTensor([
        [1j, 0, 1, 0],
        [0, 0, 2, 0],
        [1, 2, 0, 0],
        [0, 0, 0, 3],
    ])


@pytest.fixture
def quadratic_form_text():
    return "i*~x1^2 + 2*~x1*x1 + 4*~x2*x1 + 3*x2^2"


@pytest.fixture
def make_hermitian(rng):
    def make(n: int) -> np.ndarray:
        A = random_complex(rng, (n, n))
        return (A + A.conj().T) / 2
    return make


@pytest.fixture
def make_symmetric(rng):
    def make(n: int, d: int) -> DenseComplexTensor:
        return symmetrize(random_complex(rng, (n,) * d))
    return make


@pytest.fixture
def make_cps(rng):
    """Σ αₖ conj(Hₖ)⊗Hₖ with symmetric Hₖ; nonnegative αₖ give a PSD flattening"""
    def make(n: int, d: int, terms: int = 3, psd: bool = False) -> DenseComplexTensor:
        data = np.zeros((n,) * (2 * d), dtype=np.complex128)
        for _ in range(terms):
            H = symmetrize(random_complex(rng, (n,) * d))
            alpha = abs(rng.standard_normal()) if psd else rng.standard_normal()
            data += alpha * outer_product(H.conj(), H).data
        return DenseComplexTensor(data)
    return make


@pytest.fixture
def make_css(rng):
    def make(n: int, d: int) -> DenseComplexTensor:
        return css_project(random_complex(rng, (2 * n,) * d))
    return make


@pytest.fixture
def make_tensor(rng):
    def make(*dims: int) -> DenseComplexTensor:
        return DenseComplexTensor(random_complex(rng, dims))
    return make


@pytest.fixture
def make_unit_vector(rng):
    def make(n: int) -> np.ndarray:
        z = random_complex(rng, n)
        return z / np.linalg.norm(z)
    return make
