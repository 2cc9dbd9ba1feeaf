"""Dense complex tensors and their multilinear arithmetic"""

import logging
from typing import Dict, Iterable, Iterator, Sequence, Tuple, Union

import numpy as np

from ..core.exceptions import ArgumentError, DimensionError
from .indexing import full_group, orbit_average

logger = logging.getLogger(__name__)

ArrayLike = Union["DenseComplexTensor", np.ndarray, Sequence]


class DenseComplexTensor:
    """Immutable order-d array of complex scalars with an explicit dimension vector.

    Entries are stored row-major as a read-only complex128 numpy array. Public
    I/O uses 1-based indices; the Python API uses 0-based modes.
    """

    __slots__ = ("_data",)

    def __init__(self, data: ArrayLike):
        if isinstance(data, DenseComplexTensor):
            self._data = data._data
            return
        arr = np.array(data, dtype=np.complex128)
        if arr.ndim < 1:
            raise DimensionError("A tensor needs order at least 1")
        if 0 in arr.shape:
            raise DimensionError(f"Every dimension must be positive, got {arr.shape}")
        if not np.all(np.isfinite(arr)):
            raise ArgumentError("Tensor entries must be finite")
        arr.setflags(write=False)
        self._data = arr

    @classmethod
    def zeros(cls, dims: Sequence[int]) -> "DenseComplexTensor":
        return cls(np.zeros(tuple(dims), dtype=np.complex128))

    @classmethod
    def from_entries(cls, dims: Sequence[int], entries: Iterable[Tuple[Sequence[int], complex]]) -> "DenseComplexTensor":
        """Build from sparse (1-based index, value) records; absent entries are zero"""
        dims = tuple(int(n) for n in dims)
        if not dims or any(n < 1 for n in dims):
            raise DimensionError(f"Invalid dimension vector {dims}")
        arr = np.zeros(dims, dtype=np.complex128)
        seen = set()
        for idx, value in entries:
            idx = tuple(int(i) for i in idx)
            if len(idx) != len(dims):
                raise DimensionError(f"Index {idx} has {len(idx)} components, tensor has order {len(dims)}")
            if any(i < 1 or i > n for i, n in zip(idx, dims)):
                raise DimensionError(f"Index {idx} outside dims {dims}")
            if idx in seen:
                raise ArgumentError(f"Duplicate entry index {idx}")
            seen.add(idx)
            arr[tuple(i - 1 for i in idx)] = value
        return cls(arr)

    @property
    def data(self) -> np.ndarray:
        return self._data

    @property
    def dims(self) -> Tuple[int, ...]:
        return self._data.shape

    @property
    def order(self) -> int:
        return self._data.ndim

    @property
    def size(self) -> int:
        return self._data.size

    def entries(self) -> Iterator[Tuple[Tuple[int, ...], complex]]:
        """Nonzero entries as (1-based index, value), row-major"""
        for idx in zip(*np.nonzero(self._data)):
            yield tuple(int(i) + 1 for i in idx), complex(self._data[idx])

    def conj(self) -> "DenseComplexTensor":
        return DenseComplexTensor(np.conj(self._data))

    def allclose(self, other: ArrayLike, tol: float = 1e-12) -> bool:
        other = as_tensor(other)
        if other.dims != self.dims:
            return False
        return bool(np.max(np.abs(self._data - other.data), initial=0.0) <= tol)

    def __add__(self, other: ArrayLike) -> "DenseComplexTensor":
        other = as_tensor(other)
        _require_same_dims(self, other)
        return DenseComplexTensor(self._data + other.data)

    def __sub__(self, other: ArrayLike) -> "DenseComplexTensor":
        other = as_tensor(other)
        _require_same_dims(self, other)
        return DenseComplexTensor(self._data - other.data)

    def __mul__(self, scalar: complex) -> "DenseComplexTensor":
        return DenseComplexTensor(self._data * complex(scalar))

    __rmul__ = __mul__

    def __neg__(self) -> "DenseComplexTensor":
        return DenseComplexTensor(-self._data)

    def __repr__(self) -> str:
        return f"<DenseComplexTensor dims={self.dims} nnz={int(np.count_nonzero(self._data))}>"


def as_tensor(F: ArrayLike) -> DenseComplexTensor:
    return F if isinstance(F, DenseComplexTensor) else DenseComplexTensor(F)


def _require_same_dims(A: DenseComplexTensor, B: DenseComplexTensor) -> None:
    if A.dims != B.dims:
        raise DimensionError(f"Dimension mismatch {A.dims} vs {B.dims}")


def _as_vector(x, length: int, what: str) -> np.ndarray:
    v = np.asarray(x, dtype=np.complex128)
    if v.ndim != 1 or v.shape[0] != length:
        raise DimensionError(f"{what} must be a vector of length {length}, got shape {v.shape}")
    return v


def contract_modes(data: np.ndarray, vectors: Dict[int, np.ndarray]) -> np.ndarray:
    """Contract the listed modes of a raw array with vectors, no validation.

    Higher modes are contracted first so the remaining mode numbers stay valid.
    """
    out = data
    for mode in sorted(vectors, reverse=True):
        out = np.tensordot(out, vectors[mode], axes=([mode], [0]))
    return out


def multilinear_eval(F: ArrayLike, args: Sequence) -> complex:
    """Σ F_{i1...id} x¹_{i1}⋯x^d_{id}"""
    F = as_tensor(F)
    if len(args) != F.order:
        raise DimensionError(f"Expected {F.order} arguments, got {len(args)}")
    vectors = {k: _as_vector(x, n, f"Argument {k + 1}") for k, (x, n) in enumerate(zip(args, F.dims))}
    return complex(contract_modes(F.data, vectors))


def partial_eval(F: ArrayLike, args: Sequence[Tuple[int, Sequence]]) -> Union[DenseComplexTensor, complex]:
    """Contract the given (0-based mode, vector) pairs; contracting every mode returns a scalar"""
    F = as_tensor(F)
    vectors: Dict[int, np.ndarray] = {}
    for mode, x in args:
        if not 0 <= mode < F.order:
            raise ArgumentError(f"Mode {mode} outside 0..{F.order - 1}")
        if mode in vectors:
            raise ArgumentError(f"Mode {mode} contracted twice")
        vectors[mode] = _as_vector(x, F.dims[mode], f"Vector for mode {mode}")
    out = contract_modes(F.data, vectors)
    if len(vectors) == F.order:
        return complex(out)
    return DenseComplexTensor(out)


def symmetrize(F: ArrayLike) -> DenseComplexTensor:
    """Average over all index permutations; the result is exactly symmetric"""
    F = as_tensor(F)
    if len(set(F.dims)) != 1:
        raise DimensionError(f"symmetrize needs equal dims, got {F.dims}")
    return DenseComplexTensor(orbit_average(F.data, full_group(F.order)))


def tensor_norm(F: ArrayLike) -> float:
    return float(np.linalg.norm(as_tensor(F).data.ravel()))


def outer_product(A: ArrayLike, B: ArrayLike) -> DenseComplexTensor:
    """Order(A)+order(B) tensor with entries A_{i...}·B_{j...}"""
    A, B = as_tensor(A), as_tensor(B)
    return DenseComplexTensor(np.multiply.outer(A.data, B.data))


def outer_vectors(vectors: Sequence) -> DenseComplexTensor:
    """x¹⊗x²⊗⋯⊗x^d"""
    out = np.asarray(vectors[0], dtype=np.complex128)
    for v in vectors[1:]:
        out = np.multiply.outer(out, np.asarray(v, dtype=np.complex128))
    return DenseComplexTensor(out)


def power_vector(x, d: int) -> DenseComplexTensor:
    """x^{⊗d}"""
    return outer_vectors([x] * d)
