"""Conjugate complex polynomials over canonical monomial keys"""

from types import MappingProxyType
from typing import Dict, Iterable, Iterator, Mapping, NamedTuple, Optional, Sequence, Tuple, Union

import numpy as np

from ..core.exceptions import ArgumentError, DimensionError

Scalar = Union[int, float, complex]


class MonomialKey(NamedTuple):
    """Sorted conjugated and plain variable indices (1-based) of one monomial"""
    conj: Tuple[int, ...]
    plain: Tuple[int, ...]

    @classmethod
    def of(cls, conj: Iterable[int] = (), plain: Iterable[int] = ()) -> "MonomialKey":
        return cls(tuple(sorted(int(i) for i in conj)), tuple(sorted(int(i) for i in plain)))

    @property
    def degree(self) -> int:
        return len(self.conj) + len(self.plain)

    def conjugate(self) -> "MonomialKey":
        return MonomialKey(self.plain, self.conj)

    def times(self, other: "MonomialKey") -> "MonomialKey":
        return MonomialKey.of(self.conj + other.conj, self.plain + other.plain)

    def sort_key(self) -> Tuple[int, Tuple[int, ...], Tuple[int, ...]]:
        return (self.degree, self.conj, self.plain)


def conjugate_key(key: MonomialKey) -> MonomialKey:
    """Swap conjugated and plain indices"""
    return MonomialKey(key.plain, key.conj)


ONE = MonomialKey((), ())


class ConjugatePolynomial:
    """Immutable map from canonical monomial keys to nonzero complex coefficients"""

    __slots__ = ("_n", "_terms")

    def __init__(self, n: int, terms: Optional[Mapping] = None):
        if n < 0:
            raise ArgumentError(f"Number of variables must be nonnegative, got {n}")
        merged: Dict[MonomialKey, complex] = {}
        for key, coeff in (terms or {}).items():
            key = MonomialKey.of(*key)
            for i in key.conj + key.plain:
                if i < 1 or i > n:
                    raise DimensionError(f"Variable index {i} outside 1..{n}")
            merged[key] = merged.get(key, 0j) + complex(coeff)
        self._n = int(n)
        self._terms = MappingProxyType(
            {k: merged[k] for k in sorted(merged, key=MonomialKey.sort_key) if merged[k] != 0}
        )

    @classmethod
    def from_terms(cls, n: int, pairs: Iterable[Tuple[Sequence, Scalar]]) -> "ConjugatePolynomial":
        """Merge (key, coefficient) pairs; repeated keys add up"""
        merged: Dict[MonomialKey, complex] = {}
        for key, coeff in pairs:
            key = MonomialKey.of(*key)
            merged[key] = merged.get(key, 0j) + complex(coeff)
        return cls(n, merged)

    @classmethod
    def constant(cls, value: Scalar, n: int = 0) -> "ConjugatePolynomial":
        return cls(n, {ONE: value})

    @classmethod
    def variable(cls, index: int, conjugated: bool = False, n: Optional[int] = None) -> "ConjugatePolynomial":
        key = MonomialKey((index,), ()) if conjugated else MonomialKey((), (index,))
        return cls(index if n is None else n, {key: 1})

    @property
    def n(self) -> int:
        return self._n

    @property
    def terms(self) -> Mapping[MonomialKey, complex]:
        return self._terms

    @property
    def degree(self) -> int:
        return max((k.degree for k in self._terms), default=0)

    def is_zero(self) -> bool:
        return not self._terms

    def coefficient(self, key: Sequence) -> complex:
        return self._terms.get(MonomialKey.of(*key), 0j)

    def items(self) -> Iterator[Tuple[MonomialKey, complex]]:
        return iter(self._terms.items())

    def with_n(self, n: int) -> "ConjugatePolynomial":
        return ConjugatePolynomial(n, self._terms)

    def conjugate(self) -> "ConjugatePolynomial":
        """Conjugate every coefficient and swap every key"""
        return ConjugatePolynomial(self._n, {k.conjugate(): np.conj(c) for k, c in self._terms.items()})

    def __add__(self, other: Union["ConjugatePolynomial", Scalar]) -> "ConjugatePolynomial":
        other = _lift(other)
        merged = dict(self._terms)
        for k, c in other.items():
            merged[k] = merged.get(k, 0j) + c
        return ConjugatePolynomial(max(self._n, other.n), merged)

    __radd__ = __add__

    def __neg__(self) -> "ConjugatePolynomial":
        return ConjugatePolynomial(self._n, {k: -c for k, c in self._terms.items()})

    def __sub__(self, other: Union["ConjugatePolynomial", Scalar]) -> "ConjugatePolynomial":
        return self + (-_lift(other))

    def __rsub__(self, other: Scalar) -> "ConjugatePolynomial":
        return _lift(other) - self

    def __mul__(self, other: Union["ConjugatePolynomial", Scalar]) -> "ConjugatePolynomial":
        other = _lift(other)
        merged: Dict[MonomialKey, complex] = {}
        for ka, ca in self._terms.items():
            for kb, cb in other.items():
                k = ka.times(kb)
                merged[k] = merged.get(k, 0j) + ca * cb
        return ConjugatePolynomial(max(self._n, other.n), merged)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "ConjugatePolynomial":
        if not isinstance(exponent, int) or exponent < 0:
            raise ArgumentError(f"Exponent must be a nonnegative integer, got {exponent!r}")
        out = ConjugatePolynomial.constant(1, self._n)
        for _ in range(exponent):
            out = out * self
        return out

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ConjugatePolynomial):
            return NotImplemented
        return dict(self._terms) == dict(other.terms)

    __hash__ = None  # type: ignore[assignment]

    def __len__(self) -> int:
        return len(self._terms)

    def __repr__(self) -> str:
        return f"<ConjugatePolynomial n={self._n} terms={len(self._terms)} degree={self.degree}>"


def _lift(value: Union[ConjugatePolynomial, Scalar]) -> ConjugatePolynomial:
    if isinstance(value, ConjugatePolynomial):
        return value
    if isinstance(value, (int, float, complex, np.number)):
        return ConjugatePolynomial.constant(complex(value))
    raise TypeError(f"Cannot combine a polynomial with {type(value).__name__}")


def eval_poly(p: ConjugatePolynomial, x: Sequence) -> complex:
    """Σ coeff · Π conj(x_i) · Π x_j"""
    x = np.asarray(x, dtype=np.complex128)
    if x.ndim != 1 or x.shape[0] != p.n:
        raise DimensionError(f"Point must have length {p.n}, got shape {x.shape}")
    xc = np.conj(x)
    total = 0j
    for key, coeff in p.items():
        term = coeff
        for i in key.conj:
            term *= xc[i - 1]
        for j in key.plain:
            term *= x[j - 1]
        total += term
    return complex(total)
