"""Bijections between conjugate forms and structured tensors"""

import logging
from typing import Dict, Optional, Sequence, Tuple

import numpy as np

from ..core.exceptions import StructureError
from ..core.models import FormKind
from ..forms.polynomial import ConjugatePolynomial, MonomialKey
from ..forms.realness import classify_form
from ..tensor.dense import ArrayLike, DenseComplexTensor, as_tensor
from ..tensor.indexing import (
    Groups,
    canonical_index_map,
    full_group,
    orbit_average,
    orbit_sizes,
    orbit_sum,
    split_groups,
)
from ..tensor.symmetry import is_partial_symmetric, is_symmetric, shift_conjugate

logger = logging.getLogger(__name__)


def _collect(data: np.ndarray, groups: Groups) -> Dict[Tuple[int, ...], complex]:
    """Orbit sums keyed by the 0-based canonical multi-index, zeros dropped"""
    sums = orbit_sum(data, groups)
    out = {}
    for flat in np.flatnonzero(sums):
        idx = np.unravel_index(int(flat), data.shape)
        out[tuple(int(i) for i in idx)] = complex(sums[flat])
    return out


def _expand(shape: Tuple[int, ...], groups: Groups, coefficients: Dict[Tuple[int, ...], complex]) -> np.ndarray:
    """Spread each orbit coefficient evenly over its orbit"""
    canon_values = np.zeros(int(np.prod(shape)), dtype=np.complex128)
    for idx, value in coefficients.items():
        canon_values[np.ravel_multi_index(idx, shape)] = value
    canon = canonical_index_map(shape, groups)
    return (canon_values[canon] / orbit_sizes(shape, groups)).reshape(shape)


def _require_degree(f: ConjugatePolynomial, kind: FormKind, degree: Optional[int], op: str) -> int:
    form = classify_form(f)
    if f.is_zero():
        if degree is None:
            raise StructureError(f"{op}: the zero polynomial needs an explicit degree")
        return degree
    if kind == FormKind.GENERAL_CONJUGATE:
        if form.kind == FormKind.GENERAL:
            raise StructureError(f"{op}: polynomial is not homogeneous")
        found = form.total_degree
    else:
        if form.kind != kind:
            raise StructureError(f"{op}: expected a {kind.value}, got {form.kind.value}")
        found = form.degree
    if degree is not None and degree != found:
        raise StructureError(f"{op}: polynomial has degree {found}, requested {degree}")
    if not found:
        raise StructureError(f"{op}: constants have no tensor representation")
    return found


def s_forward(F: ArrayLike, tau: Optional[float] = None) -> ConjugatePolynomial:
    """f_S(x) = F(x̄,…,x̄, x,…,x) for a partial-symmetric F"""
    F = as_tensor(F)
    check = is_partial_symmetric(F, tau)
    if not check:
        raise StructureError(f"s_forward needs a partial-symmetric tensor ({check.reason} at {check.index})")
    d = F.order // 2
    terms = {
        MonomialKey(tuple(i + 1 for i in idx[:d]), tuple(i + 1 for i in idx[d:])): c
        for idx, c in _collect(F.data, split_groups(F.order)).items()
    }
    return ConjugatePolynomial(F.dims[0], terms)


def s_inverse(f: ConjugatePolynomial, d: Optional[int] = None, n: Optional[int] = None) -> DenseComplexTensor:
    """Partial-symmetric tensor whose entries are coefficient / (|Π(I)|·|Π(J)|)"""
    d = _require_degree(f, FormKind.SYMMETRIC_CONJUGATE, d, "s_inverse")
    n = max(f.n, n or 0)
    if n < 1:
        raise StructureError("s_inverse needs at least one variable")
    coefficients = {
        tuple(i - 1 for i in key.conj + key.plain): c for key, c in f.items()
    }
    shape = (n,) * (2 * d)
    return DenseComplexTensor(_expand(shape, split_groups(2 * d), coefficients))


def g_forward(F: ArrayLike, tau: Optional[float] = None) -> ConjugatePolynomial:
    """f_G(x) = F((x̄;x),…,(x̄;x)); modes 1..n bind x̄ and n+1..2n bind x"""
    F = as_tensor(F)
    if any(m % 2 for m in F.dims):
        raise StructureError(f"g_forward needs even dimensions, got {F.dims}")
    check = is_symmetric(F, tau)
    if not check:
        raise StructureError(f"g_forward needs a symmetric tensor ({check.reason} at {check.index})")
    n = F.dims[0] // 2
    terms = {}
    for idx, c in _collect(F.data, full_group(F.order)).items():
        key = MonomialKey(tuple(i + 1 for i in idx if i < n), tuple(i - n + 1 for i in idx if i >= n))
        terms[key] = c
    return ConjugatePolynomial(n, terms)


def g_inverse(f: ConjugatePolynomial, d: Optional[int] = None, n: Optional[int] = None) -> DenseComplexTensor:
    """Symmetric tensor over dimension 2n with entries coefficient / |Π(j1…jd)|"""
    d = _require_degree(f, FormKind.GENERAL_CONJUGATE, d, "g_inverse")
    n = max(f.n, n or 0)
    if n < 1:
        raise StructureError("g_inverse needs at least one variable")
    coefficients = {
        tuple(i - 1 for i in key.conj) + tuple(j - 1 + n for j in key.plain): c
        for key, c in f.items()
    }
    shape = (2 * n,) * d
    return DenseComplexTensor(_expand(shape, full_group(d), coefficients))


def complex_form_of(H: ArrayLike, tau: Optional[float] = None) -> ConjugatePolynomial:
    """h(x) = H(x,…,x) for a symmetric H"""
    H = as_tensor(H)
    check = is_symmetric(H, tau)
    if not check:
        raise StructureError(f"complex_form_of needs a symmetric tensor ({check.reason} at {check.index})")
    terms = {
        MonomialKey((), tuple(i + 1 for i in idx)): c
        for idx, c in _collect(H.data, full_group(H.order)).items()
    }
    return ConjugatePolynomial(H.dims[0], terms)


def symmetric_tensor_of(h: ConjugatePolynomial, d: Optional[int] = None, n: Optional[int] = None) -> DenseComplexTensor:
    """Symmetric H with H_{i1…id} = a_{i1…id} / |Π(i1…id)|"""
    d = _require_degree(h, FormKind.COMPLEX, d, "symmetric_tensor_of")
    n = max(h.n, n or 0)
    if n < 1:
        raise StructureError("symmetric_tensor_of needs at least one variable")
    coefficients = {tuple(j - 1 for j in key.plain): c for key, c in h.items()}
    return DenseComplexTensor(_expand((n,) * d, full_group(d), coefficients))


def css_project(F: ArrayLike) -> DenseComplexTensor:
    """Nearest conjugate super-symmetric tensor: symmetrize, then average with the shifted conjugate.

    Under G this maps a general conjugate form to its real part.
    """
    F = as_tensor(F)
    if len(set(F.dims)) != 1 or F.dims[0] % 2:
        raise StructureError(f"css_project needs equal even dimensions, got {F.dims}")
    S = orbit_average(F.data, full_group(F.order))
    return DenseComplexTensor((S + shift_conjugate(S)) / 2)
