"""Canonical index maps over permutation orbits of tensor positions"""

from functools import lru_cache
from math import factorial
from typing import Sequence, Tuple

import numpy as np

from ..core.exceptions import DimensionError

Groups = Tuple[Tuple[int, ...], ...]


@lru_cache(maxsize=64)
def canonical_index_map(shape: Tuple[int, ...], groups: Groups) -> np.ndarray:
    """Flat index of the group-sorted representative of every flat position.

    Axes within one group are sorted nondecreasingly; axes outside every group
    keep their index. Two positions share a representative exactly when one is
    a permutation of the other inside each group.
    """
    for group in groups:
        if len({shape[axis] for axis in group}) > 1:
            raise DimensionError(f"Axes {group} of shape {shape} do not share one dimension")

    idx = np.indices(shape).reshape(len(shape), -1)
    for group in groups:
        axes = list(group)
        if len(axes) > 1:
            idx[axes] = np.sort(idx[axes], axis=0)
    flat = np.ravel_multi_index(tuple(idx), shape)
    flat.setflags(write=False)
    return flat


def full_group(order: int) -> Groups:
    return (tuple(range(order)),)


def split_groups(order: int) -> Groups:
    half = order // 2
    return (tuple(range(half)), tuple(range(half, order)))


def orbit_sizes(shape: Tuple[int, ...], groups: Groups) -> np.ndarray:
    """Size of the orbit containing each flat position"""
    canon = canonical_index_map(shape, groups)
    counts = np.bincount(canon, minlength=canon.size)
    return counts[canon]


def orbit_sum(data: np.ndarray, groups: Groups) -> np.ndarray:
    """Sum of entries over each orbit, stored at the representative position"""
    canon = canonical_index_map(data.shape, groups)
    flat = data.ravel()
    re = np.bincount(canon, weights=flat.real, minlength=flat.size)
    im = np.bincount(canon, weights=flat.imag, minlength=flat.size)
    return re + 1j * im


def orbit_average(data: np.ndarray, groups: Groups) -> np.ndarray:
    """Replace every entry with the mean over its orbit"""
    canon = canonical_index_map(data.shape, groups)
    counts = np.bincount(canon, minlength=canon.size)
    sums = orbit_sum(data, groups)
    mean = sums / np.maximum(counts, 1)
    return mean[canon].reshape(data.shape)


def multiset_permutations(indices: Sequence[int]) -> int:
    """|Π(i1...ik)|, the number of distinct orderings of a multiset"""
    counts: dict = {}
    for i in indices:
        counts[i] = counts.get(i, 0) + 1
    total = factorial(len(indices))
    for c in counts.values():
        total //= factorial(c)
    return total
