"""Multiplication tables for S_d, small d only (d! x d! int table)."""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations

import numpy as np

from .partitions import Partition

MAX_TABLE_DEGREE = 7


@dataclass(frozen=True)
class SymmetricGroup:
    degree: int
    elements: np.ndarray  # (d!, d) images, lexicographic order; row 0 is the identity
    mul: np.ndarray  # mul[i, j] = index of elements[i] o elements[j]
    inv: np.ndarray
    cycle_types: tuple[Partition, ...]

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def identity(self) -> int:
        return 0

    def class_indicator(self, delta: Partition) -> np.ndarray:
        return np.array([ct == delta for ct in self.cycle_types], dtype=np.int64)

    def class_members(self, delta: Partition) -> np.ndarray:
        return np.flatnonzero(self.class_indicator(delta))


def cycle_type(perm) -> Partition:
    seen = [False] * len(perm)
    lengths = []
    for start in range(len(perm)):
        if seen[start]:
            continue
        n, x = 0, start
        while not seen[x]:
            seen[x] = True
            x = perm[x]
            n += 1
        lengths.append(n)
    return Partition(lengths)


@lru_cache(maxsize=None)
def symmetric_group(d: int) -> SymmetricGroup:
    if not 1 <= d <= MAX_TABLE_DEGREE:
        raise ValueError(f"S_{d} table not supported (max degree {MAX_TABLE_DEGREE})")
    elements = np.array(list(permutations(range(d))), dtype=np.int64).reshape(-1, d)
    order = len(elements)
    radix = d ** np.arange(d - 1, -1, -1, dtype=np.int64)
    codes = elements @ radix
    lookup = np.full(d**d, -1, dtype=np.int64)
    lookup[codes] = np.arange(order)
    # (p o q)(x) = p[q[x]]
    composed = elements[np.arange(order)[:, None, None], elements[None, :, :]]
    mul = lookup[composed @ radix]
    inverses = np.argsort(elements, axis=1)
    inv = lookup[inverses @ radix]
    types = tuple(cycle_type(p) for p in elements.tolist())
    return SymmetricGroup(d, elements, mul, inv, types)
