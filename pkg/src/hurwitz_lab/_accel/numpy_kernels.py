"""Pure-numpy versions of the hot kernels.  Same signatures as numba_kernels."""
from __future__ import annotations

import numpy as np


def group_convolve(h: np.ndarray, c: np.ndarray, mul: np.ndarray) -> np.ndarray:
    """out[mul[i, j]] += h[i] * c[j]  (convolution in the group algebra)."""
    out = np.zeros(len(h), dtype=np.int64)
    rows = np.flatnonzero(h)
    cols = np.flatnonzero(c)
    if rows.size == 0 or cols.size == 0:
        return out
    weights = np.multiply.outer(h[rows], c[cols])
    np.add.at(out, mul[np.ix_(rows, cols)].ravel(), weights.ravel())
    return out


def commutator_counts(mul: np.ndarray, inv: np.ndarray) -> np.ndarray:
    """counts[g] = #{(a, b) : a b a^-1 b^-1 = g}."""
    n = len(inv)
    a = np.arange(n)[:, None]
    b = np.arange(n)[None, :]
    ab = mul[a, b]
    comm = mul[mul[ab, inv[a]], inv[b]]
    return np.bincount(comm.ravel(), minlength=n).astype(np.int64)


def square_counts(mul: np.ndarray) -> np.ndarray:
    """counts[g] = #{r : r^2 = g}."""
    n = len(mul)
    idx = np.arange(n)
    return np.bincount(mul[idx, idx], minlength=n).astype(np.int64)


def trace_powers(mats: np.ndarray, max_power: int) -> np.ndarray:
    """out[s, m-1] = tr(mats[s]^m) for m = 1..max_power."""
    out = np.empty((mats.shape[0], max_power), dtype=np.complex128)
    power = mats
    for m in range(max_power):
        if m:
            power = power @ mats
        out[:, m] = np.einsum("sii->s", power)
    return out


def chain_product(factors: np.ndarray) -> np.ndarray:
    """Batched ordered product factors[0] @ factors[1] @ ... over axis 0."""
    out = factors[0]
    for f in factors[1:]:
        out = out @ f
    return out
