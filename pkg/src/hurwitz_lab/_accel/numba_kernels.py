"""numba-compiled versions of the hot kernels."""
from __future__ import annotations

import numpy as np
from numba import njit


@njit(cache=True)
def group_convolve(h, c, mul):
    n = h.shape[0]
    out = np.zeros(n, dtype=np.int64)
    for i in range(n):
        hi = h[i]
        if hi == 0:
            continue
        for j in range(n):
            cj = c[j]
            if cj != 0:
                out[mul[i, j]] += hi * cj
    return out


@njit(cache=True)
def commutator_counts(mul, inv):
    n = inv.shape[0]
    out = np.zeros(n, dtype=np.int64)
    for a in range(n):
        ia = inv[a]
        for b in range(n):
            out[mul[mul[mul[a, b], ia], inv[b]]] += 1
    return out


@njit(cache=True)
def square_counts(mul):
    n = mul.shape[0]
    out = np.zeros(n, dtype=np.int64)
    for r in range(n):
        out[mul[r, r]] += 1
    return out


@njit(cache=True, nogil=True)
def trace_powers(mats, max_power):
    samples, size = mats.shape[0], mats.shape[1]
    out = np.empty((samples, max_power), dtype=np.complex128)
    power = np.empty((size, size), dtype=np.complex128)
    scratch = np.empty((size, size), dtype=np.complex128)
    for s in range(samples):
        a = mats[s]
        for i in range(size):
            for j in range(size):
                power[i, j] = a[i, j]
        for m in range(max_power):
            if m:
                for i in range(size):
                    for j in range(size):
                        acc = 0j
                        for k in range(size):
                            acc += power[i, k] * a[k, j]
                        scratch[i, j] = acc
                for i in range(size):
                    for j in range(size):
                        power[i, j] = scratch[i, j]
            tr = 0j
            for i in range(size):
                tr += power[i, i]
            out[s, m] = tr
    return out


@njit(cache=True, nogil=True)
def chain_product(factors):
    count, samples, size = factors.shape[0], factors.shape[1], factors.shape[2]
    out = np.empty((samples, size, size), dtype=np.complex128)
    for s in range(samples):
        for i in range(size):
            for j in range(size):
                out[s, i, j] = factors[0, s, i, j]
        for f in range(1, count):
            tmp = np.zeros((size, size), dtype=np.complex128)
            for i in range(size):
                for k in range(size):
                    aik = out[s, i, k]
                    for j in range(size):
                        tmp[i, j] += aik * factors[f, s, k, j]
            for i in range(size):
                for j in range(size):
                    out[s, i, j] = tmp[i, j]
    return out
