"""Kernel backend selection.

The numba kernels are used when numba imports and ``HURWITZ_LAB_NUMBA`` is not
set to ``0``.  Both backends return identical results; the numpy path exists for
environments without a JIT and as a cross-check.
"""
from __future__ import annotations

import os
from contextlib import contextmanager
from types import ModuleType

from . import numpy_kernels

KERNEL_NAMES = ("group_convolve", "commutator_counts", "square_counts", "trace_powers", "chain_product")


def _load_numba() -> ModuleType | None:
    try:
        from . import numba_kernels
    except ImportError:
        return None
    return numba_kernels


_numba = _load_numba()
_active: ModuleType = numpy_kernels
if _numba is not None and os.environ.get("HURWITZ_LAB_NUMBA", "1") != "0":
    _active = _numba


def available_backends() -> list[str]:
    return ["numpy"] + (["numba"] if _numba is not None else [])


def backend() -> str:
    return "numba" if _active is _numba else "numpy"


def set_backend(name: str) -> None:
    global _active
    if name == "numpy":
        _active = numpy_kernels
    elif name == "numba":
        if _numba is None:
            raise RuntimeError("numba is not installed")
        _active = _numba
    else:
        raise ValueError(f"unknown backend {name!r}")


@contextmanager
def use_backend(name: str):
    previous = backend()
    set_backend(name)
    try:
        yield
    finally:
        set_backend(previous)


def group_convolve(h, c, mul):
    return _active.group_convolve(h, c, mul)


def commutator_counts(mul, inv):
    return _active.commutator_counts(mul, inv)


def square_counts(mul):
    return _active.square_counts(mul)


def trace_powers(mats, max_power: int):
    return _active.trace_powers(mats, max_power)


def chain_product(factors):
    return _active.chain_product(factors)
