"""Hurwitz numbers of orientable and non-orientable surfaces.

Three independent routes are provided:

* the character formula  H^{E,F}(d; D^1..D^F) = sum_lam (dim lam / d!)^E prod_i phi_lam(D^i);
* exhaustive counting of solutions of the fundamental-group relator in S_d
  (``oracle_orientable`` / ``oracle_nonorientable``), divided by d!;
* the formal logarithm of the disconnected generating series, which turns
  disconnected counts into connected ones.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import factorial, prod
from typing import Iterable, Mapping, Sequence

import numpy as np

from . import _accel
from .characters import phi
from .partitions import Partition, as_partition, class_size, dimension, enumerate_partitions
from .symmetric_group import symmetric_group

ORACLE_MAX_DEGREE = 6
_INT64_HEADROOM = 2**62


@dataclass(frozen=True)
class CoveringSpec:
    """Base Euler characteristic, degree and ordered branch profiles."""

    euler_base: int
    degree: int
    profiles: tuple[Partition, ...] = ()

    def __post_init__(self) -> None:
        profiles = tuple(as_partition(p) for p in self.profiles)
        object.__setattr__(self, "profiles", profiles)
        if self.degree < 0:
            raise ValueError(f"degree must be nonnegative, got {self.degree}")
        if self.euler_base > 2:
            raise ValueError(f"Euler characteristic of a closed surface is at most 2, got {self.euler_base}")
        for p in profiles:
            if sum(p) != self.degree:
                raise ValueError(f"profile {p} has weight {sum(p)}, expected degree {self.degree}")

    @classmethod
    def from_profiles(cls, euler_base: int, profiles: Sequence, degree: int | None = None) -> "CoveringSpec":
        profiles = tuple(as_partition(p) for p in profiles)
        if degree is None:
            if not profiles:
                raise ValueError("degree is required when no profiles are given")
            degree = sum(profiles[0])
        return cls(euler_base, degree, profiles)

    @property
    def cover_euler(self) -> int:
        return riemann_hurwitz_euler(self.euler_base, self.degree, self.profiles)


def riemann_hurwitz_euler(euler: int, degree: int, profiles: Iterable) -> int:
    """Euler characteristic of the cover: d E + sum_i (len(D^i) - d)."""
    total = degree * euler
    for p in profiles:
        if sum(p) != degree:
            raise ValueError(f"profile {tuple(p)} does not have weight {degree}")
        total += len(p) - degree
    return total


def hurwitz_frobenius(spec: CoveringSpec) -> Fraction:
    d, e = spec.degree, spec.euler_base
    if d < 1:
        raise ValueError("degree must be at least 1")
    total = Fraction(0)
    d_fact = factorial(d)
    for lam in enumerate_partitions(d):
        term = Fraction(dimension(lam), d_fact) ** e
        for delta in spec.profiles:
            term *= phi(lam, delta)
            if not term:
                break
        total += term
    return total


def hurwitz_number(euler: int, profiles: Sequence = (), degree: int | None = None) -> Fraction:
    """Shorthand for ``hurwitz_frobenius(CoveringSpec.from_profiles(...))``."""
    return hurwitz_frobenius(CoveringSpec.from_profiles(euler, profiles, degree))


# -- relator counting ------------------------------------------------------

def _check_oracle_input(profiles, d: int) -> tuple[Partition, ...]:
    if not 1 <= d <= ORACLE_MAX_DEGREE:
        raise ValueError(f"oracle degree must be in 1..{ORACLE_MAX_DEGREE}, got {d}")
    profiles = tuple(as_partition(p) for p in profiles)
    for p in profiles:
        if sum(p) != d:
            raise ValueError(f"profile {p} does not have weight {d}")
    return profiles


def _relator_count(d: int, free_factor: np.ndarray, free_copies: int, profiles, tuples_bound: int) -> int:
    """Number of tuples with (free part) X_1 ... X_F = e, X_i ranging over its class.

    The free part is ``free_copies`` independent factors, each distributed as
    ``free_factor`` (commutator or square counts).  Prefix products are
    aggregated into a histogram over S_d, so the work is O(F (d!)^2).
    """
    if tuples_bound >= _INT64_HEADROOM:
        raise ValueError("solution count would overflow 64-bit accumulation; reduce degree or genus")
    group = symmetric_group(d)
    hist = np.zeros(group.order, dtype=np.int64)
    hist[group.identity] = 1
    for _ in range(free_copies):
        hist = _accel.group_convolve(hist, free_factor, group.mul)
    for p in profiles:
        hist = _accel.group_convolve(hist, group.class_indicator(p), group.mul)
    return int(hist[group.identity])


def oracle_count_orientable(g: int, profiles: Sequence, d: int) -> int:
    """#{(a_1, b_1, ..., a_g, b_g, X_1..X_F) : prod [a_j, b_j] X_1 ... X_F = e, X_i in C_{D^i}}."""
    if g < 0:
        raise ValueError(f"genus must be nonnegative, got {g}")
    profiles = _check_oracle_input(profiles, d)
    group = symmetric_group(d)
    bound = group.order ** (2 * g) * prod(class_size(p) for p in profiles)
    comm = _accel.commutator_counts(group.mul, group.inv) if g else np.zeros(0, dtype=np.int64)
    return _relator_count(d, comm, g, profiles, bound)


def oracle_count_nonorientable(k: int, profiles: Sequence, d: int) -> int:
    """#{(R_1..R_k, X_1..X_F) : R_1^2 ... R_k^2 X_1 ... X_F = e}.

    k is the number of cross-caps: k = 1 is the projective plane, k = 2 the Klein
    bottle, and the base Euler characteristic is 2 - k.
    """
    if k < 1:
        raise ValueError(f"cross-cap count must be positive, got {k}")
    profiles = _check_oracle_input(profiles, d)
    group = symmetric_group(d)
    bound = group.order**k * prod(class_size(p) for p in profiles)
    squares = _accel.square_counts(group.mul)
    return _relator_count(d, squares, k, profiles, bound)


def oracle_orientable(g: int, profiles: Sequence, d: int) -> Fraction:
    return Fraction(oracle_count_orientable(g, profiles, d), factorial(d))


def oracle_nonorientable(k: int, profiles: Sequence, d: int) -> Fraction:
    return Fraction(oracle_count_nonorientable(k, profiles, d), factorial(d))


# -- connected / disconnected ---------------------------------------------

Monomial = tuple  # tuple[Partition, ...], one partition per branch point


def _mono_degree(key: Monomial) -> int:
    return sum(key[0]) if key else 0


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(Partition(x + y) for x, y in zip(a, b))


def _series_mul(a: Mapping, b: Mapping, max_degree: int) -> dict:
    out: dict = {}
    for ka, va in a.items():
        da = _mono_degree(ka)
        for kb, vb in b.items():
            if da + _mono_degree(kb) > max_degree:
                continue
            key = _mono_mul(ka, kb)
            out[key] = out.get(key, 0) + va * vb
    return {k: v for k, v in out.items() if v}


def series_log(series: Mapping, n_alphabets: int, max_degree: int) -> dict:
    """Formal logarithm of 1 + (positive-degree part of ``series``), truncated at max_degree."""
    constant = tuple(Partition() for _ in range(n_alphabets))
    if series.get(constant, 1) != 1:
        raise ValueError("series must have constant term 1")
    u = {k: Fraction(v) for k, v in series.items() if k != constant and v and _mono_degree(k) <= max_degree}
    result: dict = {}
    power = dict(u)
    for k in range(1, max_degree + 1):
        if not power:
            break
        sign = Fraction(1 if k % 2 else -1, k)
        for key, v in power.items():
            result[key] = result.get(key, 0) + sign * v
        power = _series_mul(power, u, max_degree)
    return {k: v for k, v in result.items() if v}


def series_exp(series: Mapping, n_alphabets: int, max_degree: int) -> dict:
    """Formal exponential of a series without constant term, truncated at max_degree."""
    constant = tuple(Partition() for _ in range(n_alphabets))
    if series.get(constant, 0):
        raise ValueError("series must have zero constant term")
    u = {k: Fraction(v) for k, v in series.items() if v and _mono_degree(k) <= max_degree}
    result: dict = {constant: Fraction(1)}
    power: dict = {constant: Fraction(1)}
    for k in range(1, max_degree + 1):
        power = {key: v / k for key, v in _series_mul(power, u, max_degree).items()}
        if not power:
            break
        for key, v in power.items():
            result[key] = result.get(key, 0) + v
    return {k: v for k, v in result.items() if v}


def disconnected_table(euler: int, n_profiles: int, max_degree: int) -> dict[Monomial, Fraction]:
    """All H^{E,F}(d; D^1..D^F) for 1 <= d <= max_degree, zeros included."""
    table: dict[Monomial, Fraction] = {}
    for d in range(1, max_degree + 1):
        for key in product(enumerate_partitions(d), repeat=n_profiles):
            table[key] = hurwitz_frobenius(CoveringSpec(euler, d, key))
    return table


def connected_hurwitz(disconnected: Mapping[Monomial, Fraction], euler: int, max_degree: int) -> dict[CoveringSpec, Fraction]:
    """Connected Hurwitz numbers from disconnected ones via the formal logarithm.

    ``disconnected`` maps a profile tuple (one partition per branch point, all of
    the same weight d) to H^{E,F}(d; ...), and must cover every degree up to
    ``max_degree``.  Disconnected covers multiply monomials, so
    log(1 + sum H p_{D^1} ... p_{D^F}) = sum H_con p_{D^1} ... p_{D^F}.
    The cover Euler characteristic of each entry is ``spec.cover_euler``.
    """
    if not disconnected:
        raise ValueError("no disconnected data supplied")
    n_alphabets = len(next(iter(disconnected)))
    present = {_mono_degree(k) for k in disconnected}
    missing = [d for d in range(1, max_degree + 1) if d not in present]
    if missing:
        raise ValueError(f"disconnected data missing degrees {missing}")
    for key in disconnected:
        if len(key) != n_alphabets or len({sum(p) for p in key}) > 1:
            raise ValueError(f"malformed profile key {key}")
    logged = series_log(disconnected, n_alphabets, max_degree)
    return {CoveringSpec(euler, _mono_degree(k), k): v for k, v in logged.items()}


def connected_number(euler: int, profiles: Sequence, degree: int | None = None) -> Fraction:
    """H_con^{E,F}(d; profiles), computed from the disconnected table up to degree d."""
    spec = CoveringSpec.from_profiles(euler, profiles, degree)
    table = disconnected_table(euler, len(spec.profiles), spec.degree)
    return connected_hurwitz(table, euler, spec.degree).get(spec, Fraction(0))


# -- aggregated sums -------------------------------------------------------

def corollary_sum(lam, n: int, g: int, euler_cover: int) -> Fraction:
    """S^{E'}_E(lam): sum of H^{E, n+E}(d; lam, D^1..D^{n+E-1}) over tuples with
    sum len(D^i) = -len(lam) + n d + E', where E = 2 - 2g.
    """
    lam = as_partition(lam)
    d = sum(lam)
    if d < 1:
        raise ValueError("lam must be nonempty")
    e = 2 - 2 * g
    slots = n + e - 1
    if slots < 0:
        return Fraction(0)
    target = -len(lam) + n * d + euler_cover
    total = Fraction(0)
    for deltas in product(enumerate_partitions(d), repeat=slots):
        if sum(len(x) for x in deltas) != target:
            continue
        total += hurwitz_frobenius(CoveringSpec(e, d, (lam,) + deltas))
    return total
