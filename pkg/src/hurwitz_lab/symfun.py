"""Symmetric functions in the power-sum basis.

Polynomials in p_1, p_2, ... are dicts from a partition D (the monomial
p_D = p_{D_1} p_{D_2} ...) to exact rationals.  Eigenvalue and matrix
evaluations are conversions at the edge.  The 2KP and BKP generating series
carry the Euler characteristic of the cover as an explicit integer grade.
"""
from __future__ import annotations

import cmath
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import factorial, prod
from typing import Callable, Iterable, Mapping, Sequence

import numpy as np

from .characters import phi
from .hurwitz import riemann_hurwitz_euler
from .partitions import (
    Partition,
    as_partition,
    cells,
    conjugate,
    dimension,
    enumerate_partitions,
    format_partition,
    z_factor,
)

DEFAULT_DEGREE_BOUND = 10


class DegreeBoundError(ValueError):
    pass


@dataclass(frozen=True)
class PowerSumPolynomial:
    terms: Mapping[Partition, Fraction] = field(default_factory=dict)
    degree_bound: int = DEFAULT_DEGREE_BOUND

    def __post_init__(self) -> None:
        clean = {}
        for key, value in self.terms.items():
            key = as_partition(key)
            if not value:
                continue
            if sum(key) > self.degree_bound:
                raise DegreeBoundError(f"monomial {key} exceeds degree bound {self.degree_bound}")
            clean[key] = Fraction(value)
        object.__setattr__(self, "terms", clean)

    @classmethod
    def constant(cls, value=1, degree_bound: int = DEFAULT_DEGREE_BOUND) -> "PowerSumPolynomial":
        return cls({Partition(): Fraction(value)}, degree_bound)

    @classmethod
    def p(cls, m: int, degree_bound: int = DEFAULT_DEGREE_BOUND) -> "PowerSumPolynomial":
        return cls({Partition([m]): Fraction(1)}, degree_bound)

    def coefficient(self, delta) -> Fraction:
        return self.terms.get(as_partition(delta), Fraction(0))

    def _bound(self, other: "PowerSumPolynomial") -> int:
        return min(self.degree_bound, other.degree_bound)

    def __add__(self, other):
        if not isinstance(other, PowerSumPolynomial):
            other = PowerSumPolynomial.constant(other, self.degree_bound)
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return PowerSumPolynomial(out, self._bound(other))

    __radd__ = __add__

    def __neg__(self):
        return PowerSumPolynomial({k: -v for k, v in self.terms.items()}, self.degree_bound)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, PowerSumPolynomial):
            return PowerSumPolynomial({k: v * other for k, v in self.terms.items()}, self.degree_bound)
        bound = self._bound(other)
        out: dict[Partition, Fraction] = {}
        for ka, va in self.terms.items():
            wa = sum(ka)
            for kb, vb in other.terms.items():
                if wa + sum(kb) > bound:
                    continue
                key = Partition(ka + kb)
                out[key] = out.get(key, 0) + va * vb
        return PowerSumPolynomial(out, bound)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, PowerSumPolynomial):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def homogeneous_part(self, d: int) -> "PowerSumPolynomial":
        return PowerSumPolynomial({k: v for k, v in self.terms.items() if sum(k) == d}, self.degree_bound)

    def negate_variables(self) -> "PowerSumPolynomial":
        """Substitute p_m -> -p_m for every m."""
        return PowerSumPolynomial({k: v * (-1) ** len(k) for k, v in self.terms.items()}, self.degree_bound)

    def evaluate(self, p: Sequence | Callable[[int], object]):
        """Evaluate at p_m = p[m-1] (sequence) or p(m) (callable)."""
        get = p if callable(p) else (lambda m: p[m - 1] if m <= len(p) else 0)
        return sum((v * prod(get(m) for m in k) for k, v in self.terms.items()), Fraction(0))

    def evaluate_numeric(self, p) -> complex:
        get = p if callable(p) else (lambda m: p[m - 1] if m <= len(p) else 0)
        return sum(float(v) * prod(complex(get(m)) for m in k) for k, v in self.terms.items())

    def evaluate_batch(self, traces: np.ndarray) -> np.ndarray:
        """traces[:, m-1] holds p_m per sample; returns one value per sample."""
        out = np.zeros(traces.shape[0], dtype=np.complex128)
        for k, v in sorted(self.terms.items()):
            term = np.full(traces.shape[0], float(v), dtype=np.complex128)
            for m in k:
                term = term * traces[:, m - 1]
            out += term
        return out

    def max_degree(self) -> int:
        return max((sum(k) for k in self.terms), default=0)

    def __repr__(self) -> str:
        body = " + ".join(f"{v}*p{format_partition(k)}" for k, v in sorted(self.terms.items()))
        return f"PowerSumPolynomial({body or '0'})"


def _check_bound(d: int, bound: int) -> None:
    if d > bound:
        raise DegreeBoundError(f"weight {d} exceeds degree bound {bound}")


@lru_cache(maxsize=None)
def complete_homogeneous(k: int, degree_bound: int = DEFAULT_DEGREE_BOUND) -> PowerSumPolynomial:
    """s_(k) = h_k: coefficient of z^k in exp(sum_m p_m z^m / m)."""
    if k < 0:
        return PowerSumPolynomial({}, degree_bound)
    _check_bound(k, degree_bound)
    return PowerSumPolynomial({delta: Fraction(1, z_factor(delta)) for delta in enumerate_partitions(k)}, degree_bound)


def _determinant(matrix: list[list[PowerSumPolynomial]], bound: int) -> PowerSumPolynomial:
    """Laplace expansion along rows with memoization over the used-column set."""
    size = len(matrix)
    memo: dict[int, PowerSumPolynomial] = {}

    def minor(row: int, used: int) -> PowerSumPolynomial:
        if row == size:
            return PowerSumPolynomial.constant(1, bound)
        if used in memo:
            return memo[used]
        total = PowerSumPolynomial({}, bound)
        sign = 1
        for col in range(size):
            if used & (1 << col):
                continue
            entry = matrix[row][col]
            if entry.terms:
                term = entry * minor(row + 1, used | (1 << col))
                total = total + (term if sign > 0 else -term)
            sign = -sign
        memo[used] = total
        return total

    return minor(0, 0)


@lru_cache(maxsize=None)
def _schur_jt(lam: Partition, degree_bound: int) -> PowerSumPolynomial:
    size = len(lam)
    matrix = [[complete_homogeneous(lam[i] - i + j, degree_bound) for j in range(size)] for i in range(size)]
    return _determinant(matrix, degree_bound)


def schur_in_powersums(lam, degree_bound: int = DEFAULT_DEGREE_BOUND) -> PowerSumPolynomial:
    """Schur function as the Jacobi-Trudi determinant det[h_{lam_i - i + j}]."""
    lam = as_partition(lam)
    _check_bound(sum(lam), degree_bound)
    if not lam:
        return PowerSumPolynomial.constant(1, degree_bound)
    return _schur_jt(lam, degree_bound)


@lru_cache(maxsize=None)
def _char_map(lam: Partition, degree_bound: int) -> PowerSumPolynomial:
    d = sum(lam)
    scale = Fraction(dimension(lam), factorial(d))
    return PowerSumPolynomial({delta: scale * phi(lam, delta) for delta in enumerate_partitions(d)}, degree_bound)


def characteristic_map(lam, degree_bound: int = DEFAULT_DEGREE_BOUND) -> PowerSumPolynomial:
    """(dim lam / d!) sum_{D |- d} phi_lam(D) p_D; equals s_lam(p)."""
    lam = as_partition(lam)
    _check_bound(sum(lam), degree_bound)
    return _char_map(lam, degree_bound)


def schur_conjugation_identity_check(lam, degree_bound: int = DEFAULT_DEGREE_BOUND) -> bool:
    """True iff s_lam(p) = (-1)^|lam| s_{lam^T}(-p) coefficientwise."""
    lam = as_partition(lam)
    lhs = schur_in_powersums(lam, degree_bound)
    rhs = schur_in_powersums(conjugate(lam), degree_bound).negate_variables() * (-1) ** sum(lam)
    return lhs == rhs


def pochhammer(n: int, lam) -> int:
    """(N)_lam = prod over boxes (i, j) of (N + j - i)."""
    return prod(n + j - i for i, j in cells(as_partition(lam)))


def schur_at_p_infinity(lam) -> Fraction:
    """s_lam(1, 0, 0, ...) = dim lam / d!."""
    lam = as_partition(lam)
    return Fraction(dimension(lam), factorial(sum(lam)))


# -- evaluation on eigenvalues and matrices ---------------------------------

_VANDERMONDE_FLOOR = 1e-8


def schur_from_eigenvalues(lam, x: Sequence[complex]) -> complex:
    """Bialternant det[x_j^{lam_i - i + N}] / det[x_j^{N - i}].

    Exactly zero when len(lam) > N.  When the Vandermonde denominator is tiny
    relative to the entry scale (near-coinciding eigenvalues) the power-sum
    polynomial is evaluated instead.
    """
    lam = as_partition(lam)
    x = np.asarray(x, dtype=np.complex128)
    n = len(x)
    if len(lam) > n:
        return 0j
    if n == 0:
        return 1 + 0j
    padded = list(lam) + [0] * (n - len(lam))
    rows = np.arange(n)
    num = np.linalg.det(x[None, :] ** np.array([padded[i] - i - 1 + n for i in rows])[:, None])
    den = np.linalg.det(x[None, :] ** (n - 1 - rows)[:, None])
    scale = max(1.0, float(np.max(np.abs(x)))) ** (n * (n - 1) // 2)
    if abs(den) < _VANDERMONDE_FLOOR * scale:
        traces = [complex(np.sum(x**m)) for m in range(1, sum(lam) + 1)]
        return complex(schur_in_powersums(lam, max(sum(lam), 1)).evaluate_numeric(traces))
    return complex(num / den)


def _square(x: np.ndarray) -> np.ndarray:
    x = np.asarray(x)
    if x.ndim != 2 or x.shape[0] != x.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {x.shape}")
    return x


def power_sum_of_matrix(m: int, x) -> complex:
    """tr X^m by repeated multiplication."""
    if m < 1:
        raise ValueError(f"power must be positive, got {m}")
    x = _square(np.asarray(x, dtype=np.complex128))
    power = x
    for _ in range(m - 1):
        power = power @ x
    return complex(np.trace(power))


def spectral_invariant(delta, x) -> complex:
    """P_D(X) = prod_i tr X^{D_i}."""
    x = _square(np.asarray(x, dtype=np.complex128))
    return complex(prod((power_sum_of_matrix(m, x) for m in as_partition(delta)), start=1 + 0j))


def schur_of_matrix(lam, x) -> complex:
    """s_lam evaluated on the eigenvalues of X, through traces of powers."""
    lam = as_partition(lam)
    x = _square(np.asarray(x, dtype=np.complex128))
    if len(lam) > x.shape[0]:
        return 0j
    traces = [power_sum_of_matrix(m, x) for m in range(1, sum(lam) + 1)]
    return complex(schur_in_powersums(lam, max(sum(lam), 1)).evaluate_numeric(traces))


def _diagonal_traces(diag: Sequence, max_power: int) -> list[Fraction]:
    values = [Fraction(v) for v in diag]
    return [sum((v**m for v in values), Fraction(0)) for m in range(1, max_power + 1)]


def spectral_invariant_diagonal(delta, diag: Sequence) -> Fraction:
    """P_D(C) for a diagonal matrix with exact (rational) entries."""
    delta = as_partition(delta)
    traces = _diagonal_traces(diag, max(delta, default=0))
    return prod((traces[m - 1] for m in delta), start=Fraction(1))


def schur_diagonal(lam, diag: Sequence) -> Fraction:
    """s_lam(C) for a diagonal matrix with exact entries."""
    lam = as_partition(lam)
    if len(lam) > len(diag):
        return Fraction(0)
    traces = _diagonal_traces(diag, sum(lam))
    return schur_in_powersums(lam, max(sum(lam), 1)).evaluate(traces)


def tau_bkp_product(x: Sequence[complex]) -> complex:
    """prod_i (1 - x_i)^-1 prod_{i<j} (1 - x_i x_j)^-1."""
    x = [complex(v) for v in x]
    value = 1 + 0j
    for i, xi in enumerate(x):
        value /= 1 - xi
        for xj in x[i + 1:]:
            value /= 1 - xi * xj
    return value


def tau_bkp_matrix(x, tolerance: float = 1e-9, steps: int = 256) -> complex:
    """det^{1/2}((1+X)/(1-X)) / det^{1/2}(I (x) I - X (x) X).

    The square root branch is followed continuously along sX, s: 0 -> 1,
    starting from the value 1 at X = 0.
    """
    x = _square(np.asarray(x, dtype=np.complex128))
    n = x.shape[0]
    radius = float(np.max(np.abs(np.linalg.eigvals(x)))) if n else 0.0
    if radius >= 1 - tolerance:
        raise ValueError(f"spectral radius {radius:.6g} too close to or beyond 1")
    eye = np.eye(n)
    eye2 = np.eye(n * n)

    def ratio(s: float) -> complex:
        sx = s * x
        top = np.linalg.det(np.linalg.solve((eye - sx).T, (eye + sx).T).T)
        return complex(top / np.linalg.det(eye2 - np.kron(sx, sx)))

    root = 1 + 0j
    for s in np.linspace(0.0, 1.0, steps + 1)[1:]:
        candidate = cmath.sqrt(ratio(float(s)))
        root = candidate if abs(candidate - root) <= abs(candidate + root) else -candidate
    return root


# -- graded generating series ------------------------------------------------

@dataclass(frozen=True)
class GradedSeries:
    """Coefficients keyed by (degree d, euler grade E', monomial).

    The monomial is a tuple with one partition per power-sum alphabet.  The
    grade replaces the h^{-E'} marker: the coefficient of h^{-E'} p_D sits at
    (d, E', D).
    """

    n_alphabets: int
    degree_bound: int
    slices: Mapping[tuple[int, int], Mapping[tuple, Fraction]]

    def coefficient(self, d: int, grade: int, monomial) -> Fraction:
        monomial = tuple(as_partition(m) for m in monomial)
        return self.slices.get((d, grade), {}).get(monomial, Fraction(0))

    def degree_slice(self, d: int) -> dict[tuple, Fraction]:
        """All grades of degree d summed (h = 1)."""
        out: dict[tuple, Fraction] = {}
        for (deg, _), terms in self.slices.items():
            if deg == d:
                for mono, v in terms.items():
                    out[mono] = out.get(mono, 0) + v
        return {k: v for k, v in out.items() if v}

    def items(self):
        for (d, grade), terms in sorted(self.slices.items()):
            for mono, v in sorted(terms.items()):
                yield d, grade, mono, v

    def to_json_dict(self) -> dict[str, str]:
        """{"d:E':D1|D2": "num/den"} with partitions in bracket form."""
        out = {}
        for d, grade, mono, v in self.items():
            key = f"{d}:{grade}:" + "|".join(format_partition(p) for p in mono)
            out[key] = f"{v.numerator}/{v.denominator}"
        return out


def _graded_exp(generators: Iterable[tuple[tuple, int, Fraction]], n_alphabets: int, bound: int) -> GradedSeries:
    """exp of a sum of graded monomials; degree is the weight of the first alphabet."""
    gens = [(tuple(m), grade, Fraction(c)) for m, grade, c in generators]
    empty = tuple(Partition() for _ in range(n_alphabets))

    def degree(mono) -> int:
        return sum(mono[0])

    # exp(G) = sum_k G^k / k!, graded by degree, computed degree by degree:
    # d * E_d = sum_j j G_j E_{d-j}  (E = exp G, subscripts are degrees)
    by_degree: dict[int, dict[tuple, Fraction]] = {0: {(empty, 0): Fraction(1)}}
    gen_by_degree: dict[int, list] = {}
    for mono, grade, c in gens:
        gen_by_degree.setdefault(degree(mono), []).append((mono, grade, c))
    for d in range(1, bound + 1):
        acc: dict[tuple, Fraction] = {}
        for j in range(1, d + 1):
            for mono_g, grade_g, c in gen_by_degree.get(j, ()):
                for (mono_e, grade_e), v in by_degree[d - j].items():
                    key = (tuple(Partition(a + b) for a, b in zip(mono_g, mono_e)), grade_g + grade_e)
                    acc[key] = acc.get(key, 0) + j * c * v
        by_degree[d] = {k: v / d for k, v in acc.items() if v}
    slices: dict[tuple[int, int], dict[tuple, Fraction]] = {}
    for d, terms in by_degree.items():
        for (mono, grade), v in terms.items():
            slices.setdefault((d, grade), {})[mono] = v
    return GradedSeries(n_alphabets, bound, slices)


def tau_2kp_series(degree_bound: int = DEFAULT_DEGREE_BOUND) -> GradedSeries:
    """exp(h^-2 sum_d p_d^(1) p_d^(2) / d) truncated at cover degree degree_bound."""
    _check_bound(degree_bound, DEFAULT_DEGREE_BOUND)
    gens = [((Partition([d]), Partition([d])), 2, Fraction(1, d)) for d in range(1, degree_bound + 1)]
    return _graded_exp(gens, 2, degree_bound)


def tau_bkp_series(degree_bound: int = DEFAULT_DEGREE_BOUND) -> GradedSeries:
    """exp(h^-2 sum_m p_m^2 / 2m + h^-1 sum_{m odd} p_m / m), truncated at degree_bound."""
    _check_bound(degree_bound, DEFAULT_DEGREE_BOUND)
    gens = []
    for m in range(1, degree_bound + 1):
        if 2 * m <= degree_bound:
            gens.append(((Partition([m, m]),), 2, Fraction(1, 2 * m)))
        if m % 2:
            gens.append(((Partition([m]),), 1, Fraction(1, m)))
    return _graded_exp(gens, 1, degree_bound)


def check_series_grades(series: GradedSeries, euler_base: int) -> bool:
    """Every grade equals the Riemann-Hurwitz Euler characteristic of its monomial."""
    return all(
        grade == riemann_hurwitz_euler(euler_base, d, mono) for d, grade, mono, _ in series.items() if d > 0
    )


def bkp_degree_polynomial(d: int, max_length: int | None = None) -> PowerSumPolynomial:
    """sum of s_mu over mu |- d (optionally len(mu) <= max_length): degree-d part of tau^BKP_1."""
    total = PowerSumPolynomial({}, max(d, 1))
    for mu in enumerate_partitions(d):
        if max_length is None or len(mu) <= max_length:
            total = total + schur_in_powersums(mu, max(d, 1))
    return total


def cauchy_sum(x, y, degree_bound: int) -> complex:
    """sum_{|D| <= bound} P_D(X) P_D(Y) / z_D."""
    total = 0j
    for d in range(degree_bound + 1):
        for delta in enumerate_partitions(d):
            total += spectral_invariant(delta, x) * spectral_invariant(delta, y) / z_factor(delta)
    return total


def cauchy_exponential(x, y, degree_bound: int) -> complex:
    """Degree <= bound part of prod_i exp(sum_m x_i^m p_m(Y) / m), by power-series exponentiation in a
    scaling variable u (x_i -> u x_i)."""
    eig = np.linalg.eigvals(np.asarray(x, dtype=np.complex128))
    coeffs = [0j] + [complex(np.sum(eig**m)) * power_sum_of_matrix(m, y) / m for m in range(1, degree_bound + 1)]
    series = [1 + 0j] + [0j] * degree_bound
    for d in range(1, degree_bound + 1):
        series[d] = sum(j * coeffs[j] * series[d - j] for j in range(1, d + 1)) / d
    return sum(series)
