from __future__ import annotations

from fractions import Fraction
from math import factorial

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from hurwitz_lab.hurwitz import hurwitz_number
from hurwitz_lab.partitions import dimension, enumerate_partitions
from hurwitz_lab.symfun import (
    DegreeBoundError,
    PowerSumPolynomial,
    bkp_degree_polynomial,
    cauchy_exponential,
    cauchy_sum,
    characteristic_map,
    check_series_grades,
    complete_homogeneous,
    pochhammer,
    schur_at_p_infinity,
    schur_conjugation_identity_check,
    schur_diagonal,
    schur_from_eigenvalues,
    schur_in_powersums,
    schur_of_matrix,
    tau_2kp_series,
    tau_bkp_matrix,
    tau_bkp_product,
    tau_bkp_series,
)

P = PowerSumPolynomial


def test_polynomial_arithmetic():
    a = P.p(1) * P.p(1) - P.p(2)
    assert a.coefficient((1, 1)) == 1 and a.coefficient((2,)) == -1
    assert (a + a).coefficient((2,)) == -2
    assert a.evaluate([3, 5]) == 4
    assert a.homogeneous_part(2) == a
    assert a.negate_variables() == P.p(1) * P.p(1) + P.p(2)


def test_truncation_at_degree_bound():
    small = P.p(2, degree_bound=3)
    assert small * small == P({}, 3)
    with pytest.raises(DegreeBoundError):
        schur_in_powersums((6, 5), 10)


def test_complete_homogeneous_two():
    assert complete_homogeneous(2) == P({(1, 1): Fraction(1, 2), (2,): Fraction(1, 2)})


@pytest.mark.parametrize("d", range(1, 7))
def test_jacobi_trudi_equals_characteristic_map(d):
    for lam in enumerate_partitions(d):
        assert schur_in_powersums(lam) == characteristic_map(lam)
        assert schur_conjugation_identity_check(lam)


@pytest.mark.parametrize("lam", [(1,), (2,), (1, 1), (2, 1), (3, 1), (2, 2), (3, 2, 1)])
def test_schur_at_p_infinity(lam):
    assert schur_at_p_infinity(lam) == Fraction(dimension(lam), factorial(sum(lam)))
    assert schur_in_powersums(lam).evaluate(lambda m: 1 if m == 1 else 0) == schur_at_p_infinity(lam)


@pytest.mark.parametrize("N", [1, 2, 3, 4])
def test_identity_evaluation_is_pochhammer(N):
    for d in range(1, 5):
        for lam in enumerate_partitions(d):
            assert schur_diagonal(lam, [1] * N) == pochhammer(N, lam) * schur_at_p_infinity(lam)


def test_pochhammer_values():
    assert pochhammer(3, (2, 1)) == 3 * 4 * 2
    assert pochhammer(1, (1, 1)) == 0


def test_eigenvalue_paths_agree_on_random_sets():
    rng = np.random.default_rng(7)
    worst = 0.0
    for trial in range(100):
        n = 1 + trial % 4
        x = rng.normal(size=n) + 1j * rng.normal(size=n)
        for lam in [(1,), (2,), (1, 1), (2, 1), (3,), (2, 2), (3, 1)]:
            exact = schur_in_powersums(lam).evaluate_numeric([np.sum(x**m) for m in range(1, 5)])
            if len(lam) > n:
                exact = 0j
            bialt = schur_from_eigenvalues(lam, x)
            worst = max(worst, abs(bialt - exact) / max(1.0, abs(exact)))
    assert worst <= 1e-10


def test_coinciding_eigenvalues_fall_back():
    assert schur_from_eigenvalues((2, 1), [1.0, 1.0, 1.0]) == pytest.approx(8.0)


def test_matrix_evaluation_uses_spectrum():
    rng = np.random.default_rng(3)
    m = rng.normal(size=(3, 3))
    eig = np.linalg.eigvals(m)
    for lam in [(2,), (1, 1), (2, 1), (1, 1, 1, 1)]:
        assert schur_of_matrix(lam, m) == pytest.approx(schur_from_eigenvalues(lam, eig), abs=1e-9)


@pytest.mark.parametrize("N", [2, 3])
def test_cauchy_identity(N):
    rng = np.random.default_rng(N)
    x = 0.3 * (rng.normal(size=(N, N)) + 1j * rng.normal(size=(N, N)))
    y = 0.3 * (rng.normal(size=(N, N)) + 1j * rng.normal(size=(N, N)))
    bound = 6
    via_schur = sum(
        schur_of_matrix(lam, x) * schur_of_matrix(lam, y)
        for d in range(bound + 1)
        for lam in enumerate_partitions(d)
    )
    assert via_schur == pytest.approx(cauchy_sum(x, y, bound), rel=1e-10)
    assert cauchy_exponential(x, y, bound) == pytest.approx(cauchy_sum(x, y, bound), rel=1e-10)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 3), st.integers(0, 2**32 - 1))
def test_tau_bkp_matrix_equals_product(n, seed):
    rng = np.random.default_rng(seed)
    q, _ = np.linalg.qr(rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n)))
    eig = 0.8 * rng.uniform(size=n) * np.exp(2j * np.pi * rng.uniform(size=n))
    x = q @ np.diag(eig) @ q.conj().T
    assert tau_bkp_matrix(x) == pytest.approx(tau_bkp_product(eig), rel=1e-8)


def test_tau_bkp_matrix_rejects_large_spectrum():
    with pytest.raises(ValueError):
        tau_bkp_matrix(np.eye(2))


def test_bkp_degree_polynomial_matches_series():
    series = tau_bkp_series(4)
    for d in range(1, 5):
        poly = bkp_degree_polynomial(d)
        for delta in enumerate_partitions(d):
            assert poly.coefficient(delta) == series.coefficient(d, len(delta), [delta])


@pytest.mark.parametrize("d", range(1, 6))
def test_2kp_coefficients_are_sphere_numbers(d):
    series = tau_2kp_series(5)
    for a in enumerate_partitions(d):
        for b in enumerate_partitions(d):
            assert series.coefficient(d, len(a) + len(b), [a, b]) == hurwitz_number(2, [a, b], d)


@pytest.mark.parametrize("d", range(1, 6))
def test_bkp_coefficients_are_projective_numbers(d):
    series = tau_bkp_series(5)
    for delta in enumerate_partitions(d):
        assert series.coefficient(d, len(delta), [delta]) == hurwitz_number(1, [delta], d)


def test_series_grades_are_euler_characteristics():
    assert check_series_grades(tau_2kp_series(6), 2)
    assert check_series_grades(tau_bkp_series(6), 1)


def test_series_json_keys():
    js = tau_bkp_series(3).to_json_dict()
    assert js["3:1:[3]"] == "1/3"
    assert js["2:2:[1,1]"] == "1/1"
