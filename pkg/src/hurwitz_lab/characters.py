"""Irreducible characters of S_d by the Murnaghan-Nakayama rule, and the
normalized central characters phi_lambda(Delta) = |C_Delta| chi_lambda(Delta) / dim lambda.
"""
from __future__ import annotations

import threading
from fractions import Fraction

from .partitions import Partition, as_partition, class_size, dimension


def _beta_set(lam: Partition) -> tuple[int, ...]:
    n = len(lam)
    return tuple(part + n - 1 - i for i, part in enumerate(lam))


def _from_beta_set(beta) -> Partition:
    beta = sorted(beta, reverse=True)
    n = len(beta)
    return Partition(b - (n - 1 - i) for i, b in enumerate(beta) if b - (n - 1 - i) > 0)


def remove_border_strips(lam: Partition, r: int):
    """Yield (sign, remainder) for every border strip of length r in lam.

    sign is (-1)^(height), height being the number of rows the strip spans minus one.
    """
    beta = _beta_set(lam)
    occupied = set(beta)
    for b in beta:
        target = b - r
        if target < 0 or target in occupied:
            continue
        height = sum(1 for c in beta if target < c < b)
        rest = [c for c in beta if c != b] + [target]
        yield (-1) ** height, _from_beta_set(rest)


class CharacterTable:
    """Memoized character values chi_lambda(Delta).

    The memo is shared between threads; a lock guards inserts so concurrent
    writers never interleave.  Values are pure functions of the key, so a race
    at worst recomputes an entry.
    """

    def __init__(self) -> None:
        self.memo: dict[tuple[Partition, Partition], int] = {}
        self._lock = threading.Lock()

    def chi(self, lam, delta) -> int:
        lam, delta = as_partition(lam), as_partition(delta)
        if sum(lam) != sum(delta):
            raise ValueError(f"weight mismatch: |{lam}| != |{delta}|")
        return self._chi(lam, delta)

    def _chi(self, lam: Partition, delta: Partition) -> int:
        if not delta:
            return 1
        key = (lam, delta)
        cached = self.memo.get(key)
        if cached is not None:
            return cached
        # strips are peeled off in decreasing cycle length; delta is already sorted
        r, rest = delta[0], Partition(delta[1:])
        value = sum(sign * self._chi(sub, rest) for sign, sub in remove_border_strips(lam, r))
        with self._lock:
            self.memo[key] = value
        return value

    def phi(self, lam, delta) -> Fraction:
        lam, delta = as_partition(lam), as_partition(delta)
        if sum(lam) != sum(delta):
            return Fraction(0)
        return Fraction(class_size(delta) * self._chi(lam, delta), dimension(lam))


default_table = CharacterTable()


def chi(lam, delta) -> int:
    """Character of the irreducible representation lam at cycle type delta."""
    return default_table.chi(lam, delta)


def phi(lam, delta) -> Fraction:
    """|C_delta| chi_lam(delta) / dim lam; zero when the weights differ."""
    return default_table.phi(lam, delta)
