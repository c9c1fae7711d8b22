"""Exact Gaussian moments of trace words by summing over Wick pairings.

A word is a sequence of letters ``("Z", k)``, ``("Zd", k)`` (the Hermitian
conjugate of Z_k) or ``("C", diag)`` for a diagonal matrix.  For entries with
E|Z_ij|^2 = 1 every pairing of the Z_k entries with the Z_k^dagger entries
contributes a product of traces of diagonal products over the index cycles
it creates.  This is independent of any character or Hurwitz machinery and is
used as an oracle for small moments.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import permutations, product
from math import prod
from typing import Sequence

Letter = tuple
Word = Sequence[Letter]


def _find(parent: list[int], a: int) -> int:
    while parent[a] != a:
        parent[a] = parent[parent[a]]
        a = parent[a]
    return a


def _union(parent: list[int], a: int, b: int) -> None:
    ra, rb = _find(parent, a), _find(parent, b)
    if ra != rb:
        parent[ra] = rb


def wick_expectation(words: Sequence[Word], size: int) -> Fraction:
    """E[prod_w tr(w)] for complex Ginibre letters of the given matrix size."""
    slots = 0
    diagonal_links: list[tuple[int, tuple]] = []
    z_occ: dict[int, list[tuple[int, int]]] = {}
    zd_occ: dict[int, list[tuple[int, int]]] = {}
    links: list[tuple[int, int]] = []
    for word in words:
        length = len(word)
        start = slots
        slots += length
        for pos, (kind, arg) in enumerate(word):
            row, col = start + pos, start + (pos + 1) % length
            if kind == "C":
                links.append((row, col))
                if arg is not None:
                    diagonal_links.append((row, tuple(Fraction(v) for v in arg)))
            elif kind == "Z":
                z_occ.setdefault(arg, []).append((row, col))
            elif kind == "Zd":
                zd_occ.setdefault(arg, []).append((row, col))
            else:
                raise ValueError(f"unknown letter {kind!r}")
    for k in set(z_occ) | set(zd_occ):
        if len(z_occ.get(k, ())) != len(zd_occ.get(k, ())):
            return Fraction(0)
    base = list(range(slots))
    for a, b in links:
        _union(base, a, b)

    keys = sorted(z_occ)
    total = Fraction(0)
    for choice in product(*(permutations(range(len(z_occ[k]))) for k in keys)):
        parent = list(base)
        for k, perm in zip(keys, choice):
            for (r1, c1), j in zip(z_occ[k], perm):
                r2, c2 = zd_occ[k][j]
                # E[Z_{r1 c1} conj(Z_{c2 r2})] = delta(r1, c2) delta(c1, r2)
                _union(parent, r1, c2)
                _union(parent, c1, r2)
        classes: dict[int, list[tuple]] = {}
        for s in range(slots):
            classes.setdefault(_find(parent, s), [])
        for s, diag in diagonal_links:
            classes[_find(parent, s)].append(diag)
        total += prod((_class_trace(diags, size) for diags in classes.values()), start=Fraction(1))
    return total


def _class_trace(diags: list[tuple], size: int) -> Fraction:
    if not diags:
        return Fraction(size)
    return sum((prod((d[a] for d in diags), start=Fraction(1)) for a in range(size)), Fraction(0))


def chain_words(n: int, t: int, insertions: Sequence | None) -> tuple[list[Letter], list[Letter]]:
    """Words for X = Z_1 C_1 ... Z_n C_n and Y_t = Z_n^+ ... Z_{t+1}^+ Z_1^+ ... Z_t^+."""
    x: list[Letter] = []
    for k in range(1, n + 1):
        x.append(("Z", k))
        diag = insertions[k - 1] if insertions is not None else None
        x.append(("C", diag))
    y = [("Zd", k) for k in range(n, t, -1)] + [("Zd", k) for k in range(1, t + 1)]
    return x, y


def power_words(word: list[Letter], parts: Sequence[int]) -> list[list[Letter]]:
    """Words of P_parts(M) = prod_i tr M^{parts_i}."""
    return [list(word) * m for m in parts]
