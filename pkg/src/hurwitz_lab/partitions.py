"""Integer partitions: canonical form, enumeration and the class-function
bookkeeping (z factors, class sizes, dimensions, contents) used everywhere else.

A partition is stored as a weakly decreasing tuple of positive integers.  The
exponent notation ``1^2 3`` is accepted on input only.
"""
from __future__ import annotations

import re
from collections import Counter
from functools import lru_cache
from math import factorial, prod
from typing import Iterable, Iterator

DEFAULT_ENUMERATION_BOUND = 30


class PartitionError(ValueError):
    pass


class Partition(tuple):
    """Weakly decreasing tuple of positive integers.

    Parts are sorted on construction, so ``Partition([1, 3, 1]) == (3, 1, 1)``.
    Being a tuple it hashes and compares cheaply, which matters because
    partitions key every cache in the package.
    """

    __slots__ = ()

    def __new__(cls, parts: Iterable[int] = ()) -> "Partition":
        parts = [int(p) for p in parts]
        if any(p <= 0 for p in parts):
            raise PartitionError(f"partition parts must be positive, got {parts}")
        return super().__new__(cls, sorted(parts, reverse=True))

    @property
    def parts(self) -> tuple[int, ...]:
        return tuple(self)

    def weight(self) -> int:
        return sum(self)

    def length(self) -> int:
        return len(self)

    def multiplicities(self) -> Counter:
        return Counter(self)

    def conjugate(self) -> "Partition":
        return conjugate(self)

    def __repr__(self) -> str:
        return f"Partition({format_partition(self)})"

    def __str__(self) -> str:
        return format_partition(self)


def as_partition(obj) -> Partition:
    """Coerce a partition-like value (Partition, sequence, or text) to a Partition."""
    if isinstance(obj, Partition):
        return obj
    if isinstance(obj, str):
        return parse_partition(obj)
    return Partition(obj)


def weight(p) -> int:
    return sum(p)


def length(p) -> int:
    return len(p)


def conjugate(p) -> Partition:
    p = as_partition(p)
    if not p:
        return Partition()
    return Partition(sum(1 for part in p if part > i) for i in range(p[0]))


def z_factor(p) -> int:
    """Centralizer order prod_i i^{m_i} m_i! of a permutation of cycle type p."""
    return prod(i**m * factorial(m) for i, m in Counter(p).items())


def class_size(p) -> int:
    """Number of permutations of cycle type p in S_|p|."""
    return factorial(sum(p)) // z_factor(p)


def cells(p) -> Iterator[tuple[int, int]]:
    """(row, column) of every box, 0-indexed."""
    for i, row in enumerate(p):
        for j in range(row):
            yield i, j


def hook_lengths(p) -> list[int]:
    conj = conjugate(p)
    return [(p[i] - j) + (conj[j] - i) - 1 for i, j in cells(p)]


def dimension(p) -> int:
    """Dimension of the irreducible S_d representation, by the hook-length formula."""
    return factorial(sum(p)) // prod(hook_lengths(p))


def content_sum(p) -> int:
    return sum(j - i for i, j in cells(p))


def contents(p) -> list[int]:
    return [j - i for i, j in cells(p)]


@lru_cache(maxsize=None)
def _partitions(d: int, max_part: int) -> tuple[Partition, ...]:
    if d == 0:
        return (Partition(),)
    out = []
    for first in range(min(d, max_part), 0, -1):
        for rest in _partitions(d - first, first):
            out.append(Partition((first,) + tuple(rest)))
    return tuple(out)


def enumerate_partitions(d: int, bound: int = DEFAULT_ENUMERATION_BOUND) -> tuple[Partition, ...]:
    """All partitions of d in reverse lexicographic order: (d), (d-1,1), ..., (1^d)."""
    if d < 0:
        raise PartitionError(f"weight must be nonnegative, got {d}")
    if d > bound:
        raise PartitionError(f"weight {d} exceeds enumeration bound {bound}")
    return _partitions(d, d)


def partitions_up_to(d: int) -> Iterator[Partition]:
    for k in range(d + 1):
        yield from enumerate_partitions(k)


# Text I/O.  "[3,1,1]" is canonical; "1^2 3" (exponent notation) is also read.

_BRACKET = re.compile(r"^\[\s*(\d+(\s*,\s*\d+)*)?\s*\]$")
_EXPONENT_TOKEN = re.compile(r"^(\d+)(\^(\d+))?$")


def parse_partition(text: str) -> Partition:
    text = text.strip()
    if text in ("", "()", "[]", "0"):
        return Partition()
    if _BRACKET.match(text):
        body = text[1:-1].strip()
        return Partition(int(x) for x in body.split(",")) if body else Partition()
    parts: list[int] = []
    for token in text.split():
        m = _EXPONENT_TOKEN.match(token)
        if not m:
            raise PartitionError(f"cannot parse partition {text!r}")
        part, count = int(m.group(1)), int(m.group(3) or 1)
        parts.extend([part] * count)
    return Partition(parts)


def parse_profiles(text: str) -> list[Partition]:
    """Parse a whitespace-separated list of bracketed partitions, e.g. ``"[3] [2,1]"``."""
    tokens = re.findall(r"\[[^\]]*\]", text)
    leftover = re.sub(r"\[[^\]]*\]", "", text).strip()
    if leftover:
        raise PartitionError(f"cannot parse profile list {text!r}")
    return [parse_partition(tok) for tok in tokens]


def format_partition(p) -> str:
    return "[" + ",".join(str(x) for x in p) + "]"


def format_exponent(p) -> str:
    counts = Counter(p)
    return " ".join(f"{i}^{m}" if m > 1 else f"{i}" for i, m in sorted(counts.items()))
