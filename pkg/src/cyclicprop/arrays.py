"""Multiplicity arrays and weighted partition sums.

A multiplicity array of weight ``r`` records, for a degree ``r`` divisor of a
characteristic polynomial, how many distinct degree ``i`` irreducible factors
occur with multiplicity exactly ``j``. It is stored sparsely as a sorted tuple
of ``(i, j, m)`` triples with ``m >= 1`` and ``sum(i * j * m) == r``.

Arrays whose entries all have ``j == 1`` correspond to integer partitions of
``r`` (``m`` parts of size ``i``), which is what the weighted sums below
range over.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .tseries import QQ, TruncSeries

__all__ = [
    "MultiplicityArray",
    "RowSlice",
    "enumerate_marrays",
    "enumerate_partitions",
    "row_slice",
    "weighted_partition_sum",
    "partition_sum_series",
    "partition_count",
]


@dataclass(frozen=True)
class RowSlice:
    """Row ``i`` of a multiplicity array: ``{j: m_ij}`` plus its weight ``r_i``."""

    i: int
    multiplicities: tuple[tuple[int, int], ...]

    @property
    def r_i(self) -> int:
        return self.i * sum(j * m for j, m in self.multiplicities)

    @property
    def m_i(self) -> int:
        """Number of distinct irreducibles used by this row."""
        return sum(m for _, m in self.multiplicities)

    def as_dict(self) -> dict[int, int]:
        return dict(self.multiplicities)

    def is_empty(self) -> bool:
        return not self.multiplicities


@dataclass(frozen=True)
class MultiplicityArray:
    r: int
    entries: tuple[tuple[int, int, int], ...]

    def __post_init__(self):
        if self.r < 0:
            raise ValueError("weight must be nonnegative")
        keys = [(i, j) for i, j, _ in self.entries]
        if keys != sorted(set(keys)):
            raise ValueError("entries must be sorted by (i, j) without repeats")
        weight = 0
        for i, j, m in self.entries:
            if i < 1 or j < 1 or m < 1:
                raise ValueError(f"bad entry {(i, j, m)}")
            if i * j > self.r:
                raise ValueError(f"key {(i, j)} exceeds the weight {self.r}")
            weight += i * j * m
        if weight != self.r:
            raise ValueError(f"entries have weight {weight}, expected {self.r}")

    @classmethod
    def from_dict(cls, m: dict[tuple[int, int], int]) -> "MultiplicityArray":
        entries = tuple(sorted((i, j, v) for (i, j), v in m.items() if v))
        return cls(sum(i * j * v for i, j, v in entries), entries)

    def m(self, i: int, j: int) -> int:
        for a, b, v in self.entries:
            if (a, b) == (i, j):
                return v
        return 0

    def row(self, i: int) -> RowSlice:
        return RowSlice(i, tuple((j, v) for a, j, v in self.entries if a == i))

    def rows(self) -> list[int]:
        """Row indices that are nonempty."""
        return sorted({i for i, _, _ in self.entries})

    def is_partition(self) -> bool:
        return all(j == 1 for _, j, _ in self.entries)

    def to_json(self) -> dict:
        return {"r": self.r, "entries": [list(e) for e in self.entries]}

    @classmethod
    def from_json(cls, doc: dict) -> "MultiplicityArray":
        return cls(doc["r"], tuple(tuple(e) for e in doc["entries"]))

    def __str__(self):
        body = ", ".join(f"m_{i}{j}={m}" for i, j, m in self.entries)
        return f"{{{body}}}"


def row_slice(M: MultiplicityArray, i: int) -> RowSlice:
    return M.row(i)


@lru_cache(maxsize=None)
def _marrays(r: int, partitions_only: bool) -> tuple[MultiplicityArray, ...]:
    keys = sorted((i, j) for i in range(1, r + 1) for j in range(1, r // i + 1)
                  if not partitions_only or j == 1)
    found: list[tuple[tuple[int, int, int], ...]] = []

    def walk(k: int, left: int, chosen: list):
        if left == 0:
            found.append(tuple(chosen))
            return
        if k == len(keys):
            return
        i, j = keys[k]
        w = i * j
        for m in range(left // w, -1, -1):
            if m:
                chosen.append((i, j, m))
            walk(k + 1, left - m * w, chosen)
            if m:
                chosen.pop()

    walk(0, r, [])
    found.sort()
    return tuple(MultiplicityArray(r, e) for e in found)


def enumerate_marrays(r: int) -> list[MultiplicityArray]:
    """Every multiplicity array of weight ``r``, sorted by entry list.

    No bound on the row sums is imposed; at a numeric ``q`` the arrays that
    need more irreducibles than exist are killed later by a vanishing
    falling factorial.
    """
    if r < 0:
        raise ValueError("r must be nonnegative")
    if r == 0:
        return [MultiplicityArray(0, ())]
    return list(_marrays(r, False))


def enumerate_partitions(r: int) -> list[MultiplicityArray]:
    """Arrays with every ``j == 1``, one for each integer partition of ``r``."""
    if r < 0:
        raise ValueError("r must be nonnegative")
    if r == 0:
        return [MultiplicityArray(0, ())]
    return list(_marrays(r, True))


Weight = tuple[int, Sequence]


def _poly_at(coeffs: Sequence, m: int) -> Fraction:
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * m + Fraction(c)
    return acc


def weighted_partition_sum(r: int, weights: Sequence[Weight] = ()) -> Fraction:
    """Sum over partitions of ``r`` of ``prod f_k(m_k) * prod 1/(i**m_i * m_i!)``.

    Each weight is ``(k, coeffs)`` where ``coeffs`` lists the polynomial
    ``f_k`` in ascending powers of ``m``, the number of parts of size ``k``.
    With no weights the sum is the probability that a random permutation of
    ``r`` points has any cycle type at all, i.e. exactly 1.
    """
    total = Fraction(0)
    for M in enumerate_partitions(r):
        term = Fraction(1)
        for i, _, m in M.entries:
            term /= i ** m * math.factorial(m)
        for k, coeffs in weights:
            term *= _poly_at(coeffs, M.m(k, 1))
        total += term
    return total


def partition_sum_series(weights: Sequence[Weight], order: int) -> TruncSeries:
    """Generating function ``sum_r a_r t**r`` of :func:`weighted_partition_sum`.

    Built from the exponential form: the unweighted parts give
    ``exp(sum t**i/i) = 1/(1-t)``, and each weighted size ``k`` swaps its
    exponential factor for ``sum_m f_k(m) (t**k/k)**m / m!``.
    """
    one = TruncSeries.one(order, QQ)
    result = TruncSeries([1] * (order + 1), order, QQ)
    for k, coeffs in weights:
        plain = [Fraction(0)] * (order + 1)
        weighted = [Fraction(0)] * (order + 1)
        for m in range(order // k + 1):
            base = Fraction(1, k ** m * math.factorial(m))
            plain[m * k] = base
            weighted[m * k] = base * _poly_at(coeffs, m)
        result = result * TruncSeries(weighted, order, QQ) * (one / TruncSeries(plain, order, QQ))
    return result


def partition_count(r: int) -> int:
    return len(enumerate_partitions(r))
