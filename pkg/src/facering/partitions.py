"""Partitions with at most n parts: monoid addition, the correspondence with
exponent vectors, and dominance order.

A partition is stored as a weakly decreasing tuple of positive integers;
trailing zeros are never stored, and the empty tuple is the monoid identity.
Partitions inherit tuple hashing and lexicographic comparison, so they can be
used directly as dictionary keys; dominance is the separate, partial
comparison below.
"""

from __future__ import annotations

import enum
from functools import lru_cache
from typing import Iterable, Sequence

from .errors import InputError, TooManyParts


class Partition(tuple):
    """Weakly decreasing tuple of positive parts.  ``+`` adds part-by-part."""

    def __new__(cls, parts: Iterable[int] = ()):
        parts = tuple(int(a) for a in parts)
        while parts and parts[-1] == 0:
            parts = parts[:-1]
        if any(a <= 0 for a in parts):
            raise InputError(f"partition parts must be positive: {parts}")
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise InputError(f"parts must be weakly decreasing: {parts}")
        return super().__new__(cls, parts)

    @property
    def weight(self) -> int:
        return sum(self)

    def __add__(self, other):  # type: ignore[override]
        if not isinstance(other, tuple):
            return NotImplemented
        n = max(len(self), len(other))
        a = tuple(self) + (0,) * (n - len(self))
        b = tuple(other) + (0,) * (n - len(other))
        return Partition(x + y for x, y in zip(a, b))

    __radd__ = __add__

    def __str__(self) -> str:
        return "(" + ",".join(str(a) for a in self) + ")"

    def __repr__(self) -> str:
        return f"Partition{str(self)}"


class Dominance(enum.Enum):
    EQUAL = "equal"
    STRICTLY_ABOVE = "strictly_above"
    STRICTLY_BELOW = "strictly_below"
    INCOMPARABLE = "incomparable"
    DIFFERENT_WEIGHT = "different_weight"


def add(lam: Partition, mu: Partition) -> Partition:
    return lam + mu


def sh(vec: Sequence[int]) -> Partition:
    """Monoid isomorphism from exponent vectors to partitions.

    The j-th basis vector maps to the column (1^j); additively this sends
    ``a`` to the partition whose i-th part is ``sum(a[i-1:])``.
    """
    if any(a < 0 for a in vec):
        raise InputError("exponent vectors must be nonnegative")
    parts = []
    tail = sum(vec)
    for a in vec:
        if tail == 0:
            break
        parts.append(tail)
        tail -= a
    return Partition(parts)


def sh_inverse(lam: Partition, n: int) -> tuple[int, ...]:
    """Inverse of :func:`sh`: successive part differences, padded to length n."""
    if len(lam) > n:
        raise TooManyParts(f"{lam} has more than {n} parts")
    padded = tuple(lam) + (0,) * (n - len(lam))
    return tuple(padded[j] - padded[j + 1] for j in range(n - 1)) + (padded[n - 1],)


def dominates(lam: Partition, mu: Partition) -> bool:
    """Weak dominance: equal weight and prefix sums of lam bound those of mu."""
    if lam.weight != mu.weight:
        return False
    a = b = 0
    for i in range(max(len(lam), len(mu))):
        a += lam[i] if i < len(lam) else 0
        b += mu[i] if i < len(mu) else 0
        if a < b:
            return False
    return True


def strictly_dominates(lam: Partition, mu: Partition) -> bool:
    return lam != mu and dominates(lam, mu)


def compare_dominance(lam: Partition, mu: Partition) -> Dominance:
    if lam.weight != mu.weight:
        return Dominance.DIFFERENT_WEIGHT
    if lam == mu:
        return Dominance.EQUAL
    if dominates(lam, mu):
        return Dominance.STRICTLY_ABOVE
    if dominates(mu, lam):
        return Dominance.STRICTLY_BELOW
    return Dominance.INCOMPARABLE


def partitions_of(d: int, max_part: int | None = None):
    """Yield all partitions of d (largest part first), decreasing lexicographically."""
    if d == 0:
        yield Partition()
        return
    top = d if max_part is None else min(d, max_part)
    for first in range(top, 0, -1):
        for rest in partitions_of(d - first, first):
            yield Partition((first,) + tuple(rest))


@lru_cache(maxsize=None)
def count_partitions(d: int) -> int:
    return sum(1 for _ in partitions_of(d))
