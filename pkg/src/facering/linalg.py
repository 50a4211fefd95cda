"""Exact incremental row reduction over a coefficient field.

:class:`RowSpan` keeps an echelonized spanning set and, for every echelon
row, the coefficients that produced it from the inserted vectors.  Membership
tests therefore come with the unique representation of the queried vector on
the inserted ones, read off without re-solving.  Pivots are the first nonzero
column; arithmetic is exact, there are no thresholds.
"""

from __future__ import annotations

from typing import Hashable, Sequence

from .coeff import FieldElement, FieldSpec, invert

Vector = list[FieldElement]


class RowSpan:
    def __init__(self, field: FieldSpec, width: int):
        self.field = field
        self.width = width
        # each row: (pivot column, vector with leading 1, {tag: coefficient})
        self.rows: list[tuple[int, Vector, dict[Hashable, FieldElement]]] = []

    @property
    def dim(self) -> int:
        return len(self.rows)

    def _reduce(self, vec: Sequence[FieldElement]):
        """Eliminate existing pivots from ``vec``.

        Returns the residual and the combination of inserted vectors removed,
        so that ``vec = sum(combo[t] * inserted[t]) + residual``.
        """
        v = list(vec)
        combo: dict[Hashable, FieldElement] = {}
        for pivot, row, rcombo in self.rows:
            c = v[pivot]
            if c.is_zero:
                continue
            for j in range(self.width):
                if not row[j].is_zero:
                    v[j] = v[j] - c * row[j]
            for tag, x in rcombo.items():
                acc = combo.get(tag, self.field.zero()) + c * x
                combo[tag] = acc
        return v, combo

    def insert(self, tag: Hashable, vec: Sequence[FieldElement]):
        """Add a tagged vector to the span.

        Returns ``None`` if the vector was independent (the span grew), or
        the representation ``{tag: coeff}`` of the vector on the previously
        inserted ones if it was already in the span.
        """
        if len(vec) != self.width:
            raise ValueError("vector width mismatch")
        residual, combo = self._reduce(vec)
        pivot = next((j for j in range(self.width) if not residual[j].is_zero), None)
        if pivot is None:
            return {t: c for t, c in combo.items() if not c.is_zero}
        inv = invert(residual[pivot])
        row = [inv * x for x in residual]
        rcombo = {t: -(inv * c) for t, c in combo.items() if not c.is_zero}
        rcombo[tag] = rcombo.get(tag, self.field.zero()) + inv
        self.rows.append((pivot, row, {t: c for t, c in rcombo.items()
                                       if not c.is_zero}))
        return None

    def represent(self, vec: Sequence[FieldElement]):
        """Representation of ``vec`` on the inserted vectors, or None if outside."""
        residual, combo = self._reduce(vec)
        if any(not x.is_zero for x in residual):
            return None
        return {t: c for t, c in combo.items() if not c.is_zero}

    def contains(self, vec: Sequence[FieldElement]) -> bool:
        residual, _ = self._reduce(vec)
        return all(x.is_zero for x in residual)

    def snapshot(self) -> list[Vector]:
        return [list(row) for _, row, _ in self.rows]


def rref(rows: Sequence[Sequence[FieldElement]], field: FieldSpec,
         width: int) -> list[Vector]:
    """Canonical reduced row echelon form (rows sorted by pivot column)."""
    span = RowSpan(field, width)
    for i, r in enumerate(rows):
        span.insert(i, r)
    echelon = [(pivot, list(row)) for pivot, row, _ in span.rows]
    echelon.sort(key=lambda pr: pr[0])
    # back-substitute so that every pivot column is zero elsewhere
    for i in range(len(echelon) - 1, -1, -1):
        pivot, row = echelon[i]
        for k in range(i):
            c = echelon[k][1][pivot]
            if c.is_zero:
                continue
            target = echelon[k][1]
            for j in range(width):
                if not row[j].is_zero:
                    target[j] = target[j] - c * row[j]
    return [row for _, row in echelon]


def matrix_rank(rows: Sequence[Sequence[FieldElement]], field: FieldSpec,
                width: int) -> int:
    span = RowSpan(field, width)
    for i, r in enumerate(rows):
        span.insert(i, r)
    return span.dim
