"""Linear-algebraic Cohen-Macaulayness test and cell-basis machinery.

Everything here runs on a pure, balanced boolean complex.  The facet vector
of a face is its 0/1 incidence row against the facet list; the test
processes faces in an order refining containment of label sets, growing a
candidate basis of faces whose facet vectors are independent, and fails
exactly when a dependent face needs an earlier face whose label set is not
contained in its own.  On success the surviving faces index a module basis
of the ring over the label-row parameter subring, certified by the recorded
row-reduction state; the same incidence data then represents arbitrary ring
elements on the basis with parameter-polynomial coefficients.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from .coeff import FieldElement, FieldSpec
from .complexes import (
    EMPTY,
    Balancing,
    BooleanComplex,
    label_selected,
    require_valid_balancing,
)
from .errors import BasisInvalid, FieldMismatch, InputError, OrderNotCompatible
from .face_ring import (
    Mono,
    ParameterPolynomial,
    RingElement,
    mono_label_multidegree,
)
from .linalg import RowSpan, rref

FacetVector = tuple[FieldElement, ...]


def facet_vector(complex: BooleanComplex, face: int | str,
                 field: FieldSpec) -> FacetVector:
    """0/1 incidence of the face with each facet, in facet order."""
    if not complex.is_pure():
        raise InputError("facet vectors need a pure complex")
    f = complex.resolve(face)
    one, zero = field.one(), field.zero()
    return tuple(one if complex.leq(f, eps) else zero for eps in complex.facets)


def default_processing_order(complex: BooleanComplex,
                             balancing: Balancing) -> list[int]:
    """Label-set blocks sorted by (cardinality, lexicographic), faces within a
    block by internal index."""
    faces = range(len(complex))
    return sorted(faces, key=lambda f: (
        len(balancing.label_set(f)),
        tuple(sorted(balancing.label_set(f))),
        f))


def validate_processing_order(complex: BooleanComplex, balancing: Balancing,
                              order: Sequence[int | str]) -> list[int]:
    """Check that an explicit order covers every face and refines containment
    of label sets (strictly smaller label sets come first)."""
    idx = [complex.resolve(f) for f in order]
    if sorted(idx) != list(range(len(complex))):
        raise OrderNotCompatible("order must list every face exactly once")
    for i in range(len(idx)):
        for j in range(i + 1, len(idx)):
            a, b = idx[i], idx[j]
            if balancing.label_set(b) < balancing.label_set(a):
                raise OrderNotCompatible(
                    f"face {complex.ids[b]!r} must be processed before "
                    f"{complex.ids[a]!r}: its label set is strictly smaller")
    return idx


@dataclass
class _SelectedData:
    """Incidence data of the basis members inside one label-selected subcomplex."""

    subcomplex: BooleanComplex
    members: list[int]
    span: RowSpan


class CellBasis:
    """Faces whose generators form a module basis over the label-row parameters,
    together with the row-reduction state that certified them."""

    def __init__(self, complex: BooleanComplex, balancing: Balancing,
                 field: FieldSpec, members: Sequence[int], span: RowSpan):
        self.complex = complex
        self.balancing = balancing
        self.field = field
        self.members = tuple(members)
        self.span = span
        self.facet_vectors = {m: facet_vector(complex, m, field)
                              for m in self.members}
        self._selected: dict[frozenset[int], _SelectedData] = {}

    def label_set(self, member: int) -> frozenset[int]:
        return self.balancing.label_set(member)

    def selected(self, labels: Iterable[int]) -> _SelectedData:
        """Members with label set inside ``labels``, with their facet vectors
        row-reduced inside the label-selected subcomplex."""
        key = frozenset(labels)
        cached = self._selected.get(key)
        if cached is not None:
            return cached
        members = [m for m in self.members if self.label_set(m) <= key]
        sub = label_selected(self.complex, self.balancing, key)
        if len(members) != len(sub.facets):
            raise BasisInvalid(
                f"label set {sorted(key)}: {len(members)} members against "
                f"{len(sub.facets)} facets of the selected subcomplex")
        span = RowSpan(self.field, len(sub.facets))
        for m in members:
            rep = span.insert(m, facet_vector(sub, self.complex.ids[m], self.field))
            if rep is not None:
                raise BasisInvalid(
                    f"label set {sorted(key)}: facet vectors of the selected "
                    f"members are linearly dependent")
        data = _SelectedData(sub, members, span)
        self._selected[key] = data
        return data


@dataclass
class CMVerdict:
    """Either a certified cell basis, or a witness face whose facet vector
    needs a member with a label set not contained in the witness's."""

    cohen_macaulay: bool
    basis: CellBasis | None = None
    witness: int | None = None
    representation: list[tuple[int, FieldElement]] | None = None

    def __bool__(self) -> bool:
        return self.cohen_macaulay


def compute_basis(complex: BooleanComplex, balancing: Balancing,
                  field: FieldSpec, order: Sequence[int | str] | None = None,
                  early_exit: bool = True,
                  trace: Callable[[int, RowSpan], None] | None = None,
                  ) -> CMVerdict:
    """Run the incremental facet-vector test and build a cell basis.

    Faces are processed in an order refining containment of label sets
    (validated when supplied).  A face whose vector leaves the current span
    joins the basis; one whose unique representation uses only members with
    smaller-or-equal label sets is discarded; any other face is a witness
    that no cell basis exists.  ``early_exit`` stops once the span is full
    and only facets remain, which cannot change the output.  ``trace`` is
    called with each face just before it is processed.
    """
    require_valid_balancing(complex, balancing)
    if order is None:
        idx_order = default_processing_order(complex, balancing)
    else:
        idx_order = validate_processing_order(complex, balancing, order)
    m = len(complex.facets)
    full = frozenset(range(1, balancing.n + 1))
    span = RowSpan(field, m)
    members: list[int] = []
    for pos, face in enumerate(idx_order):
        if (early_exit and span.dim == m
                and all(balancing.label_set(g) == full for g in idx_order[pos:])):
            break
        if trace is not None:
            trace(face, span)
        rep = span.insert(face, facet_vector(complex, face, field))
        if rep is None:
            members.append(face)
            continue
        if any(not balancing.label_set(b) <= balancing.label_set(face)
               for b in rep):
            ordered = [(b, rep[b]) for b in members if b in rep]
            return CMVerdict(False, witness=face, representation=ordered)
    basis = CellBasis(complex, balancing, field, members, span)
    return CMVerdict(True, basis=basis)


@dataclass
class BasisReport:
    valid: bool
    per_label_set: dict[tuple[int, ...], dict]


def verify_basis(complex: BooleanComplex, balancing: Balancing,
                 field: FieldSpec, candidate: Sequence[int | str]) -> BasisReport:
    """Square-and-nonsingular check of a proposed cell basis.

    For every label subset S, the members with label set inside S must match
    the facets of the label-selected subcomplex in number, and their
    incidence matrix there must be nonsingular.
    """
    require_valid_balancing(complex, balancing)
    members = [complex.resolve(f) for f in candidate]
    n = balancing.n
    per: dict[tuple[int, ...], dict] = {}
    valid = True
    for r in range(n + 1):
        for s in itertools.combinations(range(1, n + 1), r):
            key = frozenset(s)
            chosen = [m for m in members if balancing.label_set(m) <= key]
            sub = label_selected(complex, balancing, key)
            square = len(chosen) == len(sub.facets)
            nonsingular = False
            if square:
                span = RowSpan(field, len(sub.facets))
                nonsingular = all(
                    span.insert(m, facet_vector(sub, complex.ids[m], field))
                    is None for m in chosen)
            per[s] = {"members": len(chosen), "facets": len(sub.facets),
                      "square": square, "nonsingular": nonsingular}
            valid = valid and square and nonsingular
    return BasisReport(valid, per)


def subspace_M_S(complex: BooleanComplex, balancing: Balancing,
                 field: FieldSpec, labels: Iterable[int]) -> list[list[FieldElement]]:
    """Canonical row-space basis of the span of the facet vectors of the faces
    whose label set equals S (the image of their span inside the facet
    component)."""
    require_valid_balancing(complex, balancing)
    key = frozenset(labels)
    rows = [facet_vector(complex, f, field) for f in range(len(complex))
            if balancing.label_set(f) == key]
    return rref(rows, field, len(complex.facets))


def _collapse(complex: BooleanComplex, balancing: Balancing,
              mono: Mono) -> tuple[tuple[int, ...], int]:
    """Write a standard monomial as (label-row parameter monomial) * z_top.

    Every factor except one copy of the top face absorbs into the product of
    the label-row parameters indexed by its label set.
    """
    if not mono:
        return (0,) * balancing.n, EMPTY
    top = mono[-1][0]
    exps = list(mono_label_multidegree(complex, balancing, mono))
    for j in balancing.label_set(top):
        exps[j - 1] -= 1
    return tuple(exps), top


def represent_on_cell_basis(complex: BooleanComplex, balancing: Balancing,
                            field: FieldSpec, basis: CellBasis,
                            element: RingElement,
                            ) -> dict[int, ParameterPolynomial]:
    """Coefficients q_b with element = sum of q_b(parameters) * z_b over the basis.

    Per standard monomial: collapse to a parameter monomial times its top
    generator, then express the top generator on the members selected by its
    label set by solving against their facet vectors in the label-selected
    subcomplex.
    """
    if element.complex is not complex or element.discrete:
        raise InputError("element must live in the face ring of this complex")
    if element.field != field or basis.field != field:
        raise FieldMismatch("element, basis, and field must agree")
    n = balancing.n
    out: dict[int, ParameterPolynomial] = {
        b: ParameterPolynomial.zero(n, field) for b in basis.members}
    for mono, coeff in element.sorted_terms():
        exps, top = _collapse(complex, balancing, mono)
        labels = balancing.label_set(top)
        data = basis.selected(labels)
        vec = facet_vector(data.subcomplex, complex.ids[top], field)
        combo = data.span.represent(vec)
        if combo is None:
            raise BasisInvalid(
                f"generator of face {complex.ids[top]!r} is outside the span "
                f"of the selected members")
        for member, c in combo.items():
            lifted = list(exps)
            for j in sorted(labels - basis.label_set(member)):
                lifted[j - 1] += 1
            out[member] = out[member] + ParameterPolynomial.monomial(
                n, field, lifted, coeff * c)
    return out


def evaluate_cell_representation(complex: BooleanComplex, balancing: Balancing,
                                 coefficients: dict[int, ParameterPolynomial],
                                 ) -> RingElement:
    """Expand sum of q_b(label rows) * z_b back into the face ring."""
    some = next(iter(coefficients.values()))
    total = RingElement.zero(complex, some.field, False)
    for member in sorted(coefficients):
        poly = coefficients[member]
        if poly.is_zero:
            continue
        z = RingElement.monomial(complex, poly.field, ((member, 1),))
        total = total + poly.evaluate(complex, "omega", balancing) * z
    return total
