"""Transfer between the subdivision's ring and the face ring.

Both rings share the multichain monomial basis over the original face poset,
so the transfer map is the identity on monomials and only switches the
presentation (discrete vs straightening).  The context also converts
elements of the subdivision's ring between that multichain form and the
cell form on the subdivision complex itself, where chains become single
generators; the cell form is what the basis machinery consumes.

``express_on_transferred_basis`` realizes the constructive half of basis
transfer: repeatedly represent the pulled-back remainder on the subdivision
basis, push the parameter coefficients to the face ring, and subtract; each
pass strictly lowers the remainder's shapes in dominance order.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .coeff import FieldSpec
from .complexes import SdMap
from .errors import BasisInvalid, ComplexMismatch, InputError
from .face_ring import Mono, ParameterPolynomial, RingElement
from .cm_basis import CellBasis, represent_on_cell_basis
from .partitions import count_partitions


@dataclass(frozen=True)
class TransferContext:
    """The subdivision dictionary plus the working coefficient field."""

    sd: SdMap
    field: FieldSpec

    def garsia(self, element: RingElement) -> RingElement:
        """Subdivision ring -> face ring: identity on standard monomials."""
        if element.complex is not self.sd.source or not element.discrete:
            raise ComplexMismatch("expected an element of the subdivision ring")
        return RingElement(self.sd.source, element.field, False,
                           dict(element.terms))

    def garsia_inverse(self, element: RingElement) -> RingElement:
        """Face ring -> subdivision ring: identity on standard monomials."""
        if element.complex is not self.sd.source or element.discrete:
            raise ComplexMismatch("expected an element of the face ring")
        return RingElement(self.sd.source, element.field, True,
                           dict(element.terms))

    def cell_mono_of_multichain(self, mono: Mono) -> Mono:
        """Rewrite a multichain as a product of subdivision-complex generators.

        The level sets of the exponent profile are nested chains; equal
        consecutive levels merge into an exponent.
        """
        if not mono:
            return ()
        max_e = max(e for _, e in mono)
        levels = [tuple(f for f, e in mono if e >= t)
                  for t in range(1, max_e + 1)]
        out = []
        for chain in levels:
            face = self.sd.face_of_chain.get(chain)
            if face is None:
                raise InputError("support is not a chain of the source poset")
            if out and out[-1][0] == face:
                out[-1] = (face, out[-1][1] + 1)
            else:
                out.append((face, 1))
        return tuple(sorted(out, key=lambda fe: len(self.sd.chain_of[fe[0]])))

    def multichain_of_cell_mono(self, mono: Mono) -> Mono:
        counts: dict[int, int] = {}
        for sd_face, e in mono:
            for f in self.sd.chain_of[sd_face]:
                counts[f] = counts.get(f, 0) + e
        src = self.sd.source
        return tuple(sorted(counts.items(),
                            key=lambda fe: (src.rank[fe[0]], fe[0])))

    def to_cell_form(self, element: RingElement) -> RingElement:
        """Subdivision ring in multichain form -> same ring on the subdivision
        complex's own generators."""
        if element.complex is not self.sd.source or not element.discrete:
            raise ComplexMismatch("expected an element of the subdivision ring")
        terms = {self.cell_mono_of_multichain(m): c
                 for m, c in element.terms.items()}
        return RingElement(self.sd.target, element.field, False, terms)

    def from_cell_form(self, element: RingElement) -> RingElement:
        if element.complex is not self.sd.target or element.discrete:
            raise ComplexMismatch("expected a cell-form element")
        terms: dict[Mono, object] = {}
        for m, c in element.terms.items():
            key = self.multichain_of_cell_mono(m)
            acc = terms.get(key)
            terms[key] = c if acc is None else acc + c
        return RingElement(self.sd.source, element.field, True, terms)

    def member_image(self, member: int) -> RingElement:
        """Transfer of a basis member's generator into the face ring: the
        squarefree monomial on the member's chain."""
        chain = self.sd.chain_of[member]
        mono = tuple((f, 1) for f in chain)
        return RingElement.monomial(self.sd.source, self.field, mono)


@dataclass
class TransferRepresentation:
    """Parameter coefficients over the transferred basis, with the remainder
    after each descent pass (the last one is zero)."""

    coefficients: dict[int, ParameterPolynomial]
    remainders: list[RingElement] = dc_field(default_factory=list)


def express_on_transferred_basis(ctx: TransferContext, sd_basis: CellBasis,
                                 element: RingElement) -> TransferRepresentation:
    """Write a face-ring element over the parameter subring on the transferred
    basis by dominance descent.

    Each pass pulls the remainder back to the subdivision ring, represents it
    on the cell basis there, re-evaluates the same parameter polynomials with
    the face-ring parameters against the transferred members, and subtracts.
    Every term of the new remainder has strictly dominated shape, so the
    pass count is bounded by the number of partitions of the degrees
    involved; exceeding the bound means the proposed basis is broken.
    """
    if element.complex is not ctx.sd.source or element.discrete:
        raise ComplexMismatch("expected an element of the face ring")
    if sd_basis.complex is not ctx.sd.target:
        raise ComplexMismatch("basis must live on the subdivision complex")
    n = sd_basis.balancing.n
    totals = {b: ParameterPolynomial.zero(n, ctx.field)
              for b in sd_basis.members}
    remainders: list[RingElement] = []
    cap = 1 + sum(count_partitions(d)
                  for d in sorted(element.degree_components()))
    remainder = element
    passes = 0
    while not remainder.is_zero:
        passes += 1
        if passes > cap:
            raise BasisInvalid("descent failed to terminate; the proposed "
                               "basis does not span")
        cell = ctx.to_cell_form(ctx.garsia_inverse(remainder))
        rep = represent_on_cell_basis(ctx.sd.target, sd_basis.balancing,
                                      ctx.field, sd_basis, cell)
        evaluated = RingElement.zero(ctx.sd.source, ctx.field, False)
        for member, poly in rep.items():
            totals[member] = totals[member] + poly
            if not poly.is_zero:
                evaluated = evaluated + (poly.evaluate(ctx.sd.source, "theta")
                                         * ctx.member_image(member))
        remainder = remainder - evaluated
        remainders.append(remainder)
    return TransferRepresentation(totals, remainders)
