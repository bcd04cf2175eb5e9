"""Framed Gersten-Witt cycles: residue sums, transport along ring maps, boundary along a hypersurface."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .errors import CodimensionError, NotAUnit, RingMismatch, ValuationError
from .groebner import lift_membership
from .poly import Polynomial
from .rings import PresentedRing, RingHom, define_hom
from .witt import (
    Component,
    KoszulSymbol,
    PresentedField,
    SquareWitness,
    canonical_unit,
    primitive_part,
    residue_at,
    residue_ring,
    same_class,
)

DEFAULT_VALUATION_BOUND = 8


@dataclass(frozen=True)
class FramedCycle:
    ring: PresentedRing
    components: tuple = ()

    def __add__(self, other: "FramedCycle") -> "FramedCycle":
        if other.ring != self.ring:
            raise RingMismatch("cycles over different rings")
        return FramedCycle(self.ring, self.components + other.components)

    def __len__(self):
        return len(self.components)

    def normalized(self) -> "FramedCycle":
        """Each unit replaced by its canonical class representative."""
        return FramedCycle(self.ring, tuple(
            Component(c.prime, canonical_unit(self.ring, c.prime, c.unit, c.kind), c.frame, c.kind)
            for c in self.components
        ))

    def describe(self) -> list[str]:
        return [c.describe(self.ring) for c in self.components]


def same_normalized(a: FramedCycle, b: FramedCycle) -> bool:
    """Component-wise equality of primes (as ideals), frames and canonical unit classes."""
    if a.ring != b.ring or len(a) != len(b):
        return False
    R = a.ring
    for ca, cb in zip(a.normalized().components, b.normalized().components):
        if len(ca.prime) != len(cb.prime) or len(ca.frame) != len(cb.frame) or ca.kind != cb.kind:
            return False
        Pa = residue_ring(R, tuple(ca.prime))
        Pb = residue_ring(R, tuple(cb.prime))
        if Pa != Pb:
            return False
        if any(not R.is_zero(x - y) for x, y in zip(ca.frame, cb.frame)):
            return False
        if not Pa.is_zero(ca.unit - cb.unit):
            return False
    return True


@dataclass
class PrimeReport:
    prime: PresentedField
    residues: list  # (component index, KoszulSymbol) for nonzero residues
    status: str     # "zero" | "nonzero" | "unresolved"
    cancelled: list = field(default_factory=list)

    @property
    def is_zero(self) -> bool:
        return self.status == "zero"

    def to_dict(self) -> dict:
        return {
            "prime": self.prime.name,
            "status": self.status,
            "residues": [{"component": i, "symbol": s.describe()} for i, s in self.residues],
            "cancelled_pairs": [list(p) for p in self.cancelled],
        }


def differential_check(c: FramedCycle, primes: Sequence[PresentedField],
                       witnesses: Mapping[str, Sequence[SquareWitness]] | Sequence[SquareWitness] = ()
                       ) -> list[PrimeReport]:
    """Sum the residues of every component at each supplied codimension-two prime.

    All residues at ``q`` are expressed against the generating sequence of
    ``q``.  Two rank-one terms cancel when ``<s_i a_i> = <-s_j a_j>``, checked by
    literal equality, the scalar rule, or one of the supplied witnesses.  An odd
    number of surviving terms is reported ``nonzero`` (the rank is odd);
    otherwise uncancelled terms leave the prime ``unresolved``.
    """
    reports = []
    for q in primes:
        if q.ring != c.ring:
            raise RingMismatch("prime and cycle live over different rings")
        wits = list(witnesses.get(q.name, ())) if isinstance(witnesses, Mapping) else list(witnesses)
        residues = []
        for i, comp in enumerate(c.components):
            sym = residue_at(comp, q)
            if not sym.is_zero:
                residues.append((i, sym))
        open_terms = list(range(len(residues)))
        cancelled = []
        while open_terms:
            a = open_terms[0]
            partner = None
            for b in open_terms[1:]:
                if _cancels(q, residues[a][1], residues[b][1], wits):
                    partner = b
                    break
            if partner is None:
                break
            cancelled.append((residues[a][0], residues[partner][0]))
            open_terms.remove(a)
            open_terms.remove(partner)
        if not open_terms:
            status = "zero"
        elif len(residues) % 2 == 1:
            status = "nonzero"
        else:
            status = "unresolved"
        reports.append(PrimeReport(q, residues, status, cancelled))
    return reports


def _cancels(q: PresentedField, s1: KoszulSymbol, s2: KoszulSymbol, wits) -> bool:
    x = s1.signed_unit
    y = q.reduce(-s2.signed_unit)
    for w in [None, *wits]:
        # a witness certifies a ratio; either orientation of that ratio will do
        if same_class(q, x, y, w).ok or same_class(q, y, x, w).ok:
            return True
    return False


def _clear_inverters(ring: PresentedRing, p: Polynomial):
    """Write ``p = prod(t_k^d_k) * p'`` with ``p'`` free of inverter variables."""
    degrees = {}
    for elem, t in reversed(ring.inverted):
        ti = ring.vars.index(t)
        d = p.degree_in(ti)
        if d <= 0:
            degrees[t] = 0
            continue
        powers = [elem ** k for k in range(d + 1)]
        out = Polynomial.zero(ring.vars)
        for m, coef in p.terms.items():
            j = m[ti]
            mono = list(m)
            mono[ti] = 0
            out = out + powers[d - j].mul_term(tuple(mono), coef)
        p = out
        degrees[t] = d
    return p, degrees


def transport_cycle(h: RingHom, c: FramedCycle) -> FramedCycle:
    """Push ``c`` through ``h``, clearing inverted denominators.

    Each image is written as ``t^d · p'`` with ``p'`` free of inverter variables;
    ``t^d`` factors of frames move into the unit (``Kos(c g) = c Kos(g)``), even
    powers are dropped as squares and an odd power of ``t = 1/e`` is replaced by
    ``e``.  Positive rational content of frames is moved into the unit, and the
    unit is reduced modulo the image prime and normalized by the scalar rule.
    """
    if c.ring != h.source:
        raise RingMismatch("cycle does not live on the source of the map")
    T = h.target
    inv_elems = {t: e for e, t in T.inverted}
    comps = []
    for comp in c.components:
        prime = []
        for p in comp.prime:
            img, _ = _clear_inverters(T, h.apply(p))
            prime.append(primitive_part(img)[1])
        unit, total = _clear_inverters(T, h.apply(comp.unit))
        frame = []
        for f in comp.frame:
            img, degs = _clear_inverters(T, h.apply(f))
            content, g = primitive_part(img)
            frame.append(g)
            unit = unit * content
            for t, d in degs.items():
                total[t] = total.get(t, 0) + d
        for t, d in total.items():
            if d % 2:
                unit = unit * inv_elems[t]
        if residue_ring(T, tuple(prime)).is_zero(unit):
            raise NotAUnit("transported unit lies in the image prime; prime images are inconsistent")
        comps.append(Component(tuple(prime), canonical_unit(T, prime, unit, comp.kind), tuple(frame), comp.kind))
    return FramedCycle(T, tuple(comps))


def reduction_hom(base: PresentedRing, f, quotient: PresentedRing) -> RingHom:
    """``base -> quotient`` sending shared variables to themselves and the rest to 0."""
    images = {v: (v if v in quotient.vars else 0) for v in base.vars}
    hom = define_hom(base, quotient, images)
    if not quotient.is_zero(hom.apply(f)):
        raise CodimensionError("the hypersurface equation does not vanish on the quotient")
    return hom


def boundary_along(c: FramedCycle, f, quotient, hints: Mapping[int, tuple] | None = None,
                   bound: int = DEFAULT_VALUATION_BOUND) -> FramedCycle:
    """Boundary of ``c`` along the hypersurface ``f = 0``, as a cycle on ``quotient = R/(f)``.

    The cycle is read on the un-localized ring ``R``.  For each component the
    f-adic valuation ``e`` of the unit is extracted by repeated exact division
    modulo the component's prime (or taken from ``hints[i] = (u0, e)``); odd
    ``e`` contributes ``((prime), u0, Kos(frame))`` reduced to the quotient, even
    ``e`` contributes nothing.  ``quotient`` is a PresentedRing whose variables
    are a subset of R's, or an explicit reduction RingHom from R.
    """
    base = c.ring.root()
    extra = [v for v in c.ring.vars if v not in base.vars]

    def down(p):
        p = c.ring._poly(p)
        if any(p.uses(v) for v in extra):
            raise CodimensionError("cycle data must be free of inverter variables")
        return p.with_vars(base.vars)

    f = down(f) if not isinstance(f, str) else base._poly(f)
    if isinstance(quotient, RingHom):
        red = quotient
        if red.source != base:
            raise RingMismatch("reduction map must start at the un-localized ring")
        if not red.target.is_zero(red.apply(f)):
            raise CodimensionError("the hypersurface equation does not vanish on the quotient")
    else:
        red = reduction_hom(base, f, quotient)
    Q = red.target
    hints = dict(hints or {})
    comps = []
    for i, comp in enumerate(c.components):
        prime = tuple(down(p) for p in comp.prime)
        Rp = residue_ring(base, prime)
        if Rp.is_zero(f):
            raise CodimensionError(f"component {i} lies inside the hypersurface")
        u = down(comp.unit)
        if i in hints:
            u0, e = hints[i]
            u0 = base._poly(u0)
            if not Rp.is_zero(u - u0 * f ** e):
                raise ValuationError(f"hint for component {i} does not factor its unit")
        else:
            e, u0 = _valuation(Rp, u, f, bound, i)
        if e % 2 == 0:
            continue
        new_prime = tuple(p for p in (red.apply(p) for p in prime) if not p.is_zero())
        new_unit = red.apply(u0)
        if residue_ring(Q, new_prime).is_zero(new_unit):
            raise ValuationError(f"reduced unit of component {i} vanishes on the boundary")
        new_frame = tuple(red.apply(g) for g in comp.frame)
        comps.append(Component(new_prime, new_unit, new_frame, comp.kind))
    return FramedCycle(Q, tuple(comps))


def _valuation(Rp: PresentedRing, u: Polynomial, f: Polynomial, bound: int, index: int):
    if Rp.is_zero(u):
        raise ValuationError(f"unit of component {index} vanishes on its prime")
    cur = Rp.reduce(u)
    e = 0
    while e < bound:
        cof = lift_membership(cur, [f, *Rp.gb.generators], Rp.order)
        if cof is None:
            return e, cur
        cur = Rp.reduce(cof[0])
        e += 1
    raise ValuationError(f"valuation of component {index} exceeds the bound {bound}; supply a hint")
