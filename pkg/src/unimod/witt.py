"""Residue fields, square-class witnesses, Koszul symbols and second residues.

Square classes are never decided: equality of classes is accepted only with an
explicit witness, or by the scalar rule of the field type (``real``: positive
rationals are squares; ``complex``: nonzero rationals are squares).
Primality of the supplied ideals is assumed, not checked.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .errors import (
    CodimensionError,
    DegenerateTransition,
    InvariantViolation,
    NotAUnit,
    NotExpressible,
    ZeroRingError,
)
from .groebner import lift_membership
from .linalg import MatrixOverRing, det
from .poly import Polynomial
from .rings import PresentedRing

REAL = "real"
COMPLEX = "complex"
KINDS = (REAL, COMPLEX)


class Verdict(enum.Enum):
    VERIFIED = "verified"
    UNVERIFIED = "unverified"

    @property
    def ok(self) -> bool:
        return self is Verdict.VERIFIED


@lru_cache(maxsize=512)
def residue_ring(ring: PresentedRing, prime: tuple) -> PresentedRing:
    """``ring / prime`` over the same variables (cached)."""
    return ring.with_relations(prime)


class PresentedField:
    """Residue field of ``ring`` at the (assumed prime) ideal ``prime``.

    ``constants`` adjoins algebraic constants as ``(name, minimal polynomial)``
    pairs; the polynomial is written in the single variable ``name``.
    """

    def __init__(self, ring: PresentedRing, prime: Sequence, kind: str = REAL,
                 constants: Sequence[tuple] = (), name: str | None = None):
        if kind not in KINDS:
            raise ValueError(f"field kind must be one of {KINDS}")
        self.ring = ring
        self.prime = tuple(ring._poly(p) for p in prime)
        self.kind = kind
        self.name = name or "(" + ", ".join(ring.fmt(p) for p in self.prime) + ")"
        consts = []
        for cname, minpoly in constants:
            if isinstance(minpoly, str):
                from .parsing import parse_expression
                minpoly = parse_expression(minpoly, (cname,))
            consts.append((cname, minpoly.with_vars((cname,))))
        self.constants = tuple(consts)
        self.residue = residue_ring(ring, self.prime)
        ext_vars = ring.vars + tuple(c for c, _ in self.constants)
        rels = [g.with_vars(ext_vars) for g in self.residue.gb.generators]
        rels += [m.with_vars(ext_vars) for _, m in self.constants]
        try:
            self.extended = PresentedRing(ext_vars, rels, ring.order)
        except ZeroRingError:
            raise ZeroRingError("adjoined constants are inconsistent with the residue field") from None

    def reduce(self, u) -> Polynomial:
        return self.residue.reduce(u)

    def contains(self, u) -> bool:
        """True when ``u`` lies in the prime, i.e. vanishes in the residue field."""
        return self.residue.is_zero(u)

    def ext(self, p) -> Polynomial:
        if isinstance(p, str):
            from .parsing import parse_expression
            return self.extended.reduce(parse_expression(p, self.extended.vars))
        if isinstance(p, Polynomial):
            return self.extended.reduce(p.with_vars(self.extended.vars))
        return self.extended.reduce(p)

    def _key(self):
        return (self.ring, self.prime, self.kind, self.constants)

    def __eq__(self, other):
        return isinstance(other, PresentedField) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return f"PresentedField({self.name}, {self.kind})"


@dataclass(frozen=True)
class SquareWitness:
    """Numerator ``a`` and denominator ``b`` of a square root, in the extended field."""
    a: object
    b: object = 1


def scalar_rule(F: PresentedField, u) -> Verdict:
    r = F.reduce(u)
    if r.is_zero() or not r.is_constant():
        return Verdict.UNVERIFIED
    c = r.constant_value()
    if F.kind == REAL:
        return Verdict.VERIFIED if c > 0 else Verdict.UNVERIFIED
    return Verdict.VERIFIED


def same_class(F: PresentedField, u, t, witness: SquareWitness | None = None) -> Verdict:
    """Whether ``<u> = <t>`` in the residue field, i.e. ``u/t`` is a square.

    A witness ``(a, b)`` certifies ``t a^2 = u b^2`` with ``b`` nonzero.
    Without a witness only literal equality and the scalar rule are tried.
    """
    u = F.ring._poly(u)
    t = F.ring._poly(t)
    if F.contains(u) or F.contains(t):
        raise NotAUnit("class comparison needs units of the residue field")
    if witness is None:
        if F.residue.is_zero(u - t):
            return Verdict.VERIFIED
        return scalar_rule(F, u * t)
    a, b = F.ext(witness.a), F.ext(witness.b)
    if b.is_zero():
        return Verdict.UNVERIFIED
    ue, te = F.ext(u), F.ext(t)
    if F.extended.is_zero(te * a * a - ue * b * b):
        return Verdict.VERIFIED
    return Verdict.UNVERIFIED


def verify_square_class(F: PresentedField, u, witness: SquareWitness | None = None) -> Verdict:
    """Whether ``u`` is a square in the residue field (``a^2 = u b^2``)."""
    u = F.ring._poly(u)
    if F.contains(u):
        raise NotAUnit(f"{F.ring.fmt(u)} lies in the prime")
    if witness is None:
        return scalar_rule(F, u)
    return same_class(F, u, 1, witness)


def primitive_part(p: Polynomial) -> tuple[Fraction, Polynomial]:
    """Split ``p = c * q`` with ``c > 0`` rational and ``q`` integral with coprime coefficients."""
    if p.is_zero():
        return Fraction(1), p
    coeffs = list(p.terms.values())
    num = 0
    den = 1
    for c in coeffs:
        num = math.gcd(num, c.numerator)
        den = den * c.denominator // math.gcd(den, c.denominator)
    c = Fraction(num, den)
    return c, p * (1 / c)


def canonical_unit(ring: PresentedRing, prime: Sequence, u, kind: str = REAL) -> Polynomial:
    """Representative of the square class of ``u`` modulo ``prime`` normalized by the scalar rule.

    The normal form modulo ``ring + prime`` has its positive rational content
    removed; for complex-type fields the sign is normalized as well.  Data free
    of inverter variables is reduced in the un-localized ring.
    """
    base, prime_t, u = _delocalize(ring, prime, u)
    r = residue_ring(base, prime_t).reduce(u)
    _, q = primitive_part(r)
    if kind == COMPLEX and not q.is_zero() and q.leading_coefficient(base.order) < 0:
        q = -q
    return q.with_vars(ring.vars)


def _delocalize(ring: PresentedRing, prime: Sequence, u):
    prime = tuple(ring._poly(p) for p in prime)
    u = ring._poly(u)
    root = ring.root()
    if root is ring:
        return ring, prime, u
    extra = [v for v in ring.vars if v not in root.vars]
    if any(p.uses(v) for p in (*prime, u) for v in extra):
        return ring, prime, u
    return root, tuple(p.with_vars(root.vars) for p in prime), u.with_vars(root.vars)


@dataclass(frozen=True)
class KoszulSymbol:
    """``sign · <unit> · Kos(frame)`` at the residue field ``field``."""
    field: PresentedField
    unit: Polynomial
    frame: tuple
    sign: int = 1

    @property
    def is_zero(self) -> bool:
        return self.field.contains(self.unit)

    @property
    def signed_unit(self) -> Polynomial:
        return self.field.reduce(self.unit * self.sign)

    def permuted(self, perm: Sequence[int]) -> "KoszulSymbol":
        """Reorder the frame as ``frame[perm[0]], frame[perm[1]], ...``; sign follows parity."""
        if sorted(perm) != list(range(len(self.frame))):
            raise ValueError("not a permutation of the frame positions")
        return KoszulSymbol(self.field, self.unit, tuple(self.frame[i] for i in perm),
                            self.sign * permutation_sign(perm))

    def reframed(self, target: Sequence) -> "KoszulSymbol":
        """Same class expressed against another generating sequence of the prime."""
        target = tuple(self.field.ring._poly(t) for t in target)
        tr = transition_matrix(self.field.ring, self.frame, target, self.field)
        return KoszulSymbol(self.field, self.field.reduce(self.unit * tr.det), target, self.sign)

    def normalized(self, target_unit, witness: SquareWitness | None = None) -> "KoszulSymbol":
        """Replace the unit by ``target_unit`` after verifying both have the same square class."""
        t = self.field.ring._poly(target_unit)
        if not same_class(self.field, self.unit, t, witness).ok:
            raise NotAUnit("normalization witness does not verify")
        return KoszulSymbol(self.field, self.field.reduce(t), self.frame, self.sign)

    def describe(self) -> str:
        R = self.field.ring
        s = "-" if self.sign < 0 else ""
        frame = ", ".join(R.fmt(f) for f in self.frame)
        return f"{s}<{R.fmt(self.unit)}> Kos({frame})"


def permutation_sign(perm: Sequence[int]) -> int:
    perm = list(perm)
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


@dataclass(frozen=True)
class Transition:
    matrix: MatrixOverRing
    det: Polynomial
    det_class: Polynomial


def transition_matrix(ring: PresentedRing, seq_from: Sequence, seq_to: Sequence, prime) -> Transition:
    """Matrix ``T`` with ``T · seq_to = seq_from`` and ``det T`` a unit at ``prime``.

    Entries come from membership lifts of each ``seq_from`` element in
    ``(seq_to) + I``.  ``prime`` is a PresentedField or a list of generators.
    """
    seq_from = [ring._poly(s) for s in seq_from]
    seq_to = [ring._poly(s) for s in seq_to]
    if len(seq_from) != len(seq_to):
        raise CodimensionError("sequences of different lengths")
    F = prime if isinstance(prime, PresentedField) else PresentedField(ring, prime)
    rels = list(ring.gb.generators)
    rows = []
    for s in seq_from:
        if s in seq_to and seq_to.count(s) == 1:
            # identical entries: take the unit vector rather than an arbitrary lift
            rows.append([1 if t == s else 0 for t in seq_to])
            continue
        cof = lift_membership(s, [*seq_to, *rels], ring.order)
        if cof is None:
            raise NotExpressible(f"{ring.fmt(s)} is not in the ideal generated by the target sequence")
        rows.append(cof[: len(seq_to)])
    T = MatrixOverRing(ring, rows)
    check = T @ MatrixOverRing.column(ring, seq_to)
    if any(not ring.is_zero(a - b) for a, b in zip(check.col(0), seq_from)):
        raise InvariantViolation("transition matrix does not reproduce the source sequence")
    d = det(T)
    dc = F.reduce(d)
    if dc.is_zero():
        raise DegenerateTransition(f"det {ring.fmt(d)} lies in the prime")
    return Transition(T, d, dc)


@dataclass(frozen=True)
class Component:
    """``<unit> · Kos(frame)`` supported on the codimension-one prime ``prime``."""
    prime: tuple
    unit: Polynomial
    frame: tuple
    kind: str = REAL

    @classmethod
    def make(cls, ring: PresentedRing, prime: Sequence, unit, frame: Sequence | None = None,
             kind: str = REAL) -> "Component":
        prime = tuple(ring._poly(p) for p in prime)
        frame = prime if frame is None else tuple(ring._poly(f) for f in frame)
        return cls(prime, ring._poly(unit), frame, kind)

    def describe(self, ring: PresentedRing) -> str:
        prime = ", ".join(ring.fmt(p) for p in self.prime)
        frame = ", ".join(ring.fmt(f) for f in self.frame)
        return f"(({prime}), <{ring.fmt(self.unit)}>, Kos({frame}))"


def residue_at(component: Component, q: PresentedField, target: Sequence | None = None,
               ramifier: tuple | None = None,
               normalize_to: tuple | None = None) -> KoszulSymbol:
    """Second residue of ``component`` at the codimension-two prime ``q``.

    The frame is extended by the ramifying factor of the unit (the unit itself
    unless ``ramifier=(u0, pi)`` splits it as ``u = u0 · pi``), compared with the
    generating sequence of ``q`` (or ``target``), and the unit becomes
    ``u0 · det T`` modulo ``q``.  Returns a zero symbol where the component is
    unramified or does not pass through ``q``.  ``normalize_to=(unit, witness)``
    replaces the resulting unit by a witnessed representative of its class.
    """
    R = q.ring
    seq = tuple(R._poly(t) for t in (target if target is not None else q.prime))
    if len(seq) != len(component.frame) + 1:
        raise CodimensionError("target sequence length must be the frame length plus one")
    zero = KoszulSymbol(q, Polynomial.zero(R.vars), seq)
    if any(not q.contains(p) for p in component.prime) or any(not q.contains(f) for f in component.frame):
        return zero
    u = R._poly(component.unit)
    if not q.contains(u):
        return zero
    if ramifier is None:
        u0, pi = Polynomial.constant(R.vars, 1), u
    else:
        u0, pi = (R._poly(x) for x in ramifier)
        comp_ring = residue_ring(R, tuple(component.prime))
        if not comp_ring.is_zero(u - u0 * pi):
            raise NotExpressible("ramifier hint does not factor the unit")
        if q.contains(u0) or not q.contains(pi):
            raise CodimensionError("ramifier hint: u0 must be a unit and pi must lie in q")
    tr = transition_matrix(R, (*component.frame, pi), seq, q)
    sym = KoszulSymbol(q, q.reduce(u0 * tr.det), seq)
    if normalize_to is not None:
        t, wit = normalize_to
        sym = sym.normalized(t, wit)
    return sym
