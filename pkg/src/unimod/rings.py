"""Finitely presented Q-algebras, localizations and verified homomorphisms.

A ring is ``Q[vars]/I`` with ``I`` stored as a reduced Groebner basis, so every
element has a unique normal-form representative.  Localizing at ``f`` adjoins an
inverter variable ``t_f`` with the relation ``t_f * f - 1``.
"""

from __future__ import annotations

from typing import Mapping, Sequence

from .errors import (
    CompositionError,
    IllDefinedHom,
    NotAUnit,
    RingMismatch,
    VariableMismatch,
    ZeroRingError,
)
from .groebner import GroebnerBasis, buchberger, lift_membership, nf
from .poly import Polynomial, order_key

_NAME_MAP = {"+": "p", "-": "m", "*": "", "^": "e", "/": "d", "(": "L", ")": "R", " ": ""}


def inverter_name(display: str, taken: Sequence[str]) -> str:
    """Deterministic variable name for the inverse of the element printed as ``display``."""
    base = "t_" + "".join(_NAME_MAP.get(ch, ch) for ch in display)
    name, k = base, 2
    while name in taken:
        name = f"{base}_{k}"
        k += 1
    return name


class PresentedRing:
    def __init__(self, vars: Sequence[str], relations: Sequence = (), order: str = "grevlex",
                 inverted: Sequence[tuple] = (), base: "PresentedRing | None" = None,
                 allow_zero: bool = False):
        order_key(order)
        self.vars = tuple(vars)
        if len(set(self.vars)) != len(self.vars):
            raise VariableMismatch(f"duplicate variable names in {self.vars}")
        self.order = order
        self.relations = tuple(self._poly(r) for r in relations)
        # (element as Polynomial in self.vars, inverter variable name)
        self.inverted = tuple((self._poly(f), t) for f, t in inverted)
        self.base = base
        nonzero = [r for r in self.relations if not r.is_zero()]
        if nonzero:
            self.gb = buchberger(nonzero, order)
        else:
            self.gb = GroebnerBasis((), order, self.vars)
        if self.gb.is_unit_ideal() and not allow_zero:
            raise ZeroRingError(f"relations generate the unit ideal in Q[{', '.join(self.vars)}]")

    # coercion

    def _poly(self, p) -> Polynomial:
        if isinstance(p, RingElement):
            p = p.poly
        if isinstance(p, Polynomial):
            return p.with_vars(self.vars)
        if isinstance(p, str):
            from .parsing import parse_expression
            return parse_expression(p, self.vars)
        return Polynomial.constant(self.vars, p)

    def reduce(self, p) -> Polynomial:
        return nf(self._poly(p), self.gb)

    def __call__(self, p) -> "RingElement":
        return RingElement(self, self.reduce(p))

    element = __call__

    def gens(self) -> list["RingElement"]:
        return [self(Polynomial.variable(self.vars, v)) for v in self.vars]

    def var(self, name: str) -> "RingElement":
        return self(Polynomial.variable(self.vars, name))

    def zero(self) -> "RingElement":
        return RingElement(self, Polynomial.zero(self.vars))

    def one(self) -> "RingElement":
        return RingElement(self, self.reduce(1))

    # decisions

    def is_zero(self, p) -> bool:
        return self.reduce(p).is_zero()

    def eq(self, a, b) -> bool:
        return self.is_zero(self._poly(a) - self._poly(b))

    def inverse(self, a) -> Polynomial | None:
        """Normal form of ``a^{-1}``, or ``None`` when ``a`` is not a unit (1 not in (a) + I)."""
        a = self._poly(a)
        cof = lift_membership(Polynomial.constant(self.vars, 1), [a, *self.gb.generators], self.order)
        if cof is None:
            return None
        return self.reduce(cof[0])

    def is_unit(self, a) -> bool:
        return self.inverse(a) is not None

    def with_relations(self, extra: Sequence, allow_zero: bool = False) -> "PresentedRing":
        """The quotient ``self / (extra)`` presented over the same variables."""
        return PresentedRing(self.vars, [*self.gb.generators, *(self._poly(e) for e in extra)],
                             self.order, self.inverted, base=None, allow_zero=allow_zero)

    def root(self) -> "PresentedRing":
        r = self
        while r.base is not None:
            r = r.base
        return r

    def inverter_vars(self) -> tuple:
        return tuple(t for _, t in self.inverted)

    def fmt(self, p) -> str:
        return self._poly(p).to_string(self.order)

    # identity

    def _key(self):
        return (self.vars, self.order, self.gb.generators,
                tuple((f, t) for f, t in self.inverted))

    def __eq__(self, other):
        if not isinstance(other, PresentedRing):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        rels = ", ".join(g.to_string(self.order) for g in self.gb.generators)
        return f"PresentedRing(Q[{', '.join(self.vars)}]/({rels}))"


class RingElement:
    """Element of a presented ring, always stored in normal form."""

    __slots__ = ("ring", "poly")

    def __init__(self, ring: PresentedRing, poly: Polynomial):
        self.ring = ring
        self.poly = poly

    def _other(self, other) -> Polynomial:
        if isinstance(other, RingElement):
            if other.ring != self.ring:
                raise RingMismatch("elements live in different rings")
            return other.poly
        return self.ring._poly(other)

    def __add__(self, other):
        return self.ring(self.poly + self._other(other))

    __radd__ = __add__

    def __sub__(self, other):
        return self.ring(self.poly - self._other(other))

    def __rsub__(self, other):
        return self.ring(self._other(other) - self.poly)

    def __neg__(self):
        return RingElement(self.ring, -self.poly)

    def __mul__(self, other):
        return self.ring(self.poly * self._other(other))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = self.ring.one()
        for _ in range(k):
            out = out * self
        return out

    def is_zero(self) -> bool:
        return self.poly.is_zero()

    def inverse(self) -> "RingElement":
        inv = self.ring.inverse(self.poly)
        if inv is None:
            raise NotAUnit(f"{self} is not a unit")
        return RingElement(self.ring, inv)

    def __eq__(self, other):
        if isinstance(other, RingElement):
            return other.ring == self.ring and other.poly == self.poly
        return self.ring.is_zero(self.poly - self.ring._poly(other))

    def __hash__(self):
        return hash(self.poly)

    def __str__(self):
        return self.poly.to_string(self.ring.order)

    def __repr__(self):
        return f"RingElement({self})"


def present_ring(vars: Sequence[str], relations: Sequence = (), order: str = "grevlex") -> PresentedRing:
    """``Q[vars]/(relations)``; raises ZeroRingError if the relations generate 1."""
    return PresentedRing(vars, relations, order)


def localize(R: PresentedRing, f) -> PresentedRing:
    """``R[1/f]``, presented with a fresh inverter variable and the relation ``t*f - 1``."""
    f = R.reduce(f)
    if f.is_zero():
        raise ZeroRingError("cannot invert 0")
    t = inverter_name(f.to_string(R.order), R.vars)
    vars = R.vars + (t,)
    fl = f.with_vars(vars)
    tv = Polynomial.variable(vars, t)
    relations = [g.with_vars(vars) for g in R.gb.generators] + [tv * fl - 1]
    inverted = [(g.with_vars(vars), name) for g, name in R.inverted] + [(fl, t)]
    return PresentedRing(vars, relations, R.order, inverted, base=R)


def element_eq(a: RingElement, b: RingElement) -> bool:
    if a.ring != b.ring:
        raise RingMismatch("elements live in different rings")
    return a.ring.is_zero(a.poly - b.poly)


class RingHom:
    """A verified homomorphism; construct with :func:`define_hom`."""

    def __init__(self, source: PresentedRing, target: PresentedRing, images: Sequence[Polynomial],
                 inverse_witnesses: Mapping[str, Polynomial] | None = None):
        self.source = source
        self.target = target
        self.images = tuple(images)
        self.inverse_witnesses = dict(inverse_witnesses or {})

    def apply(self, p) -> Polynomial:
        p = self.source._poly(p)
        if not self.source.vars:
            return self.target.reduce(p.constant_value())
        return self.target.reduce(p.substitute(self.images))

    def __call__(self, p) -> RingElement:
        return RingElement(self.target, self.apply(p))

    def image_of(self, name: str) -> RingElement:
        return RingElement(self.target, self.images[self.source.vars.index(name)])

    def compose(self, inner: "RingHom") -> "RingHom":
        """``self ∘ inner``."""
        if inner.target != self.source:
            raise CompositionError("codomain of the inner map is not the domain of the outer map")
        return RingHom(inner.source, self.target, [self.apply(im) for im in inner.images])

    def __repr__(self):
        maps = ", ".join(f"{v} -> {self.target.fmt(im)}" for v, im in zip(self.source.vars, self.images))
        return f"RingHom({maps})"


def define_hom(source: PresentedRing, target: PresentedRing, images) -> RingHom:
    """Build ``source -> target`` from variable images and verify it is well defined.

    ``images`` is a sequence (one per source variable) or a mapping from source
    variable names.  Images of inverter variables may be omitted: they are
    computed as inverses of the images of the inverted elements.  Every relation
    of the source must map to zero, else :class:`IllDefinedHom` is raised.
    """
    if isinstance(images, Mapping):
        given = {k: target._poly(v) for k, v in images.items()}
        unknown = set(given) - set(source.vars)
        if unknown:
            raise VariableMismatch(f"images given for unknown variables {sorted(unknown)}")
    else:
        images = list(images)
        if len(images) not in (len(source.vars), len(source.vars) - len(source.inverted)):
            raise VariableMismatch("one image per source variable required")
        names = [v for v in source.vars if len(images) == len(source.vars) or v not in source.inverter_vars()]
        given = {k: target._poly(v) for k, v in zip(names, images)}
    inverters = set(source.inverter_vars())
    for v in source.vars:
        if v not in given and v not in inverters:
            raise VariableMismatch(f"no image for source variable {v!r}")

    witnesses = {}
    # inverter images depend on earlier images only through the inverted element
    base_images = [given.get(v) for v in source.vars]
    for f, t in source.inverted:
        used = [v for v in source.vars if f.uses(v)]
        missing = [v for v in used if base_images[source.vars.index(v)] is None]
        if missing:
            raise VariableMismatch(f"inverted element {f} uses variables without images: {missing}")
        partial = [im if im is not None else Polynomial.zero(target.vars) for im in base_images]
        f_img = target.reduce(f.substitute(partial))
        inv = target.inverse(f_img)
        if inv is None:
            raise NotAUnit(f"image {target.fmt(f_img)} of inverted element {f} is not a unit")
        witnesses[t] = inv
        if t not in given:
            given[t] = inv
            base_images[source.vars.index(t)] = inv
    final = [target.reduce(given[v]) for v in source.vars]
    hom = RingHom(source, target, final, witnesses)
    for rel in source.gb.generators:
        img = hom.apply(rel)
        if not img.is_zero():
            raise IllDefinedHom(source.fmt(rel), target.fmt(img))
    return hom


def identity_hom(R: PresentedRing) -> RingHom:
    return RingHom(R, R, [R.reduce(Polynomial.variable(R.vars, v)) for v in R.vars])


def verify_mutually_inverse(f: RingHom, g: RingHom) -> bool:
    """True iff ``g∘f`` and ``f∘g`` fix every generator of the respective rings."""
    if f.target != g.source or g.target != f.source:
        raise CompositionError("maps are not composable in both directions")
    R, S = f.source, f.target
    for v in R.vars:
        x = Polynomial.variable(R.vars, v)
        if not R.is_zero(g.apply(f.apply(x)) - x):
            return False
    for v in S.vars:
        y = Polynomial.variable(S.vars, v)
        if not S.is_zero(f.apply(g.apply(y)) - y):
            return False
    return True
