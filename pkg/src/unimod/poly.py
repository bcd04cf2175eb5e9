"""Sparse multivariate polynomials with exact rational coefficients."""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Callable, Iterable, Mapping, Sequence

from .errors import VariableMismatch

Monomial = tuple  # tuple[int, ...], one exponent per ambient variable


def grevlex_key(m: Monomial):
    return (sum(m), tuple(-e for e in reversed(m)))


def lex_key(m: Monomial):
    return m


ORDERS: dict[str, Callable] = {"grevlex": grevlex_key, "lex": lex_key}


def order_key(order: str) -> Callable:
    try:
        return ORDERS[order]
    except KeyError:
        raise ValueError(f"unknown monomial order {order!r}") from None


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def mono_divides(a: Monomial, b: Monomial) -> bool:
    """True when a divides b."""
    return all(x <= y for x, y in zip(a, b))


def mono_div(b: Monomial, a: Monomial) -> Monomial:
    return tuple(y - x for x, y in zip(a, b))


def mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def _integral(terms: Mapping[Monomial, Fraction]) -> tuple[int, list]:
    """Common denominator ``d`` and the integer coefficients of ``d * p``."""
    d = 1
    for c in terms.values():
        q = c.denominator
        if q != 1:
            d = d * q // gcd(d, q)
    return d, [(m, c.numerator * (d // c.denominator)) for m, c in terms.items()]


class Polynomial:
    """Immutable polynomial over Q in a fixed, named list of variables.

    ``terms`` maps exponent tuples to nonzero ``Fraction`` coefficients.
    """

    __slots__ = ("vars", "terms", "_hash")

    def __init__(self, vars: Sequence[str], terms: Mapping[Monomial, object] | None = None):
        self.vars = tuple(vars)
        n = len(self.vars)
        clean: dict = {}
        for m, c in (terms or {}).items():
            m = tuple(int(e) for e in m)
            if len(m) != n or any(e < 0 for e in m):
                raise ValueError(f"bad exponent vector {m} for variables {self.vars}")
            c = Fraction(c)
            if c:
                clean[m] = clean.get(m, 0) + c
        self.terms = {m: c for m, c in clean.items() if c}
        self._hash = None

    @classmethod
    def _raw(cls, vars: tuple, terms: dict) -> "Polynomial":
        p = object.__new__(cls)
        p.vars = vars
        p.terms = terms
        p._hash = None
        return p

    # constructors

    @classmethod
    def zero(cls, vars: Sequence[str]) -> "Polynomial":
        return cls._raw(tuple(vars), {})

    @classmethod
    def constant(cls, vars: Sequence[str], c) -> "Polynomial":
        vars = tuple(vars)
        c = Fraction(c)
        return cls._raw(vars, {(0,) * len(vars): c} if c else {})

    @classmethod
    def variable(cls, vars: Sequence[str], name: str) -> "Polynomial":
        vars = tuple(vars)
        if name not in vars:
            raise VariableMismatch(f"unknown variable {name!r}")
        m = tuple(1 if v == name else 0 for v in vars)
        return cls._raw(vars, {m: Fraction(1)})

    @classmethod
    def monomial(cls, vars: Sequence[str], m: Monomial, c=1) -> "Polynomial":
        return cls(vars, {m: c})

    # basic predicates

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not any(m) for m in self.terms)

    def constant_value(self) -> Fraction:
        """Coefficient of the constant monomial."""
        return self.terms.get((0,) * len(self.vars), Fraction(0))

    def total_degree(self) -> int:
        return max((sum(m) for m in self.terms), default=-1)

    def degree_in(self, i: int) -> int:
        return max((m[i] for m in self.terms), default=-1)

    def __len__(self) -> int:
        return len(self.terms)

    def __bool__(self) -> bool:
        return bool(self.terms)

    # ordering

    def sorted_terms(self, order: str = "grevlex") -> list:
        key = order_key(order)
        return sorted(self.terms.items(), key=lambda t: key(t[0]), reverse=True)

    def leading_monomial(self, order: str = "grevlex") -> Monomial:
        if not self.terms:
            raise ValueError("zero polynomial has no leading monomial")
        return max(self.terms, key=order_key(order))

    def leading_coefficient(self, order: str = "grevlex") -> Fraction:
        return self.terms[self.leading_monomial(order)]

    def monic(self, order: str = "grevlex") -> "Polynomial":
        if not self.terms:
            return self
        return self * (1 / self.leading_coefficient(order))

    # arithmetic

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.vars != self.vars:
                raise VariableMismatch(f"variable lists differ: {self.vars} vs {other.vars}")
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial.constant(self.vars, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms = dict(self.terms)
        for m, c in other.terms.items():
            s = terms.get(m, 0) + c
            if s:
                terms[m] = s
            else:
                terms.pop(m, None)
        return Polynomial._raw(self.vars, terms)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw(self.vars, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Fraction(other)
            if not other:
                return Polynomial._raw(self.vars, {})
            return Polynomial._raw(self.vars, {m: c * other for m, c in self.terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        # multiply integer numerators over a common denominator; Fraction arithmetic is slow
        d1, n1 = _integral(self.terms)
        d2, n2 = _integral(other.terms)
        acc: dict = {}
        for m1, c1 in n1:
            for m2, c2 in n2:
                m = tuple(a + b for a, b in zip(m1, m2))
                acc[m] = acc.get(m, 0) + c1 * c2
        d = d1 * d2
        if d == 1:
            return Polynomial._raw(self.vars, {m: Fraction(c) for m, c in acc.items() if c})
        return Polynomial._raw(self.vars, {m: Fraction(c, d) for m, c in acc.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = Polynomial.constant(self.vars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def mul_term(self, m: Monomial, c) -> "Polynomial":
        return Polynomial._raw(
            self.vars,
            {tuple(a + b for a, b in zip(m, k)): v * c for k, v in self.terms.items()},
        )

    # equality

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Polynomial.constant(self.vars, other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.vars == other.vars and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.vars, frozenset(self.terms.items())))
        return self._hash

    # variable handling

    def with_vars(self, new_vars: Sequence[str]) -> "Polynomial":
        """Re-embed into a variable list that contains every variable actually used."""
        new_vars = tuple(new_vars)
        if new_vars == self.vars:
            return self
        index = {v: i for i, v in enumerate(new_vars)}
        used = {i for m in self.terms for i, e in enumerate(m) if e}
        for i in used:
            if self.vars[i] not in index:
                raise VariableMismatch(f"variable {self.vars[i]!r} missing from {new_vars}")
        terms = {}
        for m, c in self.terms.items():
            nm = [0] * len(new_vars)
            for i, e in enumerate(m):
                if e:
                    nm[index[self.vars[i]]] = e
            terms[tuple(nm)] = c
        return Polynomial._raw(new_vars, terms)

    def uses(self, name: str) -> bool:
        if name not in self.vars:
            return False
        i = self.vars.index(name)
        return any(m[i] for m in self.terms)

    def substitute(self, images: Sequence["Polynomial"]) -> "Polynomial":
        """Evaluate with the i-th variable replaced by ``images[i]``."""
        if len(images) != len(self.vars):
            raise VariableMismatch("one image per variable required")
        if not images:
            target_vars: tuple = ()
            return Polynomial.constant(target_vars, self.constant_value())
        target_vars = images[0].vars
        cache: dict = {}

        def power(i, e):
            key = (i, e)
            if key not in cache:
                cache[key] = images[i] ** e
            return cache[key]

        result = Polynomial.zero(target_vars)
        for m, c in self.terms.items():
            term = Polynomial.constant(target_vars, c)
            for i, e in enumerate(m):
                if e:
                    term = term * power(i, e)
            result = result + term
        return result

    # display

    def to_string(self, order: str = "grevlex") -> str:
        if not self.terms:
            return "0"
        out = []
        for m, c in self.sorted_terms(order):
            factors = []
            for v, e in zip(self.vars, m):
                if e == 1:
                    factors.append(v)
                elif e > 1:
                    factors.append(f"{v}^{e}")
            mag = abs(c)
            if not factors:
                body = str(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = f"{mag}*" + "*".join(factors)
            if not out:
                out.append(body if c > 0 else "-" + body)
            else:
                out.append(("+ " if c > 0 else "- ") + body)
        return " ".join(out)

    def __str__(self):
        return self.to_string()

    def __repr__(self):
        return f"Polynomial({self.to_string()!r}, vars={list(self.vars)})"


def var_polys(vars: Sequence[str]) -> list[Polynomial]:
    return [Polynomial.variable(vars, v) for v in vars]


def as_polys(items: Iterable, vars: Sequence[str]) -> list[Polynomial]:
    out = []
    for p in items:
        if isinstance(p, Polynomial):
            out.append(p.with_vars(vars))
        else:
            out.append(Polynomial.constant(vars, p))
    return out
