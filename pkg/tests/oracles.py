"""Independent reference implementations used to cross-check the library.

Nothing here calls the Groebner machinery under test: membership is decided by
dense linear algebra over Q on a bounded-degree ansatz, reduced bases come from
sympy, and ring identities on the sphere are probed at rational points.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

import sympy

from unimod.poly import Polynomial


def monomials_up_to(nvars: int, degree: int):
    for d in range(degree + 1):
        for combo in itertools.combinations_with_replacement(range(nvars), d):
            m = [0] * nvars
            for i in combo:
                m[i] += 1
            yield tuple(m)


def _solvable(columns: list[dict], target: dict) -> bool:
    """Is ``target`` in the Q-span of the sparse vectors ``columns``?"""
    rows = sorted({k for c in columns for k in c} | set(target))
    index = {k: i for i, k in enumerate(rows)}
    # augmented matrix as dense rows of Fractions
    n = len(columns)
    M = [[Fraction(0)] * (n + 1) for _ in rows]
    for j, c in enumerate(columns):
        for k, v in c.items():
            M[index[k]][j] = Fraction(v)
    for k, v in target.items():
        M[index[k]][n] = Fraction(v)
    r = 0
    for col in range(n):
        piv = next((i for i in range(r, len(M)) if M[i][col] != 0), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = 1 / M[r][col]
        M[r] = [x * inv for x in M[r]]
        for i in range(len(M)):
            if i != r and M[i][col] != 0:
                f = M[i][col]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        r += 1
    return all(M[i][n] == 0 for i in range(r, len(M)))


def bounded_membership(p: Polynomial, gens: list[Polynomial], bound: int) -> bool:
    """True iff ``p = sum c_i g_i`` with every ``deg(c_i g_i) <= bound``."""
    n = len(p.vars)
    columns = []
    for g in gens:
        if g.is_zero():
            continue
        for m in monomials_up_to(n, bound - g.total_degree()):
            columns.append(dict(g.mul_term(m, 1).terms))
    return _solvable(columns, dict(p.terms))


def to_sympy(p: Polynomial, gens):
    return sympy.Poly.from_dict({m: sympy.Rational(c.numerator, c.denominator)
                                 for m, c in p.terms.items()} or {(0,) * len(gens): 0}, *gens, domain="QQ")


def sympy_reduced_basis(polys: list[Polynomial], order: str) -> set:
    """Reduced monic basis as a set of ``frozenset(terms)`` for comparison."""
    vars = polys[0].vars
    gens = sympy.symbols(vars)
    G = sympy.groebner([to_sympy(p, gens).as_expr() for p in polys], *gens, order=order)
    out = set()
    for g in G.exprs:
        P = sympy.Poly(g, *gens)
        lc = P.LC(order=order)
        out.add(frozenset((m, Fraction(int(sympy.fraction(c / lc)[0]), int(sympy.fraction(c / lc)[1])))
                          for m, c in P.terms()))
    return out


def as_termset(p: Polynomial) -> frozenset:
    return frozenset(p.terms.items())


def evaluate(p: Polynomial, point) -> Fraction:
    total = Fraction(0)
    for m, c in p.terms.items():
        term = c
        for x, e in zip(point, m):
            if e:
                term *= Fraction(x) ** e
        total += term
    return total


def sphere_point(rng: random.Random, n: int = 3) -> tuple:
    """A rational point of x0^2 + ... + xn^2 = 1 by inverse stereographic projection."""
    a = [Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(n)]
    s = sum(x * x for x in a)
    return tuple(2 * x / (s + 1) for x in a) + ((s - 1) / (s + 1),)


def random_poly(rng: random.Random, vars, max_degree: int, max_terms: int, coeff: int = 5) -> Polynomial:
    mons = list(monomials_up_to(len(vars), max_degree))
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        terms[rng.choice(mons)] = Fraction(rng.randint(-coeff, coeff), rng.choice([1, 1, 1, 2, 3]))
    return Polynomial(vars, terms)
