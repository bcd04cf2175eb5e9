"""Multivariate division, Buchberger's algorithm and membership certificates."""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import InvariantViolation, VariableMismatch
from .poly import (
    Polynomial,
    mono_div,
    mono_divides,
    mono_lcm,
    mono_mul,
    order_key,
)


def _heap_key(order: str):
    # heapq is a min-heap: keys must invert the monomial order
    if order == "grevlex":
        return lambda m: (-sum(m), tuple(reversed(m)))
    if order == "lex":
        return lambda m: tuple(-e for e in m)
    order_key(order)  # raises for unknown orders
    raise ValueError(order)


@dataclass(frozen=True)
class GroebnerBasis:
    generators: tuple
    order: str
    vars: tuple
    reduced: bool = True
    # cofactors[i][j]: coefficient of inputs[j] in generators[i]
    inputs: tuple = field(default=(), compare=False, repr=False)
    cofactors: tuple | None = field(default=None, compare=False, repr=False)

    def reduce(self, p: Polynomial) -> Polynomial:
        return nf(p, self)

    def contains(self, p: Polynomial) -> bool:
        return nf(p, self).is_zero()

    def is_unit_ideal(self) -> bool:
        return any(g.is_constant() and not g.is_zero() for g in self.generators)

    def __len__(self):
        return len(self.generators)

    def __iter__(self):
        return iter(self.generators)


def _check_vars(p: Polynomial, vars: tuple) -> None:
    if p.vars != vars:
        raise VariableMismatch(f"variable lists differ: {p.vars} vs {vars}")


def divide(p: Polynomial, basis: Sequence[Polynomial], order: str = "grevlex",
           track: bool = True):
    """Full multivariate division of ``p`` by ``basis``.

    Returns ``(quotients, remainder)`` with ``p = sum(q_i * basis_i) + remainder``
    and no term of the remainder divisible by a leading monomial of ``basis``.
    Among candidate divisors the one with the smallest index is used.
    """
    for g in basis:
        _check_vars(g, p.vars)
    hk = _heap_key(order)
    divisors = [(g.leading_monomial(order), g.leading_coefficient(order), g)
                for g in basis if not g.is_zero()]
    index = [i for i, g in enumerate(basis) if not g.is_zero()]
    quotients = [dict() for _ in basis] if track else None
    work = dict(p.terms)
    heap = [(hk(m), m) for m in work]
    heapq.heapify(heap)
    rem: dict = {}
    while heap:
        _, m = heapq.heappop(heap)
        c = work.pop(m, None)
        if c is None:
            continue
        # skip duplicate heap entries for the same monomial
        while heap and heap[0][1] == m:
            heapq.heappop(heap)
        for pos, (lm, lc, g) in enumerate(divisors):
            if mono_divides(lm, m):
                qm = mono_div(m, lm)
                qc = c / lc
                if track:
                    qd = quotients[index[pos]]
                    qd[qm] = qd.get(qm, 0) + qc
                for gm, gc in g.terms.items():
                    if gm == lm:
                        continue
                    mm = mono_mul(gm, qm)
                    v = work.get(mm, 0) - qc * gc
                    if v:
                        if mm not in work:
                            heapq.heappush(heap, (hk(mm), mm))
                        work[mm] = v
                    else:
                        work.pop(mm, None)
                break
        else:
            rem[m] = c
    remainder = Polynomial._raw(p.vars, rem)
    if not track:
        return None, remainder
    qs = [Polynomial._raw(p.vars, {m: c for m, c in q.items() if c}) for q in quotients]
    return qs, remainder


def nf(p: Polynomial, G: GroebnerBasis) -> Polynomial:
    """Normal form of ``p`` modulo the Groebner basis ``G``."""
    _check_vars(p, G.vars)
    if not G.generators:
        return p
    return divide(p, G.generators, G.order, track=False)[1]


def _spoly_parts(f, g, lmf, lmg):
    lcm = mono_lcm(lmf, lmg)
    return lcm, mono_div(lcm, lmf), mono_div(lcm, lmg)


def _combine(vectors, coeffs, vars, k):
    """sum_i coeffs[i] * vectors[i] for polynomial vectors of length k."""
    out = [Polynomial.zero(vars) for _ in range(k)]
    for q, vec in zip(coeffs, vectors):
        if q.is_zero():
            continue
        for j in range(k):
            if not vec[j].is_zero():
                out[j] = out[j] + q * vec[j]
    return out


def buchberger(gens: Sequence[Polynomial], order: str = "grevlex",
               track: bool = False) -> GroebnerBasis:
    """Reduced Groebner basis of the ideal generated by ``gens``.

    Pairs are selected by the normal strategy (smallest lcm in the monomial
    order, ties broken by pair indices) and pruned with Buchberger's coprime
    and chain criteria.  With ``track=True`` every basis element carries its
    expression in terms of the input generators.
    """
    gens = list(gens)
    if not gens:
        raise ValueError("at least one generator required")
    vars = gens[0].vars
    for g in gens:
        _check_vars(g, vars)
    key = order_key(order)
    k = len(gens)
    zero = Polynomial.zero(vars)

    basis: list[Polynomial] = []
    lms: list = []
    cofs: list = []
    pairs: set = set()

    def add(g: Polynomial, cof):
        lc = g.leading_coefficient(order)
        inv = 1 / lc
        g = g * inv
        if track:
            cof = [c * inv for c in cof]
        idx = len(basis)
        basis.append(g)
        lms.append(g.leading_monomial(order))
        cofs.append(cof)
        for i in range(idx):
            pairs.add((i, idx))

    for j, g in enumerate(gens):
        if g.is_zero():
            continue
        cof = None
        if track:
            cof = [zero] * k
            cof[j] = Polynomial.constant(vars, 1)
        # reduce against what we have so the initial basis is tidier
        if basis:
            qs, r = divide(g, basis, order, track=track)
            if r.is_zero():
                continue
            if track:
                sub = _combine(cofs, qs, vars, k)
                cof = [a - b for a, b in zip(cof, sub)]
            g = r
        add(g, cof)

    while pairs:
        i, j = min(pairs, key=lambda p: (key(mono_lcm(lms[p[0]], lms[p[1]])), p[1], p[0]))
        pairs.discard((i, j))
        lcm = mono_lcm(lms[i], lms[j])
        if lcm == mono_mul(lms[i], lms[j]):
            continue
        if any(
            t not in (i, j)
            and mono_divides(lms[t], lcm)
            and (min(i, t), max(i, t)) not in pairs
            and (min(j, t), max(j, t)) not in pairs
            for t in range(len(basis))
        ):
            continue
        _, mi, mj = _spoly_parts(basis[i], basis[j], lms[i], lms[j])
        one = Fraction(1)
        s = basis[i].mul_term(mi, one) - basis[j].mul_term(mj, one)
        qs, r = divide(s, basis, order, track=track)
        if r.is_zero():
            continue
        cof = None
        if track:
            cof = [cofs[i][t].mul_term(mi, one) - cofs[j][t].mul_term(mj, one)
                   for t in range(k)]
            sub = _combine(cofs, qs, vars, k)
            cof = [a - b for a, b in zip(cof, sub)]
        add(r, cof)

    # minimalize: drop elements whose leading monomial is divisible by another's
    keep = []
    for i in range(len(basis)):
        redundant = False
        for j in range(len(basis)):
            if i == j or not mono_divides(lms[j], lms[i]):
                continue
            if lms[j] != lms[i] or j < i:
                redundant = True
                break
        if not redundant:
            keep.append(i)
    basis = [basis[i] for i in keep]
    lms = [lms[i] for i in keep]
    cofs = [cofs[i] for i in keep]

    # interreduce tails
    for i in range(len(basis)):
        others = basis[:i] + basis[i + 1:]
        if not others:
            continue
        head = Polynomial._raw(vars, {lms[i]: basis[i].terms[lms[i]]})
        tail = basis[i] - head
        qs, r = divide(tail, others, order, track=track)
        basis[i] = head + r
        if track:
            other_cofs = cofs[:i] + cofs[i + 1:]
            sub = _combine(other_cofs, qs, vars, k)
            cofs[i] = [a - b for a, b in zip(cofs[i], sub)]

    perm = sorted(range(len(basis)), key=lambda t: key(lms[t]))
    generators = tuple(basis[t] for t in perm)
    cofactors = tuple(tuple(cofs[t]) for t in perm) if track else None
    return GroebnerBasis(generators, order, vars, True, tuple(gens), cofactors)


def is_reduced_groebner(G: GroebnerBasis) -> bool:
    """Check the defining properties of a reduced Groebner basis directly."""
    order = G.order
    gens = list(G.generators)
    lms = [g.leading_monomial(order) for g in gens]
    for i, g in enumerate(gens):
        if g.leading_coefficient(order) != 1:
            return False
        for m in g.terms:
            for j, lm in enumerate(lms):
                if j != i and mono_divides(lm, m):
                    return False
    for i in range(len(gens)):
        for j in range(i + 1, len(gens)):
            _, mi, mj = _spoly_parts(gens[i], gens[j], lms[i], lms[j])
            s = gens[i].mul_term(mi, 1) - gens[j].mul_term(mj, 1)
            if not divide(s, gens, order, track=False)[1].is_zero():
                return False
    return True


def lift_membership(p: Polynomial, gens: Sequence[Polynomial], order: str = "grevlex"):
    """Cofactors ``c`` with ``p == sum(c_i * gens_i)``, or ``None`` if p is not in the ideal.

    The returned cofactors are re-expanded and checked before being returned.
    """
    gens = list(gens)
    for g in gens:
        _check_vars(g, p.vars)
    vars = p.vars
    if all(g.is_zero() for g in gens):
        return [Polynomial.zero(vars) for _ in gens] if p.is_zero() else None
    G = buchberger(gens, order, track=True)
    qs, r = divide(p, G.generators, order, track=True)
    if not r.is_zero():
        return None
    cof = _combine(G.cofactors, qs, vars, len(gens))
    check = Polynomial.zero(vars)
    for c, g in zip(cof, gens):
        check = check + c * g
    if check != p:
        raise InvariantViolation("membership cofactors do not re-expand to the target")
    return cof
