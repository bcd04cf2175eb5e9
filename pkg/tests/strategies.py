"""Hypothesis strategies for polynomials over small variable sets."""

from fractions import Fraction

from hypothesis import strategies as st

from unimod.poly import Polynomial

VARS3 = ("x", "y", "z")

coefficients = st.builds(Fraction, st.integers(-6, 6), st.sampled_from([1, 1, 2, 3]))


def _clip(m, max_degree):
    out, room = [], max_degree
    for e in m:
        e = min(e, room)
        out.append(e)
        room -= e
    return tuple(out)


def monomials(nvars: int, max_degree: int):
    return st.lists(st.integers(0, max_degree), min_size=nvars, max_size=nvars).map(
        lambda m: _clip(m, max_degree))


def polynomials(vars=VARS3, max_degree: int = 3, max_terms: int = 4):
    return st.dictionaries(monomials(len(vars), max_degree), coefficients, max_size=max_terms).map(
        lambda d: Polynomial(vars, d))


def nonzero_polynomials(vars=VARS3, max_degree: int = 3, max_terms: int = 4):
    return st.dictionaries(monomials(len(vars), max_degree), coefficients.filter(bool),
                           min_size=1, max_size=max_terms).map(
        lambda d: Polynomial(vars, d)).filter(lambda p: not p.is_zero())
