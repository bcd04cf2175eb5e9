import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import evaluate, sphere_point
from unimod.errors import DimensionError, NotUnimodular
from unimod.fixtures import sphere
from unimod.linalg import (
    MatrixOverRing,
    UnimodularRow,
    apply_transvections,
    check_unimodular,
    det,
    hyperbolic_gram,
    is_symplectic,
    quaternion_matrix,
    row_times,
    symplectic_inverse,
    transvection,
    verify_orbit_certificate,
)
from unimod.rings import present_ring

S3 = sphere(3)
QX = present_ring(["x"], [])
QQ = present_ring([], [])


def symplectic_transvection(R, x, a):
    """``I + a x x^T J``: preserves the standard alternating form."""
    n = len(x)
    J = hyperbolic_gram(R, n // 2)
    col = MatrixOverRing.column(R, x)
    return MatrixOverRing.identity(R, n) + (col @ col.T @ J).scale(R._poly(a))


def random_symplectic(R, n, rng, factors=3, degree_vars=()):
    G = MatrixOverRing.identity(R, n)
    for _ in range(factors):
        x = []
        for _ in range(n):
            c = rng.randint(-2, 2)
            if degree_vars and rng.random() < 0.4:
                x.append(f"{c}*{rng.choice(degree_vars)}")
            else:
                x.append(str(c))
        G = G @ symplectic_transvection(R, x, rng.choice([1, -1, 2]))
    return G


def test_check_unimodular_on_the_sphere():
    row = check_unimodular(S3, ["x0", "x1", "x2", "x3"])
    assert row.verify()


def test_check_unimodular_over_q():
    row = check_unimodular(QQ, [0, 2, 0, 0])
    assert row.w[1].constant_value() == Fraction(1, 2)


def test_not_unimodular():
    with pytest.raises(NotUnimodular):
        check_unimodular(S3, ["x0", "x1"])


def test_quaternion_matrix():
    M = quaternion_matrix(S3)
    assert is_symplectic(M)
    assert S3.is_zero(det(M) - 1)
    assert verify_orbit_certificate([1, 0, 0, 0], ["x0", "x1", "x2", "x3"], M, "sp")
    assert verify_orbit_certificate([1, 0, 0, 0], ["x0", "x1", "x2", "x3"], M, "sl")


def test_quaternion_matrix_at_rational_points():
    # independent check: evaluate the displayed matrix at points of the sphere
    rng = random.Random(3)
    M = quaternion_matrix(S3)
    for _ in range(20):
        p = sphere_point(rng)
        A = [[evaluate(e, p) for e in row] for row in M.rows]
        J = [[0, 1, 0, 0], [-1, 0, 0, 0], [0, 0, 0, 1], [0, 0, -1, 0]]
        prod = [[sum(A[k][i] * J[k][l] * A[l][j] for k in range(4) for l in range(4)) for j in range(4)]
                for i in range(4)]
        assert prod == J


def test_diag_is_not_symplectic():
    D = MatrixOverRing(S3, [[2, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]])
    assert not is_symplectic(D)
    assert not verify_orbit_certificate([1, 0, 0, 0], ["x0", "x1", "x2", "x3"], D, "sp")


def test_odd_size_is_an_error():
    with pytest.raises(DimensionError):
        is_symplectic(MatrixOverRing.identity(S3, 3))


def test_determinants():
    assert det(MatrixOverRing.identity(S3, 4)) == S3.reduce(1)
    assert det(transvection(S3, 4, 1, 2, "x0")) == S3.reduce(1)
    M = MatrixOverRing(QX, [["x", 1], [2, "x"]])
    assert det(M) == QX.reduce("x^2 - 2")


def test_transvection_example():
    v, _ = apply_transvections(QX, [1, 0, 0, 0], [(1, 2, "x")])
    assert v == tuple(QX.reduce(a) for a in (1, "x", 0, 0))


def test_identity_ops_leave_row():
    v, G = apply_transvections(S3, ["x0", "x1", "x2", "x3"], [])
    assert v == tuple(S3.reduce(a) for a in S3.vars)
    assert G == MatrixOverRing.identity(S3, 4)


def test_two_step_reduction():
    v, G = apply_transvections(QX, ["1+x", "x", 0, 0], [(2, 1, -1), (1, 2, "-x")])
    assert v == tuple(QX.reduce(a) for a in (1, 0, 0, 0))
    assert verify_orbit_certificate(["1+x", "x", 0, 0], [1, 0, 0, 0], G, "sl")
    assert verify_orbit_certificate(["1+x", "x", 0, 0], [1, 0, 0, 0], [(2, 1, -1), (1, 2, "-x")], "e", ring=QX)


def test_transvection_index_error():
    with pytest.raises(DimensionError):
        apply_transvections(QX, [1, 0], [(1, 3, 1)])


def test_identity_certificate_any_kind():
    I = MatrixOverRing.identity(S3, 4)
    for kind in ("sp", "sl"):
        assert verify_orbit_certificate(list(S3.vars), list(S3.vars), I, kind)
    assert verify_orbit_certificate(list(S3.vars), list(S3.vars), [], "e", ring=S3)


@settings(max_examples=25)
@given(st.randoms(use_true_random=False))
def test_symplectic_closure_and_determinant(rnd):
    for R, vars in ((QX, ("x",)), (S3, ("x0", "x3"))):
        G = random_symplectic(R, 4, rnd, 2, vars)
        H = random_symplectic(R, 4, rnd, 2, vars)
        assert is_symplectic(G) and is_symplectic(H)
        assert is_symplectic(G @ H)
        assert R.is_zero(det(G) - 1)
        assert (symplectic_inverse(G) @ G) == MatrixOverRing.identity(R, 4)
    G2 = random_symplectic(QX, 2, rnd, 2, ("x",))
    assert QX.is_zero(det(G2) - 1)


@settings(max_examples=25)
@given(st.lists(st.tuples(st.integers(1, 4), st.integers(1, 4), st.integers(-3, 3)), max_size=4),
       st.lists(st.tuples(st.integers(1, 4), st.integers(1, 4), st.integers(-3, 3)), max_size=4))
def test_transvections_compose(ops1, ops2):
    ops1 = [(i, j, f"{a}*x") for i, j, a in ops1 if i != j]
    ops2 = [(i, j, a) for i, j, a in ops2 if i != j]
    row = ["1+x", "x", "x^2", 3]
    v1, G1 = apply_transvections(QX, row, ops1)
    v2, G2 = apply_transvections(QX, v1, ops2)
    v12, G12 = apply_transvections(QX, row, ops1 + ops2)
    assert v2 == v12 and G1 @ G2 == G12
    assert row_times(QX, row, G12) == v12


@settings(max_examples=20)
@given(st.randoms(use_true_random=False))
def test_cofactor_follows_the_right_action(rnd):
    row = check_unimodular(S3, ["x0", "x1", "x2", "x3"])
    G = random_symplectic(S3, 4, rnd, 2, ("x1", "x2"))
    v2 = row_times(S3, row.v, G)
    w2 = (symplectic_inverse(G) @ MatrixOverRing.column(S3, row.w)).col(0)
    assert UnimodularRow(S3, v2, w2).verify()
