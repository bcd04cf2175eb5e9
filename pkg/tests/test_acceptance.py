"""The ten acceptance criteria, each at its stated tolerance.

Every test prints one ``ACCEPTANCE <n> PASS|FAIL`` line; the lines are also
collected into the terminal summary by ``conftest.py``.
"""

import itertools
import random
import time

from oracles import bounded_membership, random_poly
from test_forms import random_rational_row, same_row
from test_groebner import membership_instances
from test_linalg import random_symplectic
from test_witt import PRIME3, P3, inversion_sign, unimodular_transform
from unimod import fixtures
from unimod.cycles import FramedCycle, boundary_along, differential_check, same_normalized, transport_cycle
from unimod.fixtures import b3_generator, b3_point_field, b_ring, phi, psi, sphere
from unimod.forms import (
    construct_qv,
    decomposition_certificate,
    qv_checks,
    symplectic_class,
    transported_certificate,
    verify_isometry,
)
from unimod.groebner import buchberger
from unimod.linalg import (
    MatrixOverRing,
    UnimodularRow,
    check_unimodular,
    det,
    is_symplectic,
    quaternion_matrix,
    row_times,
    symplectic_inverse,
    verify_orbit_certificate,
)
from unimod.rings import present_ring, verify_mutually_inverse
from unimod.witt import (
    Component,
    KoszulSymbol,
    PresentedField,
    SquareWitness,
    residue_at,
    same_class,
    transition_matrix,
)

RESULTS = []


def report(n, ok, detail):
    line = f"ACCEPTANCE {n:>2} {'PASS' if ok else 'FAIL'}  {detail}"
    RESULTS.append(line)
    print(line)
    assert ok, line


def test_1_quaternion_certificate():
    start = time.perf_counter()
    S3 = sphere(3)
    M = quaternion_matrix(S3)
    ok = (is_symplectic(M) and S3.is_zero(det(M) - 1)
          and verify_orbit_certificate([1, 0, 0, 0], ["x0", "x1", "x2", "x3"], M, "sp"))
    dt = time.perf_counter() - start
    report(1, ok and dt < 1.0, f"M^T J M = J, det M = 1, e1 M = v ({dt:.3f}s < 1s)")


def test_2_stereographic_maps_inverse():
    for f in (fixtures.psi, fixtures.phi, fixtures.sphere_punctured, fixtures.b_punctured):
        f.cache_clear()
    start = time.perf_counter()
    ok = verify_mutually_inverse(psi(3), phi(3))
    dt = time.perf_counter() - start
    report(2, ok and dt < 1.0, f"psi and phi mutually inverse on all generators ({dt:.3f}s < 1s)")


def test_3_b3_identity():
    B3 = b_ring(3)
    ok = B3.reduce("(x0*x1+x2)*(x0*x1-x2) - (x0^2+1)*(x1^2+1) + x2*(x2+x3)").is_zero()
    report(3, ok, "nf of the B^3 identity is 0")


def test_4_explicit_b3_residues():
    start = time.perf_counter()
    B3 = b_ring(3)
    tr = transition_matrix(B3, ["x0^2+1", "x0*x1+x2"], ["x1", "x2"], ["x1", "x2"])
    det_ok = B3.is_zero(tr.det - B3._poly("-x1 - x0*x3"))
    outside = not present_ring(B3.vars, ["x1", "x2", *[g for g in B3.gb.generators]]).is_zero(tr.det)
    [rep] = differential_check(b3_generator(), [b3_point_field()], [SquareWitness("1-x0", "s")])
    dt = time.perf_counter() - start
    ok = det_ok and outside and rep.is_zero
    report(4, ok and dt < 5.0, f"det T = -x1-x0x3 outside (x1,x2); differential at (x1,x2) is 0 ({dt:.3f}s < 5s)")


def test_5_s3_boundary_pipeline():
    start = time.perf_counter()
    S2 = sphere(2)
    t = transport_cycle(phi(3), b3_generator())
    bd = boundary_along(t, "x3", S2)
    expected = FramedCycle(S2, (Component.make(S2, ["1-x2"], "x1", ["1-x2"]),))
    first = boundary_along(FramedCycle(t.ring, t.components[:1]), "x3", S2)
    dt = time.perf_counter() - start
    ok = same_normalized(bd, expected) and len(first) == 0
    report(5, ok and dt < 5.0, f"boundary is ((1-x2), x1, Kos(1-x2)); first component gives 0 ({dt:.3f}s < 5s)")


def test_6_qv_round_trip():
    S3 = sphere(3)
    Q = present_ring([], [])
    rows = [UnimodularRow(S3, (1, 0, 0, 0), (1, 0, 0, 0)), check_unimodular(S3, ["x0", "x1", "x2", "x3"])]
    rng = random.Random(606)
    rows += [random_rational_row(rng, rng.choice([4, 6])) for _ in range(12)]
    ok, bad = True, []
    for row in rows:
        qv = construct_qv(row)
        back = symplectic_class(qv.form, decomposition_certificate(qv))
        good = same_row(row.ring, back.v, row.v) and all(qv_checks(qv).values())
        if not good:
            bad.append(row.v)
        ok &= good
    report(6, ok, f"{len(rows)} rows (e1, sphere row, {len(rows) - 2} over Q) round trip verbatim; failures {bad}")


def test_7_groebner_oracle():
    instances = membership_instances(120)
    agree = sum(buchberger(g).contains(p) == bounded_membership(p, g, 6) for p, g in instances)
    report(7, agree == len(instances), f"{agree}/{len(instances)} membership verdicts agree with the oracle")


def test_8_koszul_laws():
    rng = random.Random(808)
    perm_fail = 0
    perms = [p for k in (2, 3) for p in itertools.permutations(range(k))]
    for i in range(120):
        perm = list(rng.choice(perms))
        gens = ["x", "y", "z"][:len(perm)]
        seq = unimodular_transform(rng, gens, P3)
        F = PRIME3 if len(perm) == 3 else PresentedField(P3, gens)
        sym = KoszulSymbol(F, P3._poly("1 + x*z"), tuple(seq))
        lhs = sym.reframed([seq[j] for j in perm]).signed_unit
        if not (F.reduce(lhs - sym.permuted(perm).signed_unit).is_zero()
                and F.reduce(lhs - inversion_sign(perm) * sym.signed_unit).is_zero()):
            perm_fail += 1

    Fq = b3_point_field()
    R = Fq.ring
    base = Component.make(R, ["x2"], "x1*x3")
    s0 = residue_at(base, Fq, ramifier=("x3", "x1"))
    square_fail, n_square = 0, 0
    while n_square < 120:
        b = R._poly(random_poly(rng, b_ring(3).vars, 2, 3, 4).with_vars(R.vars))
        if Fq.contains(b):
            continue
        n_square += 1
        scaled = Component.make(R, ["x2"], base.unit * b * b)
        s1 = residue_at(scaled, Fq, ramifier=(R._poly("x3") * b * b, "x1"))
        if not same_class(Fq, s1.signed_unit, s0.signed_unit, SquareWitness(b, 1)).ok:
            square_fail += 1

    comp_fail = 0
    for i in range(120):
        k = 2 + i % 2
        q = PresentedField(P3, ["x", "y", "z"][:k])
        s1 = unimodular_transform(rng, ["x", "y", "z"][:k], P3)
        s2 = unimodular_transform(rng, s1, P3)
        s3 = unimodular_transform(rng, s2, P3)
        t12, t23, t13 = (transition_matrix(P3, a, b, q) for a, b in ((s1, s2), (s2, s3), (s1, s3)))
        image = (t12.matrix @ t23.matrix @ MatrixOverRing.column(P3, s3)).col(0)
        if not (all(P3.is_zero(a - b) for a, b in zip(image, s1))
                and q.reduce(t13.det - t12.det * t23.det).is_zero()):
            comp_fail += 1
    ok = perm_fail == square_fail == comp_fail == 0
    report(8, ok, f"violations: permutation {perm_fail}/120, square absorption {square_fail}/120, "
                  f"composition {comp_fail}/120")


def test_9_symplectic_equivariance():
    rng = random.Random(909)
    QX = present_ring(["x"], [])
    idem = present_ring(["x"], ["x^2 - x"])
    S3 = sphere(3)
    cases = [(QX, ["1+x", "x", 0, 1], ("x",), 2)] * 3 + [(idem, ["x", "1-x", 0, 0], ("x",), 2)] * 2 \
        + [(S3, ["x0", "x1", "x2", "x3"], ("x0",), 1)] * 2
    passed = 0
    for R, v, gvars, factors in cases:
        G = random_symplectic(R, 4, rng, factors, gvars)
        row = check_unimodular(R, v)
        w2 = (symplectic_inverse(G) @ MatrixOverRing.column(R, row.w)).col(0)
        image = UnimodularRow(R, row_times(R, row.v, G), w2)
        qv, qv2 = construct_qv(row), construct_qv(image)
        passed += is_symplectic(G) and verify_isometry(transported_certificate(qv, qv2, G))
    report(9, passed == len(cases), f"{passed}/{len(cases)} random symplectic G give verified isometries Q(v) -> Q(vG)")


def test_10_verify_paper_all():
    from unimod.cli import main
    start = time.perf_counter()
    code = main(["verify-paper", "--scenario", "all"])
    dt = time.perf_counter() - start
    report(10, code == 0 and dt < 60.0, f"verify-paper --scenario all exit {code} ({dt:.2f}s < 60s)")
