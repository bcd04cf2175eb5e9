"""Named end-to-end verification scenarios with deterministic, serializable reports."""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Callable

from .cycles import FramedCycle, boundary_along, differential_check, same_normalized, transport_cycle
from .errors import UnimodError, UnknownScenario
from .fixtures import (
    b3_generator,
    b3_point_field,
    b_ring,
    c_ring,
    p1_field,
    phi,
    psi,
    sphere,
    sphere_punctured,
)
from .forms import (
    IsometryCertificate,
    construct_qv,
    decomposition_certificate,
    euler_form,
    field_hyperbolic_certificate,
    hyperbolic,
    qv_checks,
    scaling_certificate,
    symplectic_class,
    verify_isometry,
)
from .groebner import lift_membership
from .linalg import (
    MatrixOverRing,
    UnimodularRow,
    check_unimodular,
    det,
    is_symplectic,
    quaternion_matrix,
    row_times,
    verify_orbit_certificate,
)
from .rings import present_ring, verify_mutually_inverse
from .witt import COMPLEX, Component, SquareWitness, residue_at, transition_matrix, verify_square_class


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""

    def to_dict(self) -> dict:
        return {"name": self.name, "passed": self.passed, "detail": self.detail}


@dataclass
class Report:
    scenario: str
    checks: list = field(default_factory=list)
    seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return bool(self.checks) and all(c.passed for c in self.checks)

    def to_dict(self, timing: bool = False) -> dict:
        d = {"scenario": self.scenario, "passed": self.passed,
             "checks": [c.to_dict() for c in self.checks]}
        if timing:
            d["seconds"] = round(self.seconds, 3)
        return d

    def lines(self) -> list[str]:
        out = [f"[{'PASS' if self.passed else 'FAIL'}] {self.scenario}"]
        for c in self.checks:
            mark = "ok " if c.passed else "FAIL"
            out.append(f"    {mark} {c.name}" + (f": {c.detail}" if c.detail else ""))
        return out


class _Recorder:
    def __init__(self):
        self.checks: list[Check] = []

    def check(self, name: str, fn: Callable[[], object], detail: Callable[[object], str] | None = None):
        """Run ``fn``; truthy results pass.  Library errors become failed checks."""
        try:
            value = fn()
        except UnimodError as exc:
            self.checks.append(Check(name, False, f"{type(exc).__name__}: {exc}"))
            return None
        self.checks.append(Check(name, bool(value), detail(value) if detail else ""))
        return value


def _sphere_iso(r: _Recorder):
    for n in (3, 2):
        f = r.check(f"psi well defined on S^{n}", lambda: psi(n), lambda h: "")
        g = r.check(f"phi well defined on B^{n}", lambda: phi(n), lambda h: "")
        if f and g:
            r.check(f"psi and phi mutually inverse (n={n})", lambda: verify_mutually_inverse(f, g))


def _quaternion(r: _Recorder):
    S3 = sphere(3)
    M = quaternion_matrix(S3)
    r.check("M^T J M = J", lambda: is_symplectic(M))
    r.check("det M = 1", lambda: S3.is_zero(det(M) - 1), lambda _: f"det = {S3.fmt(det(M))}")
    v = row_times(S3, [1, 0, 0, 0], M)
    r.check("e1 M = (x0, x1, x2, x3)",
            lambda: all(S3.is_zero(a - S3._poly(x)) for a, x in zip(v, S3.vars)))
    r.check("orbit certificate (Sp)",
            lambda: verify_orbit_certificate([1, 0, 0, 0], list(S3.vars), M, "sp"))


def _b3_identity(r: _Recorder):
    B3 = b_ring(3)
    expr = "(x0*x1+x2)*(x0*x1-x2) - (x0^2+1)*(x1^2+1) + x2*(x2+x3)"
    r.check("normal form is zero", lambda: B3.reduce(B3._poly(expr)).is_zero(),
            lambda _: f"nf = {B3.fmt(B3.reduce(B3._poly(expr)))}")


def _b3_transition(r: _Recorder):
    B3 = b_ring(3)
    tr = r.check("transition (x0^2+1, x0x1+x2) -> (x1, x2)",
                 lambda: transition_matrix(B3, ["x0^2+1", "x0*x1+x2"], ["x1", "x2"], ["x1", "x2"]),
                 lambda t: f"T = {t.matrix.to_strings()}")
    if tr is None:
        return
    expected = MatrixOverRing(B3, [["-x1", "x3"], ["x0", "1"]])
    r.check("T = [[-x1, x3], [x0, 1]]", lambda: tr.matrix == expected)
    r.check("det T = -x1 - x0*x3", lambda: B3.is_zero(tr.det - B3._poly("-x1-x0*x3")),
            lambda _: f"det = {B3.fmt(tr.det)}")
    r.check("det T not in (x1, x2)", lambda: not tr.det_class.is_zero())


def _b3_cocycle(r: _Recorder):
    c = b3_generator()
    q = b3_point_field()
    B = c.ring
    q1, q2 = c.components
    minus_i = SquareWitness("1-x0", "s")
    n1 = None
    s1 = r.check("residue of the q1 part is <-x0*x3> Kos(x1, x2)", lambda: residue_at(q1, q),
                 lambda s: s.describe())
    if s1 is not None:
        r.check("-x0*x3 equals the class of -i*x3", lambda: B.is_zero(s1.unit - B._poly("-x0*x3")))
        n1 = r.check("-i is a square: normalized to <x3> Kos(x1, x2)",
                     lambda: s1.normalized("x3", minus_i), lambda s: s.describe())
    s2 = r.check("residue of the q2 part against (x2, x1) is <x3> Kos(x2, x1)",
                 lambda: residue_at(q2, q, target=["x2", "x1"]), lambda s: s.describe())
    if s2 is not None:
        r.check("q2 residue unit is x3", lambda: q.residue.is_zero(s2.unit - B._poly("x3")))
        p = r.check("Kos(x2, x1) = -Kos(x1, x2)", lambda: s2.permuted([1, 0]),
                    lambda s: s.describe())
        if s1 is not None and p is not None and n1 is not None:
            r.check("normalized residues cancel",
                    lambda: p.sign == -n1.sign and q.residue.is_zero(p.unit - n1.unit)
                    and p.frame == n1.frame)
    r.check("differential at (x1, x2) vanishes",
            lambda: differential_check(c, [q], [minus_i])[0].is_zero)
    r.check("without the -i witness the sum stays unresolved",
            lambda: differential_check(c, [q])[0].status == "unresolved")
    r.check("q2 part alone is not a cocycle at (x1, x2)",
            lambda: differential_check(FramedCycle(B, (q2,)), [q], [minus_i])[0].status == "nonzero")


def _expected_transport() -> FramedCycle:
    S = sphere_punctured(3)
    return FramedCycle(S, (
        Component.make(S, ["x0^2+x3^2"], "x0*x1+(1-x2)*x3", ["x0^2+x3^2"], COMPLEX),
        Component.make(S, ["1-x2"], "x1*x3", ["1-x2"]),
    ))


def _transport(r: _Recorder):
    c = b3_generator()
    ct = r.check("transport along phi", lambda: transport_cycle(phi(3), c),
                 lambda x: "; ".join(x.describe()))
    if ct is None:
        return
    r.check("image is {((x0^2+x3^2), x0x1+(1-x2)x3, Kos(x0^2+x3^2)), ((1-x2), x1x3, Kos(1-x2))}",
            lambda: same_normalized(ct, _expected_transport()))
    back = r.check("transport back along psi", lambda: transport_cycle(psi(3), ct),
                   lambda x: "; ".join(x.describe()))
    if back is not None:
        r.check("round trip returns the original classes", lambda: same_normalized(back, c))


def _boundary(r: _Recorder):
    S2 = sphere(2)
    ct = transport_cycle(phi(3), b3_generator())
    bd = r.check("boundary along x3 onto S^2", lambda: boundary_along(ct, "x3", S2),
                 lambda x: "; ".join(x.describe()))
    if bd is None:
        return
    expected = FramedCycle(S2, (Component.make(S2, ["1-x2"], "x1", ["1-x2"]),))
    r.check("boundary is ((1-x2), x1, Kos(1-x2))", lambda: same_normalized(bd, expected))
    first = FramedCycle(ct.ring, ct.components[:1])
    r.check("the (x0^2+x3^2) part contributes nothing",
            lambda: len(boundary_along(first, "x3", S2)) == 0)


def _c2_generator(r: _Recorder):
    C2 = c_ring(2)
    r.check("(x0^2+1)(x1^2+1) = (x0x1+x2)(x0x1-x2) in C^2",
            lambda: C2.is_zero(C2._poly("(x0^2+1)*(x1^2+1) - (x0*x1+x2)*(x0*x1-x2)")))
    p1c = C2.with_relations([C2._poly("x0^2+1"), C2._poly("x0*x1+x2")])
    r.check("x0x1-x2 not in p1", lambda: not p1c.is_zero(C2._poly("x0*x1-x2")))
    r.check("(x0x1-x2)(x0x1+x2) lies in (x0^2+1): p1 is locally principal",
            lambda: lift_membership(C2._poly("(x0*x1-x2)*(x0*x1+x2)"),
                                    [C2._poly("x0^2+1"), *C2.gb.generators], C2.order) is not None)
    B3 = b_ring(3)
    r.check("B^3 / (x2+x3) has the C^2 relation",
            lambda: B3.with_relations([B3._poly("x2+x3")]).is_zero(B3._poly("x0^2+x1^2+x2^2+1")))
    F = p1_field()
    r.check("x0x1 - x2 = -2 x2 in the residue field of p1",
            lambda: F.contains(B3._poly("x0*x1-x2+2*x2")))
    r.check("-1/2 is a square there (x0 plays i, s^2 = 2)",
            lambda: verify_square_class(F, B3._poly("-1/2"), SquareWitness("x0", "s")).ok)


def _same_row(R, a, b) -> bool:
    return len(a) == len(b) and all(R.is_zero(x - y) for x, y in zip(a, b))


def _qv_roundtrip(r: _Recorder):
    S3 = sphere(3)
    Q = present_ring([])
    cases = [
        ("e1 over S^3", S3, UnimodularRow(S3, tuple(S3._poly(a) for a in (1, 0, 0, 0)),
                                          tuple(S3._poly(a) for a in (1, 0, 0, 0)))),
        ("(x0, x1, x2, x3) over S^3", S3, UnimodularRow(S3, tuple(S3._poly(x) for x in S3.vars),
                                                        tuple(S3._poly(x) for x in S3.vars))),
        ("(1, 2, 3, 4) over Q", Q, check_unimodular(Q, [1, 2, 3, 4])),
    ]
    for label, R, row in cases:
        data = r.check(f"construct Q(v) for {label}", lambda: construct_qv(row), lambda _: "")
        if data is None:
            continue
        checks = qv_checks(data)
        r.check(f"projector identities for {label}", lambda: all(checks.values()),
                lambda _: ", ".join(k for k, v in checks.items() if not v))
        cert = decomposition_certificate(data)
        r.check(f"H(A) + Q(v) = H(A^2) certificate for {label}", lambda: verify_isometry(cert))
        r.check(f"symplectic class of {label} is v",
                lambda: _same_row(R, symplectic_class(data.form, cert).v, row.v))
        if R is Q:
            r.check(f"Q(v) is hyperbolic for {label}",
                    lambda: verify_isometry(field_hyperbolic_certificate(data.form)))


def _euler(r: _Recorder):
    for label, R in (("Q", present_ring([])), ("S^3", sphere(3))):
        chi = euler_form(R)
        r.check(f"free rank-2 Euler form over {label} has Gram J2",
                lambda: chi.gram == hyperbolic(R, 1).gram)
        r.check(f"identity is an isometry H(A) -> (A^2, chi) over {label}",
                lambda: verify_isometry(IsometryCertificate(hyperbolic(R, 1), chi,
                                                            MatrixOverRing.identity(R, 2),
                                                            MatrixOverRing.identity(R, 2))))
    Q = present_ring([])
    r.check("rescaled by 3: isometric to H via diag(1, 1/3)",
            lambda: verify_isometry(scaling_certificate(Q, 3)))
    r.check("rescaled by the square 4: isometric via diag(1/2, 1/2)",
            lambda: verify_isometry(scaling_certificate(Q, 4, root=2)))


SCENARIOS: dict[str, Callable[[_Recorder], None]] = {
    "sphere-iso": _sphere_iso,
    "quaternion-symplectic": _quaternion,
    "b3-identity": _b3_identity,
    "b3-transition": _b3_transition,
    "b3-cocycle": _b3_cocycle,
    "b3-to-s3-transport": _transport,
    "s3-boundary-to-s2": _boundary,
    "c2-generator": _c2_generator,
    "qv-roundtrip": _qv_roundtrip,
    "euler-vanishing": _euler,
}


def scenario_names() -> list[str]:
    return list(SCENARIOS)


def run_scenario(name: str) -> Report:
    """Run one scenario, or every scenario for ``"all"`` (checks prefixed by scenario name)."""
    if name == "all":
        start = time.perf_counter()
        merged = Report("all")
        for sub in run_all():
            merged.checks.extend(Check(f"{sub.scenario}: {c.name}", c.passed, c.detail) for c in sub.checks)
        merged.seconds = time.perf_counter() - start
        return merged
    try:
        fn = SCENARIOS[name]
    except KeyError:
        raise UnknownScenario(f"unknown scenario {name!r}; known: {', '.join(SCENARIOS)}, all") from None
    rec = _Recorder()
    start = time.perf_counter()
    fn(rec)
    return Report(name, rec.checks, time.perf_counter() - start)


def run_all() -> list[Report]:
    return [run_scenario(n) for n in sorted(SCENARIOS)]
