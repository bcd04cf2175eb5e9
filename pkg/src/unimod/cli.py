"""Command-line interface.

Exit codes: 0 success/pass, 1 verdict failure, 2 usage or parse error,
3 internal invariant violation.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from . import errors as E
from .cycles import (
    DEFAULT_VALUATION_BOUND,
    FramedCycle,
    boundary_along,
    differential_check,
    transport_cycle,
)
from .fixtures import BUILTIN_HOMS, BUILTIN_RINGS, b3_generator, b3_point_field, phi
from .forms import (
    IsometryCertificate,
    construct_qv,
    decomposition_certificate,
    qv_checks,
    symplectic_class,
    transported_certificate,
    verify_isometry,
)
from .linalg import (
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
from .parsing import parse_expression, parse_list, parse_matrix
from .rings import PresentedRing, define_hom, localize
from .scenarios import run_scenario
from .session import Session, load_session, save_session
from .witt import (
    KINDS,
    REAL,
    Component,
    PresentedField,
    SquareWitness,
    residue_at,
    transition_matrix,
    verify_square_class,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_INTERNAL = 0, 1, 2, 3

BUILTIN_CYCLES = {
    "b3-generator": b3_generator,
    "b3-transported": lambda: transport_cycle(phi(3), b3_generator()),
}

_USAGE_ERRORS = (E.ParseError, E.VariableMismatch, E.UnknownScenario, E.SchemaVersionError,
                 E.DimensionError, E.RingMismatch, E.ZeroRingError, KeyError, ValueError, OSError)


class UsageError(Exception):
    pass


# ---------------------------------------------------------------- context

class Context:
    def __init__(self, args):
        self.args = args
        self.json = getattr(args, "json", False)
        self.order = getattr(args, "order", None)
        self.session_path = getattr(args, "session", None)
        self._session = None

    @property
    def session(self) -> Session:
        if self._session is None:
            if self.session_path is None:
                self._session = Session()
            else:
                try:
                    self._session = load_session(self.session_path)
                except FileNotFoundError:
                    self._session = Session()
        return self._session

    def store(self, kind: str, name: str | None, obj, ring: PresentedRing | None = None):
        if not name:
            return
        if self.session_path is None:
            raise UsageError("--save needs --session PATH")
        s = self.session
        if ring is not None:
            s.add_ring(ring)
        if kind == "rings":
            s.add_ring(obj, name)
        else:
            getattr(s, kind)[name] = obj
        save_session(s, self.session_path)

    def ring(self) -> PresentedRing:
        a = self.args
        name = getattr(a, "ring", None)
        vars_text = getattr(a, "vars", None)
        if name and vars_text:
            raise UsageError("give either --ring or --vars, not both")
        if name:
            if self.session_path is not None and name in self.session.rings:
                R = self.session.rings[name]
            elif name in BUILTIN_RINGS:
                R = BUILTIN_RINGS[name]()
            else:
                raise UsageError(f"unknown ring {name!r} (builtin: {', '.join(BUILTIN_RINGS)})")
            if self.order and self.order != R.order:
                R = _reorder(R, self.order)
            return R
        if vars_text is None:
            raise UsageError("a ring is required: --ring NAME or --vars x,y,...")
        vars = [v.strip() for v in vars_text.split(",") if v.strip()]
        rels = parse_list(getattr(a, "relations", None) or "", vars, sep=";")
        R = PresentedRing(vars, rels, self.order or "grevlex")
        for f in getattr(a, "invert", None) or []:
            R = localize(R, f)
        return R

    def emit(self, payload: dict, lines: Sequence[str]):
        if self.json:
            print(json.dumps(payload, sort_keys=True, indent=2))
        else:
            for line in lines:
                print(line)


def _reorder(R: PresentedRing, order: str) -> PresentedRing:
    base = _reorder(R.base, order) if R.base is not None else None
    return PresentedRing(R.vars, R.gb.generators, order, R.inverted, base=base)


def _polys(R: PresentedRing, text: str):
    return [R.reduce(p) for p in parse_list(text, R.vars)]


def _fmt_list(R, ps):
    return [R.fmt(p) for p in ps]


def _matrix(ctx: Context, R: PresentedRing, text: str) -> MatrixOverRing:
    if text == "quaternion":
        return quaternion_matrix(R)
    if ctx.session_path is not None and text in ctx.session.matrices:
        M = ctx.session.matrices[text]
        if M.ring != R:
            raise UsageError(f"matrix {text!r} lives over a different ring")
        return M
    return MatrixOverRing(R, parse_matrix(text, R.vars))


def _row(ctx: Context, R: PresentedRing, text: str) -> UnimodularRow:
    if ctx.session_path is not None and text in ctx.session.rows:
        row = ctx.session.rows[text]
        if row.ring != R:
            raise UsageError(f"row {text!r} lives over a different ring")
        return row
    return check_unimodular(R, _polys(R, text))


def _field(ctx: Context, R: PresentedRing, gens: str, name: str | None = None) -> PresentedField:
    consts = []
    for c in ctx.args.constant or []:
        cname, _, minpoly = c.partition(":")
        if not minpoly:
            raise UsageError("--constant expects NAME:MINPOLY, e.g. s:s^2-2")
        consts.append((cname.strip(), minpoly))
    return PresentedField(R, _polys(R, gens), ctx.args.kind, consts, name=name)


def _witnesses(args):
    out = []
    for w in args.witness or []:
        parts = [p.strip() for p in w.split(",")]
        if len(parts) not in (1, 2):
            raise UsageError("--witness expects A or A,B")
        out.append(SquareWitness(parts[0], parts[1] if len(parts) == 2 else "1"))
    return out


def _cycle(ctx: Context) -> FramedCycle:
    a = ctx.args
    if a.cycle and a.component:
        raise UsageError("give either --cycle or --component")
    if a.cycle:
        if ctx.session_path is not None and a.cycle in ctx.session.cycles:
            return ctx.session.cycles[a.cycle]
        if a.cycle in BUILTIN_CYCLES:
            return BUILTIN_CYCLES[a.cycle]()
        raise UsageError(f"unknown cycle {a.cycle!r} (builtin: {', '.join(BUILTIN_CYCLES)})")
    if not a.component:
        raise UsageError("a cycle is required: --cycle NAME or --component 'PRIME; UNIT; FRAME[; KIND]'")
    R = ctx.ring()
    comps = []
    for text in a.component:
        parts = [p.strip() for p in text.split(";")]
        if len(parts) not in (2, 3, 4):
            raise UsageError("--component expects 'PRIME; UNIT[; FRAME[; KIND]]'")
        prime = parse_list(parts[0], R.vars)
        unit = parts[1]
        frame = parse_list(parts[2], R.vars) if len(parts) > 2 and parts[2] else None
        kind = parts[3] if len(parts) > 3 else REAL
        comps.append(Component.make(R, prime, unit, frame, kind))
    return FramedCycle(R, tuple(comps))


def _cycle_payload(c: FramedCycle) -> dict:
    R = c.ring
    return {"ring": repr(R), "components": [
        {"prime": _fmt_list(R, comp.prime), "unit": R.fmt(comp.unit),
         "frame": _fmt_list(R, comp.frame), "kind": comp.kind} for comp in c.components]}


# ---------------------------------------------------------------- commands

def cmd_gb(ctx: Context) -> int:
    a = ctx.args
    if a.ring:
        base = ctx.ring()
        gens = _polys(base, a.generators)
        R = base.with_relations(gens, allow_zero=True)
    else:
        if a.vars is None:
            raise UsageError("gb needs --vars or --ring")
        vars = [v.strip() for v in a.vars.split(",") if v.strip()]
        R = PresentedRing(vars, parse_list(a.generators, vars), ctx.order or "grevlex", allow_zero=True)
    G = R.gb.generators
    ctx.emit({"order": R.order, "basis": _fmt_list(R, G), "unit_ideal": R.gb.is_unit_ideal()},
             [R.fmt(g) for g in G] or ["0"])
    if a.save:
        if R.gb.is_unit_ideal():
            raise E.ZeroRingError("the ideal is the unit ideal; no ring to save")
        ctx.store("rings", a.save, R)
    return EXIT_OK


def cmd_nf(ctx: Context) -> int:
    R = ctx.ring()
    p = R.reduce(parse_expression(ctx.args.expression, R.vars))
    ctx.emit({"normal_form": R.fmt(p), "is_zero": p.is_zero()}, [R.fmt(p)])
    return EXIT_OK


def cmd_check_unimodular(ctx: Context) -> int:
    R = ctx.ring()
    try:
        row = check_unimodular(R, _polys(R, ctx.args.row))
    except E.NotUnimodular as exc:
        ctx.emit({"unimodular": False, "reason": str(exc)}, [f"not unimodular: {exc}"])
        return EXIT_FAIL
    ctx.emit({"unimodular": True, "row": _fmt_list(R, row.v), "cofactor": _fmt_list(R, row.w)},
             ["unimodular", "cofactor w = (" + ", ".join(_fmt_list(R, row.w)) + ")"])
    ctx.store("rows", ctx.args.save, row, R)
    return EXIT_OK


def cmd_symplectic_check(ctx: Context) -> int:
    R = ctx.ring()
    M = _matrix(ctx, R, ctx.args.matrix)
    ok = is_symplectic(M)
    d = det(M) if M.shape[0] == M.shape[1] else None
    ctx.emit({"symplectic": ok, "det": R.fmt(d) if d is not None else None},
             [("symplectic" if ok else "not symplectic") + (f" (det = {R.fmt(d)})" if d is not None else "")])
    ctx.store("matrices", ctx.args.save, M, R)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_orbit_verify(ctx: Context) -> int:
    a = ctx.args
    R = ctx.ring()
    v = _polys(R, a.row)
    target = _polys(R, a.target)
    if a.kind == "e":
        ops = []
        for op in (a.ops or "").split(";"):
            if not op.strip():
                continue
            i, j, x = (t.strip() for t in op.split(","))
            ops.append((int(i), int(j), x))
        ok = verify_orbit_certificate(v, target, ops, "e", ring=R)
    else:
        if not a.matrix:
            raise UsageError("--matrix is required for sp and sl certificates")
        ok = verify_orbit_certificate(v, target, _matrix(ctx, R, a.matrix), a.kind)
    ctx.emit({"verified": ok}, ["verified" if ok else "not verified"])
    return EXIT_OK if ok else EXIT_FAIL


def _mat_payload(M: MatrixOverRing):
    return M.to_strings()


def cmd_construct_qv(ctx: Context) -> int:
    R = ctx.ring()
    data = construct_qv(_row(ctx, R, ctx.args.row))
    checks = qv_checks(data)
    ok = all(checks.values())
    ctx.emit({"u": _fmt_list(R, data.u), "w": _fmt_list(R, data.w),
              "projector": _mat_payload(data.projector), "gram": _mat_payload(data.form.gram),
              "checks": checks, "passed": ok},
             ["u = (" + ", ".join(_fmt_list(R, data.u)) + ")",
              "w = (" + ", ".join(_fmt_list(R, data.w)) + ")",
              "projector = " + str(data.projector.to_strings()),
              "gram = " + str(data.form.gram.to_strings()),
              *[f"{k}: {'ok' if v else 'FAIL'}" for k, v in checks.items()]])
    ctx.store("forms", ctx.args.save, data.form, R)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_isometry_verify(ctx: Context) -> int:
    a = ctx.args
    if a.source or a.target:
        if not (a.source and a.target and a.matrix):
            raise UsageError("--source, --target and --matrix go together")
        S = ctx.session.forms[a.source]
        T = ctx.session.forms[a.target]
        M = _matrix(ctx, S.ring, a.matrix)
        inv = _matrix(ctx, S.ring, a.inverse) if a.inverse else None
        cert = IsometryCertificate(S, T, M, inv)
        label = f"{a.source} -> {a.target}"
    else:
        if not a.row:
            raise UsageError("give --row (optionally with --matrix G) or --source/--target/--matrix")
        R = ctx.ring()
        row = _row(ctx, R, a.row)
        qv = construct_qv(row)
        if a.matrix:
            G = _matrix(ctx, R, a.matrix)
            if not is_symplectic(G):
                ctx.emit({"verified": False, "reason": "matrix is not symplectic"},
                         ["not verified: matrix is not symplectic"])
                return EXIT_FAIL
            Ginv = symplectic_inverse(G)
            w_img = (Ginv @ MatrixOverRing.column(R, row.w)).col(0)
            image = UnimodularRow(R, row_times(R, row.v, G), w_img)
            cert = transported_certificate(qv, construct_qv(image), G)
            label = "Q(v) -> Q(vG)"
        else:
            cert = decomposition_certificate(qv)
            label = "H(A) + Q(v) -> H(A^n/2)"
    ok = verify_isometry(cert)
    ctx.emit({"certificate": label, "verified": ok}, [f"{label}: {'verified' if ok else 'not verified'}"])
    return EXIT_OK if ok else EXIT_FAIL


def cmd_symplectic_class(ctx: Context) -> int:
    R = ctx.ring()
    row = _row(ctx, R, ctx.args.row)
    data = construct_qv(row)
    cls = symplectic_class(data.form, decomposition_certificate(data))
    same = all(R.is_zero(x - y) for x, y in zip(cls.v, row.v))
    ctx.emit({"class": _fmt_list(R, cls.v), "cofactor": _fmt_list(R, cls.w), "equals_input": same},
             ["(" + ", ".join(_fmt_list(R, cls.v)) + ")", "round trip " + ("exact" if same else "MISMATCH")])
    return EXIT_OK if same else EXIT_FAIL


def cmd_transition(ctx: Context) -> int:
    a = ctx.args
    R = ctx.ring()
    prime = _polys(R, a.prime or a.to)
    tr = transition_matrix(R, _polys(R, a.from_), _polys(R, a.to), prime)
    ctx.emit({"matrix": tr.matrix.to_strings(), "det": R.fmt(tr.det), "det_class": R.fmt(tr.det_class)},
             ["T = " + str(tr.matrix.to_strings()), f"det T = {R.fmt(tr.det)}",
              f"det T mod prime = {R.fmt(tr.det_class)}"])
    return EXIT_OK


def cmd_residue(ctx: Context) -> int:
    a = ctx.args
    R = ctx.ring()
    comp = Component.make(R, _polys(R, a.prime), a.unit,
                          _polys(R, a.frame) if a.frame else None, a.kind)
    q = _field(ctx, R, a.at)
    target = _polys(R, a.target) if a.target else None
    ramifier = tuple(a.ramifier.split(",")) if a.ramifier else None
    norm = None
    if a.normalize:
        wits = _witnesses(a)
        norm = (a.normalize, wits[0] if wits else None)
    sym = residue_at(comp, q, target=target, ramifier=ramifier, normalize_to=norm)
    ctx.emit({"symbol": sym.describe(), "zero": sym.is_zero, "unit": R.fmt(sym.unit), "sign": sym.sign,
              "frame": _fmt_list(R, sym.frame)}, [sym.describe()])
    return EXIT_OK


def cmd_square_check(ctx: Context) -> int:
    a = ctx.args
    R = ctx.ring()
    F = _field(ctx, R, a.prime)
    wits = _witnesses(a) or [None]
    verdict = verify_square_class(F, a.unit, wits[0])
    ctx.emit({"verdict": verdict.value}, [verdict.value])
    return EXIT_OK if verdict.ok else EXIT_FAIL


def cmd_cycle_diff(ctx: Context) -> int:
    a = ctx.args
    c = _cycle(ctx)
    if a.at:
        primes = [_field(ctx, c.ring, gens, name="(" + gens + ")") for gens in a.at]
    elif a.cycle == "b3-generator":
        primes = [b3_point_field()]
    else:
        raise UsageError("give at least one --at PRIME")
    reports = differential_check(c, primes, _witnesses(a))
    ok = all(r.is_zero for r in reports)
    lines = []
    for r in reports:
        lines.append(f"{r.prime.name}: {r.status}")
        lines += [f"    component {i}: {s.describe()}" for i, s in r.residues]
    ctx.emit({"cocycle": ok, "primes": [r.to_dict() for r in reports]}, lines)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_cycle_transport(ctx: Context) -> int:
    a = ctx.args
    c = _cycle(ctx)
    if a.hom:
        if ctx.session_path is not None and a.hom in ctx.session.homs:
            h = ctx.session.homs[a.hom]
        elif a.hom in BUILTIN_HOMS:
            h = BUILTIN_HOMS[a.hom]()
        else:
            raise UsageError(f"unknown map {a.hom!r} (builtin: {', '.join(BUILTIN_HOMS)})")
    else:
        if not (a.target and a.images):
            raise UsageError("give --hom NAME or --target RING --images LIST")
        T = _named_ring(ctx, a.target)
        h = define_hom(c.ring, T, [im.strip() for im in a.images.split(",")])
    out = transport_cycle(h, c)
    ctx.emit(_cycle_payload(out), out.describe())
    ctx.store("cycles", a.save, out, out.ring)
    return EXIT_OK


def _named_ring(ctx: Context, name: str) -> PresentedRing:
    if ctx.session_path is not None and name in ctx.session.rings:
        return ctx.session.rings[name]
    if name in BUILTIN_RINGS:
        return BUILTIN_RINGS[name]()
    raise UsageError(f"unknown ring {name!r}")


def cmd_cycle_boundary(ctx: Context) -> int:
    a = ctx.args
    c = _cycle(ctx)
    Q = _named_ring(ctx, a.quotient)
    hints = {}
    for h in a.hint or []:
        i, u0, e = h.split(":")
        hints[int(i)] = (u0, int(e))
    out = boundary_along(c, a.along, Q, hints=hints, bound=a.bound)
    ctx.emit(_cycle_payload(out), out.describe() or ["0"])
    ctx.store("cycles", a.save, out, out.ring)
    return EXIT_OK


def cmd_verify_paper(ctx: Context) -> int:
    rep = run_scenario(ctx.args.scenario)
    ctx.emit(rep.to_dict(), rep.lines())
    return EXIT_OK if rep.passed else EXIT_FAIL


# ---------------------------------------------------------------- parser

def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--session", metavar="PATH", default=argparse.SUPPRESS, help="JSON session file")
    p.add_argument("--order", choices=["grevlex", "lex"], default=argparse.SUPPRESS,
                   help="monomial order for rings built here")
    p.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="machine-readable output")
    return p


def _ring_args(p):
    p.add_argument("--ring", help=f"ring name (session or builtin: {', '.join(BUILTIN_RINGS)})")
    p.add_argument("--vars", help="comma-separated variables for an ad hoc ring")
    p.add_argument("--relations", help="';'-separated relations for an ad hoc ring")
    p.add_argument("--invert", action="append", help="element to invert (repeatable)")


def _field_args(p):
    p.add_argument("--kind", choices=KINDS, default=REAL, help="residue field type")
    p.add_argument("--constant", action="append", metavar="NAME:MINPOLY",
                   help="adjoin an algebraic constant, e.g. s:s^2-2")
    p.add_argument("--witness", action="append", metavar="A[,B]", help="square witness a/b")


def _cycle_args(p):
    _ring_args(p)
    p.add_argument("--cycle", help=f"cycle name (session or builtin: {', '.join(BUILTIN_CYCLES)})")
    p.add_argument("--component", action="append", metavar="'PRIME; UNIT[; FRAME[; KIND]]'",
                   help="inline cycle component (repeatable)")
    p.add_argument("--save", metavar="NAME", help="store the resulting cycle in the session")


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="unimod", parents=[common],
                                     description="Exact certificates for unimodular rows, "
                                                 "alternating forms and Witt residues.")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def add(name, fn, help):
        p = sub.add_parser(name, parents=[common], help=help, description=help)
        p.set_defaults(func=fn)
        return p

    p = add("gb", cmd_gb, "reduced Groebner basis of an ideal")
    p.add_argument("generators", help="comma-separated generators")
    _ring_args(p)
    p.add_argument("--save", metavar="NAME", help="store the quotient ring in the session")

    p = add("nf", cmd_nf, "normal form of an expression in a ring")
    p.add_argument("expression")
    _ring_args(p)

    p = add("check-unimodular", cmd_check_unimodular, "find a cofactor certificate for a row")
    p.add_argument("row", help="comma-separated entries")
    _ring_args(p)
    p.add_argument("--save", metavar="NAME")

    p = add("symplectic-check", cmd_symplectic_check, "test M^T J M = J")
    p.add_argument("matrix", help="'a,b;c,d', a session matrix, or 'quaternion'")
    _ring_args(p)
    p.add_argument("--save", metavar="NAME")

    p = add("orbit-verify", cmd_orbit_verify, "verify v G = target with G in Sp, SL or E")
    _ring_args(p)
    p.add_argument("--row", required=True)
    p.add_argument("--target", required=True)
    p.add_argument("--matrix")
    p.add_argument("--kind", choices=["sp", "sl", "e"], default="sp")
    p.add_argument("--ops", help="';'-separated transvections 'i,j,a' for kind e")

    p = add("construct-qv", cmd_construct_qv, "alternating pair attached to an even unimodular row")
    p.add_argument("row", help="comma-separated entries or a session row")
    _ring_args(p)
    p.add_argument("--save", metavar="NAME", help="store the form in the session")

    p = add("isometry-verify", cmd_isometry_verify, "verify an isometry certificate")
    _ring_args(p)
    p.add_argument("--row", help="row v: checks H(A) + Q(v) = H, or Q(v) = Q(vG) with --matrix")
    p.add_argument("--matrix", help="symplectic G (with --row) or certificate matrix (with forms)")
    p.add_argument("--source", help="session form")
    p.add_argument("--target", help="session form")
    p.add_argument("--inverse", help="optional inverse matrix for session forms")

    p = add("symplectic-class", cmd_symplectic_class, "symplectic class of Q(v) via its decomposition")
    p.add_argument("row")
    _ring_args(p)

    p = add("transition", cmd_transition, "transition matrix between two generating sequences")
    _ring_args(p)
    p.add_argument("--from", dest="from_", required=True)
    p.add_argument("--to", required=True)
    p.add_argument("--prime", help="prime where det must be a unit (default: --to)")

    p = add("residue", cmd_residue, "second residue of a framed component at a codimension-two prime")
    _ring_args(p)
    p.add_argument("--prime", required=True, help="generators of the component's prime")
    p.add_argument("--unit", required=True)
    p.add_argument("--frame", help="Koszul frame (default: the prime generators)")
    p.add_argument("--at", required=True, help="generators of the codimension-two prime")
    p.add_argument("--target", help="reference sequence at the prime (default: --at)")
    p.add_argument("--ramifier", metavar="U0,PI")
    p.add_argument("--normalize", metavar="UNIT", help="replace the unit by a witnessed representative")
    _field_args(p)

    p = add("square-check", cmd_square_check, "verify that a unit is a square in a residue field")
    _ring_args(p)
    p.add_argument("--prime", required=True)
    p.add_argument("--unit", required=True)
    _field_args(p)

    p = add("cycle-diff", cmd_cycle_diff, "residue sums of a cycle at given primes")
    _cycle_args(p)
    p.add_argument("--at", action="append", help="codimension-two prime generators (repeatable)")
    _field_args(p)

    p = add("cycle-transport", cmd_cycle_transport, "push a cycle along a ring map")
    _cycle_args(p)
    p.add_argument("--hom", help=f"map name (session or builtin: {', '.join(BUILTIN_HOMS)})")
    p.add_argument("--target", help="target ring for an ad hoc map")
    p.add_argument("--images", help="comma-separated images of the source variables")

    p = add("cycle-boundary", cmd_cycle_boundary, "boundary of a cycle along a hypersurface")
    _cycle_args(p)
    p.add_argument("--along", required=True, help="hypersurface equation f")
    p.add_argument("--quotient", required=True, help="ring presenting R/(f)")
    p.add_argument("--hint", action="append", metavar="I:U0:E", help="unit factorization u = u0 f^e")
    p.add_argument("--bound", type=int, default=DEFAULT_VALUATION_BOUND)

    p = add("verify-paper", cmd_verify_paper, "run the built-in verification scenarios")
    p.add_argument("--scenario", default="all", help="scenario name or 'all'")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    ctx = Context(args)
    try:
        return args.func(ctx)
    except E.InvariantViolation as exc:
        print(f"internal invariant violated: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except (UsageError, *_USAGE_ERRORS) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"error: {msg}", file=sys.stderr)
        return EXIT_USAGE
    except E.UnimodError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except Exception as exc:  # a bug, not a verdict
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
