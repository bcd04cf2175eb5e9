"""Alternating forms on projector-framed modules.

A projective module is the image of an idempotent matrix ``e`` acting on
column vectors of ``A^n``; a form on it is an ambient alternating Gram matrix
``g`` with ``e^T g e = g``, together with a witness ``g⁻`` for nondegeneracy
(``g⁻ g e = e`` and ``e g⁻ e^T = g⁻``).  No basis of a framed module is ever
assumed.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import CertificateError, DimensionError, InvariantViolation, NotAUnit
from .linalg import (
    MatrixOverRing,
    UnimodularRow,
    hyperbolic_gram,
    symplectic_inverse,
)
from .poly import Polynomial
from .rings import PresentedRing


@dataclass(frozen=True)
class FramedModule:
    ring: PresentedRing
    frame: MatrixOverRing
    rank: int | None = None

    @property
    def ambient_rank(self) -> int:
        return self.frame.shape[0]

    def checks(self) -> dict[str, bool]:
        e = self.frame
        out = {"idempotent": (e @ e - e).is_zero()}
        if self.rank is not None:
            out["trace_is_rank"] = self.ring.is_zero(e.trace() - self.rank)
        return out

    def verify(self) -> bool:
        return all(self.checks().values())


@dataclass(frozen=True)
class FramedAlternatingForm:
    module: FramedModule
    gram: MatrixOverRing
    witness: MatrixOverRing

    @property
    def ring(self) -> PresentedRing:
        return self.module.ring

    @property
    def frame(self) -> MatrixOverRing:
        return self.module.frame

    def checks(self) -> dict[str, bool]:
        e, g, gi = self.frame, self.gram, self.witness
        out = dict(self.module.checks())
        out["alternating"] = (g.T + g).is_zero()
        out["supported_on_frame"] = (e.T @ g @ e - g).is_zero()
        out["witness_on_frame"] = (e @ gi @ e.T - gi).is_zero()
        out["witness_inverts"] = (gi @ g @ e - e).is_zero()
        return out

    def verify(self) -> bool:
        return all(self.checks().values())


@dataclass(frozen=True)
class IsometryCertificate:
    """``matrix`` sends the source frame isometrically into the target frame."""
    source: FramedAlternatingForm
    target: FramedAlternatingForm
    matrix: MatrixOverRing
    inverse: MatrixOverRing | None = None


@dataclass(frozen=True)
class QVData:
    """The alternating pair attached to an even unimodular row, with its auxiliary vectors."""
    row: UnimodularRow
    form: FramedAlternatingForm
    u: tuple
    projector: MatrixOverRing

    @property
    def w(self) -> tuple:
        return self.row.w


def hyperbolic(R: PresentedRing, k: int) -> FramedAlternatingForm:
    """``H(A^k)``: the free module of rank 2k with Gram ``J2 ⊥ ... ⊥ J2``."""
    if k < 1:
        raise DimensionError("hyperbolic form needs k >= 1")
    J = hyperbolic_gram(R, k)
    e = MatrixOverRing.identity(R, 2 * k)
    return FramedAlternatingForm(FramedModule(R, e, 2 * k), J, -J)


def orthogonal_sum(a: FramedAlternatingForm, b: FramedAlternatingForm) -> FramedAlternatingForm:
    ra, rb = a.module.rank, b.module.rank
    rank = ra + rb if ra is not None and rb is not None else None
    module = FramedModule(a.ring, MatrixOverRing.block_diag(a.frame, b.frame), rank)
    return FramedAlternatingForm(module, MatrixOverRing.block_diag(a.gram, b.gram),
                                 MatrixOverRing.block_diag(a.witness, b.witness))


def construct_qv(row: UnimodularRow) -> QVData:
    """Projector-framed alternating pair of rank n-2 attached to ``row``.

    With ``h = J ⊥ ... ⊥ J``, ``u = h^{-1} v^T`` and ``b(z1, z2) = z1^T h z2``, the
    projector is ``π(z) = z - b(w, z) u + b(u, z) w``; the form has Gram
    ``π^T h π`` and nondegeneracy witness ``π h^{-1} π^T``.
    """
    R = row.ring
    n = len(row)
    if n % 2:
        raise DimensionError("row length must be even")
    if not row.w:
        raise CertificateError("row carries no cofactor")
    if not row.verify():
        raise CertificateError("cofactor does not satisfy v·w = 1")
    h = hyperbolic_gram(R, n // 2)
    hinv = -h
    vcol = MatrixOverRing.column(R, row.v)
    wcol = MatrixOverRing.column(R, row.w)
    ucol = hinv @ vcol
    I = MatrixOverRing.identity(R, n)
    # z -> z - u (w^T h z) + w (u^T h z)
    pi = I - ucol @ wcol.T @ h + wcol @ ucol.T @ h
    gram = pi.T @ h @ pi
    witness = pi @ hinv @ pi.T
    form = FramedAlternatingForm(FramedModule(R, pi, n - 2), gram, witness)
    data = QVData(row, form, ucol.col(0), pi)
    checks = qv_checks(data)
    if not all(checks.values()):
        bad = [k for k, ok in checks.items() if not ok]
        raise InvariantViolation(f"projector postconditions failed: {bad}")
    return data


def qv_checks(data: QVData) -> dict[str, bool]:
    R = data.row.ring
    n = len(data.row)
    pi = data.projector
    h = hyperbolic_gram(R, n // 2)
    ucol = MatrixOverRing.column(R, data.u)
    wcol = MatrixOverRing.column(R, data.w)
    out = {
        "pi_idempotent": (pi @ pi - pi).is_zero(),
        "pi_kills_u": (pi @ ucol).is_zero(),
        "pi_kills_w": (pi @ wcol).is_zero(),
        "trace_n_minus_2": R.is_zero(pi.trace() - (n - 2)),
        "gram_alternating": (data.form.gram.T + data.form.gram).is_zero(),
        "witness_identity": (pi @ (-h) @ pi.T @ h @ pi - pi).is_zero(),
    }
    return out


def bilinear(R: PresentedRing, z1, z2) -> Polynomial:
    """``b(z1, z2) = z1^T h z2`` for the standard alternating form."""
    h = hyperbolic_gram(R, len(z1) // 2)
    return (MatrixOverRing.row(R, z1) @ h @ MatrixOverRing.column(R, z2)).rows[0][0]


def decomposition_certificate(row_or_qv) -> IsometryCertificate:
    """Isometry ``H(A) ⊥ (Q(v), φ(v)) -> H(A^{n/2})``, ``(a, b, z) -> a w + b u + π z``.

    The inverse sends ``z`` to ``(v·z, b(w, z), π z)``.
    """
    data = row_or_qv if isinstance(row_or_qv, QVData) else construct_qv(row_or_qv)
    R = data.row.ring
    n = len(data.row)
    source = orthogonal_sum(hyperbolic(R, 1), data.form)
    target = hyperbolic(R, n // 2)
    wcol = MatrixOverRing.column(R, data.w)
    ucol = MatrixOverRing.column(R, data.u)
    T = MatrixOverRing.hstack(wcol, ucol, data.projector)
    h = hyperbolic_gram(R, n // 2)
    S = MatrixOverRing.vstack(
        MatrixOverRing.row(R, data.row.v),
        wcol.T @ h,
        data.projector,
    )
    return IsometryCertificate(source, target, T, S)


def verify_isometry(c: IsometryCertificate) -> bool:
    """Frame compatibility and pullback of the target Gram onto the source frame.

    When an inverse is stored, it must also be a two-sided inverse between frames.
    """
    es, et = c.source.frame, c.target.frame
    T = c.matrix
    if T.shape != (et.shape[0], es.shape[0]):
        raise DimensionError(f"certificate shape {T.shape} does not match frames "
                             f"{et.shape[0]}x{es.shape[0]}")
    if c.source.module.rank is not None and c.target.module.rank is not None \
            and c.source.module.rank != c.target.module.rank:
        raise DimensionError("source and target ranks differ")
    Te = T @ es
    if not (et @ Te - Te).is_zero():
        return False
    if not (Te.T @ c.target.gram @ Te - es.T @ c.source.gram @ es).is_zero():
        return False
    S = c.inverse
    if S is not None:
        if S.shape != (es.shape[0], et.shape[0]):
            raise DimensionError("inverse has the wrong shape")
        Se = S @ et
        if not (es @ Se - Se).is_zero():
            return False
        if not (S @ Te - es).is_zero() or not (T @ Se - et).is_zero():
            return False
    return True


def certificate_inverse(c: IsometryCertificate) -> MatrixOverRing:
    """Stored inverse, or ``g_src⁻ T^T g_tgt`` built from the source witness."""
    if c.inverse is not None:
        return c.inverse
    return c.source.witness @ c.matrix.T @ c.target.gram @ c.target.frame


def symplectic_class(Q: FramedAlternatingForm, f: IsometryCertificate) -> UnimodularRow:
    """The row ``e1^* ∘ f^{-1}`` for an isometry ``f: H(A) ⊥ Q -> H(A^m)``.

    The cofactor certificate of the returned row is ``f(e1)``.
    """
    R = Q.ring
    expected = orthogonal_sum(hyperbolic(R, 1), Q)
    if f.source != expected:
        raise CertificateError("certificate source is not H(A) ⊥ Q")
    if f.target.frame != MatrixOverRing.identity(R, f.target.frame.shape[0]):
        raise CertificateError("certificate target must be a free hyperbolic module")
    if not verify_isometry(f):
        raise CertificateError("isometry certificate failed verification")
    S = certificate_inverse(f)
    v = (MatrixOverRing.row(R, [1] + [0] * (S.shape[0] - 1)) @ S @ f.target.frame).rows[0]
    w = f.matrix.col(0)
    row = UnimodularRow(R, v, w)
    if not row.verify():
        raise InvariantViolation("symplectic class is not unimodular")
    return row


def transported_certificate(qv: QVData, qv_image: QVData, G: MatrixOverRing) -> IsometryCertificate:
    """Isometry ``Q(v) -> Q(vG)`` for symplectic ``G``: ``z -> π' G^{-1} π z``."""
    Ginv = symplectic_inverse(G)
    T = qv_image.projector @ Ginv @ qv.projector
    S = qv.projector @ G @ qv_image.projector
    return IsometryCertificate(qv.form, qv_image.form, T, S)


def euler_form(R: PresentedRing, scale=1, module: FramedModule | None = None,
               gram: MatrixOverRing | None = None,
               witness: MatrixOverRing | None = None) -> FramedAlternatingForm:
    """Wedge-product form of a rank-2 module.

    Free case (default): the basis ``e1, e2`` with determinant trivialization
    ``scale · e1∧e2`` gives Gram ``scale · J2``; ``scale`` must be a unit.
    Framed case: pass ``module`` (rank 2) with an alternating ``gram`` realizing
    the wedge pairing and its ``witness``.
    """
    if module is None:
        lam = R._poly(scale)
        inv = R.inverse(lam)
        if inv is None:
            raise NotAUnit(f"determinant trivialization {R.fmt(lam)} is not a unit")
        J = hyperbolic_gram(R, 1)
        e = MatrixOverRing.identity(R, 2)
        return FramedAlternatingForm(FramedModule(R, e, 2), J.scale(lam), J.scale(-inv))
    if module.rank != 2:
        raise DimensionError("Euler form is defined for rank-2 modules")
    if gram is None or witness is None:
        raise ValueError("framed Euler form needs an explicit gram and witness")
    form = FramedAlternatingForm(module, gram, witness)
    if not form.verify():
        raise CertificateError("supplied Gram does not define a nondegenerate alternating form")
    return form


def scaling_certificate(R: PresentedRing, scale, root=None) -> IsometryCertificate:
    """Isometry ``H(A) -> (A^2, scale·J2)``.

    With ``root = μ`` (``μ^2 = scale``) the matrix is ``diag(μ^{-1}, μ^{-1})``;
    otherwise ``diag(1, scale^{-1})``.
    """
    lam = R._poly(scale)
    target = euler_form(R, lam)
    if root is None:
        inv = R.inverse(lam)
        T = MatrixOverRing(R, [[1, 0], [0, inv]])
        S = MatrixOverRing(R, [[1, 0], [0, lam]])
    else:
        mu = R._poly(root)
        if not R.is_zero(mu * mu - lam):
            raise CertificateError("root does not square to the scale")
        mu_inv = R.inverse(mu)
        T = MatrixOverRing(R, [[mu_inv, 0], [0, mu_inv]])
        S = MatrixOverRing(R, [[mu, 0], [0, mu]])
    return IsometryCertificate(hyperbolic(R, 1), target, T, S)


def field_hyperbolic_certificate(form: FramedAlternatingForm) -> IsometryCertificate:
    """Isometry ``H(Q) -> form`` for a rank-2 form over a ring with no variables.

    Picks two frame columns with nonzero pairing and rescales the second one.
    """
    R = form.ring
    if R.vars:
        raise ValueError("Gram reduction is only implemented over the rational field")
    e, g = form.frame, form.gram
    cols = [e.col(j) for j in range(e.shape[1])]
    for i in range(len(cols)):
        for j in range(i + 1, len(cols)):
            ci = MatrixOverRing.column(R, cols[i])
            cj = MatrixOverRing.column(R, cols[j])
            pairing = (ci.T @ g @ cj).rows[0][0]
            if pairing.is_zero():
                continue
            c = pairing.constant_value()
            T = MatrixOverRing.hstack(ci, cj.scale(Polynomial.constant(R.vars, 1 / c)))
            cert = IsometryCertificate(hyperbolic(R, 1), form, T)
            S = certificate_inverse(cert)
            return IsometryCertificate(cert.source, form, T, S)
    raise CertificateError("form is degenerate on the frame columns")
