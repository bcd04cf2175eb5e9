"""Matrices over presented rings, unimodular rows and group-membership certificates.

Rows act on the right: a row ``v`` is sent to ``v @ G``.  The alternating
standard form on ``A^(2k)`` is ``J = J2 ⊥ ... ⊥ J2`` with ``J2 = [[0, 1], [-1, 0]]``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import DimensionError, InvariantViolation, NotUnimodular, RingMismatch
from .groebner import lift_membership
from .poly import Polynomial
from .rings import PresentedRing, RingElement


class MatrixOverRing:
    """Rectangular matrix whose entries are kept in normal form."""

    __slots__ = ("ring", "rows", "shape")

    def __init__(self, ring: PresentedRing, rows: Sequence[Sequence]):
        self.ring = ring
        self.rows = tuple(tuple(ring.reduce(e) for e in row) for row in rows)
        ncols = len(self.rows[0]) if self.rows else 0
        if any(len(r) != ncols for r in self.rows):
            raise DimensionError("ragged matrix")
        self.shape = (len(self.rows), ncols)

    @classmethod
    def _raw(cls, ring, rows):
        m = object.__new__(cls)
        m.ring = ring
        m.rows = tuple(tuple(r) for r in rows)
        m.shape = (len(m.rows), len(m.rows[0]) if m.rows else 0)
        return m

    @classmethod
    def identity(cls, ring: PresentedRing, n: int) -> "MatrixOverRing":
        one, zero = ring.reduce(1), Polynomial.zero(ring.vars)
        return cls._raw(ring, [[one if i == j else zero for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, ring: PresentedRing, n: int, m: int) -> "MatrixOverRing":
        zero = Polynomial.zero(ring.vars)
        return cls._raw(ring, [[zero] * m for _ in range(n)])

    @classmethod
    def column(cls, ring, entries) -> "MatrixOverRing":
        return cls(ring, [[e] for e in entries])

    @classmethod
    def row(cls, ring, entries) -> "MatrixOverRing":
        return cls(ring, [list(entries)])

    @classmethod
    def block_diag(cls, *blocks: "MatrixOverRing") -> "MatrixOverRing":
        ring = blocks[0].ring
        n = sum(b.shape[0] for b in blocks)
        m = sum(b.shape[1] for b in blocks)
        zero = Polynomial.zero(ring.vars)
        rows = [[zero] * m for _ in range(n)]
        r0 = c0 = 0
        for b in blocks:
            if b.ring != ring:
                raise RingMismatch("blocks over different rings")
            for i, row in enumerate(b.rows):
                for j, e in enumerate(row):
                    rows[r0 + i][c0 + j] = e
            r0 += b.shape[0]
            c0 += b.shape[1]
        return cls._raw(ring, rows)

    @classmethod
    def hstack(cls, *blocks: "MatrixOverRing") -> "MatrixOverRing":
        ring = blocks[0].ring
        if len({b.shape[0] for b in blocks}) != 1:
            raise DimensionError("hstack needs equal row counts")
        rows = [sum((list(b.rows[i]) for b in blocks), []) for i in range(blocks[0].shape[0])]
        return cls._raw(ring, rows)

    @classmethod
    def vstack(cls, *blocks: "MatrixOverRing") -> "MatrixOverRing":
        ring = blocks[0].ring
        if len({b.shape[1] for b in blocks}) != 1:
            raise DimensionError("vstack needs equal column counts")
        return cls._raw(ring, [r for b in blocks for r in b.rows])

    # access

    def __getitem__(self, ij) -> RingElement:
        i, j = ij
        return RingElement(self.ring, self.rows[i][j])

    def col(self, j: int) -> tuple:
        return tuple(r[j] for r in self.rows)

    @property
    def T(self) -> "MatrixOverRing":
        n, m = self.shape
        return MatrixOverRing._raw(self.ring, [[self.rows[i][j] for i in range(n)] for j in range(m)])

    def _same_ring(self, other: "MatrixOverRing"):
        if other.ring != self.ring:
            raise RingMismatch("matrices over different rings")

    # arithmetic

    def __matmul__(self, other: "MatrixOverRing") -> "MatrixOverRing":
        self._same_ring(other)
        n, k = self.shape
        k2, m = other.shape
        if k != k2:
            raise DimensionError(f"cannot multiply {self.shape} by {other.shape}")
        zero = Polynomial.zero(self.ring.vars)
        cols = [other.col(j) for j in range(m)]
        rows = []
        for i in range(n):
            row = []
            for j in range(m):
                acc = zero
                for a, b in zip(self.rows[i], cols[j]):
                    if a and b:
                        acc = acc + a * b
                row.append(self.ring.reduce(acc))
            rows.append(row)
        return MatrixOverRing._raw(self.ring, rows)

    def __add__(self, other):
        self._same_ring(other)
        if self.shape != other.shape:
            raise DimensionError("shape mismatch")
        return MatrixOverRing(self.ring, [[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __sub__(self, other):
        self._same_ring(other)
        if self.shape != other.shape:
            raise DimensionError("shape mismatch")
        return MatrixOverRing(self.ring, [[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __neg__(self):
        return MatrixOverRing._raw(self.ring, [[-a for a in r] for r in self.rows])

    def scale(self, c) -> "MatrixOverRing":
        c = self.ring._poly(c)
        return MatrixOverRing(self.ring, [[a * c for a in r] for r in self.rows])

    def is_zero(self) -> bool:
        return all(e.is_zero() for r in self.rows for e in r)

    def __eq__(self, other):
        if not isinstance(other, MatrixOverRing):
            return NotImplemented
        return self.ring == other.ring and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def trace(self) -> Polynomial:
        n, m = self.shape
        if n != m:
            raise DimensionError("trace of a non-square matrix")
        acc = Polynomial.zero(self.ring.vars)
        for i in range(n):
            acc = acc + self.rows[i][i]
        return self.ring.reduce(acc)

    def to_strings(self) -> list[list[str]]:
        return [[self.ring.fmt(e) for e in r] for r in self.rows]

    def __repr__(self):
        body = "; ".join(", ".join(r) for r in self.to_strings())
        return f"MatrixOverRing([{body}])"


def det(M: MatrixOverRing) -> Polynomial:
    """Determinant by cofactor expansion along the first row, reduced in the ring."""
    n, m = M.shape
    if n != m:
        raise DimensionError("determinant of a non-square matrix")
    ring = M.ring

    def rec(rows: tuple, cols: tuple) -> Polynomial:
        if not rows:
            return ring.reduce(1)
        if len(rows) == 1:
            return M.rows[rows[0]][cols[0]]
        acc = Polynomial.zero(ring.vars)
        r, rest = rows[0], rows[1:]
        for k, c in enumerate(cols):
            e = M.rows[r][c]
            if e.is_zero():
                continue
            minor = rec(rest, cols[:k] + cols[k + 1:])
            term = e * minor
            acc = acc + term if k % 2 == 0 else acc - term
        return ring.reduce(acc)

    return rec(tuple(range(n)), tuple(range(n)))


def hyperbolic_gram(ring: PresentedRing, k: int) -> MatrixOverRing:
    """``J2 ⊥ ... ⊥ J2`` (k planes)."""
    if k < 1:
        raise DimensionError("need at least one hyperbolic plane")
    J2 = MatrixOverRing(ring, [[0, 1], [-1, 0]])
    return MatrixOverRing.block_diag(*([J2] * k))


def is_symplectic(M: MatrixOverRing) -> bool:
    n, m = M.shape
    if n != m or n % 2:
        raise DimensionError("symplectic check needs an even square matrix")
    J = hyperbolic_gram(M.ring, n // 2)
    return (M.T @ J @ M - J).is_zero()


def symplectic_inverse(M: MatrixOverRing) -> MatrixOverRing:
    """``J^{-1} M^T J``; the inverse of M whenever M is symplectic."""
    J = hyperbolic_gram(M.ring, M.shape[0] // 2)
    return (-J) @ M.T @ J


def transvection(ring: PresentedRing, n: int, i: int, j: int, a) -> MatrixOverRing:
    """Elementary matrix ``E_ij(a) = I + a e_ij`` (1-based indices)."""
    if i == j:
        raise DimensionError("transvection needs i != j")
    if not (1 <= i <= n and 1 <= j <= n):
        raise DimensionError(f"index out of range for size {n}")
    rows = [list(r) for r in MatrixOverRing.identity(ring, n).rows]
    rows[i - 1][j - 1] = ring.reduce(a)
    return MatrixOverRing._raw(ring, rows)


def row_times(ring: PresentedRing, v: Sequence, G: MatrixOverRing) -> tuple:
    return (MatrixOverRing.row(ring, v) @ G).rows[0]


@dataclass(frozen=True)
class UnimodularRow:
    ring: PresentedRing
    v: tuple
    w: tuple

    def __post_init__(self):
        if len(self.v) != len(self.w):
            raise DimensionError("row and cofactor lengths differ")

    def __len__(self):
        return len(self.v)

    def pairing(self) -> Polynomial:
        acc = Polynomial.zero(self.ring.vars)
        for a, b in zip(self.v, self.w):
            acc = acc + a * b
        return self.ring.reduce(acc)

    def verify(self) -> bool:
        return self.ring.is_zero(self.pairing() - 1)


def check_unimodular(R: PresentedRing, row: Sequence) -> UnimodularRow:
    """Find a cofactor column ``w`` with ``v·w = 1`` or raise NotUnimodular."""
    v = tuple(R.reduce(a) for a in row)
    if not v:
        raise NotUnimodular("empty row")
    one = Polynomial.constant(R.vars, 1)
    cof = lift_membership(one, [*v, *R.gb.generators], R.order)
    if cof is None:
        raise NotUnimodular("entries do not generate the unit ideal")
    w = tuple(R.reduce(c) for c in cof[: len(v)])
    result = UnimodularRow(R, v, w)
    if not result.verify():
        raise InvariantViolation("cofactor certificate failed re-verification")
    return result


def apply_transvections(ring: PresentedRing, row: Sequence, ops: Sequence[tuple]):
    """Apply ``v -> v E_ij(a)`` (i.e. ``v_j += a v_i``) for each ``(i, j, a)`` in turn.

    Returns the new row and the accumulated product of elementary matrices.
    """
    v = [ring.reduce(a) for a in row]
    n = len(v)
    G = MatrixOverRing.identity(ring, n)
    for i, j, a in ops:
        E = transvection(ring, n, i, j, a)
        v[j - 1] = ring.reduce(v[j - 1] + ring._poly(a) * v[i - 1])
        G = G @ E
    return tuple(v), G


def verify_orbit_certificate(v: Sequence, target: Sequence, G, group_kind: str,
                             ring: PresentedRing | None = None) -> bool:
    """Check ``v G == target`` and that G lies in the claimed group.

    ``group_kind`` is ``"sp"``, ``"sl"`` or ``"e"``.  For ``"e"`` the certificate
    ``G`` must be the explicit list of transvections ``(i, j, a)``.
    """
    kind = group_kind.lower()
    if kind == "e":
        if ring is None:
            raise ValueError("ring required for an elementary-product certificate")
        n = len(v)
        try:
            G = apply_transvections(ring, [0] * n, G)[1] if G else MatrixOverRing.identity(ring, n)
        except DimensionError:
            return False
    if not isinstance(G, MatrixOverRing):
        raise TypeError("certificate must be a MatrixOverRing")
    R = G.ring
    if len(v) != G.shape[0] or len(target) != G.shape[1]:
        raise DimensionError("row and certificate sizes differ")
    image = row_times(R, v, G)
    if any(not R.is_zero(a - R._poly(b)) for a, b in zip(image, target)):
        return False
    if kind == "sp":
        return G.shape[0] % 2 == 0 and G.shape[0] == G.shape[1] and is_symplectic(G)
    if kind == "sl":
        return G.shape[0] == G.shape[1] and R.is_zero(det(G) - 1)
    if kind == "e":
        return True
    raise ValueError(f"unknown group kind {group_kind!r}")


def quaternion_matrix(ring: PresentedRing, names: Sequence[str] = ("x0", "x1", "x2", "x3")) -> MatrixOverRing:
    """Left multiplication by the quaternion ``x0 + x1 i + x2 j + x3 k`` (as rows)."""
    a, b, c, d = (ring.var(n).poly for n in names)
    return MatrixOverRing(ring, [
        [a, b, c, d],
        [-b, a, -d, c],
        [-c, d, a, -b],
        [-d, -c, b, a],
    ])
