"""Standard rings, maps and cycles: spheres, the B and C families, stereographic maps."""

from __future__ import annotations

from functools import lru_cache

from .rings import PresentedRing, RingHom, define_hom, localize, present_ring
from .witt import COMPLEX, Component, PresentedField
from .cycles import FramedCycle


def _xs(n: int) -> list[str]:
    return [f"x{i}" for i in range(n + 1)]


@lru_cache(maxsize=None)
def sphere(n: int) -> PresentedRing:
    """``Q[x0..xn]/(x0^2 + ... + xn^2 - 1)``."""
    xs = _xs(n)
    return present_ring(xs, [" + ".join(f"{x}^2" for x in xs) + " - 1"])


@lru_cache(maxsize=None)
def b_ring(n: int) -> PresentedRing:
    """``Q[x0..xn]/(x0^2 + ... + x_{n-2}^2 - x_{n-1} x_n + 1)``."""
    if n < 1:
        raise ValueError("n must be at least 1")
    xs = _xs(n)
    squares = "".join(f"{x}^2 + " for x in xs[: n - 1])
    return present_ring(xs, [f"{squares}1 - {xs[n - 1]}*{xs[n]}"])


@lru_cache(maxsize=None)
def c_ring(n: int) -> PresentedRing:
    """``Q[x0..xn]/(x0^2 + ... + xn^2 + 1)``."""
    xs = _xs(n)
    return present_ring(xs, [" + ".join(f"{x}^2" for x in xs) + " + 1"])


@lru_cache(maxsize=None)
def sphere_punctured(n: int) -> PresentedRing:
    """The sphere with ``x_n`` inverted."""
    return localize(sphere(n), f"x{n}")


@lru_cache(maxsize=None)
def b_punctured(n: int) -> PresentedRing:
    """``B^n`` with ``x_{n-1} + x_n`` inverted."""
    return localize(b_ring(n), f"x{n - 1}+x{n}")


@lru_cache(maxsize=None)
def psi(n: int) -> RingHom:
    """Stereographic map from the punctured sphere to the punctured B ring."""
    src, tgt = sphere_punctured(n), b_punctured(n)
    t = tgt.inverter_vars()[0]
    a, b = f"x{n - 1}", f"x{n}"
    images = {f"x{i}": f"2*x{i}*{t}" for i in range(n - 1)}
    images[a] = f"({b}-{a})*{t}"
    images[b] = f"2*{t}"
    return define_hom(src, tgt, images)


@lru_cache(maxsize=None)
def phi(n: int) -> RingHom:
    """Inverse of :func:`psi`."""
    src, tgt = b_punctured(n), sphere_punctured(n)
    t = tgt.inverter_vars()[0]
    a = f"x{n - 1}"
    images = {f"x{i}": f"x{i}*{t}" for i in range(n - 1)}
    images[a] = f"(1-{a})*{t}"
    images[f"x{n}"] = f"(1+{a})*{t}"
    return define_hom(src, tgt, images)


@lru_cache(maxsize=None)
def b3_generator() -> FramedCycle:
    """``(q1, x0 x1 + x2, Kos(x0^2+1)) + (q2, x1 x3, Kos(x2))`` on punctured B^3."""
    B = b_punctured(3)
    return FramedCycle(B, (
        Component.make(B, ["x0^2+1"], "x0*x1+x2", kind=COMPLEX),
        Component.make(B, ["x2"], "x1*x3"),
    ))


@lru_cache(maxsize=None)
def b3_point_field() -> PresentedField:
    """Residue field at ``(x1, x2)`` on punctured B^3 (a complex function field), with ``s^2 = 2``."""
    return PresentedField(b_punctured(3), ["x1", "x2"], COMPLEX, [("s", "s^2-2")], name="(x1, x2)")


@lru_cache(maxsize=None)
def p1_field() -> PresentedField:
    """Residue field of ``p1 = (x2+x3, x0^2+1, x0x1+x2)`` on B^3, with ``s^2 = 2``."""
    return PresentedField(b_ring(3), ["x2+x3", "x0^2+1", "x0*x1+x2"], COMPLEX, [("s", "s^2-2")],
                          name="p1")


BUILTIN_RINGS = {
    "Q": lambda: present_ring([]),
    "S2": lambda: sphere(2),
    "S3": lambda: sphere(3),
    "B3": lambda: b_ring(3),
    "C2": lambda: c_ring(2),
    "S3_x3": lambda: sphere_punctured(3),
    "B3_x2px3": lambda: b_punctured(3),
}

BUILTIN_HOMS = {
    "psi": lambda: psi(3),
    "phi": lambda: phi(3),
}


def builtin_ring(name: str) -> PresentedRing:
    try:
        return BUILTIN_RINGS[name]()
    except KeyError:
        raise KeyError(f"unknown builtin ring {name!r}; known: {', '.join(BUILTIN_RINGS)}") from None
