import pytest

from unimod.cycles import (
    FramedCycle,
    boundary_along,
    differential_check,
    same_normalized,
    transport_cycle,
)
from unimod.errors import CodimensionError, NotAUnit, RingMismatch, ValuationError
from unimod.fixtures import b3_generator, b3_point_field, b_punctured, phi, psi, sphere, sphere_punctured
from unimod.rings import identity_hom
from unimod.witt import COMPLEX, Component, SquareWitness

MINUS_I = SquareWitness("1-x0", "s")
B = b_punctured(3)
S = sphere_punctured(3)
S2 = sphere(2)


def expected_transport():
    return FramedCycle(S, (
        Component.make(S, ["x0^2+x3^2"], "x0*x1+(1-x2)*x3", kind=COMPLEX),
        Component.make(S, ["1-x2"], "x1*x3"),
    ))


def status(c, wits=(MINUS_I,)):
    return differential_check(c, [b3_point_field()], list(wits))[0].status


def test_generator_is_a_cocycle_at_the_point():
    [rep] = differential_check(b3_generator(), [b3_point_field()], {"(x1, x2)": [MINUS_I]})
    assert rep.is_zero
    assert rep.cancelled == [(0, 1)]
    assert [i for i, _ in rep.residues] == [0, 1]


def test_without_witness_the_sum_is_unresolved():
    assert status(b3_generator(), ()) == "unresolved"


def test_single_ramified_component_is_nonzero():
    q2 = b3_generator().components[1]
    assert status(FramedCycle(B, (q2,))) == "nonzero"


def test_unramified_component_gives_zero():
    c = FramedCycle(B, (Component.make(B, ["x2"], "x3"),))
    [rep] = differential_check(c, [b3_point_field()])
    assert rep.is_zero and rep.residues == []


def test_reordering_components_keeps_the_verdict():
    c = b3_generator()
    flipped = FramedCycle(B, tuple(reversed(c.components)))
    assert status(flipped) == "zero"
    assert status(flipped, ()) == "unresolved"


@pytest.mark.parametrize("b", ["3", "x3", "2*x3 + x0"])
def test_square_multiples_keep_the_verdict(b):
    q1, q2 = b3_generator().components
    bp = B._poly(b)
    scaled = Component(q1.prime, q1.unit * bp * bp, q1.frame, q1.kind)
    c = FramedCycle(B, (scaled, q2))
    # the normalizing witness absorbs the extra square
    assert status(c, [SquareWitness(B._poly("1-x0") * bp, "s")]) == "zero"


def test_prime_from_another_ring_is_refused():
    with pytest.raises(RingMismatch):
        differential_check(FramedCycle(S, ()), [b3_point_field()])


def test_report_serializes():
    [rep] = differential_check(b3_generator(), [b3_point_field()], [MINUS_I])
    d = rep.to_dict()
    assert d["status"] == "zero" and d["prime"] == "(x1, x2)"
    assert len(d["residues"]) == 2


def test_transport_along_phi():
    assert same_normalized(transport_cycle(phi(3), b3_generator()), expected_transport())


def test_transport_along_identity():
    c = b3_generator()
    assert same_normalized(transport_cycle(identity_hom(B), c), c)


def test_transport_is_an_involution():
    c = b3_generator()
    assert same_normalized(transport_cycle(psi(3), transport_cycle(phi(3), c)), c)
    e = expected_transport()
    assert same_normalized(transport_cycle(phi(3), transport_cycle(psi(3), e)), e)


def test_transport_forgets_inverted_squares():
    q1, q2 = b3_generator().components
    u = B._poly("(x2+x3)^2") * q2.unit
    c = FramedCycle(B, (q1, Component(q2.prime, u, q2.frame, q2.kind)))
    assert same_normalized(transport_cycle(phi(3), c), expected_transport())


def test_transport_rejects_units_inside_the_prime():
    bad = FramedCycle(B, (Component.make(B, ["x2"], "x2*x1"),))
    with pytest.raises(NotAUnit):
        transport_cycle(phi(3), bad)


def test_transport_needs_matching_source():
    with pytest.raises(RingMismatch):
        transport_cycle(phi(3), expected_transport())


def test_boundary_onto_s2():
    bd = boundary_along(transport_cycle(phi(3), b3_generator()), "x3", S2)
    assert same_normalized(bd, FramedCycle(S2, (Component.make(S2, ["1-x2"], "x1"),)))


def test_first_transported_component_has_no_boundary():
    first = FramedCycle(S, expected_transport().components[:1])
    assert len(boundary_along(first, "x3", S2)) == 0


def test_coprime_component_has_no_boundary():
    c = FramedCycle(S, (Component.make(S, ["x0"], "x1 + 2"),))
    assert len(boundary_along(c, "x3", S2)) == 0


def test_even_valuation_has_no_boundary():
    c = FramedCycle(S, (Component.make(S, ["x0"], "x3^2*(x1+2)"),))
    assert len(boundary_along(c, "x3", S2)) == 0


def test_boundary_is_additive():
    extra = FramedCycle(S, (
        Component.make(S, ["x0"], "x3*(x1+2)"),
        Component.make(S, ["x1"], "x3^2*(x0+3)"),
    ))
    t = transport_cycle(phi(3), b3_generator())
    whole = boundary_along(t + extra, "x3", S2)
    parts = boundary_along(t, "x3", S2) + boundary_along(extra, "x3", S2)
    assert same_normalized(whole, parts)
    assert len(whole) == 2


def test_boundary_hints():
    c = FramedCycle(S, (Component.make(S, ["x0"], "x3*(x1+2)"),))
    hinted = boundary_along(c, "x3", S2, hints={0: ("x1+2", 1)})
    assert same_normalized(hinted, boundary_along(c, "x3", S2))
    with pytest.raises(ValuationError):
        boundary_along(c, "x3", S2, hints={0: ("x1+3", 1)})


def test_valuation_bound():
    c = FramedCycle(S, (Component.make(S, ["x0"], "x3^5*(x1+2)"),))
    with pytest.raises(ValuationError):
        boundary_along(c, "x3", S2, bound=3)
    assert len(boundary_along(c, "x3", S2)) == 1


def test_boundary_refuses_components_inside_the_hypersurface():
    c = FramedCycle(S, (Component.make(S, ["x3"], "x1"),))
    with pytest.raises(CodimensionError):
        boundary_along(c, "x3", S2)


def test_boundary_refuses_inverter_data():
    c = FramedCycle(S, (Component.make(S, ["x0"], "x1*t_x3"),))
    with pytest.raises(CodimensionError):
        boundary_along(c, "x3", S2)
