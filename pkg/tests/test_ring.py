from __future__ import annotations

from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from charclass.errors import MalformedPresentationError, NotInvertibleError
from charclass.ring import (
    CoefficientRing,
    GradedElement,
    Poly,
    Relation,
    RingPresentation,
    format_fraction,
    invert_unit,
    mul,
    parse_element,
)
from charclass.spaces import equivariant_projective_space, product, projective_space


def p2_ring():
    return projective_space(2).ring


def eq_ring():
    # Q[h, t] / (h (h + t)(h + 3t)), truncated in degree 6
    return equivariant_projective_space([0, 1, 3]).ring


def p1p1_ring():
    return product(projective_space(1), projective_space(1)).ring


RINGS = {"P2": p2_ring, "P(0,1,3)": eq_ring, "P1xP1": p1p1_ring}


def elements(ring: RingPresentation, max_deg: int = 4):
    n = len(ring.names)

    def build(entries):
        raw = {}
        for exps, c in entries:
            raw[exps] = raw.get(exps, 0) + c
        return GradedElement(ring, raw)

    exps = st.tuples(*[st.integers(0, max_deg) for _ in range(n)])
    coeffs = st.fractions(min_value=-5, max_value=5, max_denominator=4)
    return st.lists(st.tuples(exps, coeffs), max_size=5).map(build)


@pytest.mark.parametrize("name", sorted(RINGS))
@settings(max_examples=40, deadline=None)
@given(data=st.data())
def test_commutative_ring_axioms(name, data):
    R = RINGS[name]()
    a, b, c = (data.draw(elements(R)) for _ in range(3))
    assert a + b == b + a
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + R.zero() == a
    assert a * R.one() == a
    assert a - a == R.zero()


@pytest.mark.parametrize("name", sorted(RINGS))
@settings(max_examples=40, deadline=None)
@given(data=st.data())
def test_normal_form_is_idempotent(name, data):
    R = RINGS[name]()
    a = data.draw(elements(R, max_deg=7))
    assert GradedElement(R, a.terms) == a
    assert all(R.degree(m) <= R.truncation_dim for m in a.terms)


@pytest.mark.parametrize("name", sorted(RINGS))
@settings(max_examples=30, deadline=None)
@given(data=st.data())
def test_inverse_of_unit(name, data):
    R = RINGS[name]()
    a = data.draw(elements(R))
    u = R.one() + a - R.scalar(a.constant_term())
    assert mul(u, invert_unit(u)) == R.one()


@settings(max_examples=40, deadline=None)
@given(data=st.data())
def test_equivariant_normal_form_matches_sympy_division(data):
    R = eq_ring()
    h, t = sympy.symbols("h t")
    rel = sympy.expand(h * (h + t) * (h + 3 * t))
    raw = data.draw(elements(R.truncated(20), max_deg=6))
    expr = sum(sympy.Rational(c.numerator, c.denominator) * h ** m[R.index("h")] * t ** m[R.index("t")]
               for m, c in raw.terms.items())
    _, rem = sympy.reduced(sympy.expand(expr), [rel], h, t, order="lex")
    expected = {}
    for (eh, et), c in sympy.Poly(rem, h, t).terms():
        if c and eh + et <= R.truncation_dim:
            m = [0, 0]
            m[R.index("h")], m[R.index("t")] = eh, et
            expected[tuple(m)] = Fraction(int(c.p), int(c.q))
    assert GradedElement(R, raw.terms).terms == expected


@settings(max_examples=30, deadline=None)
@given(data=st.data())
def test_truncation_commutes_with_multiplication(data):
    big = eq_ring().truncated(8)
    a = data.draw(elements(big))
    b = data.draw(elements(big))
    assert (a * b).truncate(4) == (a.truncate(4) * b.truncate(4)).truncate(4)


def test_p2_relation():
    R = p2_ring()
    h = R.gen("h")
    assert h**3 == R.zero()
    assert (R.one() + h) ** 3 == GradedElement(R, {(0,): 1, (1,): 3, (2,): 3})


def test_equivariant_reduction_example():
    R = equivariant_projective_space([0, 1]).ring
    h, t = R.gen("h"), R.gen("t")
    assert h * h == -(h * t)
    assert (R.one() + h) * (R.one() + h + t) == R.one() + h.scale(2) + t


def test_cyclic_relations_rejected():
    with pytest.raises(MalformedPresentationError):
        RingPresentation(
            [("a", 1), ("b", 1)],
            [Relation("a", 2, (((0, 2), 1),)), Relation("b", 2, (((2, 0), 1),))],
            2,
        )


def test_non_monic_relation_rejected():
    R = RingPresentation([("h", 1)], (), 3)
    with pytest.raises(MalformedPresentationError):
        R.with_relation("h", {(2,): 2})


def test_invert_requires_unit():
    R = p2_ring()
    with pytest.raises(NotInvertibleError):
        invert_unit(R.gen("h"))
    Ry = R.extend(["y"])
    with pytest.raises(NotInvertibleError):
        invert_unit(Ry.scalar(Poly.var("y")) + Ry.gen("h"))


def test_invert_over_polynomial_coefficients():
    R = projective_space(3).ring.extend(["y"])
    y = Poly.var("y")
    u = R.one() + R.gen("h").scale(1 + y)
    assert invert_unit(u) * u == R.one()
    assert invert_unit(u).coefficient((2,)) == (1 + y) ** 2


def test_json_roundtrip_and_exact_coefficients():
    R = eq_ring().extend(["y"])
    h, t = R.gen("h"), R.gen("t")
    a = (R.one() + h.scale(Fraction(-3, 2)) + (h * t).scale(Poly.var("y"))) ** 2
    rows = a.to_json()
    assert all("/" in r["coeff"] for r in rows)
    assert GradedElement.from_json(R, rows) == a
    assert a.to_json() == rows


def test_format_fraction():
    assert format_fraction(Fraction(-3, 1)) == "-3/1"
    assert format_fraction(2) == "2/1"


def test_parse_element():
    R = p1p1_ring()
    a = parse_element("2*h1 - h2 + 1/2", R)
    assert a == R.gen("h1").scale(2) - R.gen("h2") + R.scalar(Fraction(1, 2))
    with pytest.raises(MalformedPresentationError):
        parse_element("2*q", R)


def test_coefficient_ring_kinds():
    assert CoefficientRing(()).kind == "rationals"
    assert "y" in CoefficientRing(("y",)).variables


def test_poly_arithmetic():
    y = Poly.var("y")
    p = (1 - y) * (1 + y)
    assert p == 1 - y**2
    assert p.subs({"y": 2}) == -3
    assert str(1 - y + y**2) == "1 - y + y^2"
