from __future__ import annotations

from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from charclass.classes import (
    BundleData,
    apply_series,
    elementary_from_power_sums,
    inverse_class,
    line_bundle,
    named_series,
    power_sums_from_chern,
    series_chern,
    series_L,
    series_tdy,
    series_todd,
    specialize_y,
    trivial_bundle,
)
from charclass.ring import Poly
from charclass.spaces import hypersurface, product, projective_space

ORDER = 8


def sympy_series(expr, a, n):
    s = sympy.series(expr, a, 0, n + 1).removeO()
    return [sympy.expand(s.coeff(a, k)) for k in range(n + 1)]


def to_poly(c) -> Poly:
    y = sympy.Symbol("y")
    p = sympy.Poly(sympy.cancel(sympy.together(c)), y)
    return Poly({((("y", e),) if e else ()): Fraction(int(q.p), int(q.q)) for (e,), q in p.terms()})


def assert_series_equal(ours, oracle):
    for k, c in enumerate(oracle):
        assert Poly.coerce(ours[k]) == to_poly(c), f"coefficient {k}"


def test_todd_against_sympy():
    a = sympy.Symbol("a")
    assert_series_equal(series_todd(ORDER), sympy_series(a / (1 - sympy.exp(-a)), a, ORDER))


def test_L_against_sympy():
    a = sympy.Symbol("a")
    assert_series_equal(series_L(ORDER), sympy_series(a / sympy.tanh(a), a, ORDER))


def test_tdy_against_sympy():
    a, y = sympy.symbols("a y")
    expr = a * (1 + y) / (1 - sympy.exp(-a * (1 + y))) - a * y
    assert_series_equal(series_tdy(6), sympy_series(expr, a, 6))


def test_named_coefficients():
    assert list(series_todd(2).coefficients) == [1, Fraction(1, 2), Fraction(1, 12)]
    assert series_L(4)[2] == Fraction(1, 3)
    assert series_L(4)[4] == Fraction(-1, 45)
    assert series_todd(4)[4] == Fraction(-1, 720)
    y = Poly.var("y")
    assert series_tdy(1)[1] == (1 - y) / 2
    assert list(series_chern(3).coefficients) == [1, 1, 0, 0]


@pytest.mark.parametrize("N", range(1, ORDER + 1))
def test_specialization_triangle(N):
    tdy = series_tdy(N)
    assert specialize_y(tdy, -1).coefficients == series_chern(N).coefficients
    assert specialize_y(tdy, 0).coefficients == series_todd(N).coefficients
    assert specialize_y(tdy, 1).coefficients == series_L(N).coefficients


def test_named_series_aliases():
    assert named_series("td", 3) == series_todd(3)
    assert named_series("l", 3) == series_L(3)
    with pytest.raises(ValueError):
        named_series("nope")


def test_power_sums_of_tangent_p2():
    X = projective_space(2)
    h = X.hyperplane
    p = power_sums_from_chern(X.tangent, 2)
    assert p[1] == h.scale(3)
    assert p[2] == (h * h).scale(3)


def test_power_sums_rank_one_and_trivial():
    X = projective_space(4)
    D = X.hyperplane.scale(2)
    p = power_sums_from_chern(line_bundle(D), 4)
    for k in range(1, 5):
        assert p[k] == D**k
    assert all(x.is_zero() for x in power_sums_from_chern(trivial_bundle(X.ring, 3), 4)[1:])


def _bundle_from_roots(ring, roots):
    c = ring.one()
    for r in roots:
        c = c * (ring.one() + r)
    return BundleData(c, len(roots))


def _direct_product(s, ring, roots):
    """prod_i s(a_i) by direct substitution of each root."""
    ring = ring.extend(s.variables())
    out = ring.one()
    for r in roots:
        r = r.extend(s.variables())
        term = ring.zero()
        power = ring.one()
        for k in range(ring.truncation_dim + 1):
            term = term + power.scale(s[k])
            power = power * r
        out = out * term
    return out


ROOT_SPACE = product(projective_space(2), projective_space(2))


@st.composite
def split_bundles(draw):
    ring = ROOT_SPACE.ring
    g1, g2 = ring.gen("h1"), ring.gen("h2")
    n = draw(st.integers(0, 4))
    roots = [
        g1.scale(draw(st.integers(-3, 3))) + g2.scale(draw(st.integers(-3, 3))) for _ in range(n)
    ]
    return roots


@pytest.mark.parametrize("name", ["chern", "todd", "L", "tdy"])
@settings(max_examples=25, deadline=None)
@given(roots=split_bundles())
def test_apply_series_matches_chern_root_product(name, roots):
    s = named_series(name, 4)
    b = _bundle_from_roots(ROOT_SPACE.ring, roots)
    assert apply_series(s, b) == _direct_product(s, ROOT_SPACE.ring, roots)


@pytest.mark.parametrize("name", ["chern", "todd", "L", "tdy"])
@settings(max_examples=25, deadline=None)
@given(r1=split_bundles(), r2=split_bundles())
def test_multiplicativity(name, r1, r2):
    s = named_series(name, 4)
    E = _bundle_from_roots(ROOT_SPACE.ring, r1)
    F = _bundle_from_roots(ROOT_SPACE.ring, r2)
    assert apply_series(s, E + F) == apply_series(s, E) * apply_series(s, F)


@settings(max_examples=25, deadline=None)
@given(roots=split_bundles())
def test_chern_series_reproduces_total_chern(roots):
    b = _bundle_from_roots(ROOT_SPACE.ring, roots)
    assert apply_series(series_chern(4), b) == b.total_chern


@settings(max_examples=25, deadline=None)
@given(roots=split_bundles())
def test_newton_round_trip(roots):
    b = _bundle_from_roots(ROOT_SPACE.ring, roots)
    e = elementary_from_power_sums(power_sums_from_chern(b, 4))
    assert sum(e[1:], ROOT_SPACE.ring.one()) == b.total_chern


def test_todd_of_p2():
    X = projective_space(2)
    h = X.hyperplane
    assert apply_series(series_todd(), X.tangent) == X.ring.one() + h.scale(Fraction(3, 2)) + h * h


def test_tdy_of_trivial_bundle():
    X = projective_space(3)
    assert apply_series(series_tdy(), trivial_bundle(X.ring)) == X.ring.extend(["y"]).one()


def test_inverse_class():
    X = hypersurface(3, 2)
    td = apply_series(series_todd(), X.tangent)
    assert td * inverse_class(series_todd(), X.tangent) == X.ring.one()


def test_short_series_rejected():
    with pytest.raises(ValueError):
        apply_series(series_todd(1), projective_space(3).tangent)


def test_bundle_needs_unit_chern_class():
    X = projective_space(2)
    with pytest.raises(ValueError):
        BundleData(X.hyperplane, 1)
