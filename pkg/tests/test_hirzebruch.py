from __future__ import annotations

from fractions import Fraction

import pytest
import sympy

from charclass.classes import apply_series, series_L, series_todd
from charclass.csm import Arrangement, csm_complement, csm_smooth, csm_stratum, euler_degree
from charclass.errors import UnsupportedError
from charclass.hirzebruch import (
    POINT,
    MotivicClass,
    MotivicTerm,
    Ty_of_class,
    Ty_smooth,
    chi_y,
    equivariant_scaling_approx,
    scissor_decompose,
    specialize,
    stratum_class,
)
from charclass.ring import Poly
from charclass.spaces import borel_agree, hypersurface, integrate, product, projective_space
from oracles import chi_y_compact_affine, hodge_chi_y_projective


def as_poly(expr) -> Poly:
    y = sympy.Symbol("y")
    p = sympy.Poly(sympy.expand(expr), y)
    return Poly({((("y", e),) if e else ()): Fraction(int(c.p), int(c.q)) for (e,), c in p.terms()})


CATALOG = (
    [projective_space(n) for n in range(0, 5)]
    + [product(projective_space(1), projective_space(1))]
    + [hypersurface(2, d) for d in (1, 2, 3)]
    + [hypersurface(3, 2)]
)


@pytest.mark.parametrize("X", CATALOG, ids=lambda X: X.label)
def test_specialization_ladder(X):
    T = Ty_smooth(X)
    assert specialize(T, -1) == csm_smooth(X).value
    assert specialize(T, 0) == apply_series(series_todd(max(X.dim, 1)), X.tangent)
    assert specialize(T, 1) == apply_series(series_L(max(X.dim, 1)), X.tangent)


def test_smooth_examples():
    P1 = projective_space(1)
    h = P1.ring.extend(["y"]).gen("h")
    y = Poly.var("y")
    assert Ty_smooth(P1) == 1 + h.scale(1 - y)
    P2 = projective_space(2)
    h2 = P2.hyperplane
    assert specialize(Ty_smooth(P2), 0) == 1 + h2.scale(Fraction(3, 2)) + h2 * h2


@pytest.mark.parametrize("n", range(0, 5))
def test_chi_y_projective_matches_hodge(n):
    chi = chi_y(projective_space(n))
    assert chi == as_poly(hodge_chi_y_projective(n))
    values = tuple(chi.subs({"y": v}).constant_term() for v in (-1, 0, 1))
    assert values == (n + 1, 1, 1 if n % 2 == 0 else 0)


@pytest.mark.parametrize("d", [1, 2, 3, 4])
def test_chi_y_plane_curves(d):
    g = (d - 1) * (d - 2) // 2
    # h^{0,0} = h^{1,1} = 1, h^{1,0} = h^{0,1} = g
    y = sympy.Symbol("y")
    assert chi_y(hypersurface(2, d)) == as_poly((1 - g) * (1 - y))


def test_chi_y_quadric_surface():
    y = sympy.Symbol("y")
    assert chi_y(hypersurface(3, 2)) == as_poly((1 - y) ** 2)
    assert chi_y(product(projective_space(1), projective_space(1))) == as_poly((1 - y) ** 2)


def hyperplanes(n, r):
    X = projective_space(n)
    return Arrangement.of(X, [X.hyperplane for _ in range(r)])


def test_scissor_examples():
    assert str(scissor_decompose(hyperplanes(1, 1))) == "[P1] - [D{1}]"
    m = scissor_decompose(hyperplanes(2, 2))
    assert str(m) == "[P2] - [D{1}] - [D{2}] + [D{1,2}]"
    X = projective_space(2)
    y = sympy.Symbol("y")
    assert integrate(X, Ty_of_class(scissor_decompose(hyperplanes(2, 1)))) == as_poly(y**2)
    assert integrate(X, Ty_of_class(m)) == as_poly(y**2 + y)
    P1 = projective_space(1)
    assert integrate(P1, Ty_of_class(scissor_decompose(hyperplanes(1, 1)))) == -Poly.var("y")


def test_point_term():
    X = projective_space(1)
    m = MotivicClass(X, (MotivicTerm(1, "identity", "P1"), MotivicTerm(-1, POINT, "pt")))
    assert integrate(X, Ty_of_class(m)) == -Poly.var("y")


def test_identity_only_is_smooth_class():
    X = projective_space(3)
    m = MotivicClass(X, (MotivicTerm(1, "identity", "P3"),))
    assert Ty_of_class(m) == Ty_smooth(X)


def test_uncomputable_term_is_named():
    X = projective_space(2)
    m = MotivicClass(X, (MotivicTerm(1, "blowup", "Bl_p P2"),))
    with pytest.raises(UnsupportedError, match="Bl_p P2"):
        Ty_of_class(m)
    bare = MotivicClass(X, (MotivicTerm(1, "inclusion-of-stratum", "D{1}", frozenset({0})),))
    with pytest.raises(UnsupportedError, match="D\\{1\\}"):
        Ty_of_class(bare)


def cell_oracle(m: int, k: int):
    """chi_y of P^m minus k general hyperplanes.

    By inclusion-exclusion over the Hodge polynomials of linear subspaces, and,
    when k <= m + 1, as the cell product (C*)^{k-1} x A^{m-k+1}.
    """
    from math import comb

    y = sympy.Symbol("y")
    incl = sum((-1) ** j * comb(k, j) * hodge_chi_y_projective(m - j) for j in range(0, min(k, m) + 1))
    if 1 <= k <= m + 1:
        cells = sympy.expand((-y - 1) ** (k - 1) * chi_y_compact_affine(m - k + 1))
        assert sympy.expand(incl - cells) == 0
    return incl


@pytest.mark.parametrize("n", range(1, 4))
@pytest.mark.parametrize("r", range(0, 4))
def test_strata_chi_y_matches_cell_oracle(n, r):
    arr = hyperplanes(n, r)
    X = arr.ambient
    for I in arr.strata():
        value = Ty_of_class(stratum_class(arr, I))
        chi = Poly.coerce(integrate(X, value))
        expected = cell_oracle(n - len(I), r - len(I)) if len(I) <= n else 0
        assert chi == as_poly(expected), sorted(I)
        assert chi.subs({"y": -1}).constant_term() == euler_degree(csm_stratum(arr, I))


@pytest.mark.parametrize("n", range(1, 4))
@pytest.mark.parametrize("r", range(0, 4))
def test_chi_y_additive_over_strata(n, r):
    arr = hyperplanes(n, r)
    X = arr.ambient
    total = sum((Ty_of_class(stratum_class(arr, I)) for I in arr.strata()), X.ring.extend(["y"]).zero())
    assert total == Ty_smooth(X)


@pytest.mark.parametrize("n,r", [(1, 1), (2, 1), (2, 2), (3, 3)])
def test_y_minus_one_gives_csm_complement(n, r):
    arr = hyperplanes(n, r)
    assert specialize(Ty_of_class(scissor_decompose(arr)), -1) == csm_complement(arr).value


def test_mixed_divisor_arrangement():
    X = product(projective_space(1), projective_space(1))
    h1, h2 = X.ring.gens()
    arr = Arrangement.of(X, [h1, h2])
    # (P1 - pt) x (P1 - pt) = A^2
    assert integrate(X, Ty_of_class(scissor_decompose(arr))) == Poly.var("y") ** 2


@pytest.mark.parametrize("series", ["chern", "todd", "L", "tdy"])
@pytest.mark.parametrize("level", range(1, 6))
def test_equivariant_scaling_is_fundamental_class(series, level):
    value = equivariant_scaling_approx(series, level)
    assert value == value.presentation.one()
    assert value.scalar_variables() == frozenset()


@pytest.mark.parametrize("series", ["chern", "todd", "L", "tdy"])
def test_equivariant_scaling_is_level_stable(series):
    values = [equivariant_scaling_approx(series, lv) for lv in range(1, 6)]
    assert all(borel_agree(a, b) for a, b in zip(values, values[1:]))


def test_equivariant_scaling_unsupported():
    from charclass.classes import CharClassSeries

    with pytest.raises(UnsupportedError):
        equivariant_scaling_approx(CharClassSeries("weird", (Fraction(1), Fraction(2), Fraction(0))), 2)
