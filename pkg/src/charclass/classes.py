"""Multiplicative characteristic classes from one-variable power series.

A series ``s(a) = 1 + c_1 a + c_2 a^2 + ...`` defines the class
``prod_i s(a_i)`` of a bundle with Chern roots ``a_i``.  We never split the
bundle: ``log s`` is expanded once, summed over roots through power sums
(Newton's identities applied to the Chern classes) and exponentiated in the
truncated ring.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial

from .errors import UnsupportedError
from .ring import GradedElement, Poly, _norm_coeff, component, invert_unit, mul

DEFAULT_ORDER = 8

__all__ = [
    "DEFAULT_ORDER",
    "CharClassSeries",
    "BundleData",
    "series_chern",
    "series_todd",
    "series_L",
    "series_tdy",
    "named_series",
    "specialize_y",
    "power_sums_from_chern",
    "elementary_from_power_sums",
    "apply_series",
    "series_mul",
    "series_inverse",
    "series_log",
    "series_exp",
    "graded_exp",
]


# -- truncated one-variable series ---------------------------------------------


def series_mul(a: list, b: list, n: int) -> list:
    out = [Fraction(0)] * (n + 1)
    for i, x in enumerate(a[: n + 1]):
        if not x:
            continue
        for j, z in enumerate(b[: n + 1 - i]):
            out[i + j] = out[i + j] + x * z
    return [_norm_coeff(c) for c in out]


def series_inverse(a: list, n: int) -> list:
    """Inverse of a series with constant term 1 (or a nonzero rational)."""
    a0 = _norm_coeff(a[0])
    if isinstance(a0, Poly) or a0 == 0:
        raise ZeroDivisionError("series constant term is not a unit")
    inv0 = 1 / a0
    out = [inv0] + [Fraction(0)] * n
    for k in range(1, n + 1):
        acc = Fraction(0)
        for i in range(1, min(k, len(a) - 1) + 1):
            acc = acc + a[i] * out[k - i]
        out[k] = _norm_coeff(-acc * inv0)
    return out


def series_log(a: list, n: int) -> list:
    """log of a series with constant term 1, via log(1+u) = sum (-1)^(j+1) u^j / j."""
    if _norm_coeff(a[0]) != 1:
        raise ValueError("log needs constant term 1")
    u = [Fraction(0)] + list(a[1 : n + 1]) + [Fraction(0)] * max(0, n + 1 - len(a))
    out = [Fraction(0)] * (n + 1)
    power = [Fraction(1)] + [Fraction(0)] * n
    for j in range(1, n + 1):
        power = series_mul(power, u, n)
        sign = 1 if j % 2 else -1
        out = [_norm_coeff(o + p * Fraction(sign, j)) for o, p in zip(out, power)]
    return out


def series_exp(a: list, n: int) -> list:
    if _norm_coeff(a[0]) != 0:
        raise ValueError("exp needs zero constant term")
    u = list(a[: n + 1]) + [Fraction(0)] * max(0, n + 1 - len(a))
    out = [Fraction(1)] + [Fraction(0)] * n
    power = [Fraction(1)] + [Fraction(0)] * n
    for j in range(1, n + 1):
        power = series_mul(power, u, n)
        out = [_norm_coeff(o + p * Fraction(1, factorial(j))) for o, p in zip(out, power)]
    return out


# -- named series ----------------------------------------------------------------


@dataclass(frozen=True)
class CharClassSeries:
    """Coefficients ``c_0 .. c_N`` of a series in the Chern root, ``c_0 = 1``."""

    name: str
    coefficients: tuple

    def __post_init__(self):
        if not self.coefficients or _norm_coeff(self.coefficients[0]) != 1:
            raise ValueError(f"series {self.name!r} must have constant term 1")

    @property
    def order(self) -> int:
        return len(self.coefficients) - 1

    def __getitem__(self, k: int):
        return self.coefficients[k] if k <= self.order else Fraction(0)

    def variables(self) -> frozenset[str]:
        out = frozenset()
        for c in self.coefficients:
            if isinstance(c, Poly):
                out |= c.variables()
        return out

    def truncated(self, n: int) -> "CharClassSeries":
        return CharClassSeries(self.name, self.coefficients[: n + 1])


@lru_cache(maxsize=None)
def series_chern(order: int = DEFAULT_ORDER) -> CharClassSeries:
    coeffs = [Fraction(1), Fraction(1)] + [Fraction(0)] * (order - 1)
    return CharClassSeries("chern", tuple(coeffs[: order + 1]))


@lru_cache(maxsize=None)
def series_todd(order: int = DEFAULT_ORDER) -> CharClassSeries:
    # (1 - e^{-a}) / a = sum_k (-1)^k a^k / (k+1)!
    q = [Fraction((-1) ** k, factorial(k + 1)) for k in range(order + 1)]
    return CharClassSeries("todd", tuple(series_inverse(q, order)))


@lru_cache(maxsize=None)
def series_L(order: int = DEFAULT_ORDER) -> CharClassSeries:
    # a / tanh a = cosh a / (sinh a / a)
    cosh = [Fraction(1, factorial(k)) if k % 2 == 0 else Fraction(0) for k in range(order + 1)]
    sinh_a = [Fraction(1, factorial(k + 1)) if k % 2 == 0 else Fraction(0) for k in range(order + 1)]
    return CharClassSeries("L", tuple(series_mul(cosh, series_inverse(sinh_a, order), order)))


@lru_cache(maxsize=None)
def series_tdy(order: int = DEFAULT_ORDER) -> CharClassSeries:
    """a(1+y)/(1-e^{-a(1+y)}) - a*y, coefficients in Q[y].

    With b = a(1+y) the first summand is the Todd series in b, so the
    coefficient of a^k is todd_k * (1+y)^k; the -a*y only touches k = 1.
    """
    y = Poly.var("y")
    todd = series_todd(order).coefficients
    coeffs = []
    for k, tk in enumerate(todd):
        c = tk * (1 + y) ** k
        if k == 1:
            c = c - y
        coeffs.append(_norm_coeff(c))
    return CharClassSeries("tdy", tuple(coeffs))


_NAMED = {"chern": series_chern, "todd": series_todd, "L": series_L, "tdy": series_tdy}


def named_series(name: str, order: int = DEFAULT_ORDER) -> CharClassSeries:
    key = {"l": "L", "l-class": "L", "td": "todd", "c": "chern", "td_y": "tdy"}.get(name.lower(), name)
    key = key if key in _NAMED else key.lower()
    if key not in _NAMED:
        raise UnsupportedError(f"unknown series {name!r}; choose from {sorted(_NAMED)}")
    return _NAMED[key](order)


def specialize_y(s: CharClassSeries, y0) -> CharClassSeries:
    """Substitute y = y0 coefficientwise (exact, the coefficients are polynomial in y)."""
    coeffs = tuple(
        _norm_coeff(c.subs({"y": Fraction(y0)})) if isinstance(c, Poly) else c
        for c in s.coefficients
    )
    return CharClassSeries(f"{s.name}|y={y0}", coeffs)


# -- bundles ----------------------------------------------------------------------


@dataclass(frozen=True)
class BundleData:
    """Total Chern class of a (possibly virtual) bundle, and its rank."""

    total_chern: GradedElement
    rank: int

    def __post_init__(self):
        if self.rank < 0:
            raise ValueError("rank must be nonnegative")
        if self.total_chern.constant_term() != 1:
            raise ValueError("total Chern class must have constant term 1")

    @property
    def ring(self):
        return self.total_chern.presentation

    def chern(self, i: int) -> GradedElement:
        if i == 0:
            return self.ring.one()
        if i > self.rank:
            return self.ring.zero()
        return component(self.total_chern, i)

    def __add__(self, other: "BundleData") -> "BundleData":
        return BundleData(mul(self.total_chern, other.total_chern), self.rank + other.rank)

    def dual(self) -> "BundleData":
        c = self.ring.zero()
        for d in range(self.ring.truncation_dim + 1):
            c = c + component(self.total_chern, d).scale((-1) ** d)
        return BundleData(c, self.rank)


def trivial_bundle(ring, rank: int = 0) -> BundleData:
    return BundleData(ring.one(), rank)


def line_bundle(divisor: GradedElement) -> BundleData:
    return BundleData(divisor.presentation.one() + divisor, 1)


def power_sums_from_chern(b: BundleData, N: int) -> list[GradedElement]:
    """``[p_0, p_1, ..., p_N]`` with ``p_k = sum a_i^k`` and ``p_0 = rank``."""
    ring = b.ring
    e = [b.chern(i) for i in range(N + 1)]
    p = [ring.scalar(b.rank)]
    for k in range(1, N + 1):
        acc = e[k].scale(k * (-1) ** (k - 1))
        for i in range(1, k):
            acc = acc + mul(e[i], p[k - i]).scale((-1) ** (i - 1))
        p.append(acc)
    return p


def elementary_from_power_sums(p: list[GradedElement]) -> list[GradedElement]:
    """Inverse Newton: ``k e_k = sum_{i=1..k} (-1)^{i-1} e_{k-i} p_i``; returns ``[e_0..e_N]``."""
    ring = p[0].presentation
    e = [ring.one()]
    for k in range(1, len(p)):
        acc = ring.zero()
        for i in range(1, k + 1):
            acc = acc + mul(e[k - i], p[i]).scale((-1) ** (i - 1))
        e.append(acc.scale(Fraction(1, k)))
    return e


def graded_exp(x: GradedElement) -> GradedElement:
    """exp of an element without constant term, truncated by the ring."""
    if x.constant_term() != 0:
        raise ValueError("graded exp needs zero constant term")
    ring = x.presentation
    total = ring.one()
    term = ring.one()
    for j in range(1, ring.truncation_dim + 1):
        term = mul(term, x).scale(Fraction(1, j))
        if term.is_zero():
            break
        total = total + term
    return total


def apply_series(s: CharClassSeries, b: BundleData) -> GradedElement:
    """``prod_i s(a_i)`` for the Chern roots of ``b``, as an element of its ring.

    If the series has coefficients in Q[y] the result lives in the ring with
    ``y`` adjoined to the scalars.
    """
    N = b.ring.truncation_dim
    if s.order < N:
        raise ValueError(f"series {s.name!r} of order {s.order} is too short for degree {N}")
    total = b.total_chern.extend(s.variables())
    bundle = BundleData(total, b.rank)
    g = series_log(list(s.coefficients[: N + 1]), N)
    p = power_sums_from_chern(bundle, N)
    x = bundle.ring.zero()
    for k in range(1, N + 1):
        if g[k]:
            x = x + p[k].scale(g[k])
    return graded_exp(x)


def inverse_class(s: CharClassSeries, b: BundleData) -> GradedElement:
    return invert_unit(apply_series(s, b))
