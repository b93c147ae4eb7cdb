"""Hirzebruch classes T_y* on scissor classes of arrangement strata.

Only a computable fragment of K_0(Var/X) is modelled: integer combinations
of closed strata ``D_I -> W`` of an arrangement (and points).  Each term is
pushed to W as ``td_y(TD_I) * prod_{i in I} D_i`` with TD_I given by
adjunction, so everything stays inside the ambient ring over Q[y].
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .classes import (
    CharClassSeries,
    apply_series,
    named_series,
    series_tdy,
)
from .csm import Arrangement, stratum_label
from .errors import UnsupportedError
from .ring import GradedElement, Poly, invert_unit, mul
from .spaces import Space, borel_model, integrate, point

__all__ = [
    "MotivicTerm",
    "MotivicClass",
    "Ty_smooth",
    "chi_y",
    "scissor_decompose",
    "stratum_class",
    "Ty_of_class",
    "specialize",
    "equivariant_scaling_approx",
    "IDENTITY",
    "STRATUM",
    "POINT",
]

IDENTITY = "identity"
STRATUM = "inclusion-of-stratum"
POINT = "constant-to-point"


@dataclass(frozen=True)
class MotivicTerm:
    weight: int
    kind: str
    label: str
    indices: frozenset[int] = frozenset()


@dataclass(frozen=True, eq=False)
class MotivicClass:
    """Formal integer combination of [V -> X] with V a catalog stratum."""

    target: Space
    terms: tuple[MotivicTerm, ...]
    arrangement: Arrangement | None = None

    def __add__(self, other: "MotivicClass") -> "MotivicClass":
        if other.target is not self.target:
            raise ValueError("classes over different targets")
        arr = self.arrangement or other.arrangement
        return MotivicClass(self.target, self.terms + other.terms, arr)

    def __str__(self):
        parts = []
        for t in self.terms:
            sign = "-" if t.weight < 0 else "+"
            mag = abs(t.weight)
            parts.append(f"{sign} {'' if mag == 1 else mag}[{t.label}]")
        s = " ".join(parts)
        return s[2:] if s.startswith("+ ") else s


def Ty_smooth(X: Space, series: CharClassSeries | None = None) -> GradedElement:
    """td_y(TX) capped with [X], coefficients in Q[y]."""
    s = series or series_tdy(max(X.ring.truncation_dim, 1))
    return apply_series(s, X.tangent).extend(["y"])


def chi_y(X: Space) -> Poly:
    return Poly.coerce(integrate(X, Ty_smooth(X)))


def specialize(value: GradedElement, y0) -> GradedElement:
    return value.specialize({"y": Fraction(y0)})


def stratum_class(arr: Arrangement, I: Iterable[int]) -> MotivicClass:
    """Open stratum D_I minus the other divisors, as sum_{J ⊇ I} (-1)^{|J-I|} [D_J]."""
    I = frozenset(I)
    terms = []
    for J in arr.strata():
        if not I <= J:
            continue
        sign = (-1) ** (len(J) - len(I))
        if J:
            terms.append(MotivicTerm(sign, STRATUM, "D" + stratum_label(J), J))
        else:
            terms.append(MotivicTerm(sign, IDENTITY, arr.ambient.label))
    return MotivicClass(arr.ambient, tuple(terms), arr)


def scissor_decompose(arr: Arrangement) -> MotivicClass:
    return stratum_class(arr, ())


def _term_class(m: MotivicClass, t: MotivicTerm, series: CharClassSeries) -> GradedElement:
    X = m.target
    if t.kind == IDENTITY:
        return apply_series(series, X.tangent)
    if t.kind == POINT:
        return X.point_class.extend(series.variables())
    if t.kind == STRATUM:
        if m.arrangement is None:
            raise UnsupportedError(f"term [{t.label}] needs an arrangement")
        arr = m.arrangement
        if len(t.indices) > X.dim:
            return X.ring.extend(series.variables()).zero()
        tangent = arr.stratum_tangent(t.indices)
        cls = apply_series(series, tangent)
        return mul(cls, arr.closed_stratum(t.indices).extend(series.variables()))
    raise UnsupportedError(f"cannot evaluate term [{t.label}] of kind {t.kind!r}")


def Ty_of_class(m: MotivicClass, series: CharClassSeries | None = None) -> GradedElement:
    s = series or series_tdy(max(m.target.ring.truncation_dim, 1))
    ring = m.target.ring.extend(s.variables())
    total = ring.zero()
    for t in m.terms:
        total = total + _term_class(m, t, s).into(ring).scale(t.weight)
    return total


def equivariant_scaling_approx(series: CharClassSeries | str, level: int) -> GradedElement:
    """Level-``level`` approximation of the equivariant class of a point.

    ``s(TU_G)^{-1} * s(T P^level)`` on U_G = P^level; exact cancellation
    gives the fundamental class at every level.
    """
    if isinstance(series, str):
        series = named_series(series, max(level, 1))
    if series.name not in ("chern", "todd", "L", "tdy"):
        raise UnsupportedError(f"unsupported series {series.name!r}")
    ug, tu = borel_model(point(), level)
    num = apply_series(series, ug.tangent)
    den = apply_series(series, tu)
    return mul(invert_unit(den), num)
