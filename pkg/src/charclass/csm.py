"""Chern-Schwartz-MacPherson classes of arrangement strata.

An arrangement is a smooth catalog space W with divisors D_1..D_r meeting
with normal crossings (asserted by the caller).  The open stratum
``D_I^o = cap_{i in I} D_i - union_{j not in I} D_j`` has CSM class

    c(TW) / prod_{all i} (1 + D_i)  *  prod_{i in I} D_i

pushed to W: adjunction gives c(TD_I) = c(TW)/prod_{i in I}(1+D_i), and the
log-pole formula divides by the remaining boundary divisors.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Mapping

from .classes import BundleData
from .errors import MalformedPresentationError
from .ring import GradedElement, invert_unit, mul
from .spaces import DivisorSet, Space, integrate

__all__ = [
    "Arrangement",
    "CsmClass",
    "csm_smooth",
    "csm_complement",
    "csm_stratum",
    "csm_of_function",
    "euler_degree",
    "enumerative_degree",
    "stratum_label",
    "LinearArrangement",
    "csm_linear_complement",
]


@dataclass(frozen=True, eq=False)
class Arrangement:
    ambient: Space
    divisors: DivisorSet

    def __post_init__(self):
        for d in self.divisors:
            if d.presentation != self.ambient.ring:
                raise MalformedPresentationError("divisor class is not in the ambient ring")

    @classmethod
    def of(cls, ambient: Space, classes: Iterable[GradedElement]) -> "Arrangement":
        return cls(ambient, DivisorSet(tuple(classes)))

    @property
    def r(self) -> int:
        return len(self.divisors)

    def strata(self) -> list[frozenset[int]]:
        """All index subsets, by size then lexicographically (0-based)."""
        idx = range(self.r)
        return [frozenset(c) for k in range(self.r + 1) for c in combinations(idx, k)]

    def log_factor(self) -> GradedElement:
        """prod_i (1 + D_i)^{-1}."""
        ring = self.ambient.ring
        out = ring.one()
        for d in self.divisors:
            out = mul(out, invert_unit(ring.one() + d))
        return out

    def closed_stratum(self, I: Iterable[int]) -> GradedElement:
        """[D_I] pushed to W as prod_{i in I} D_i."""
        ring = self.ambient.ring
        out = ring.one()
        for i in I:
            out = mul(out, self.divisors.classes[i])
        return out

    def stratum_tangent(self, I: Iterable[int]) -> BundleData:
        """c(TD_I) expressed in the ambient ring by adjunction."""
        I = sorted(I)
        c = self.ambient.tangent.total_chern
        for i in I:
            c = mul(c, invert_unit(self.ambient.ring.one() + self.divisors.classes[i]))
        return BundleData(c, max(self.ambient.dim - len(I), 0))


def stratum_label(I: Iterable[int]) -> str:
    """1-based set label, e.g. ``{1,2}``."""
    return "{" + ",".join(str(i + 1) for i in sorted(I)) + "}"


@dataclass(frozen=True, eq=False)
class CsmClass:
    value: GradedElement
    ambient: Space
    label: str = ""

    def __eq__(self, other):
        if not isinstance(other, CsmClass):
            return NotImplemented
        return self.value == other.value

    def __hash__(self):
        return hash(self.value)

    def __add__(self, other: "CsmClass") -> "CsmClass":
        return CsmClass(self.value + other.value, self.ambient, f"{self.label}+{other.label}")

    def scale(self, c) -> "CsmClass":
        return CsmClass(self.value.scale(c), self.ambient, self.label)

    def degree(self):
        return euler_degree(self)


def csm_smooth(X: Space) -> CsmClass:
    return CsmClass(X.tangent.total_chern, X, X.label)


def csm_complement(arr: Arrangement) -> CsmClass:
    value = mul(arr.ambient.tangent.total_chern, arr.log_factor())
    return CsmClass(value, arr.ambient, f"{arr.ambient.label}-D")


def csm_stratum(arr: Arrangement, I: Iterable[int]) -> CsmClass:
    I = frozenset(I)
    if any(i < 0 or i >= arr.r for i in I):
        raise IndexError(f"stratum {sorted(I)} out of range for {arr.r} divisors")
    ring = arr.ambient.ring
    if len(I) > arr.ambient.dim:
        return CsmClass(ring.zero(), arr.ambient, stratum_label(I))
    value = mul(mul(arr.ambient.tangent.total_chern, arr.log_factor()), arr.closed_stratum(I))
    return CsmClass(value, arr.ambient, stratum_label(I))


def csm_of_function(arr: Arrangement, alpha: Mapping[frozenset, object]) -> CsmClass:
    """Sum of alpha_I * C_*(open stratum I); missing strata count as 0."""
    ring = arr.ambient.ring
    total = ring.zero()
    for I, a in alpha.items():
        a = Fraction(a)
        if a:
            total = total + csm_stratum(arr, frozenset(I)).value.scale(a)
    return CsmClass(total, arr.ambient, "alpha")


def euler_degree(c: CsmClass):
    return integrate(c.ambient, c.value)


def enumerative_degree(X: Space, E: BundleData, alpha_class: CsmClass):
    """∫ c(E) ∩ C_*(alpha)."""
    if E.ring != X.ring:
        raise MalformedPresentationError("bundle is not on the given space")
    return integrate(X, mul(E.total_chern, alpha_class.value))


def _rank(rows: list[tuple[Fraction, ...]]) -> int:
    m = [list(r) for r in rows]
    rank, col = 0, 0
    width = len(m[0]) if m else 0
    while rank < len(m) and col < width:
        pivot = next((i for i in range(rank, len(m)) if m[i][col]), None)
        if pivot is None:
            col += 1
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        for i in range(rank + 1, len(m)):
            f = m[i][col] / m[rank][col]
            if f:
                m[i] = [a - f * b for a, b in zip(m[i], m[rank])]
        rank += 1
        col += 1
    return rank


@dataclass(frozen=True, eq=False)
class LinearArrangement:
    """Distinct hyperplanes in P^n given by linear forms (no crossing assumption)."""

    n: int
    forms: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        forms = tuple(tuple(Fraction(x) for x in f) for f in self.forms)
        object.__setattr__(self, "forms", forms)
        if self.n < 1 and forms:
            raise MalformedPresentationError("P^0 has no hyperplanes")
        for f in forms:
            if len(f) != self.n + 1:
                raise MalformedPresentationError(f"linear form {f} needs {self.n + 1} coordinates")
            if not any(f):
                raise MalformedPresentationError("zero linear form")
        for a, b in combinations(forms, 2):
            if _rank([a, b]) < 2:
                raise MalformedPresentationError("hyperplanes must be distinct")

    def rank(self, S: Iterable[int]) -> int:
        return _rank([self.forms[i] for i in S])

    def is_generic(self) -> bool:
        """Normal crossings: every subset of at most n+1 forms is independent."""
        r = len(self.forms)
        return all(
            self.rank(S) == len(S)
            for k in range(2, min(r, self.n + 1) + 1)
            for S in combinations(range(r), k)
        )

    def ambient(self) -> Space:
        from .spaces import projective_space

        return projective_space(self.n)

    def to_arrangement(self) -> Arrangement:
        if not self.is_generic():
            raise MalformedPresentationError("arrangement does not have normal crossings")
        X = self.ambient()
        return Arrangement.of(X, [X.hyperplane for _ in self.forms])


def csm_linear_complement(arr: LinearArrangement) -> CsmClass:
    """C_*(P^n minus the hyperplanes) by inclusion-exclusion over intersections.

    Each intersection of a subset S is a linear P^{n - rank S} (empty when
    rank S > n), whose CSM class is (1+h)^{n - rank S + 1} h^{rank S}.
    """
    X = arr.ambient()
    # signed count of subsets by the rank of their intersection
    weight = [0] * (arr.n + 1)
    r = len(arr.forms)
    for k in range(r + 1):
        for S in combinations(range(r), k):
            rk = arr.rank(S)
            if rk <= arr.n:
                weight[rk] += (-1) ** k
    total = X.ring.zero()
    for rk, w in enumerate(weight):
        if w:
            total = total + _linear_subspace_csm(arr.n, rk).scale(w)
    return CsmClass(total, X, f"P{arr.n}-A")


@lru_cache(maxsize=None)
def _linear_subspace_csm(n: int, codim: int) -> GradedElement:
    """C_*(P^{n-codim}) pushed into P^n: (1+h)^{n-codim+1} h^codim."""
    from .spaces import projective_space

    ring = projective_space(n).ring
    h = ring.gen("h") if ring.names else ring.zero()
    return mul((ring.one() + h) ** (n - codim + 1), h**codim)
