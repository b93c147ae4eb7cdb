"""Stratified models of quotient stacks [X/G] with finite stabilizers.

A model stores the coarse space as strata, each with its compactly
supported Euler characteristic and stabilizer group.  Functions are kept
at two levels related by the stabilizer order on each stratum:

* invariant level: G-invariant functions on the presentation X,
* underline level: functions on the geometric points of the stack,

with ``invariant = |G_j| * underline``.  When the order of the presenting
group is known, stratum j of X has Euler characteristic
``(|G| / |G_j|) * chi_c(j)``; integrals of invariant functions use this
orbit weight.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .csm import Arrangement, csm_of_function, csm_stratum, euler_degree
from .errors import ModelError
from .groups import AbelianGroupSpec, FiniteGroup, hom_count, trivial_group

__all__ = [
    "Stratum",
    "AmbientLink",
    "StratifiedStackModel",
    "ConstructibleFunction",
    "StratifiedMap",
    "point_model",
    "classifying_model",
    "canonical_function",
    "T_A",
    "T_A_inverse",
    "integral",
    "pushforward",
    "modified_pushforward",
    "orbifold_euler",
    "degree_CA",
    "identity_map",
    "to_point",
    "to_classifying",
    "compose",
    "INVARIANT",
    "UNDERLINE",
]

INVARIANT = "invariant"
UNDERLINE = "underline"


@dataclass(frozen=True)
class Stratum:
    label: str
    chi: int
    stabilizer: FiniteGroup


@dataclass(frozen=True)
class AmbientLink:
    """Arrangement on the presentation X, and the arrangement strata covering each model stratum."""

    arrangement: Arrangement
    strata: Mapping[str, tuple[frozenset[int], ...]]


class StratifiedStackModel:
    def __init__(
        self,
        strata: Iterable[Stratum],
        group_order: int = 0,
        ambient: AmbientLink | None = None,
        label: str = "",
    ):
        self.strata = tuple(strata)
        self.group_order = int(group_order)
        self.ambient = ambient
        self.label = label
        labels = [s.label for s in self.strata]
        if len(set(labels)) != len(labels):
            raise ModelError(f"duplicate stratum labels in {labels}")
        if self.group_order < 0:
            raise ModelError("group order must be nonnegative")
        for s in self.strata:
            if int(s.chi) != s.chi:
                raise ModelError(f"stratum {s.label}: chi must be an integer")
            if self.group_order and self.group_order % s.stabilizer.order:
                raise ModelError(
                    f"stratum {s.label}: stabilizer order {s.stabilizer.order} "
                    f"does not divide {self.group_order}"
                )
        if ambient is not None:
            self._check_link()

    def _check_link(self) -> None:
        arr = self.ambient.arrangement
        for j, s in enumerate(self.strata):
            if s.label not in self.ambient.strata:
                raise ModelError(f"ambient link misses stratum {s.label}")
            chi = sum(euler_degree(csm_stratum(arr, I)) for I in self.ambient.strata[s.label])
            if chi != self.orbit_weight(j) * s.chi:
                raise ModelError(
                    f"stratum {s.label}: arrangement Euler characteristic {chi} != "
                    f"{self.orbit_weight(j) * s.chi}"
                )

    def __len__(self):
        return len(self.strata)

    def __repr__(self):
        return f"StratifiedStackModel({self.label or [s.label for s in self.strata]})"

    def index(self, label: str) -> int:
        for j, s in enumerate(self.strata):
            if s.label == label:
                return j
        raise ModelError(f"no stratum {label!r}")

    def stabilizer_order(self, j: int) -> int:
        return self.strata[j].stabilizer.order

    def orbit_weight(self, j: int) -> Fraction:
        """Size of a G-orbit over stratum j, or 1 when |G| is unknown."""
        if not self.group_order:
            return Fraction(1)
        return Fraction(self.group_order, self.stabilizer_order(j))

    def presentation_chi(self, j: int) -> Fraction:
        return self.orbit_weight(j) * self.strata[j].chi

    def function(self, values: Sequence | Mapping, level: str = INVARIANT) -> "ConstructibleFunction":
        if isinstance(values, Mapping):
            values = [values.get(s.label, 0) for s in self.strata]
        return ConstructibleFunction(self, tuple(Fraction(v) for v in values), level)

    def one(self) -> "ConstructibleFunction":
        """The constant function 1 on X (invariant level)."""
        return self.function([1] * len(self.strata))

    def unit(self) -> "ConstructibleFunction":
        """1_X = |Aut| at invariant level, i.e. constant 1 on geometric points."""
        return self.function([1] * len(self.strata), UNDERLINE).invariant()


def point_model() -> StratifiedStackModel:
    return StratifiedStackModel([Stratum("pt", 1, trivial_group())], 1, label="pt")


def classifying_model(G: FiniteGroup) -> StratifiedStackModel:
    """[pt/G]."""
    return StratifiedStackModel([Stratum("pt", 1, G)], G.order, label=f"[pt/{G.name or G.order}]")


@dataclass(frozen=True)
class ConstructibleFunction:
    model: StratifiedStackModel
    values: tuple[Fraction, ...]
    level: str = INVARIANT

    def __post_init__(self):
        if self.level not in (INVARIANT, UNDERLINE):
            raise ValueError(f"unknown level {self.level!r}")
        if len(self.values) != len(self.model.strata):
            raise ModelError("one value per stratum required")

    def invariant(self) -> "ConstructibleFunction":
        if self.level == INVARIANT:
            return self
        vals = tuple(v * self.model.stabilizer_order(j) for j, v in enumerate(self.values))
        return ConstructibleFunction(self.model, vals, INVARIANT)

    def underline(self) -> "ConstructibleFunction":
        if self.level == UNDERLINE:
            return self
        vals = tuple(v / self.model.stabilizer_order(j) for j, v in enumerate(self.values))
        return ConstructibleFunction(self.model, vals, UNDERLINE)

    def _same(self, other: "ConstructibleFunction") -> "ConstructibleFunction":
        if other.model is not self.model:
            raise ModelError("functions live on different models")
        return other.invariant() if self.level == INVARIANT else other.underline()

    def __eq__(self, other):
        if not isinstance(other, ConstructibleFunction):
            return NotImplemented
        return self.model is other.model and self.invariant().values == other.invariant().values

    def __hash__(self):
        return hash((id(self.model), self.invariant().values))

    def __add__(self, other):
        other = self._same(other)
        return ConstructibleFunction(self.model, tuple(a + b for a, b in zip(self.values, other.values)), self.level)

    def __sub__(self, other):
        return self + other.scale(-1)

    def __mul__(self, other):
        """Pointwise product of invariant-level functions."""
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        a, b = self.invariant(), other.invariant()
        if b.model is not a.model:
            raise ModelError("functions live on different models")
        return ConstructibleFunction(a.model, tuple(x * y for x, y in zip(a.values, b.values)))

    __rmul__ = __mul__

    def scale(self, c) -> "ConstructibleFunction":
        return ConstructibleFunction(self.model, tuple(v * c for v in self.values), self.level)

    def as_dict(self) -> dict[str, Fraction]:
        return {s.label: v for s, v in zip(self.model.strata, self.values)}


def canonical_function(A: AbelianGroupSpec, M: StratifiedStackModel) -> ConstructibleFunction:
    """1^A: |Hom(A, G_j)| at invariant level (|Hom(A, G_j)|/|G_j| on geometric points)."""
    return M.function([hom_count(A, s.stabilizer) for s in M.strata])


def T_A(alpha: ConstructibleFunction, A: AbelianGroupSpec) -> ConstructibleFunction:
    return canonical_function(A, alpha.model) * alpha


def T_A_inverse(alpha: ConstructibleFunction, A: AbelianGroupSpec) -> ConstructibleFunction:
    weights = canonical_function(A, alpha.model).values
    a = alpha.invariant()
    return ConstructibleFunction(a.model, tuple(v / w for v, w in zip(a.values, weights)))


def integral(alpha: ConstructibleFunction) -> Fraction:
    """Weighted Euler characteristic chi(X; alpha) of an invariant function on the presentation."""
    a = alpha.invariant()
    M = a.model
    return sum((M.presentation_chi(j) * v for j, v in enumerate(a.values)), Fraction(0))


class StratifiedMap:
    """A proper representable map given by fiber Euler characteristics.

    ``fibers[j][k]`` is the Euler characteristic of the part over source
    stratum j of the fiber (in the presentation) above a point of target
    stratum k.  Validated by ``sum_k E[j][k] chi(Y_k) = chi(X_j)`` with
    presentation-level Euler characteristics.
    """

    def __init__(self, source: StratifiedStackModel, target: StratifiedStackModel, fibers, label: str = ""):
        self.source = source
        self.target = target
        self.label = label
        rows = [tuple(Fraction(x) for x in row) for row in fibers]
        if len(rows) != len(source.strata) or any(len(r) != len(target.strata) for r in rows):
            raise ModelError(
                f"fiber matrix must be {len(source.strata)}x{len(target.strata)}"
            )
        self.fibers = tuple(rows)
        for j, row in enumerate(rows):
            lhs = sum((e * target.presentation_chi(k) for k, e in enumerate(row)), Fraction(0))
            if lhs != source.presentation_chi(j):
                raise ModelError(
                    f"fiber data inconsistent on stratum {source.strata[j].label}: "
                    f"{lhs} != {source.presentation_chi(j)}"
                )

    def __repr__(self):
        return f"StratifiedMap({self.source!r} -> {self.target!r})"


def identity_map(M: StratifiedStackModel) -> StratifiedMap:
    n = len(M.strata)
    return StratifiedMap(M, M, [[int(j == k) for k in range(n)] for j in range(n)], "id")


def to_point(M: StratifiedStackModel) -> StratifiedMap:
    """Collapse to [pt/trivial]; the fiber over the point is all of X."""
    return StratifiedMap(M, point_model(), [[M.presentation_chi(j)] for j in range(len(M.strata))], "pt")


def to_classifying(M: StratifiedStackModel, G: FiniteGroup) -> StratifiedMap:
    """[X/G] -> [pt/G]."""
    if M.group_order and M.group_order != G.order:
        raise ModelError("presenting group order does not match")
    return StratifiedMap(M, classifying_model(G), [[M.presentation_chi(j)] for j in range(len(M.strata))], "pt")


def compose(f: StratifiedMap, g: StratifiedMap) -> StratifiedMap:
    """g ∘ f: fiber Euler characteristics multiply along the intermediate strata."""
    if f.target is not g.source:
        raise ModelError("maps are not composable")
    n, m = len(g.source.strata), len(g.target.strata)
    fibers = [
        [sum((row[k] * g.fibers[k][l] for k in range(n)), Fraction(0)) for l in range(m)]
        for row in f.fibers
    ]
    return StratifiedMap(f.source, g.target, fibers, f"{g.label}∘{f.label}")


def pushforward(f: StratifiedMap, alpha: ConstructibleFunction) -> ConstructibleFunction:
    if alpha.model is not f.source:
        raise ModelError("function is not on the source of the map")
    a = alpha.invariant()
    m = len(f.target.strata)
    vals = [sum((f.fibers[j][k] * v for j, v in enumerate(a.values)), Fraction(0)) for k in range(m)]
    return f.target.function(vals)


def modified_pushforward(f: StratifiedMap, alpha: ConstructibleFunction, A: AbelianGroupSpec) -> ConstructibleFunction:
    """(T^A on the target)^{-1} ∘ f_* ∘ (T^A on the source)."""
    return T_A_inverse(pushforward(f, T_A(alpha, A)), A)


def orbifold_euler(M: StratifiedStackModel, A: AbelianGroupSpec) -> Fraction:
    """sum_j chi_c(j) |Hom(A, G_j)| / |G_j|."""
    measured = canonical_function(A, M).underline().values
    return sum((s.chi * w for s, w in zip(M.strata, measured)), Fraction(0))


def degree_CA(M: StratifiedStackModel, alpha: ConstructibleFunction, A: AbelianGroupSpec) -> Fraction:
    """Degree of C_*(T^A alpha), computed through CSM classes of the linked arrangement."""
    if M.ambient is None:
        raise ModelError("model has no ambient arrangement link")
    if alpha.model is not M:
        raise ModelError("function is not on this model")
    t = T_A(alpha, A)
    fn: dict[frozenset, Fraction] = {}
    for s, v in zip(M.strata, t.values):
        for I in M.ambient.strata[s.label]:
            fn[I] = fn.get(I, Fraction(0)) + v
    return Fraction(euler_degree(csm_of_function(M.ambient.arrangement, fn)))
