"""Catalog of smooth spaces with explicit Chow rings, and Borel approximations.

Every space carries its ring presentation, the total Chern class of its
tangent bundle and the class of a point; ``integrate`` reads off the
coefficient of the point class.  Classes on a space are elements of its
ring, understood as capped with the fundamental class.

Conventions: ``c(TP^n) = (1+h)^(n+1)`` (Euler sequence), equivariant
weights enter as ``(1 + h + w t)``.  Hypersurfaces keep the ambient
hyperplane class and rescale integration by their degree.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping

from .classes import BundleData
from .errors import MalformedPresentationError, UnsupportedError
from .ring import GradedElement, Poly, Relation, RingPresentation, _norm_coeff, invert_unit, mul

__all__ = [
    "Space",
    "EquivariantSpace",
    "DivisorSet",
    "point",
    "projective_space",
    "product",
    "hypersurface",
    "equivariant_projective_space",
    "integrate",
    "borel_model",
    "borel_approximation",
    "borel_agree",
    "space_from_json",
    "space_from_preset",
]


@dataclass(frozen=True, eq=False)
class Space:
    label: str
    ring: RingPresentation
    dim: int
    tangent: BundleData
    point_class: GradedElement
    # generators integrated as scalars (equivariant parameters)
    parameters: tuple[str, ...] = ()

    def __post_init__(self):
        if len(self.point_class.terms) != 1:
            raise MalformedPresentationError("point class must be a single monomial")
        if self.tangent.rank != self.dim:
            raise MalformedPresentationError(
                f"tangent rank {self.tangent.rank} != dimension {self.dim}"
            )

    def gen(self, name: str) -> GradedElement:
        return self.ring.gen(name)

    @property
    def hyperplane(self) -> GradedElement:
        return self.ring.gen(self.ring.names[0])

    def __repr__(self):
        return f"Space({self.label}, dim={self.dim})"


@dataclass(frozen=True, eq=False)
class EquivariantSpace(Space):
    weights: tuple[int, ...] = ()
    torus_rank: int = 1

    def nonequivariant(self) -> Space:
        return projective_space(len(self.weights) - 1)


@dataclass(frozen=True)
class DivisorSet:
    classes: tuple[GradedElement, ...]
    normal_crossings: bool = True

    def __post_init__(self):
        for d in self.classes:
            if d.is_zero() or d.degrees() != [1]:
                raise MalformedPresentationError(f"divisor class {d} is not homogeneous of degree 1")

    def __len__(self):
        return len(self.classes)

    def __iter__(self):
        return iter(self.classes)


# -- catalog -------------------------------------------------------------------


def _power_relation(name: str, k: int) -> Relation:
    return Relation(name, k, ())


def point() -> Space:
    ring = RingPresentation([], truncation_dim=0)
    return Space("pt", ring, 0, BundleData(ring.one(), 0), ring.one())


@lru_cache(maxsize=64)
def projective_space(n: int, name: str = "h") -> Space:
    if n < 0:
        raise ValueError("projective_space needs n >= 0")
    if n == 0:
        sp = point()
        return Space("P0", sp.ring, 0, sp.tangent, sp.point_class)
    ring = RingPresentation([(name, 1)], [_power_relation(name, n + 1)], truncation_dim=n)
    h = ring.gen(name)
    return Space(f"P{n}", ring, n, BundleData((1 + h) ** (n + 1), n), h ** n)


def _rename_map(a: Iterable[str], b: Iterable[str]) -> tuple[dict, dict]:
    a, b = list(a), list(b)
    clash = set(a) & set(b)
    taken = set(a) | set(b)
    ra, rb = {}, {}
    for names, suffix, out in ((a, "1", ra), (b, "2", rb)):
        for n in names:
            if n in clash:
                new = n + suffix
                while new in taken:
                    new += "_"
                taken.add(new)
                out[n] = new
            else:
                out[n] = n
    return ra, rb


def _embed(elem: GradedElement, target: RingPresentation, offset: int) -> GradedElement:
    width = len(target.names)
    raw = {}
    for exps, c in elem.terms.items():
        full = [0] * width
        full[offset : offset + len(exps)] = exps
        raw[tuple(full)] = c
    return GradedElement(target, raw)


def product(X: Space, Y: Space) -> Space:
    """Tensor-product presentation; clashing generator names get suffixes 1 and 2."""
    ra, rb = _rename_map(X.ring.names, Y.ring.names)
    gens = [(ra[n], d) for n, d in X.ring.generators] + [(rb[n], d) for n, d in Y.ring.generators]
    nx = len(X.ring.names)
    rels = []
    for rel, ren, off in [(r, ra, 0) for r in X.ring.relations] + [(r, rb, nx) for r in Y.ring.relations]:
        width = len(gens)
        rhs = []
        for exps, c in rel.rhs:
            full = [0] * width
            full[off : off + len(exps)] = exps
            rhs.append((tuple(full), c))
        rels.append(Relation(ren[rel.generator], rel.power, tuple(rhs)))
    coeffs = X.ring.coefficients.extend(Y.ring.coefficients.variables)
    ring = RingPresentation(
        gens, rels, X.ring.truncation_dim + Y.ring.truncation_dim, coeffs
    )
    cx = _embed(X.tangent.total_chern.into(X.ring.extend(coeffs.variables)), ring, 0)
    cy = _embed(Y.tangent.total_chern.into(Y.ring.extend(coeffs.variables)), ring, nx)
    px = _embed(X.point_class, ring, 0)
    py = _embed(Y.point_class, ring, nx)
    params = tuple(ra[p] for p in X.parameters) + tuple(rb[p] for p in Y.parameters)
    label = f"{X.label}x{Y.label}"
    return Space(
        label, ring, X.dim + Y.dim, BundleData(mul(cx, cy), X.tangent.rank + Y.tangent.rank),
        mul(px, py), params,
    )


def hypersurface(n: int, d: int) -> Space:
    """Smooth degree-d hypersurface in P^n (smoothness is the caller's assertion)."""
    if n < 1 or d < 1:
        raise ValueError("hypersurface needs n >= 1 and d >= 1")
    ring = RingPresentation([("h", 1)], [_power_relation("h", n)], truncation_dim=n - 1)
    h = ring.gen("h")
    tangent = (1 + h) ** (n + 1) * invert_unit(1 + d * h)
    pt = (h ** (n - 1)).scale(Fraction(1, d))
    return Space(f"V{d}inP{n}", ring, n - 1, BundleData(tangent, n - 1), pt)


def _expand_product(ring: RingPresentation, factors: Iterable[GradedElement]) -> GradedElement:
    out = ring.one()
    for f in factors:
        out = mul(out, f)
    return out


def equivariant_projective_space(
    weights: Iterable[int], truncation: int | None = None
) -> EquivariantSpace:
    """P(V) for a rank-one torus acting on V with the given weights.

    Ring Q[h, t] / prod_i (h + w_i t), truncated at ``truncation``
    (default ``2 * dim + 2``).
    """
    weights = tuple(int(w) for w in weights)
    if not weights:
        raise ValueError("equivariant_projective_space needs at least one weight")
    n = len(weights) - 1
    trunc = 2 * n + 2 if truncation is None else int(truncation)
    if trunc < n:
        raise ValueError("truncation must be at least the dimension")
    free = RingPresentation([("h", 1), ("t", 1)], truncation_dim=max(trunc, n + 1))
    h, t = free.gens()
    rel = _expand_product(free, (h + w * t for w in weights))
    ring = RingPresentation([("h", 1), ("t", 1)], truncation_dim=trunc).with_relation("h", rel)
    h, t = ring.gens()
    tangent = _expand_product(ring, (1 + h + w * t for w in weights))
    label = "P(" + ",".join(map(str, weights)) + ")"
    return EquivariantSpace(
        label, ring, n, BundleData(tangent, n), h ** n, ("t",), weights=weights
    )


def integrate(X: Space, a: GradedElement):
    """Degree of ``a`` capped with [X]: coefficient of the point class.

    For equivariant spaces the parameters are kept, giving a polynomial in them.
    """
    if not a.presentation.same_base(X.ring):
        raise MalformedPresentationError(f"class is not in the ring of {X.label}")
    (pexps, pcoeff), = X.point_class.terms.items()
    names = X.ring.names
    param_idx = [i for i, n in enumerate(names) if n in X.parameters]
    fiber_idx = [i for i in range(len(names)) if i not in param_idx]
    total = Poly()
    for exps, c in a.terms.items():
        if any(exps[i] != pexps[i] for i in fiber_idx):
            continue
        term = Poly.coerce(c)
        for i in param_idx:
            if exps[i]:
                term = term * Poly.var(names[i], exps[i])
        total = total + term
    return _norm_coeff(total / pcoeff)


# -- Borel construction ---------------------------------------------------------


def borel_model(X: Space, level: int) -> tuple[Space, BundleData]:
    """Finite model X_G -> U_G = P^level for a rank-one torus, and the bundle TU_G.

    Supported: X a point, or an equivariant projective space.  The tautological
    bundle on U_G is O(1)^(level+1), pulled back to X_G.
    """
    if level < 1:
        raise ValueError("level must be >= 1")
    if X.dim == 0 and not X.ring.names:
        ring = RingPresentation([("k", 1)], [_power_relation("k", level + 1)], truncation_dim=level)
        k = ring.gen("k")
        tu = BundleData((1 + k) ** (level + 1), level + 1)
        xg = Space(f"[pt]_G(l={level})", ring, level, BundleData(tu.total_chern, level), k ** level)
        return xg, tu
    if isinstance(X, EquivariantSpace):
        if X.torus_rank != 1:
            raise UnsupportedError("only rank-one tori are supported")
        n = X.dim
        dim = n + level
        free = RingPresentation([("h", 1), ("k", 1)], truncation_dim=max(dim, n + 1))
        h, k = free.gens()
        rel = _expand_product(free, (h + w * k for w in X.weights))
        base = RingPresentation(
            [("h", 1), ("k", 1)], [_power_relation("k", level + 1)], truncation_dim=dim
        )
        ring = base.with_relation("h", rel)
        h, k = ring.gens()
        tu = BundleData((1 + k) ** (level + 1), level + 1)
        rel_tangent = _expand_product(ring, (1 + h + w * k for w in X.weights))
        tangent = BundleData(mul(tu.total_chern, rel_tangent), dim)
        xg = Space(f"{X.label}_G(l={level})", ring, dim, tangent, mul(h ** n, k ** level))
        return xg, tu
    raise UnsupportedError(f"no Borel model for {X.label}")


def borel_approximation(X: Space, level: int) -> GradedElement:
    """``c(TU_G)^{-1} c(T X_G)`` on the level-``level`` model (capped with [X_G])."""
    xg, tu = borel_model(X, level)
    return mul(invert_unit(tu.total_chern), xg.tangent.total_chern)


def borel_agree(a: GradedElement, b: GradedElement, base: str = "k") -> bool:
    """Do two Borel approximations agree in every degree both levels see faithfully?

    Terms are compared by generator names, keeping base-class exponents up to
    the smaller level.
    """
    def level_of(e):
        rel = {r.generator: r.power for r in e.presentation.relations}
        return rel[base] - 1

    lim = min(level_of(a), level_of(b))

    def named(e):
        names = e.presentation.names
        out = {}
        for exps, c in e.terms.items():
            key = tuple(sorted((n, x) for n, x in zip(names, exps) if x))
            if dict(key).get(base, 0) <= lim:
                out[key] = c
        return out

    return named(a) == named(b)


# -- JSON descriptors -----------------------------------------------------------


def space_from_json(desc: Mapping) -> Space:
    kind = desc.get("type")
    if kind == "projective":
        return projective_space(int(desc["n"]))
    if kind == "point":
        return point()
    if kind == "product":
        factors = [space_from_json(f) for f in desc["factors"]]
        if not factors:
            return point()
        out = factors[0]
        for f in factors[1:]:
            out = product(out, f)
        return out
    if kind == "hypersurface":
        return hypersurface(int(desc["n"]), int(desc["d"]))
    if kind == "equivariant_projective":
        return equivariant_projective_space(desc["weights"], desc.get("truncation"))
    raise UnsupportedError(f"unknown space type {kind!r}")


def space_from_preset(name: str) -> Space:
    key = name.strip().replace("×", "x")
    if key in ("pt", "point", "P0"):
        return point()
    if "x" in key:
        parts = [space_from_preset(p) for p in key.split("x")]
        out = parts[0]
        for p in parts[1:]:
            out = product(out, p)
        return out
    if key.startswith("P") and key[1:].isdigit():
        return projective_space(int(key[1:]))
    raise UnsupportedError(f"unknown space preset {name!r}")
