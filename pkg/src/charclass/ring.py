"""Exact arithmetic in truncated graded polynomial quotient rings.

A ring is presented by generators of positive degree, triangular rewrite
rules ``g^k -> (terms of the same degree with lower powers of g)`` and a
truncation degree above which everything is dropped.  Coefficients are
rationals or polynomials over Q in named scalar variables (degree 0),
e.g. the Hirzebruch parameter ``y``.

Elements are immutable and always kept in normal form.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Union

from .errors import (
    MalformedPresentationError,
    NotInvertibleError,
    PresentationMismatchError,
)

__all__ = [
    "Poly",
    "CoefficientRing",
    "RATIONALS",
    "Relation",
    "RingPresentation",
    "GradedElement",
    "normal_form",
    "mul",
    "invert_unit",
    "component",
    "format_fraction",
    "parse_fraction",
    "parse_element",
]


def format_fraction(q) -> str:
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def parse_fraction(s) -> Fraction:
    if isinstance(s, (int, Fraction)):
        return Fraction(s)
    return Fraction(str(s).replace("−", "-").strip())


def _merge_monomials(a: tuple, b: tuple) -> tuple:
    if not a:
        return b
    if not b:
        return a
    out = dict(a)
    for name, e in b:
        out[name] = out.get(name, 0) + e
    return tuple(sorted(out.items()))


class Poly:
    """Sparse polynomial over Q in named variables.

    Monomials are sorted tuples of ``(name, exponent)`` pairs; the empty
    tuple is the constant monomial.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[tuple, object] | None = None):
        clean: dict[tuple, Fraction] = {}
        if terms:
            for mono, c in terms.items():
                c = Fraction(c)
                if c:
                    clean[mono] = c
        self._terms = clean
        self._hash = None

    @classmethod
    def var(cls, name: str, power: int = 1) -> "Poly":
        return cls({((name, power),): 1} if power else {(): 1})

    @classmethod
    def const(cls, c) -> "Poly":
        return cls({(): c})

    @staticmethod
    def coerce(x) -> "Poly":
        if isinstance(x, Poly):
            return x
        if isinstance(x, (int, Fraction)):
            return Poly.const(x)
        return NotImplemented

    @property
    def terms(self) -> dict[tuple, Fraction]:
        return dict(self._terms)

    def variables(self) -> frozenset[str]:
        return frozenset(name for mono in self._terms for name, _ in mono)

    def is_constant(self) -> bool:
        return all(mono == () for mono in self._terms)

    def constant_term(self) -> Fraction:
        return self._terms.get((), Fraction(0))

    def degree_in(self, name: str) -> int:
        return max((dict(m).get(name, 0) for m in self._terms), default=0)

    def coefficients_in(self, name: str) -> list[Fraction]:
        """Coefficient list in a single variable (the only one present)."""
        extra = self.variables() - {name}
        if extra:
            raise ValueError(f"polynomial also involves {sorted(extra)}")
        out = [Fraction(0)] * (self.degree_in(name) + 1)
        for mono, c in self._terms.items():
            out[dict(mono).get(name, 0)] = c
        return out

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self.is_constant() and self.constant_term() == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            if self.is_constant():
                self._hash = hash(self.constant_term())
            else:
                self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __neg__(self):
        return Poly({m: -c for m, c in self._terms.items()})

    def __add__(self, other):
        other = Poly.coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for m, c in other._terms.items():
            out[m] = out.get(m, 0) + c
        return Poly(out)

    __radd__ = __add__

    def __sub__(self, other):
        other = Poly.coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = Poly.coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = Poly.coerce(other)
        if other is NotImplemented:
            return other
        out: dict[tuple, Fraction] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = _merge_monomials(m1, m2)
                out[m] = out.get(m, 0) + c1 * c2
        return Poly(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Poly):
            if not other.is_constant():
                return NotImplemented
            other = other.constant_term()
        if not isinstance(other, (int, Fraction)):
            return NotImplemented
        if other == 0:
            raise ZeroDivisionError("division of polynomial by zero")
        inv = 1 / Fraction(other)
        return Poly({m: c * inv for m, c in self._terms.items()})

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of polynomial")
        out = Poly.const(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def subs(self, values: Mapping[str, object]) -> "Poly":
        out = Poly()
        for mono, c in self._terms.items():
            term = Poly.const(c)
            for name, e in mono:
                if name in values:
                    term = term * Poly.coerce(values[name]) ** e
                else:
                    term = term * Poly.var(name, e)
            out = out + term
        return out

    def sorted_terms(self) -> list[tuple[tuple, Fraction]]:
        return sorted(
            self._terms.items(),
            key=lambda mc: (sum(e for _, e in mc[0]), mc[0]),
        )

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for mono, c in self.sorted_terms():
            mono_s = "*".join(n if e == 1 else f"{n}^{e}" for n, e in mono)
            mag = abs(c)
            if not mono_s:
                body = str(mag)
            elif mag == 1:
                body = mono_s
            else:
                body = f"{mag}*{mono_s}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self):
        return f"Poly({self})"


Scalar = Union[int, Fraction, Poly]


def _norm_coeff(c):
    """Canonical coefficient: Fraction when constant, else Poly."""
    if isinstance(c, Poly):
        return c.constant_term() if c.is_constant() else c
    return Fraction(c)


def _coeff_vars(c) -> frozenset[str]:
    return c.variables() if isinstance(c, Poly) else frozenset()


def scalar_str(c) -> str:
    c = _norm_coeff(c)
    if isinstance(c, Poly):
        return str(c)
    return format_fraction(c)


@dataclass(frozen=True)
class CoefficientRing:
    """Q, or Q[variables] with variables of degree 0."""

    variables: tuple[str, ...] = ()

    @property
    def kind(self) -> str:
        return "rational-polynomials" if self.variables else "rationals"

    def extend(self, names: Iterable[str]) -> "CoefficientRing":
        out = list(self.variables)
        for n in names:
            if n not in out:
                out.append(n)
        return CoefficientRing(tuple(out))

    def without(self, names: Iterable[str]) -> "CoefficientRing":
        drop = set(names)
        return CoefficientRing(tuple(v for v in self.variables if v not in drop))


RATIONALS = CoefficientRing()


@dataclass(frozen=True)
class Relation:
    """Rewrite rule ``generator^power -> rhs``; rhs maps exponent vectors to scalars."""

    generator: str
    power: int
    rhs: tuple[tuple[tuple[int, ...], object], ...]


class RingPresentation:
    """Generators with degrees, triangular relations and a truncation degree."""

    def __init__(
        self,
        generators: Iterable[tuple[str, int]],
        relations: Iterable[Relation] = (),
        truncation_dim: int = 0,
        coefficients: CoefficientRing = RATIONALS,
    ):
        self.generators = tuple((str(n), int(d)) for n, d in generators)
        self.names = tuple(n for n, _ in self.generators)
        self.degrees = tuple(d for _, d in self.generators)
        if len(set(self.names)) != len(self.names):
            raise MalformedPresentationError(f"duplicate generator names {self.names}")
        if any(d < 1 for d in self.degrees):
            raise MalformedPresentationError("generator degrees must be positive")
        if truncation_dim < 0:
            raise MalformedPresentationError("truncation_dim must be nonnegative")
        if set(self.names) & set(coefficients.variables):
            raise MalformedPresentationError("generator names clash with coefficient variables")
        self.truncation_dim = int(truncation_dim)
        self.coefficients = coefficients
        self.relations = tuple(sorted(relations, key=lambda r: self.index(r.generator)))
        self._rules: dict[int, tuple[int, tuple]] = {}
        for rel in self.relations:
            self._add_rule(rel)
        self._check_acyclic()
        self._cache: dict[tuple, dict] = {}
        self._key = (
            self.generators,
            tuple(
                (r.generator, r.power, frozenset((m, _norm_coeff(c)) for m, c in r.rhs))
                for r in self.relations
            ),
            self.truncation_dim,
            self.coefficients,
        )

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise MalformedPresentationError(f"unknown generator {name!r}") from None

    def _add_rule(self, rel: Relation) -> None:
        i = self.index(rel.generator)
        if i in self._rules:
            raise MalformedPresentationError(f"two relations for generator {rel.generator!r}")
        if rel.power < 1:
            raise MalformedPresentationError("relation power must be positive")
        lhs_deg = rel.power * self.degrees[i]
        rhs = []
        for exps, c in rel.rhs:
            exps = tuple(exps)
            if len(exps) != len(self.names):
                raise MalformedPresentationError("relation monomial has wrong length")
            if self.degree(exps) != lhs_deg:
                raise MalformedPresentationError(
                    f"relation for {rel.generator}^{rel.power}: right side degree "
                    f"{self.degree(exps)} != {lhs_deg}"
                )
            if exps[i] >= rel.power:
                raise MalformedPresentationError(
                    f"relation for {rel.generator}^{rel.power} does not lower its power"
                )
            extra = _coeff_vars(c) - set(self.coefficients.variables)
            if extra:
                raise MalformedPresentationError(f"relation uses unknown scalars {sorted(extra)}")
            c = _norm_coeff(c)
            if c:
                rhs.append((exps, c))
        self._rules[i] = (rel.power, tuple(rhs))

    def _check_acyclic(self) -> None:
        deps = {
            i: {j for exps, _ in rhs for j, e in enumerate(exps) if e and j != i and j in self._rules}
            for i, (_, rhs) in self._rules.items()
        }
        state: dict[int, int] = {}

        def visit(i):
            if state.get(i) == 1:
                raise MalformedPresentationError("relations rewrite in a cycle")
            if state.get(i) == 2:
                return
            state[i] = 1
            for j in deps[i]:
                visit(j)
            state[i] = 2

        for i in deps:
            visit(i)

    def degree(self, exps: tuple[int, ...]) -> int:
        return sum(e * d for e, d in zip(exps, self.degrees))

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, RingPresentation):
            return NotImplemented
        return self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def same_base(self, other: "RingPresentation") -> bool:
        """Equal up to the scalar coefficient ring."""
        return self._key[:3] == other._key[:3]

    def __repr__(self):
        gens = ", ".join(f"{n}:{d}" for n, d in self.generators)
        rels = ", ".join(f"{r.generator}^{r.power}" for r in self.relations)
        sc = ",".join(self.coefficients.variables)
        return f"RingPresentation([{gens}], rel=[{rels}], trunc={self.truncation_dim}, Q[{sc}])"

    # -- construction helpers -------------------------------------------

    def with_relation(self, generator: str, vanishing: "GradedElement | Mapping") -> "RingPresentation":
        """Add the relation ``vanishing = 0``, solved for its top pure power of ``generator``.

        ``vanishing`` is a raw mapping (exponents -> scalar) or an element of a
        relation-free ring on the same generators.
        """
        terms = dict(vanishing.terms) if isinstance(vanishing, GradedElement) else dict(vanishing)
        i = self.index(generator)
        k = max((m[i] for m, c in terms.items() if c), default=0)
        pure = tuple(k if j == i else 0 for j in range(len(self.names)))
        tops = [m for m, c in terms.items() if c and m[i] == k]
        if k == 0 or tops != [pure] or _norm_coeff(terms[pure]) != 1:
            raise MalformedPresentationError(
                f"relation is not monic in a pure power of {generator!r}"
            )
        rhs = tuple((m, -_norm_coeff(c)) for m, c in terms.items() if m != pure and c)
        return RingPresentation(
            self.generators,
            self.relations + (Relation(generator, k, rhs),),
            self.truncation_dim,
            self.coefficients,
        )

    def extend(self, names: Iterable[str]) -> "RingPresentation":
        coeffs = self.coefficients.extend(names)
        if coeffs == self.coefficients:
            return self
        return RingPresentation(self.generators, self.relations, self.truncation_dim, coeffs)

    def truncated(self, dim: int) -> "RingPresentation":
        if dim == self.truncation_dim:
            return self
        return RingPresentation(self.generators, self.relations, dim, self.coefficients)

    def specialized(self, values: Mapping[str, object]) -> "RingPresentation":
        rels = tuple(
            Relation(
                r.generator,
                r.power,
                tuple((m, Poly.coerce(c).subs(values) if isinstance(c, Poly) else c) for m, c in r.rhs),
            )
            for r in self.relations
        )
        return RingPresentation(
            self.generators, rels, self.truncation_dim, self.coefficients.without(values)
        )

    # -- elements -------------------------------------------------------

    def zero_exps(self) -> tuple[int, ...]:
        return (0,) * len(self.names)

    def element(self, raw: Mapping[tuple[int, ...], object] | None = None) -> "GradedElement":
        return GradedElement(self, raw or {})

    def zero(self) -> "GradedElement":
        return GradedElement._wrap(self, {})

    def one(self) -> "GradedElement":
        return self.scalar(1)

    def scalar(self, c) -> "GradedElement":
        return GradedElement(self, {self.zero_exps(): c})

    def gen(self, name: str) -> "GradedElement":
        i = self.index(name)
        exps = tuple(1 if j == i else 0 for j in range(len(self.names)))
        return GradedElement(self, {exps: 1})

    def gens(self) -> tuple["GradedElement", ...]:
        return tuple(self.gen(n) for n in self.names)

    def monomial(self, **powers: int) -> "GradedElement":
        exps = [0] * len(self.names)
        for name, e in powers.items():
            exps[self.index(name)] = e
        return GradedElement(self, {tuple(exps): 1})

    # -- reduction ------------------------------------------------------

    def _reduce_monomial(self, exps: tuple[int, ...]) -> dict:
        cached = self._cache.get(exps)
        if cached is not None:
            return cached
        for i, (k, rhs) in self._rules.items():
            if exps[i] >= k:
                rest = list(exps)
                rest[i] -= k
                out: dict = {}
                for rexps, c in rhs:
                    m = tuple(a + b for a, b in zip(rest, rexps))
                    for m2, c2 in self._reduce_monomial(m).items():
                        out[m2] = out.get(m2, 0) + c * c2
                out = {m: _norm_coeff(c) for m, c in out.items() if c}
                break
        else:
            out = {exps: Fraction(1)}
        self._cache[exps] = out
        return out

    def reduce(self, raw: Mapping[tuple[int, ...], object]) -> dict:
        """Normal form of a raw sparse polynomial; terms above the truncation are dropped."""
        n = len(self.names)
        allowed = set(self.coefficients.variables)
        out: dict = {}
        for exps, c in raw.items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != n or any(e < 0 for e in exps):
                raise MalformedPresentationError(f"bad exponent vector {exps} for {self.names}")
            if isinstance(c, Poly):
                extra = c.variables() - allowed
                if extra:
                    raise PresentationMismatchError(
                        f"scalar variables {sorted(extra)} not in coefficient ring {self.coefficients}"
                    )
            elif not isinstance(c, (int, Fraction)):
                raise TypeError(f"unsupported coefficient {c!r}")
            if not c or self.degree(exps) > self.truncation_dim:
                continue
            for m, c2 in self._reduce_monomial(exps).items():
                out[m] = out.get(m, 0) + c * c2
        return {m: _norm_coeff(c) for m, c in out.items() if c}


class GradedElement:
    """Immutable element of a RingPresentation, kept in normal form."""

    __slots__ = ("presentation", "_terms")

    def __init__(self, presentation: RingPresentation, raw: Mapping[tuple[int, ...], object]):
        self.presentation = presentation
        self._terms = presentation.reduce(raw)

    @classmethod
    def _wrap(cls, presentation, reduced: dict) -> "GradedElement":
        obj = cls.__new__(cls)
        obj.presentation = presentation
        obj._terms = reduced
        return obj

    @property
    def terms(self) -> dict[tuple[int, ...], object]:
        return dict(self._terms)

    def coefficient(self, exps: tuple[int, ...]):
        return self._terms.get(tuple(exps), Fraction(0))

    def constant_term(self):
        return self.coefficient(self.presentation.zero_exps())

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def degrees(self) -> list[int]:
        return sorted({self.presentation.degree(m) for m in self._terms})

    def scalar_variables(self) -> frozenset[str]:
        out = frozenset()
        for c in self._terms.values():
            out |= _coeff_vars(c)
        return out

    # -- arithmetic -----------------------------------------------------

    def _coerce(self, other) -> "GradedElement":
        if isinstance(other, GradedElement):
            if other.presentation is not self.presentation and other.presentation != self.presentation:
                raise PresentationMismatchError(
                    f"elements live in different rings: {self.presentation!r} vs {other.presentation!r}"
                )
            return other
        if isinstance(other, (int, Fraction, Poly)):
            return self.presentation.scalar(other)
        return NotImplemented

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, Poly)):
            other = self.presentation.scalar(other)
        if not isinstance(other, GradedElement):
            return NotImplemented
        return self.presentation == other.presentation and self._terms == other._terms

    def __hash__(self):
        return hash((self.presentation, frozenset(self._terms.items())))

    def __neg__(self):
        return GradedElement._wrap(self.presentation, {m: -c for m, c in self._terms.items()})

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for m, c in other._terms.items():
            out[m] = out.get(m, 0) + c
        return GradedElement._wrap(
            self.presentation, {m: _norm_coeff(c) for m, c in out.items() if c}
        )

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, Poly)):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return mul(self, other)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, Poly)):
            return self.scale(other)
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, GradedElement):
            return mul(self, invert_unit(other))
        if isinstance(other, (int, Fraction)):
            return self.scale(1 / Fraction(other))
        return NotImplemented

    def __pow__(self, n: int):
        if n < 0:
            return invert_unit(self) ** (-n)
        out = self.presentation.one()
        base = self
        while n:
            if n & 1:
                out = mul(out, base)
            base = mul(base, base)
            n >>= 1
        return out

    def scale(self, c) -> "GradedElement":
        if isinstance(c, Poly):
            extra = c.variables() - set(self.presentation.coefficients.variables)
            if extra:
                raise PresentationMismatchError(f"scalar variables {sorted(extra)} not in ring")
        out = {m: _norm_coeff(v * c) for m, v in self._terms.items()}
        return GradedElement._wrap(self.presentation, {m: v for m, v in out.items() if v})

    # -- structure ------------------------------------------------------

    def component(self, d: int) -> "GradedElement":
        return component(self, d)

    def components(self) -> dict[int, "GradedElement"]:
        return {d: component(self, d) for d in self.degrees()}

    def truncate(self, dim: int) -> "GradedElement":
        """Image in the same presentation truncated at ``dim``."""
        pres = self.presentation.truncated(dim)
        return GradedElement._wrap(
            pres, {m: c for m, c in self._terms.items() if pres.degree(m) <= dim}
        )

    def extend(self, names: Iterable[str]) -> "GradedElement":
        pres = self.presentation.extend(names)
        if pres is self.presentation:
            return self
        return GradedElement._wrap(pres, dict(self._terms))

    def into(self, presentation: RingPresentation) -> "GradedElement":
        """Reinterpret in a presentation with the same generators (and possibly more scalars)."""
        if presentation.names != self.presentation.names:
            raise PresentationMismatchError("cannot move element between different generator sets")
        return GradedElement(presentation, self._terms)

    def specialize(self, values: Mapping[str, object]) -> "GradedElement":
        """Substitute values for scalar variables; the variables leave the coefficient ring."""
        pres = self.presentation.specialized(values)
        raw = {
            m: (c.subs(values) if isinstance(c, Poly) else c) for m, c in self._terms.items()
        }
        return GradedElement(pres, raw)

    # -- output ---------------------------------------------------------

    def monomial_str(self, exps: tuple[int, ...]) -> str:
        parts = []
        for name, e in zip(self.presentation.names, exps):
            if e:
                parts.append(name if e == 1 else f"{name}^{e}")
        return "*".join(parts) or "1"

    def sorted_terms(self) -> list[tuple[tuple[int, ...], object]]:
        return sorted(self._terms.items(), key=lambda mc: mc[0])

    def to_json(self) -> list[dict[str, str]]:
        """Flat ``[{"monomial", "coeff"}]`` list; scalar variables are folded into monomials."""
        rows = []
        for exps, c in self._terms.items():
            gen_part = [(n, e) for n, e in zip(self.presentation.names, exps) if e]
            if isinstance(c, Poly):
                scal = c.terms.items()
            else:
                scal = [((), c)]
            for smono, q in scal:
                key = tuple(exps) + tuple(
                    dict(smono).get(v, 0) for v in self.presentation.coefficients.variables
                )
                mono = "*".join(n if e == 1 else f"{n}^{e}" for n, e in gen_part + list(smono)) or "1"
                rows.append((key, {"monomial": mono, "coeff": format_fraction(q)}))
        rows.sort(key=lambda kr: kr[0])
        return [r for _, r in rows]

    @classmethod
    def from_json(cls, presentation: RingPresentation, rows: Iterable[Mapping[str, str]]) -> "GradedElement":
        raw: dict = {}
        for row in rows:
            exps, smono = _parse_monomial(row["monomial"], presentation)
            coeff = parse_fraction(row["coeff"])
            term = Poly({smono: coeff}) if smono else coeff
            raw[exps] = raw.get(exps, 0) + term
        return cls(presentation, raw)

    def __str__(self):
        if not self._terms:
            return "0"
        items = sorted(
            self._terms.items(), key=lambda mc: (self.presentation.degree(mc[0]), [-e for e in mc[0]])
        )
        parts = []
        for exps, c in items:
            mono = self.monomial_str(exps)
            if isinstance(c, Poly):
                cs = f"({c})"
                parts.append(cs if mono == "1" else f"{cs}*{mono}")
                continue
            mag = abs(c)
            sign = "-" if c < 0 else "+"
            if mono == "1":
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            parts.append(f"{sign}{body}")
        out = ""
        for p in parts:
            if p.startswith("+"):
                out += (" + " if out else "") + p[1:]
            elif p.startswith("-"):
                out += (" - " if out else "-") + p[1:]
            else:
                out += (" + " if out else "") + p
        return out

    def __repr__(self):
        return f"GradedElement({self})"


_FACTOR = re.compile(r"^([A-Za-z_][A-Za-z0-9_]*)(?:\^(\d+))?$")


def _parse_monomial(text: str, presentation: RingPresentation) -> tuple[tuple[int, ...], tuple]:
    exps = [0] * len(presentation.names)
    scalars: dict[str, int] = {}
    text = text.strip()
    if text in ("", "1"):
        return tuple(exps), ()
    for factor in text.split("*"):
        m = _FACTOR.match(factor.strip())
        if not m:
            raise MalformedPresentationError(f"cannot parse monomial factor {factor!r}")
        name, e = m.group(1), int(m.group(2) or 1)
        if name in presentation.names:
            exps[presentation.index(name)] += e
        elif name in presentation.coefficients.variables:
            scalars[name] = scalars.get(name, 0) + e
        else:
            raise MalformedPresentationError(f"unknown symbol {name!r} in monomial {text!r}")
    return tuple(exps), tuple(sorted(scalars.items()))


_TERM = re.compile(r"\s*([+-]?)\s*([^+-]+)")


def parse_element(text: str, presentation: RingPresentation) -> GradedElement:
    """Parse a sum like ``2*h1 - h2 + 1/2`` into an element of ``presentation``."""
    raw: dict = {}
    text = text.replace("−", "-").strip()
    if not text:
        raise MalformedPresentationError("empty class expression")
    pos = 0
    for m in _TERM.finditer(text):
        if m.start() != pos:
            raise MalformedPresentationError(f"cannot parse class {text!r}")
        pos = m.end()
        sign = -1 if m.group(1) == "-" else 1
        body = m.group(2).strip()
        factors = [f.strip() for f in body.split("*")]
        coeff = Fraction(sign)
        mono = []
        for f in factors:
            if re.fullmatch(r"\d+(/\d+)?", f):
                coeff *= Fraction(f)
            else:
                mono.append(f)
        exps, smono = _parse_monomial("*".join(mono), presentation)
        term = Poly({smono: coeff}) if smono else coeff
        raw[exps] = raw.get(exps, 0) + term
    if pos != len(text):
        raise MalformedPresentationError(f"cannot parse class {text!r}")
    return GradedElement(presentation, raw)


# -- module-level operations -------------------------------------------------


def normal_form(raw: Mapping[tuple[int, ...], object] | GradedElement, p: RingPresentation) -> GradedElement:
    if isinstance(raw, GradedElement):
        raw = raw.terms
    return GradedElement(p, raw)


def mul(a: GradedElement, b: GradedElement) -> GradedElement:
    pres = a.presentation
    if b.presentation is not pres and b.presentation != pres:
        raise PresentationMismatchError("cannot multiply elements of different rings")
    trunc = pres.truncation_dim
    b_items = [(m, c, pres.degree(m)) for m, c in b._terms.items()]
    raw: dict = {}
    for m1, c1 in a._terms.items():
        d1 = pres.degree(m1)
        for m2, c2, d2 in b_items:
            if d1 + d2 > trunc:
                continue
            m = tuple(x + y for x, y in zip(m1, m2))
            raw[m] = raw.get(m, 0) + c1 * c2
    return GradedElement(pres, raw)


def invert_unit(a: GradedElement) -> GradedElement:
    """Truncated geometric-series inverse of an element with invertible constant term."""
    pres = a.presentation
    c0 = _norm_coeff(a.constant_term())
    if isinstance(c0, Poly) or c0 == 0:
        raise NotInvertibleError(f"constant term {scalar_str(c0)} is not a unit")
    inv0 = 1 / c0
    u = (a - c0).scale(-inv0)
    total = pres.one()
    term = pres.one()
    for _ in range(pres.truncation_dim):
        term = mul(term, u)
        if term.is_zero():
            break
        total = total + term
    return total.scale(inv0)


def component(a: GradedElement, d: int) -> GradedElement:
    pres = a.presentation
    return GradedElement._wrap(pres, {m: c for m, c in a._terms.items() if pres.degree(m) == d})
