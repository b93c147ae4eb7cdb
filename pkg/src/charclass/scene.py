"""JSON scene descriptions: schemas and builders for engine objects.

Every builder validates its input against a JSON schema (unknown fields are
rejected) before constructing anything.  Exact rationals are accepted as
integers or ``"p/q"`` strings.
"""
from __future__ import annotations

import re
from fractions import Fraction
from typing import Any, Mapping

import jsonschema

from .csm import Arrangement
from .groups import AbelianGroupSpec, FiniteGroup, group_from_json
from .ring import GradedElement, parse_element
from .spaces import Space, space_from_json, space_from_preset
from .stacks import (
    INVARIANT,
    UNDERLINE,
    AmbientLink,
    ConstructibleFunction,
    StratifiedMap,
    StratifiedStackModel,
    Stratum,
    classifying_model,
    point_model,
)

__all__ = [
    "SceneError",
    "SCHEMAS",
    "validate",
    "load_space",
    "load_divisors",
    "load_arrangement",
    "load_stratum_function",
    "load_group",
    "load_abelian",
    "load_model",
    "load_map",
    "load_stack_function",
    "parse_stratum_key",
]


class SceneError(ValueError):
    """Scene description does not match its schema."""


RATIONAL = {
    "oneOf": [
        {"type": "integer"},
        {"type": "string", "pattern": r"^\s*[-−]?\d+(\s*/\s*\d+)?\s*$"},
    ]
}

SPACE = {
    "oneOf": [
        {"type": "string"},
        {
            "type": "object",
            "properties": {
                "type": {"enum": ["projective", "point", "product", "hypersurface", "equivariant_projective"]},
                "n": {"type": "integer", "minimum": 0},
                "d": {"type": "integer", "minimum": 1},
                "factors": {"type": "array", "items": {"$ref": "#/$defs/space"}},
                "weights": {"type": "array", "items": {"type": "integer"}, "minItems": 1},
                "truncation": {"type": "integer", "minimum": 0},
            },
            "required": ["type"],
            "additionalProperties": False,
            "allOf": [
                {"if": {"properties": {"type": {"const": "projective"}}}, "then": {"required": ["n"]}},
                {"if": {"properties": {"type": {"const": "hypersurface"}}}, "then": {"required": ["n", "d"]}},
                {"if": {"properties": {"type": {"const": "product"}}}, "then": {"required": ["factors"]}},
                {
                    "if": {"properties": {"type": {"const": "equivariant_projective"}}},
                    "then": {"required": ["weights"]},
                },
            ],
        },
    ]
}

DIVISORS = {
    "type": "array",
    "items": {
        "oneOf": [
            {"type": "string"},
            {
                "type": "object",
                "properties": {"class": {"type": "string"}},
                "required": ["class"],
                "additionalProperties": False,
            },
        ]
    },
}

STRATUM_FUNCTION = {
    "type": "object",
    "propertyNames": {"pattern": r"^\{\s*(\d+\s*(,\s*\d+\s*)*)?\}$"},
    "additionalProperties": {"$ref": "#/$defs/rational"},
}

GROUP = {
    "oneOf": [
        {"type": "string"},
        {
            "type": "object",
            "properties": {"preset": {"type": "string"}},
            "required": ["preset"],
            "additionalProperties": False,
        },
        {
            "type": "object",
            "properties": {
                "permutations": {
                    "type": "array",
                    "items": {"type": "array", "items": {"type": "integer", "minimum": 1}},
                }
            },
            "required": ["permutations"],
            "additionalProperties": False,
        },
        {
            "type": "object",
            "properties": {
                "table": {
                    "type": "array",
                    "items": {"type": "array", "items": {"type": "integer", "minimum": 0}},
                    "minItems": 1,
                }
            },
            "required": ["table"],
            "additionalProperties": False,
        },
    ]
}

ABELIAN = {
    "oneOf": [
        {"type": "string"},
        {
            "type": "object",
            "properties": {
                "free_rank": {"type": "integer", "minimum": 0},
                "torsion": {"type": "array", "items": {"type": "integer", "minimum": 2}},
            },
            "additionalProperties": False,
        },
    ]
}

MODEL = {
    "oneOf": [
        {"enum": ["point"]},
        {
            "type": "object",
            "properties": {"classifying": {"$ref": "#/$defs/group"}},
            "required": ["classifying"],
            "additionalProperties": False,
        },
        {
            "type": "object",
            "properties": {
                "label": {"type": "string"},
                "strata": {
                    "type": "array",
                    "minItems": 1,
                    "items": {
                        "type": "object",
                        "properties": {
                            "label": {"type": "string"},
                            "chi": {"type": "integer"},
                            "stabilizer": {"$ref": "#/$defs/group"},
                        },
                        "required": ["label", "chi"],
                        "additionalProperties": False,
                    },
                },
                "group_order": {"type": "integer", "minimum": 0},
                "ambient": {
                    "type": "object",
                    "properties": {
                        "space": {"$ref": "#/$defs/space"},
                        "divisors": {"$ref": "#/$defs/divisors"},
                        "strata": {
                            "type": "object",
                            "additionalProperties": {
                                "type": "array",
                                "items": {"type": "string", "pattern": r"^\{\s*(\d+\s*(,\s*\d+\s*)*)?\}$"},
                            },
                        },
                    },
                    "required": ["space", "divisors", "strata"],
                    "additionalProperties": False,
                },
            },
            "required": ["strata"],
            "additionalProperties": False,
        },
    ]
}

MAP = {
    "type": "object",
    "properties": {
        "label": {"type": "string"},
        "source": {"$ref": "#/$defs/model"},
        "target": {"$ref": "#/$defs/model"},
        "fibers": {"type": "array", "items": {"type": "array", "items": {"$ref": "#/$defs/rational"}}},
    },
    "required": ["source", "target"],
    "additionalProperties": False,
}

STACK_FUNCTION = {
    "oneOf": [
        {"type": "array", "items": {"$ref": "#/$defs/rational"}},
        {
            "type": "object",
            "properties": {
                "level": {"enum": [INVARIANT, UNDERLINE]},
                "values": {
                    "oneOf": [
                        {"type": "array", "items": {"$ref": "#/$defs/rational"}},
                        {"type": "object", "additionalProperties": {"$ref": "#/$defs/rational"}},
                    ]
                },
            },
            "required": ["values"],
            "additionalProperties": False,
        },
    ]
}

_DEFS = {
    "rational": RATIONAL,
    "space": SPACE,
    "divisors": DIVISORS,
    "group": GROUP,
    "model": MODEL,
}

SCHEMAS: dict[str, dict] = {
    "space": SPACE,
    "divisors": DIVISORS,
    "function": STRATUM_FUNCTION,
    "group": GROUP,
    "A": ABELIAN,
    "model": MODEL,
    "map": MAP,
    "stack_function": STACK_FUNCTION,
}


def validate(kind: str, desc: Any) -> None:
    schema = dict(SCHEMAS[kind])
    schema["$defs"] = _DEFS
    try:
        jsonschema.validate(desc, schema)
    except jsonschema.ValidationError as exc:
        where = "/".join(str(p) for p in exc.absolute_path) or "<root>"
        raise SceneError(f"{kind} at {where}: {exc.message}") from None


def _rational(x) -> Fraction:
    if isinstance(x, str):
        return Fraction(x.replace("−", "-").replace(" ", ""))
    return Fraction(x)


def parse_stratum_key(key: str) -> frozenset[int]:
    """``"{1,3}"`` (1-based) -> ``frozenset({0, 2})``."""
    inner = key.strip()[1:-1]
    return frozenset(int(i) - 1 for i in re.findall(r"\d+", inner))


def load_space(desc) -> Space:
    validate("space", desc)
    if isinstance(desc, str):
        return space_from_preset(desc)
    return space_from_json(desc)


def load_divisors(desc, X: Space) -> list[GradedElement]:
    validate("divisors", desc)
    return [parse_element(d if isinstance(d, str) else d["class"], X.ring) for d in desc]


def load_arrangement(space_desc, divisor_desc) -> Arrangement:
    X = load_space(space_desc)
    return Arrangement.of(X, load_divisors(divisor_desc, X))


def load_stratum_function(desc, arr: Arrangement) -> dict[frozenset, Fraction]:
    validate("function", desc)
    out: dict[frozenset, Fraction] = {}
    for key, v in desc.items():
        I = parse_stratum_key(key)
        if any(i < 0 or i >= arr.r for i in I):
            raise SceneError(f"function at {key}: stratum index out of range 1..{arr.r}")
        out[I] = out.get(I, Fraction(0)) + _rational(v)
    return out


def load_group(desc) -> FiniteGroup:
    validate("group", desc)
    return group_from_json(desc)


def load_abelian(desc) -> AbelianGroupSpec:
    validate("A", desc)
    try:
        return AbelianGroupSpec.from_json(desc)
    except ValueError as exc:
        raise SceneError(f"A: {exc}") from None


def load_model(desc) -> StratifiedStackModel:
    validate("model", desc)
    return _build_model(desc)


def _build_model(desc) -> StratifiedStackModel:
    if desc == "point":
        return point_model()
    if "classifying" in desc:
        return classifying_model(group_from_json(desc["classifying"]))
    strata = [
        Stratum(s["label"], int(s["chi"]), group_from_json(s.get("stabilizer", "1")))
        for s in desc["strata"]
    ]
    link = None
    if "ambient" in desc:
        amb = desc["ambient"]
        arr = load_arrangement(amb["space"], amb["divisors"])
        link = AmbientLink(
            arr, {label: tuple(parse_stratum_key(k) for k in keys) for label, keys in amb["strata"].items()}
        )
    return StratifiedStackModel(strata, desc.get("group_order", 0), link, desc.get("label", ""))


def load_map(desc) -> StratifiedMap:
    validate("map", desc)
    source = _build_model(desc["source"])
    target = _build_model(desc["target"])
    if "fibers" in desc:
        fibers = [[_rational(x) for x in row] for row in desc["fibers"]]
    elif len(target.strata) == 1:
        if target.presentation_chi(0) == 0:
            raise SceneError("map: target stratum has Euler characteristic 0; give 'fibers' explicitly")
        fibers = [[source.presentation_chi(j) / target.presentation_chi(0)] for j in range(len(source.strata))]
    else:
        raise SceneError("map: 'fibers' is required unless the target has a single stratum")
    return StratifiedMap(source, target, fibers, desc.get("label", ""))


def load_stack_function(desc, M: StratifiedStackModel) -> ConstructibleFunction:
    validate("stack_function", desc)
    level = INVARIANT
    values = desc
    if isinstance(desc, Mapping):
        level = desc.get("level", INVARIANT)
        values = desc["values"]
    if isinstance(values, Mapping):
        unknown = set(values) - {s.label for s in M.strata}
        if unknown:
            raise SceneError(f"stack_function: unknown strata {sorted(unknown)}")
        values = {k: _rational(v) for k, v in values.items()}
    else:
        if len(values) != len(M.strata):
            raise SceneError(f"stack_function: expected {len(M.strata)} values, got {len(values)}")
        values = [_rational(v) for v in values]
    return M.function(values, level)
