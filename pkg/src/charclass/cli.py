"""Command-line front end.

Each subcommand parses its inputs (presets, inline JSON, or ``@file``),
validates them, calls one engine operation and prints a report.  Exit
codes: 0 success, 2 malformed input, 3 engine error.
"""
from __future__ import annotations

import argparse
import json
import re
import sys
from fractions import Fraction
from typing import Any, Sequence

from . import classes, csm, groups, hirzebruch, spaces, stacks
from .errors import EngineError
from .ring import GradedElement, Poly, format_fraction, parse_element
from .scene import (
    SceneError,
    load_abelian,
    load_arrangement,
    load_group,
    load_map,
    load_model,
    load_space,
    load_stack_function,
    load_stratum_function,
)

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_ENGINE = 3


# -- input helpers ----------------------------------------------------------------


def _load(value: str | None) -> Any:
    """Inline JSON, ``@path`` to a JSON file, or a bare preset string."""
    if value is None:
        return None
    if value.startswith("@"):
        try:
            with open(value[1:], encoding="utf-8") as fh:
                return json.load(fh)
        except OSError as exc:
            raise SceneError(f"cannot read {value[1:]}: {exc.strerror}") from None
        except json.JSONDecodeError as exc:
            raise SceneError(f"{value[1:]}: invalid JSON ({exc.msg} at line {exc.lineno})") from None
    text = value.strip()
    if text[:1] in "[{\"":
        try:
            return json.loads(text)
        except json.JSONDecodeError as exc:
            raise SceneError(f"invalid JSON ({exc.msg} at column {exc.colno})") from None
    return text


def _divisors(value: str | None) -> list:
    desc = _load(value)
    if desc is None:
        return []
    if isinstance(desc, str):
        return [d.strip() for d in desc.split(",") if d.strip()]
    return desc


def _at(value: str) -> list[Fraction]:
    try:
        return [Fraction(v.strip().replace("−", "-")) for v in value.split(",") if v.strip()]
    except ValueError:
        raise SceneError(f"--at expects comma-separated rationals, got {value!r}") from None


def _space_arg(args, default: str | None = None):
    desc = _load(args.space) if args.space is not None else default
    if desc is None:
        raise SceneError("--space is required")
    return desc


# -- formatting -------------------------------------------------------------------


def _q(x) -> str:
    if isinstance(x, Poly):
        return str(x)
    return format_fraction(x)


def _class_rows(a: GradedElement) -> list[dict[str, str]]:
    return a.to_json()


def _poly_rows(p) -> list[dict[str, str]]:
    p = Poly.coerce(p)
    rows = []
    for mono, c in p.sorted_terms():
        name = "*".join(v if e == 1 else f"{v}^{e}" for v, e in mono) or "1"
        rows.append({"monomial": name, "coeff": format_fraction(c)})
    return rows


def _plain(v) -> str:
    """Integers print without the ``/1`` denominator in text mode."""
    v = str(v)
    return v[:-2] if re.fullmatch(r"-?\d+/1", v) else v


def _render_text(report: dict) -> str:
    lines = []
    for key, value in report.items():
        if isinstance(value, list) and value and isinstance(value[0], dict):
            lines.append(f"{key}:")
            cols = list(value[0].keys())
            cells = [[_plain(r.get(c, "")) for c in cols] for r in value]
            widths = [max(len(c), *(len(row[i]) for row in cells)) for i, c in enumerate(cols)]
            lines.append("  " + "  ".join(c.ljust(w) for c, w in zip(cols, widths)).rstrip())
            for row in cells:
                lines.append("  " + "  ".join(x.ljust(w) for x, w in zip(row, widths)).rstrip())
        elif isinstance(value, list):
            lines.append(f"{key}: " + ", ".join(_plain(v) for v in value))
        else:
            lines.append(f"{key}: {_plain(value)}")
    return "\n".join(lines)


# -- commands ---------------------------------------------------------------------


def cmd_csm(args) -> dict:
    space = _space_arg(args)
    divs = _divisors(args.divisors)
    if not divs:
        if args.function is not None:
            raise SceneError("--function needs --divisors")
        X = load_space(space)
        c = csm.csm_smooth(X)
    else:
        arr = load_arrangement(space, divs)
        X = arr.ambient
        if args.function is None:
            c = csm.csm_complement(arr)
        else:
            c = csm.csm_of_function(arr, load_stratum_function(_load(args.function), arr))
    return {"command": "csm", "space": X.label, "class": _class_rows(c.value), "degree": _q(csm.euler_degree(c))}


def _series_class(args, name: str) -> dict:
    X = load_space(_space_arg(args))
    s = classes.named_series(name, max(X.ring.truncation_dim, 1))
    value = classes.apply_series(s, X.tangent)
    return {"command": args.command, "space": X.label, "class": _class_rows(value), "degree": _q(spaces.integrate(X, value))}


def cmd_todd(args) -> dict:
    return _series_class(args, "todd")


def cmd_l_class(args) -> dict:
    return _series_class(args, "L")


def _ty_value(args):
    divs = _divisors(args.divisors)
    if divs:
        arr = load_arrangement(_space_arg(args), divs)
        return arr.ambient, hirzebruch.Ty_of_class(hirzebruch.scissor_decompose(arr))
    X = load_space(_space_arg(args))
    return X, hirzebruch.Ty_smooth(X)


def cmd_chi_y(args) -> dict:
    X, value = _ty_value(args)
    chi = Poly.coerce(spaces.integrate(X, value))
    at = _at(args.at)
    return {
        "command": "chi-y",
        "space": X.label,
        "chi_y": str(chi),
        "coefficients": _poly_rows(chi),
        "values": [{"y": _q(y0), "value": _q(chi.subs({"y": y0}).constant_term())} for y0 in at],
    }


def cmd_hirzebruch(args) -> dict:
    X, value = _ty_value(args)
    report = {"command": "hirzebruch", "space": X.label, "class": _class_rows(value)}
    rows = []
    for y0 in _at(args.at):
        sv = hirzebruch.specialize(value, y0)
        rows.append({"y": _q(y0), "class": str(sv), "degree": _q(spaces.integrate(X, sv))})
    report["specializations"] = rows
    return report


def cmd_series(args) -> dict:
    if args.order < 0:
        raise SceneError("--order must be nonnegative")
    s = classes.named_series(args.name, args.order)
    return {
        "command": "series",
        "series": s.name,
        "order": str(s.order),
        "coefficients": [{"k": str(k), "coeff": _q(s[k])} for k in range(s.order + 1)],
    }


def _require(args, name: str):
    value = getattr(args, name)
    if value is None:
        raise SceneError(f"--{name} is required")
    return value


def cmd_hom_count(args) -> dict:
    G = load_group(_load(_require(args, "group")))
    A = load_abelian(_load(args.A))
    return {
        "command": "hom-count",
        "group": G.name or str(G.order),
        "order": str(G.order),
        "A": str(A),
        "hom_count": str(groups.hom_count(A, G)),
        "conjugacy_classes": str(groups.conjugacy_class_count(G)),
        "measured_value": _q(groups.measured_value(A, G)),
    }


def _model_arg(args) -> stacks.StratifiedStackModel:
    desc = _load(args.model) if args.model is not None else "point"
    if desc == "point":
        if args.group is not None:
            return stacks.classifying_model(load_group(_load(args.group)))
        return stacks.point_model()
    if args.group is not None:
        raise SceneError("--group is only used with --model point")
    return load_model(desc)


def _function_table(M, inv, und) -> list[dict[str, str]]:
    return [
        {"stratum": s.label, "invariant": _q(a), "underline": _q(b)}
        for s, a, b in zip(M.strata, inv.values, und.values)
    ]


def cmd_orbifold_euler(args) -> dict:
    M = _model_arg(args)
    A = load_abelian(_load(args.A))
    one_A = stacks.canonical_function(A, M)
    return {
        "command": "orbifold-euler",
        "model": M.label or "model",
        "A": str(A),
        "canonical_function": _function_table(M, one_A, one_A.underline()),
        "orbifold_euler": _q(stacks.orbifold_euler(M, A)),
    }


def cmd_degree(args) -> dict:
    if args.bundle is not None:
        return _enumerative(args)
    M = _model_arg(args)
    A = load_abelian(_load(args.A))
    alpha = load_stack_function(_load(args.function), M) if args.function is not None else M.one()
    direct = stacks.integral(stacks.T_A(alpha, A))
    report = {"command": "degree", "model": M.label or "model", "A": str(A)}
    if M.ambient is not None:
        via = stacks.degree_CA(M, alpha, A)
        report["degree_csm"] = _q(via)
    report["degree_integral"] = _q(direct)
    if M.group_order:
        report["degree_underline"] = _q(direct / M.group_order)
    if M.ambient is not None:
        report["paths_agree"] = "yes" if via == direct else "no"
    return report


def _enumerative(args) -> dict:
    space = _space_arg(args)
    divs = _divisors(args.divisors)
    if divs:
        arr = load_arrangement(space, divs)
        X = arr.ambient
        fn = load_stratum_function(_load(args.function), arr) if args.function is not None else None
        c = csm.csm_of_function(arr, fn) if fn is not None else csm.csm_complement(arr)
    else:
        X = load_space(space)
        c = csm.csm_smooth(X)
    E = classes.trivial_bundle(X.ring, 0)
    for d in _divisors(args.bundle):
        E = E + classes.line_bundle(parse_element(d if isinstance(d, str) else d["class"], X.ring))
    return {
        "command": "degree",
        "space": X.label,
        "bundle_chern": str(E.total_chern),
        "degree": _q(csm.enumerative_degree(X, E, c)),
    }


def cmd_pushforward(args) -> dict:
    f = load_map(_load(_require(args, "map")))
    A = load_abelian(_load(args.A))
    alpha = load_stack_function(_load(args.function), f.source) if args.function is not None else f.source.one()
    out = stacks.modified_pushforward(f, alpha, A)
    return {
        "command": "pushforward",
        "A": str(A),
        "source": _function_table(f.source, alpha.invariant(), alpha.underline()),
        "target": _function_table(f.target, out, out.underline()),
    }


def cmd_borel(args) -> dict:
    if args.level < 1:
        raise SceneError("--level must be at least 1")
    X = load_space(_space_arg(args, "pt"))
    rows = []
    previous = None
    for level in range(1, args.level + 1):
        value = spaces.borel_approximation(X, level)
        stable = "-" if previous is None else ("yes" if spaces.borel_agree(previous, value) else "no")
        rows.append({"level": str(level), "class": str(value), "stable": stable})
        previous = value
    return {"command": "borel", "space": X.label, "levels": rows}


COMMANDS = {
    "csm": cmd_csm,
    "todd": cmd_todd,
    "l-class": cmd_l_class,
    "chi-y": cmd_chi_y,
    "hirzebruch": cmd_hirzebruch,
    "series": cmd_series,
    "hom-count": cmd_hom_count,
    "orbifold-euler": cmd_orbifold_euler,
    "degree": cmd_degree,
    "pushforward": cmd_pushforward,
    "borel": cmd_borel,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="charclass", description="Exact characteristic classes, constructible functions and orbifold counts."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, help_: str, *flags: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_)
        p.add_argument("--json", action="store_true", help="emit JSON instead of text")
        for flag in flags:
            FLAG_SPECS[flag](p)
        return p

    add("csm", "CSM class of a space, complement, or stratum function", "space", "divisors", "function")
    add("todd", "Todd class and arithmetic genus", "space")
    add("l-class", "L class and its degree", "space")
    add("chi-y", "chi_y genus of a space or arrangement complement", "space", "divisors", "at")
    add("hirzebruch", "T_y class with specializations", "space", "divisors", "at")
    p = add("series", "coefficients of a named characteristic series", "order")
    p.add_argument("name", help="chern, todd, L or tdy")
    add("hom-count", "|Hom(A, G)| and related counts", "group", "A")
    add("orbifold-euler", "measured function and orbifold Euler number", "model", "group", "A")
    add("degree", "degree of C^A_* on a stack model, or an enumerative degree", "model", "group", "A",
        "function", "space", "divisors", "bundle")
    add("pushforward", "modified pushforward along a stratified map", "map", "function", "A")
    add("borel", "finite-level Borel approximations", "space", "level")
    return parser


FLAG_SPECS = {
    "space": lambda p: p.add_argument("--space", help="preset (P2, P1xP1, pt), JSON, or @file"),
    "divisors": lambda p: p.add_argument("--divisors", help='comma list "h,h" or JSON [{"class": "h"}]'),
    "function": lambda p: p.add_argument("--function", help="stratum function JSON or @file"),
    "group": lambda p: p.add_argument("--group", help="preset (S3, Q8, Z/4, D4, ...) or JSON"),
    "A": lambda p: p.add_argument("--A", default="Z^2", help="abelian group, e.g. 0, Z, Z^2, Z/2 (default Z^2)"),
    "model": lambda p: p.add_argument("--model", help="'point' or stack model JSON / @file"),
    "map": lambda p: p.add_argument("--map", help="stratified map JSON / @file"),
    "order": lambda p: p.add_argument("--order", type=int, default=classes.DEFAULT_ORDER, help="series order"),
    "at": lambda p: p.add_argument("--at", default="-1,0,1", help="y values, comma separated"),
    "level": lambda p: p.add_argument("--level", type=int, default=3, help="highest approximation level"),
    "bundle": lambda p: p.add_argument("--bundle", help="line bundle classes for c(E), e.g. h or 2*h"),
}


def _join_at(argv: Sequence[str]) -> list[str]:
    """Glue ``--at -1,0,1`` into ``--at=-1,0,1`` so argparse does not read it as an option."""
    out: list[str] = []
    it = iter(argv)
    for a in it:
        if a == "--at":
            nxt = next(it, None)
            out.append(a if nxt is None else f"--at={nxt}")
        else:
            out.append(a)
    return out


def run(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    args = build_parser().parse_args(_join_at(sys.argv[1:] if argv is None else argv))
    try:
        report = COMMANDS[args.command](args)
    except SceneError as exc:
        print(f"error: {exc}", file=err)
        return EXIT_INPUT
    except EngineError as exc:
        print(f"error: {exc}", file=err)
        return EXIT_ENGINE
    if args.json:
        print(json.dumps(report, indent=2, ensure_ascii=False), file=out)
    else:
        print(_render_text(report), file=out)
    return EXIT_OK


def main(argv: Sequence[str] | None = None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
