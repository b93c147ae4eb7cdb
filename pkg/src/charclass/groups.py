"""Finite groups by multiplication table, and counting |Hom(A, G)|.

For a finitely generated abelian group A = Z^m + Z/r_1 + ... + Z/r_k a
homomorphism A -> G is a tuple of pairwise commuting elements
(g_1..g_m, h_1..h_k) with h_i^{r_i} = e.  The count drives the measured
constructible functions on stacks with finite stabilizers.
"""
from __future__ import annotations

import os
import re
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import GroupError, GroupOrderExceeded

__all__ = [
    "DEFAULT_MAX_ORDER",
    "max_group_order",
    "FiniteGroup",
    "AbelianGroupSpec",
    "group_from_table",
    "group_from_permutations",
    "trivial_group",
    "cyclic_group",
    "symmetric_group",
    "alternating_group",
    "dihedral_group",
    "quaternion_group",
    "direct_product",
    "group_from_preset",
    "group_from_json",
    "hom_count",
    "conjugacy_class_count",
    "measured_value",
]

DEFAULT_MAX_ORDER = 5040


def max_group_order() -> int:
    env = os.environ.get("CSM_MAX_GROUP_ORDER")
    return int(env) if env else DEFAULT_MAX_ORDER


class FiniteGroup:
    """Group on elements 0..n-1 with 0 the identity.

    Validated on construction; immutable afterwards.
    """

    def __init__(self, table: Sequence[Sequence[int]], name: str = "", permutations=None, check: bool = True):
        self.table = tuple(tuple(int(x) for x in row) for row in table)
        self.name = name
        self.permutations = tuple(permutations) if permutations is not None else None
        n = len(self.table)
        if check:
            _validate_table(self.table)
        self.order = n
        self.inverse = tuple(row.index(0) for row in self.table)
        self.element_orders = tuple(self._order_of(g) for g in range(n))
        # centralizers as bitmasks
        self.centralizers = tuple(
            sum(1 << h for h in range(n) if self.table[g][h] == self.table[h][g]) for g in range(n)
        )

    def _order_of(self, g: int) -> int:
        k, x = 1, g
        while x != 0:
            x = self.table[x][g]
            k += 1
        return k

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def conjugate(self, g: int, x: int) -> int:
        return self.table[self.table[x][g]][self.inverse[x]]

    def __len__(self):
        return self.order

    def __repr__(self):
        return f"FiniteGroup({self.name or '?'}, order={self.order})"

    def is_abelian(self) -> bool:
        full = (1 << self.order) - 1
        return all(c == full for c in self.centralizers)


def _validate_table(table) -> None:
    n = len(table)
    if n == 0:
        raise GroupError("empty multiplication table")
    if n > max_group_order():
        raise GroupOrderExceeded(f"group order {n} exceeds cap {max_group_order()}")
    full = set(range(n))
    for row in table:
        if len(row) != n or set(row) != full:
            raise GroupError("multiplication table is not a Latin square")
    for j in range(n):
        if {table[i][j] for i in range(n)} != full:
            raise GroupError("multiplication table is not a Latin square")
    if any(table[0][g] != g or table[g][0] != g for g in range(n)):
        raise GroupError("element 0 is not the identity")
    # Light's test: the elements b with (xb)y = x(by) for all x, y form a
    # subloop, so checking a generating set suffices.
    for b in _loop_generators(table):
        rb = table[b]
        for x in range(n):
            xb = table[x][b]
            rxb, rx = table[xb], table[x]
            for y in range(n):
                if rxb[y] != rx[rb[y]]:
                    raise GroupError(f"table is not associative at ({x},{b},{y})")


def _loop_generators(table) -> list[int]:
    """Greedy generating set: add the first element not yet reached, then close up."""
    n = len(table)
    reached = [False] * n
    reached[0] = True
    members = [0]
    gens: list[int] = []
    for g in range(n):
        if reached[g]:
            continue
        gens.append(g)
        reached[g] = True
        members.append(g)
        queue = [g]
        while queue:
            c = queue.pop()
            for r in list(members):
                for d in (table[r][c], table[c][r]):
                    if not reached[d]:
                        reached[d] = True
                        members.append(d)
                        queue.append(d)
    return gens


def group_from_table(table: Sequence[Sequence[int]], name: str = "") -> FiniteGroup:
    return FiniteGroup(table, name)


def _compose(p: tuple, q: tuple) -> tuple:
    # apply p then q
    return tuple(q[i] for i in p)


def group_from_permutations(gens: Iterable[Sequence[int]], name: str = "", max_order: int | None = None) -> FiniteGroup:
    """Group generated by permutations in 0-based one-line notation.

    Elements are listed by breadth-first search from the identity, right
    multiplying by the generators in order.
    """
    gens = [tuple(int(x) for x in g) for g in gens]
    cap = max_group_order() if max_order is None else max_order
    degree = max((len(g) for g in gens), default=1)
    for g in gens:
        if sorted(g) != list(range(len(g))):
            raise GroupError(f"{list(g)} is not a permutation of 0..{len(g) - 1}")
    gens = [g + tuple(range(len(g), degree)) for g in gens]
    identity = tuple(range(degree))
    index = {identity: 0}
    elements = [identity]
    queue = deque([identity])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = _compose(x, g)
            if y not in index:
                if len(elements) >= cap:
                    raise GroupOrderExceeded(f"generated group exceeds order cap {cap}")
                index[y] = len(elements)
                elements.append(y)
                queue.append(y)
    table = [[index[_compose(a, b)] for b in elements] for a in elements]
    return FiniteGroup(table, name, permutations=elements, check=False)


def trivial_group() -> FiniteGroup:
    return FiniteGroup([[0]], "1", permutations=[(0,)], check=False)


def cyclic_group(n: int) -> FiniteGroup:
    if n < 1:
        raise GroupError("cyclic group order must be positive")
    if n > max_group_order():
        raise GroupOrderExceeded(f"group order {n} exceeds cap {max_group_order()}")
    return FiniteGroup([[(a + b) % n for b in range(n)] for a in range(n)], f"Z/{n}", check=False)


def symmetric_group(n: int) -> FiniteGroup:
    if n <= 1:
        return trivial_group()
    gens = [tuple([1, 0] + list(range(2, n))), tuple(list(range(1, n)) + [0])]
    return group_from_permutations(gens, f"S{n}")


def alternating_group(n: int) -> FiniteGroup:
    if n <= 2:
        return trivial_group()
    gens = [tuple([1, 2, 0] + list(range(3, n)))]
    for k in range(3, n):
        # 3-cycles (0 1 k)
        p = list(range(n))
        p[0], p[1], p[k] = 1, k, 0
        gens.append(tuple(p))
    return group_from_permutations(gens, f"A{n}")


def dihedral_group(n: int) -> FiniteGroup:
    """Symmetries of the regular n-gon, order 2n."""
    if n < 1:
        raise GroupError("dihedral group needs n >= 1")
    if n == 1:
        return cyclic_group(2)
    if n == 2:
        return direct_product(cyclic_group(2), cyclic_group(2), "D2")
    rot = tuple((i + 1) % n for i in range(n))
    ref = tuple((-i) % n for i in range(n))
    return group_from_permutations([rot, ref], f"D{n}")


def quaternion_group() -> FiniteGroup:
    # units ±1, ±i, ±j, ±k encoded as (sign, unit) with unit in 1,i,j,k
    units = "1ijk"
    prod = {
        ("1", "1"): (1, "1"), ("1", "i"): (1, "i"), ("1", "j"): (1, "j"), ("1", "k"): (1, "k"),
        ("i", "1"): (1, "i"), ("i", "i"): (-1, "1"), ("i", "j"): (1, "k"), ("i", "k"): (-1, "j"),
        ("j", "1"): (1, "j"), ("j", "i"): (-1, "k"), ("j", "j"): (-1, "1"), ("j", "k"): (1, "i"),
        ("k", "1"): (1, "k"), ("k", "i"): (1, "j"), ("k", "j"): (-1, "i"), ("k", "k"): (-1, "1"),
    }
    elems = [(s, u) for u in units for s in (1, -1)]
    idx = {e: i for i, e in enumerate(elems)}

    def m(a, b):
        s, u = prod[(a[1], b[1])]
        return idx[(a[0] * b[0] * s, u)]

    return group_from_table([[m(a, b) for b in elems] for a in elems], "Q8")


def direct_product(G: FiniteGroup, H: FiniteGroup, name: str = "") -> FiniteGroup:
    n, k = G.order, H.order
    if n * k > max_group_order():
        raise GroupOrderExceeded(f"group order {n * k} exceeds cap {max_group_order()}")
    table = [
        [G.table[a // k][b // k] * k + H.table[a % k][b % k] for b in range(n * k)]
        for a in range(n * k)
    ]
    return FiniteGroup(table, name or f"{G.name}x{H.name}", check=False)


_PRESET = re.compile(r"^(?:Z/|C|Z)(\d+)$|^S(\d+)$|^A(\d+)$|^D(\d+)$")


def group_from_preset(name: str) -> FiniteGroup:
    """Named groups: trivial/1, Z/n (or Cn), Sn, An, Dn (order 2n), Q8, and GxH products."""
    key = name.strip()
    if "x" in key and key not in ("",):
        parts = key.split("x")
        out = group_from_preset(parts[0])
        for p in parts[1:]:
            out = direct_product(out, group_from_preset(p))
        return out
    if key in ("1", "trivial", "e", "{e}"):
        return trivial_group()
    if key.upper() == "Q8":
        return quaternion_group()
    m = _PRESET.match(key)
    if not m:
        raise GroupError(f"unknown group preset {name!r}")
    cyc, sym, alt, dih = m.groups()
    if cyc:
        return cyclic_group(int(cyc))
    if sym:
        return symmetric_group(int(sym))
    if alt:
        return alternating_group(int(alt))
    return dihedral_group(int(dih))


def group_from_json(desc) -> FiniteGroup:
    """``"S3"``, ``{"preset": "S3"}``, ``{"permutations": [[2,1,3],...]}`` (1-based) or ``{"table": ...}``."""
    if isinstance(desc, str):
        return group_from_preset(desc)
    if "preset" in desc:
        return group_from_preset(desc["preset"])
    if "permutations" in desc:
        perms = desc["permutations"]
        for p in perms:
            if sorted(p) != list(range(1, len(p) + 1)):
                raise GroupError(f"{p} is not a permutation of 1..{len(p)}")
        return group_from_permutations([[x - 1 for x in p] for p in perms])
    if "table" in desc:
        return group_from_table(desc["table"])
    raise GroupError("group description needs 'preset', 'permutations' or 'table'")


@dataclass(frozen=True)
class AbelianGroupSpec:
    """Z^free_rank plus cyclic factors Z/r."""

    free_rank: int = 0
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        if self.free_rank < 0:
            raise ValueError("free rank must be nonnegative")
        tors = tuple(sorted(int(r) for r in self.torsion))
        if any(r < 2 for r in tors):
            raise ValueError("torsion orders must be >= 2")
        object.__setattr__(self, "torsion", tors)

    @classmethod
    def parse(cls, text: str) -> "AbelianGroupSpec":
        """``0``, ``Z``, ``Z^2``, ``Z/2``, ``Z^2+Z/3`` and the like."""
        text = text.replace(" ", "").replace("⊕", "+")
        if text in ("0", "{0}", ""):
            return cls()
        m, tors = 0, []
        for part in text.split("+"):
            if part == "Z":
                m += 1
            elif re.fullmatch(r"Z\^\d+", part):
                m += int(part[2:])
            elif re.fullmatch(r"Z/\d+", part):
                tors.append(int(part[2:]))
            else:
                raise ValueError(f"cannot parse abelian group {text!r}")
        return cls(m, tuple(tors))

    @classmethod
    def from_json(cls, desc) -> "AbelianGroupSpec":
        if isinstance(desc, str):
            return cls.parse(desc)
        return cls(int(desc.get("free_rank", 0)), tuple(desc.get("torsion", ())))

    def __str__(self):
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        parts += [f"Z/{r}" for r in self.torsion]
        return "+".join(parts) or "0"


def hom_count(A: AbelianGroupSpec, G: FiniteGroup) -> int:
    """|Hom(A, G)| by backtracking over commuting tuples, pruned by centralizers."""
    slots: list[int | None] = [None] * A.free_rank + list(A.torsion)
    orders = G.element_orders
    cents = G.centralizers
    allowed = []
    for r in slots:
        if r is None:
            allowed.append((1 << G.order) - 1)
        else:
            allowed.append(sum(1 << g for g in range(G.order) if r % orders[g] == 0))

    def count(i: int, candidates: int) -> int:
        if i == len(slots):
            return 1
        mask = candidates & allowed[i]
        if i == len(slots) - 1:
            return bin(mask).count("1")
        total = 0
        while mask:
            low = mask & -mask
            g = low.bit_length() - 1
            total += count(i + 1, candidates & cents[g])
            mask ^= low
        return total

    return count(0, (1 << G.order) - 1)


def conjugacy_class_count(G: FiniteGroup) -> int:
    seen = [False] * G.order
    classes = 0
    for g in range(G.order):
        if seen[g]:
            continue
        classes += 1
        for x in range(G.order):
            seen[G.conjugate(g, x)] = True
    return classes


def measured_value(A: AbelianGroupSpec, G: FiniteGroup) -> Fraction:
    """|Hom(A, G)| / |G|."""
    return Fraction(hom_count(A, G), G.order)
