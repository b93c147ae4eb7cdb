from __future__ import annotations

from fractions import Fraction
from math import gcd

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from charclass.errors import GroupError, GroupOrderExceeded
from charclass.groups import (
    AbelianGroupSpec,
    alternating_group,
    conjugacy_class_count,
    cyclic_group,
    dihedral_group,
    direct_product,
    group_from_json,
    group_from_permutations,
    group_from_preset,
    group_from_table,
    hom_count,
    measured_value,
    quaternion_group,
    symmetric_group,
    trivial_group,
)
from oracles import brute_conjugacy_classes, brute_hom_count, brute_hom_count_z2

Z2 = AbelianGroupSpec(2)

# order, k(G), |Hom(Z^2, G)|, |Hom(Z/2, G)|: standard character-table facts
KNOWN = {
    "1": (1, 1, 1, 1),
    "S3": (6, 3, 18, 4),
    "Q8": (8, 5, 40, 2),
    "D4": (8, 5, 40, 6),
    "A4": (12, 4, 48, 4),
    "Z/4": (4, 4, 16, 2),
    "S4": (24, 5, 120, 10),
    "Z/2xZ/2": (4, 4, 16, 4),
}


@pytest.mark.parametrize("name", sorted(KNOWN))
def test_known_groups(name):
    G = group_from_preset(name)
    order, k, homz2, invol = KNOWN[name]
    assert G.order == order
    assert conjugacy_class_count(G) == k
    assert hom_count(Z2, G) == homz2
    assert hom_count(AbelianGroupSpec.parse("Z/2"), G) == invol


TEST_GROUPS = ["1", "Z/2", "Z/3", "Z/4", "Z/5", "Z/6", "S3", "Q8", "D4", "A4", "D5", "Z/2xS3"]


@pytest.mark.parametrize("name", TEST_GROUPS)
def test_commuting_pairs_against_brute_force(name):
    G = group_from_preset(name)
    assert brute_hom_count_z2(G.table) == hom_count(Z2, G)
    assert brute_conjugacy_classes(G.table) == conjugacy_class_count(G)
    assert hom_count(Z2, G) == G.order * conjugacy_class_count(G)


@pytest.mark.parametrize("name", ["S3", "Q8", "D4", "Z/2xZ/2"])
@pytest.mark.parametrize("abelian", ["0", "Z", "Z/2", "Z/3", "Z+Z/2", "Z/2+Z/2", "Z^3"])
def test_hom_count_against_brute_force(name, abelian):
    G = group_from_preset(name)
    A = AbelianGroupSpec.parse(abelian)
    assert hom_count(A, G) == brute_hom_count(G.table, A.free_rank, A.torsion)


@pytest.mark.parametrize("r", range(1, 13))
@pytest.mark.parametrize("n", range(1, 13))
def test_cyclic_gcd(r, n):
    assert hom_count(AbelianGroupSpec(0, (r,)) if r > 1 else AbelianGroupSpec(), cyclic_group(n)) == (
        gcd(r, n) if r > 1 else 1
    )


@settings(max_examples=30, deadline=None)
@given(
    a=st.sampled_from(["1", "Z/2", "Z/3", "S3", "Q8"]),
    b=st.sampled_from(["1", "Z/2", "Z/4", "S3"]),
    m=st.integers(0, 2),
    tors=st.lists(st.integers(2, 4), max_size=1),
)
def test_hom_count_is_multiplicative_on_products(a, b, m, tors):
    G, H = group_from_preset(a), group_from_preset(b)
    A = AbelianGroupSpec(m, tuple(tors))
    assert hom_count(A, direct_product(G, H)) == hom_count(A, G) * hom_count(A, H)


def test_abelian_group_counts():
    # |Hom(Z^m, G)| = |G|^m for abelian G
    G = direct_product(cyclic_group(2), cyclic_group(3))
    for m in range(4):
        assert hom_count(AbelianGroupSpec(m), G) == 6**m


def test_measured_values():
    S3 = symmetric_group(3)
    assert measured_value(AbelianGroupSpec(1), S3) == 1
    assert measured_value(Z2, S3) == 3
    assert measured_value(AbelianGroupSpec(), S3) == Fraction(1, 6)


def test_abelian_spec_parsing():
    assert AbelianGroupSpec.parse("Z^2+Z/3") == AbelianGroupSpec(2, (3,))
    assert AbelianGroupSpec.parse("0") == AbelianGroupSpec()
    assert str(AbelianGroupSpec(1, (2, 2))) == "Z+Z/2+Z/2"
    assert AbelianGroupSpec.from_json({"free_rank": 2, "torsion": [2]}) == AbelianGroupSpec(2, (2,))
    with pytest.raises(ValueError):
        AbelianGroupSpec.parse("Q")
    with pytest.raises(ValueError):
        AbelianGroupSpec(0, (1,))


def test_constructors():
    assert symmetric_group(4).order == 24
    assert alternating_group(4).order == 12
    assert dihedral_group(4).order == 8
    assert quaternion_group().order == 8
    assert trivial_group().order == 1
    assert not symmetric_group(3).is_abelian()
    assert cyclic_group(5).is_abelian()


def test_from_permutations_json_is_one_based():
    G = group_from_json({"permutations": [[2, 1, 3], [2, 3, 1]]})
    assert G.order == 6 and conjugacy_class_count(G) == 3
    with pytest.raises(GroupError):
        group_from_json({"permutations": [[1, 1, 3]]})


def test_table_validation():
    G = group_from_table(cyclic_group(3).table)
    assert G.order == 3
    with pytest.raises(GroupError):
        group_from_table([[0, 1], [1, 1]])
    with pytest.raises(GroupError):
        group_from_table([[1, 0], [0, 1]])
    loop = [[0, 1, 2, 3, 4], [1, 0, 3, 4, 2], [2, 4, 0, 1, 3], [3, 2, 4, 0, 1], [4, 3, 1, 2, 0]]
    with pytest.raises(GroupError, match="associative"):
        group_from_table(loop)


def test_order_cap(monkeypatch):
    monkeypatch.setenv("CSM_MAX_GROUP_ORDER", "10")
    with pytest.raises(GroupOrderExceeded):
        symmetric_group(4)
    with pytest.raises(GroupOrderExceeded):
        group_from_table(cyclic_group(12).table)


def test_permutation_group_matches_table_group():
    G = group_from_permutations([[1, 2, 3, 0], [1, 0, 2, 3]])
    assert G.order == 24
    assert group_from_table(G.table).order == 24
    assert hom_count(Z2, G) == 120


def test_unknown_preset():
    with pytest.raises(GroupError):
        group_from_preset("M11")
