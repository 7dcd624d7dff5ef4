import itertools
import math

import pytest
from hypothesis import given, settings, strategies as st

from pathcoalg.errors import DegreeMismatch, GroupTooLarge, InputError, UnknownElement
from pathcoalg.group import (
    Perm,
    cyclic_group,
    exponent,
    group_close,
    group_from_json,
    group_to_json,
    in_class_G,
    normal_subgroups,
    symmetric_group,
)


def direct_product_z3_z3():
    return group_close([Perm((1, 2, 0, 3, 4, 5)), Perm((0, 1, 2, 4, 5, 3))])


def z7_by_z3():
    # x -> x+1 and x -> 2x mod 7
    return group_close([Perm(tuple((x + 1) % 7 for x in range(7))),
                        Perm(tuple((2 * x) % 7 for x in range(7)))])


def klein_four():
    return group_close([Perm((1, 0, 3, 2)), Perm((2, 3, 0, 1))])


def dihedral(m):
    rot = Perm(tuple((i + 1) % m for i in range(m)))
    ref = Perm(tuple((-i) % m for i in range(m)))
    return group_close([rot, ref])


ODD_GROUPS = {
    "Z1": cyclic_group(1), "Z3": cyclic_group(3), "Z5": cyclic_group(5),
    "Z7": cyclic_group(7), "Z9": cyclic_group(9), "Z3xZ3": direct_product_z3_z3(),
    "Z11": cyclic_group(11), "Z13": cyclic_group(13), "Z15": cyclic_group(15),
    "Z17": cyclic_group(17), "Z19": cyclic_group(19), "Z21": cyclic_group(21),
    "Z7:Z3": z7_by_z3(),
}


def subgroups_by_subsets(G):
    """Literal oracle: every subset containing 1 and closed under products."""
    found = []
    others = [x for x in range(G.order) if x != G.id_index]
    for r in range(len(others) + 1):
        for extra in itertools.combinations(others, r):
            H = frozenset((G.id_index,) + extra)
            if all(G.mul(a, b) in H for a in H for b in H):
                found.append(H)
    return found


def test_closure_examples():
    assert group_close([Perm.from_cycles(3, (0, 1)), Perm.from_cycles(3, (0, 1, 2))]).order == 6
    assert group_close([Perm.identity(3)]).order == 1
    assert group_close([Perm.from_cycles(3, (0, 1, 2))]).order == 3


def test_perm_basics():
    a = Perm.from_cycles(3, (0, 1))
    b = Perm.from_cycles(3, (0, 1, 2))
    # (a*b)(x) = a(b(x))
    assert (a * b)(0) == a(b(0))
    assert (b * b.inverse()).is_identity()
    assert b.order() == 3
    with pytest.raises(InputError):
        Perm((0, 0, 1))


def test_closure_errors():
    with pytest.raises(GroupTooLarge):
        group_close([Perm.from_cycles(5, (0, 1)), Perm.from_cycles(5, (0, 1, 2, 3, 4))], cap=50)
    with pytest.raises(DegreeMismatch):
        group_close([Perm((1, 0)), Perm((1, 2, 0))])
    with pytest.raises(UnknownElement):
        cyclic_group(3).index(Perm((1, 0, 2)))


def test_normal_subgroup_examples():
    S3 = symmetric_group(3)
    assert [len(N) for N in normal_subgroups(S3)] == [1, 3, 6]
    assert [len(N) for N in normal_subgroups(cyclic_group(4))] == [1, 2, 4]
    assert [len(N) for N in normal_subgroups(cyclic_group(1))] == [1]


def test_exponent_examples():
    assert exponent(symmetric_group(3)) == 6
    assert exponent(klein_four()) == 2
    assert exponent(cyclic_group(1)) == 1


@pytest.mark.parametrize("G", [symmetric_group(3), klein_four(), dihedral(4), cyclic_group(6),
                               cyclic_group(8), group_close([Perm((1, 2, 0, 4, 3))])],
                         ids=["S3", "V4", "D4", "Z6", "Z8", "Z6b"])
def test_normal_subgroups_against_subset_oracle(G):
    oracle = [H for H in subgroups_by_subsets(G) if G.is_normal(H)]
    assert set(normal_subgroups(G, method="brute")) == set(oracle)
    assert set(normal_subgroups(G, method="classes")) == set(oracle)


@pytest.mark.parametrize("G", [symmetric_group(4), dihedral(6), z7_by_z3(),
                               direct_product_z3_z3(), dihedral(10)],
                         ids=["S4", "D6", "Z7:Z3", "Z3xZ3", "D10"])
def test_normal_subgroup_methods_agree(G):
    assert normal_subgroups(G, method="brute") == normal_subgroups(G, method="classes")


def test_s4_normal_subgroups():
    assert [len(N) for N in normal_subgroups(symmetric_group(4))] == [1, 4, 12, 24]


def test_subgroup_cap():
    with pytest.raises(GroupTooLarge):
        normal_subgroups(symmetric_group(4), cap=10)


def test_class_examples():
    v = in_class_G(symmetric_group(3), 2, 1)
    assert v.member and v.bound == 2
    v = in_class_G(cyclic_group(2), 2, 1)
    assert not v.member
    assert len(v.witness) == 2 and v.witness_exponent == 2
    assert in_class_G(cyclic_group(1), 5, 2).member


@pytest.mark.parametrize("name", sorted(ODD_GROUPS))
def test_odd_order_groups_in_class(name):
    G = ODD_GROUPS[name]
    assert G.order % 2 == 1 and G.order <= 21
    assert in_class_G(G, 2, 1).member


def test_class_depends_on_field():
    # GF(4): bound 12, so Z3 itself is a witness
    assert not in_class_G(cyclic_group(3), 2, 2).member
    # GF(3): bound 6, so A3 inside S3 is a witness
    v = in_class_G(symmetric_group(3), 3, 1)
    assert not v.member and len(v.witness) == 3


def test_json_roundtrip():
    G = symmetric_group(3)
    H = group_from_json(group_to_json(G))
    assert H.order == 6 and H.generators == G.generators
    with pytest.raises(InputError):
        group_from_json({"degree": 3})


perms = st.integers(2, 5).flatmap(
    lambda m: st.lists(st.permutations(list(range(m))).map(lambda x: Perm(tuple(x))),
                       min_size=1, max_size=3))


@settings(max_examples=40, deadline=None)
@given(perms)
def test_group_laws(gens):
    G = group_close(gens)
    n = G.order
    assert math.factorial(G.degree) % n == 0
    for i in range(n):
        assert G.mul(i, G.inv(i)) == G.id_index
        assert G.mul(G.id_index, i) == i
        assert n % G.element_order(i) == 0
    for s in gens:
        assert s in G
    for a, b, c in itertools.islice(itertools.product(range(n), repeat=3), 500):
        assert G.mul(G.mul(a, b), c) == G.mul(a, G.mul(b, c))


@settings(max_examples=25, deadline=None)
@given(perms)
def test_normal_methods_agree_on_random_groups(gens):
    G = group_close(gens)
    normals = normal_subgroups(G, method="classes")
    assert normals == normal_subgroups(G, method="brute")
    assert normals[0] == frozenset({G.id_index}) and len(normals[-1]) == G.order
    for N in normals:
        assert G.order % len(N) == 0
        assert len(N) % exponent(G, N) == 0
