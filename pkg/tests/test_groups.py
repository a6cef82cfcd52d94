"""Element algebra, enumeration, conjugacy, and Galois exponents.

Independent oracles: brute-force enumeration from the membership constraint,
complex monomial matrices for the multiplication law, conjugation orbits over
the full group, and repeated multiplication for element orders.
"""

import itertools
from math import gcd

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from reflectra.errors import ParameterError, SizeLimitError
from reflectra.groups import (
    Group,
    GroupElement,
    GroupParams,
    cycle_type,
    element_order,
    element_power,
    find_galois_exponent,
    format_element,
    galois_apply,
    identity_element,
    multiply,
    parse_element,
    standard_generators,
)

from oracles import monomial_matrix


def elements_strategy(max_r: int = 6, max_n: int = 4):
    def build(r, n, exponents, shuffled):
        return GroupElement(r=r, exponents=tuple(e % r for e in exponents), perm=shuffled)

    return st.integers(1, max_r).flatmap(
        lambda r: st.integers(1, max_n).flatmap(
            lambda n: st.builds(
                build,
                st.just(r),
                st.just(n),
                st.tuples(*[st.integers(0, r - 1)] * n),
                st.permutations(range(n)).map(tuple),
            )
        )
    )


def paired_elements(max_r: int = 6, max_n: int = 4):
    def pair(r, n, e1, p1, e2, p2):
        return (
            GroupElement(r=r, exponents=tuple(e1), perm=p1),
            GroupElement(r=r, exponents=tuple(e2), perm=p2),
        )

    return st.integers(1, max_r).flatmap(
        lambda r: st.integers(1, max_n).flatmap(
            lambda n: st.builds(
                pair,
                st.just(r),
                st.just(n),
                st.tuples(*[st.integers(0, r - 1)] * n),
                st.permutations(range(n)).map(tuple),
                st.tuples(*[st.integers(0, r - 1)] * n),
                st.permutations(range(n)).map(tuple),
            )
        )
    )


class TestParams:
    def test_order_formula(self):
        assert GroupParams(3, 1, 2).order == 18
        assert GroupParams(4, 2, 2).order == 16
        assert GroupParams(2, 1, 3).order == 48
        assert GroupParams(1, 1, 4).order == 24

    def test_p_must_divide_r(self):
        with pytest.raises(ParameterError):
            GroupParams(4, 3, 2)

    def test_positive(self):
        with pytest.raises(ParameterError):
            GroupParams(0, 1, 2)
        with pytest.raises(ParameterError):
            GroupParams(2, 1, 0)

    def test_str(self):
        assert str(GroupParams(6, 2, 3)) == "G(6,2,3)"


class TestElementAlgebra:
    @given(paired_elements())
    def test_multiplication_matches_monomial_matrices(self, pair):
        x, y = pair
        product = multiply(x, y)
        expected = monomial_matrix(x) @ monomial_matrix(y)
        assert np.allclose(monomial_matrix(product), expected)

    @given(elements_strategy())
    def test_inverse(self, x):
        assert multiply(x, x.inverse()).is_identity()
        assert multiply(x.inverse(), x).is_identity()

    @given(elements_strategy())
    def test_identity_is_neutral(self, x):
        e = identity_element(x.r, x.n)
        assert multiply(x, e) == x
        assert multiply(e, x) == x

    @given(elements_strategy(max_r=5, max_n=3))
    def test_order_by_repeated_multiplication(self, x):
        order = element_order(x)
        assert order >= 1
        power = x
        for step in range(1, order):
            assert not power.is_identity()
            power = multiply(power, x)
        assert power.is_identity()

    @given(elements_strategy())
    def test_power_against_naive_product(self, x):
        power = identity_element(x.r, x.n)
        for m in range(5):
            assert element_power(x, m) == power
            power = multiply(power, x)

    def test_mismatched_elements_rejected(self):
        x = identity_element(2, 2)
        y = identity_element(3, 2)
        with pytest.raises(ParameterError):
            multiply(x, y)

    @given(elements_strategy())
    def test_text_roundtrip(self, x):
        assert parse_element(format_element(x), x.r) == x

    def test_format_example(self):
        x = GroupElement(r=3, exponents=(1, 0), perm=(1, 0))
        assert format_element(x) == "1,0|2 1"
        assert parse_element("1,0|2 1", 3) == x


class TestCycleType:
    @given(paired_elements(max_r=5, max_n=4))
    def test_conjugation_invariance(self, pair):
        x, g = pair
        conjugate = multiply(multiply(g, x), g.inverse())
        assert cycle_type(conjugate) == cycle_type(x)

    def test_identity(self):
        assert cycle_type(identity_element(3, 2)) == ((1, 0), (1, 0))

    def test_mixed(self):
        x = GroupElement(r=4, exponents=(1, 2, 3), perm=(1, 0, 2))
        assert cycle_type(x) == ((1, 3), (2, 3))


class TestEnumeration:
    def test_brute_force_set_equality(self):
        brute = {
            (exponents, perm)
            for perm in itertools.permutations(range(2))
            for exponents in itertools.product(range(4), repeat=2)
            if sum(exponents) % 2 == 0
        }
        group = Group(GroupParams(4, 2, 2))
        assert group.order == 16
        assert {(x.exponents, x.perm) for x in group.elements} == brute

    @pytest.mark.parametrize(
        "r,p,n", [(1, 1, 1), (1, 1, 4), (2, 1, 3), (3, 3, 2), (6, 3, 2), (2, 2, 4)]
    )
    def test_order_and_membership(self, r, p, n):
        group = Group(GroupParams(r, p, n))
        assert group.order == GroupParams(r, p, n).order
        for x in group.elements:
            assert sum(x.exponents) % p == 0
        assert len({(x.exponents, x.perm) for x in group.elements}) == group.order

    def test_index_roundtrip(self):
        group = Group(GroupParams(3, 1, 2))
        for i, x in enumerate(group.elements):
            assert group.index_of(x) == i

    def test_foreign_element_rejected(self):
        group = Group(GroupParams(4, 2, 2))
        outside = GroupElement(r=4, exponents=(1, 0), perm=(0, 1))
        assert not group.contains(outside)
        with pytest.raises(ParameterError):
            group.index_of(outside)

    def test_size_cap(self):
        with pytest.raises(SizeLimitError) as excinfo:
            Group(GroupParams(2, 1, 5), max_order=1000)
        assert "REFLECTRA_MAX_ORDER" in str(excinfo.value)

    def test_env_override(self, monkeypatch):
        monkeypatch.setenv("REFLECTRA_MAX_ORDER", "5")
        with pytest.raises(SizeLimitError):
            Group(GroupParams(2, 1, 2))
        monkeypatch.setenv("REFLECTRA_MAX_ORDER", "8")
        assert Group(GroupParams(2, 1, 2)).order == 8


class TestIndexMaps:
    @pytest.mark.parametrize("r,p,n", [(3, 1, 2), (4, 2, 2), (2, 2, 3)])
    def test_multiplication_maps(self, r, p, n):
        group = Group(GroupParams(r, p, n))
        for g in (1, group.order // 2, group.order - 1):
            left = group.left_mult_indices(g)
            right = group.right_mult_indices(g)
            for k in (0, 1, group.order // 3, group.order - 1):
                assert left[k] == group.index_of(
                    multiply(group.elements[g], group.elements[k])
                )
                assert right[k] == group.index_of(
                    multiply(group.elements[k], group.elements[g])
                )

    @pytest.mark.parametrize("r,p,n", [(3, 1, 2), (4, 2, 2)])
    def test_inverse_indices(self, r, p, n):
        group = Group(GroupParams(r, p, n))
        for i, x in enumerate(group.elements):
            assert group.inverse_indices[i] == group.index_of(x.inverse())

    def test_conjugation_map(self):
        group = Group(GroupParams(4, 2, 2))
        g = 5
        conj = group.conjugation_indices(g)
        gx = group.elements[g]
        for k, x in enumerate(group.elements):
            expected = multiply(multiply(gx, x), gx.inverse())
            assert conj[k] == group.index_of(expected)


def brute_force_classes(group: Group) -> set[frozenset[int]]:
    """Conjugation orbits computed with plain element algebra."""
    orbits = []
    seen: set[int] = set()
    for seed in range(group.order):
        if seed in seen:
            continue
        x = group.elements[seed]
        orbit = {
            group.index_of(multiply(multiply(g, x), g.inverse()))
            for g in group.elements
        }
        seen |= orbit
        orbits.append(frozenset(orbit))
    return set(orbits)


class TestConjugacy:
    @pytest.mark.parametrize("r,p,n", [(3, 1, 2), (1, 1, 4), (4, 2, 2), (3, 3, 2), (2, 2, 3)])
    def test_against_brute_force(self, r, p, n):
        group = Group(GroupParams(r, p, n))
        computed = {frozenset(members) for members in group.conjugacy.members}
        assert computed == brute_force_classes(group)

    def test_class_count_g312(self):
        assert len(Group(GroupParams(3, 1, 2)).conjugacy) == 9

    def test_sizes_and_partition(self):
        group = Group(GroupParams(4, 2, 2))
        classes = group.conjugacy
        assert sum(classes.sizes) == group.order
        for index, members in enumerate(classes.members):
            assert classes.sizes[index] == len(members)
            assert classes.representatives[index] == members[0]
            for member in members:
                assert classes.class_of[member] == index

    def test_cycle_type_constant_on_classes_p1(self):
        group = Group(GroupParams(3, 1, 2))
        for members in group.conjugacy.members:
            types = {cycle_type(group.elements[i]) for i in members}
            assert len(types) == 1


class TestRationalClasses:
    def test_symmetric_group_rational_equals_ordinary(self):
        group = Group(GroupParams(1, 1, 4))
        assert len(group.rational) == len(group.conjugacy)
        assert all(len(grp) == 1 for grp in group.rational.groups)

    def test_cyclic_four(self):
        group = Group(GroupParams(4, 1, 1))
        assert len(group.conjugacy) == 4
        assert len(group.rational) == 3

    @pytest.mark.parametrize("r,p,n", [(3, 1, 2), (4, 2, 2), (6, 1, 1)])
    def test_closed_under_coprime_powers(self, r, p, n):
        group = Group(GroupParams(r, p, n))
        classes = group.conjugacy
        rational_of = group.rational.class_to_rational
        for members in classes.members:
            x = group.elements[members[0]]
            order = element_order(x)
            for d in range(1, order + 1):
                if gcd(d, order) != 1:
                    continue
                power_class = classes.class_of[group.index_of(element_power(x, d))]
                assert rational_of[power_class] == rational_of[classes.class_of[members[0]]]

    def test_partition_structure(self):
        group = Group(GroupParams(6, 1, 1))
        flattened = [c for grp in group.rational.groups for c in grp]
        assert sorted(flattened) == list(range(len(group.conjugacy)))


class TestGalois:
    def test_crt_example(self):
        x = GroupElement(r=6, exponents=(2,), perm=(0,))
        assert element_order(x) == 3
        assert find_galois_exponent(x, 2) == 5
        assert cycle_type(galois_apply(x, 5)) == cycle_type(element_power(x, 2))

    def test_apply_requires_coprime_exponent(self):
        x = GroupElement(r=6, exponents=(1,), perm=(0,))
        with pytest.raises(ParameterError):
            galois_apply(x, 2)

    def test_power_must_be_coprime_to_order(self):
        x = GroupElement(r=6, exponents=(1,), perm=(0,))
        with pytest.raises(ParameterError):
            find_galois_exponent(x, 2)

    @pytest.mark.parametrize("r,p,n", [(4, 1, 2), (4, 2, 2), (6, 2, 2)])
    def test_postcondition_exhaustive(self, r, p, n):
        group = Group(GroupParams(r, p, n))
        for x in group.elements:
            order = element_order(x)
            for d in range(1, order + 1):
                if gcd(d, order) != 1:
                    continue
                e = find_galois_exponent(x, d)
                assert 1 <= e <= x.r * order
                assert gcd(e, x.r) == 1
                assert cycle_type(galois_apply(x, e)) == cycle_type(element_power(x, d))


class TestGenerators:
    @pytest.mark.parametrize(
        "r,p,n", [(1, 1, 3), (2, 1, 2), (3, 1, 2), (4, 2, 2), (3, 3, 3), (6, 3, 2)]
    )
    def test_generate_whole_group(self, r, p, n):
        params = GroupParams(r, p, n)
        generators = standard_generators(params)
        frontier = [identity_element(r, n)]
        seen = {(x.exponents, x.perm) for x in frontier}
        while frontier:
            fresh = []
            for x in frontier:
                for g in generators:
                    y = multiply(g, x)
                    key = (y.exponents, y.perm)
                    if key not in seen:
                        seen.add(key)
                        fresh.append(y)
            frontier = fresh
        assert len(seen) == params.order

    def test_generators_are_members(self):
        group = Group(GroupParams(6, 2, 3))
        for g in group.generators():
            assert group.contains(g)
